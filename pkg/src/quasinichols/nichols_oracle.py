"""Brute-force Nichols algebra data at low degree via the quantum symmetrizer.

dim B(V)_n is the rank of sum_{w in S_n} lift(w) acting on the left-bracketed
tensor power.  Braid generators are monomial, so the symmetrizer splits into
blocks indexed by the multiset of summands occurring in a basis tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exact_scalars import Cyclotomic, Phase, cyc_rank, integer_cyclotomic_rank, power_table
from .ydmod import Monomial, YDModule, braiding_matrix, tensor_basis, tuple_index

DEFAULT_BUDGET = 10**4


class BudgetExceeded(RuntimeError):
    """Raised when (dim V)^n exceeds the configured number of basis tensors."""


def _check_budget(V: YDModule, n: int, budget: int) -> None:
    if V.dim**n > budget:
        raise BudgetExceeded(f"{V.dim}^{n} = {V.dim ** n} basis tensors exceeds the budget {budget}")


# --- tensor elements -----------------------------------------------------------


class TensorElement:
    """Element of the n-th left-bracketed tensor power, sparse over basis tensors."""

    __slots__ = ("dim", "n", "coeffs")

    def __init__(self, dim: int, n: int, coeffs: Mapping[int, Cyclotomic] | None = None):
        self.dim = dim
        self.n = n
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero()}

    @classmethod
    def unit(cls, dim: int) -> "TensorElement":
        return cls(dim, 0, {0: Cyclotomic.from_int(1)})

    @classmethod
    def word(cls, V: YDModule, letters: Sequence[int | str], coeff=1) -> "TensorElement":
        idx = [V.index(x) if isinstance(x, str) else int(x) for x in letters]
        k = int(tuple_index(np.asarray(idx, dtype=np.int64), V.dim)) if idx else 0
        c = coeff if isinstance(coeff, Cyclotomic) else _scalar(coeff)
        return cls(V.dim, len(idx), {k: c})

    def _same_space(self, other: "TensorElement") -> None:
        if (self.dim, self.n) != (other.dim, other.n):
            raise ValueError("tensor elements of different degree")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._same_space(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return TensorElement(self.dim, self.n, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.dim, self.n, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = c if isinstance(c, Cyclotomic) else _scalar(c)
        return TensorElement(self.dim, self.n, {k: v * c for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self, V: YDModule) -> list[tuple[Cyclotomic, tuple[str, ...]]]:
        return [
            (self.coeffs[k], tuple(V.labels[j] for j in _digits(k, self.dim, self.n)))
            for k in sorted(self.coeffs)
        ]

    def __eq__(self, other):
        return isinstance(other, TensorElement) and (self - other).is_zero()

    def __repr__(self):
        return f"TensorElement(n={self.n}, terms={len(self.coeffs)})"


def _scalar(c) -> Cyclotomic:
    if isinstance(c, Phase):
        return Cyclotomic.from_phase(c)
    return Cyclotomic.from_int(c)


def _digits(k: int, dim: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        k, r = divmod(k, dim)
        out.append(r)
    return out[::-1]


def tensor_mul(V: YDModule, u: TensorElement, v: TensorElement) -> TensorElement:
    """Product in T(V), re-bracketed to the left: u(v'w) = Phi(u,v',w) (uv')w."""
    dim, p, q = V.dim, u.n, v.n
    phi, G = V.cocycle, V.group
    out: dict[int, Cyclotomic] = {}
    for ku, cu in u.coeffs.items():
        du = _digits(ku, dim, p)
        a = G.identity
        for j in du:
            a = G.mul(a, V.degrees[j])
        for kv, cv in v.coeffs.items():
            dv = _digits(kv, dim, q)
            ph = Phase(0)
            pre = G.identity
            for k in range(q):
                if k:
                    ph = ph * phi(a, pre, V.degrees[dv[k]])
                pre = G.mul(pre, V.degrees[dv[k]])
            key = ku * dim**q + kv
            val = cu * cv * ph
            out[key] = out[key] + val if key in out else val
    return TensorElement(dim, p + q, out)


def act_tensor(V: YDModule, e: Sequence[int], t: TensorElement) -> TensorElement:
    """e.(A(x)Y) = Phi~_e(a,y) (e.A)(x)(e.Y), applied recursively."""
    from .cocycles import phi_tilde

    G = V.group
    e = G.check(tuple(e))
    m = V.act(e)
    tilde = phi_tilde(V.cocycle, e)
    out: dict[int, Cyclotomic] = {}
    for k, c in t.coeffs.items():
        digs = _digits(k, V.dim, t.n)
        ph = Phase(0)
        pre = G.identity
        new = []
        for pos, j in enumerate(digs):
            if pos:
                ph = ph * tilde(pre, V.degrees[j])
            pre = G.mul(pre, V.degrees[j])
            ph = ph * m.phase(j)
            new.append(int(m.targets[j]))
        key = int(tuple_index(np.asarray(new, dtype=np.int64), V.dim)) if new else 0
        val = c * ph
        out[key] = out[key] + val if key in out else val
    return TensorElement(V.dim, t.n, out)


def element_degree(V: YDModule, t: TensorElement):
    """Group degree of a homogeneous tensor element."""
    degs = set()
    for k in t.coeffs:
        d = V.group.identity
        for j in _digits(k, V.dim, t.n):
            d = V.group.mul(d, V.degrees[j])
        degs.add(d)
    if len(degs) != 1:
        raise ValueError("element is not homogeneous")
    return degs.pop()


def braided_adjoint(V: YDModule, x: TensorElement, y: TensorElement) -> TensorElement:
    """ad_x(y) = x y - (g_x . y) x for x of tensor degree 1."""
    if x.n != 1:
        raise ValueError("ad needs an element of tensor degree 1")
    g = element_degree(V, x)
    return tensor_mul(V, x, y) - tensor_mul(V, act_tensor(V, g, y), x)


# --- symmetrizer -------------------------------------------------------------------


def _lifts(V: YDModule, n: int) -> dict[tuple[int, ...], Monomial]:
    """lift(w) for every w in S_n, grown along reduced words."""
    cache = V.__dict__.setdefault("_lift_cache", {})
    if n in cache:
        return cache[n]
    sig = [braiding_matrix(V, n, i) for i in range(1, n)]
    start = tuple(range(n))
    lifts = {start: Monomial.identity(V.dim**n)}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n - 1):
                if w[i] < w[i + 1]:
                    u = list(w)
                    u[i], u[i + 1] = u[i + 1], u[i]
                    u = tuple(u)
                    if u not in lifts:
                        lifts[u] = lifts[w] @ sig[i]
                        nxt.append(u)
        frontier = nxt
    cache[n] = lifts
    return lifts


def lift_word(V: YDModule, n: int, word: Sequence[int]) -> Monomial:
    """Product of braid generators along ``word`` (1-based positions)."""
    out = Monomial.identity(V.dim**n)
    for i in word:
        out = out @ braiding_matrix(V, n, i)
    return out


def reduced_words(w: Sequence[int]) -> list[list[int]]:
    """All reduced words (1-based generators) for a permutation in one-line form."""
    w = tuple(w)
    n = len(w)
    if all(w[i] < w[i + 1] for i in range(n - 1)):
        return [[]]
    out = []
    for i in range(n - 1):
        if w[i] > w[i + 1]:
            u = list(w)
            u[i], u[i + 1] = u[i + 1], u[i]
            out.extend(word + [i + 1] for word in reduced_words(u))
    return out


@dataclass
class SymmetrizerBlocks:
    """Symmetrizer as dense exponent-count blocks: counts[b][row, col, k] = #(zeta_N^k)."""

    n: int
    conductor: int
    blocks: list[np.ndarray]  # global basis-tensor indices per block
    counts: list[np.ndarray]

    def entry(self, b: int, r: int, c: int) -> Cyclotomic:
        return Cyclotomic.from_exponent_counts(self.conductor, self.counts[b][r, c])

    def dense(self) -> list[list[Cyclotomic]]:
        size = sum(len(b) for b in self.blocks)
        zero = Cyclotomic.zero(self.conductor)
        rows = [[zero] * size for _ in range(size)]
        for b, idx in enumerate(self.blocks):
            for r, gr in enumerate(idx):
                for c, gc in enumerate(idx):
                    if self.counts[b][r, c].any():
                        rows[gr][gc] = self.entry(b, r, c)
        return rows


def _blocks(V: YDModule, n: int) -> tuple[np.ndarray, list[np.ndarray]]:
    comp_of = np.empty(V.dim, dtype=np.int64)
    for k, c in enumerate(V.components):
        comp_of[list(c)] = k
    T = tensor_basis(V.dim, n)
    keys = np.sort(comp_of[T], axis=1)
    _, block_id = np.unique(keys, axis=0, return_inverse=True)
    block_id = block_id.ravel()
    groups = [np.flatnonzero(block_id == b) for b in range(block_id.max() + 1)]
    return block_id, groups


def symmetrizer(V: YDModule, n: int, budget: int = DEFAULT_BUDGET) -> SymmetrizerBlocks:
    """sum over S_n of lift(w), stored blockwise."""
    _check_budget(V, n, budget)
    size = V.dim**n
    if n <= 1:
        idx = [np.arange(size)]
        counts = np.zeros((size, size, 1), dtype=np.int64)
        counts[np.arange(size), np.arange(size), 0] = 1
        return SymmetrizerBlocks(n, 1, idx, [counts])
    lifts = list(_lifts(V, n).values())
    N = reduce(lcm, (m.modulus for m in lifts), 1)
    block_id, groups = _blocks(V, n)
    local = np.empty(size, dtype=np.int64)
    for g in groups:
        local[g] = np.arange(len(g))
    counts = [np.zeros((len(g), len(g), N), dtype=np.int64) for g in groups]
    for m in lifts:
        e = m.lifted(N)
        for b, g in enumerate(groups):
            np.add.at(counts[b], (local[m.targets[g]], local[g], e[g]), 1)
    return SymmetrizerBlocks(n, N, groups, counts)


@dataclass
class SymmetrizerReport:
    degree: int
    size: int
    rank: int
    kernel_dim: int

    @property
    def graded_dim(self) -> int:
        return self.rank

    def to_json(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "kernel_dim": self.kernel_dim}


def graded_dim(V: YDModule, n: int, budget: int = DEFAULT_BUDGET) -> SymmetrizerReport:
    S = symmetrizer(V, n, budget)
    pt = power_table(S.conductor)
    rank = 0
    for c in S.counts:
        rank += integer_cyclotomic_rank(c @ pt, S.conductor)
    size = V.dim**n
    return SymmetrizerReport(n, size, rank, size - rank)


def hilbert_series_oracle(V: YDModule, N: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    return [graded_dim(V, n, budget).rank for n in range(N + 1)]


def apply_symmetrizer(V: YDModule, x: TensorElement, budget: int = DEFAULT_BUDGET) -> TensorElement:
    """Image of x under the degree-n symmetrizer."""
    n = x.n
    _check_budget(V, n, budget)
    if n <= 1:
        return x
    lifts = list(_lifts(V, n).values())
    N = reduce(lcm, (m.modulus for m in lifts), 1)
    out: dict[int, Cyclotomic] = {}
    for c, coeff in x.coeffs.items():
        hits: dict[int, np.ndarray] = {}
        for m in lifts:
            r = int(m.targets[c])
            hits.setdefault(r, np.zeros(N, dtype=np.int64))[int(m.lifted(N)[c])] += 1
        for r, cnt in hits.items():
            val = Cyclotomic.from_exponent_counts(N, cnt) * coeff
            out[r] = out[r] + val if r in out else val
    return TensorElement(V.dim, n, out)


def in_nichols_ideal(V: YDModule, x: TensorElement, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff x vanishes in B(V), i.e. lies in the symmetrizer kernel."""
    if x.n < 2:
        return x.is_zero()
    return apply_symmetrizer(V, x, budget).is_zero()


def image_rank(V: YDModule, xs: Iterable[TensorElement], budget: int = DEFAULT_BUDGET) -> int:
    """Dimension of the span of the images of ``xs`` in B(V)."""
    ys = [apply_symmetrizer(V, x, budget) for x in xs]
    support = sorted({k for y in ys for k in y.coeffs})
    if not support:
        return 0
    zero = Cyclotomic.zero()
    return cyc_rank([[y.coeffs.get(k, zero) for k in support] for y in ys])
