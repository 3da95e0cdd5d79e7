"""Normalized 3-cocycles on finite abelian groups, stored as exponent tables.

Every cochain here takes values in the ``M``-th roots of unity for some
modulus ``M`` and is evaluated on numpy arrays of exponent vectors, so that
exhaustive identity checks over ``G^4`` stay vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Callable, Iterator, Sequence

import numpy as np

from .exact_scalars import Phase
from .groups import Element, FinAbGroup, GroupHom


class NotCoboundary(ValueError):
    """Raised when a 3-cocycle has no 2-cochain primitive."""


# --- vectorized group helpers ------------------------------------------------


def _facs(G: FinAbGroup) -> np.ndarray:
    return np.asarray(G.factors, dtype=np.int64)


def _strides(G: FinAbGroup) -> np.ndarray:
    st = [1] * G.rank
    for l in range(G.rank - 2, -1, -1):
        st[l] = st[l + 1] * G.factors[l + 1]
    return np.asarray(st, dtype=np.int64)


def element_array(G: FinAbGroup) -> np.ndarray:
    """All elements as an (|G|, rank) array in lexicographic order."""
    return np.asarray(G.elements, dtype=np.int64).reshape(G.order, G.rank)


def element_index(G: FinAbGroup, A: np.ndarray) -> np.ndarray:
    return A @ _strides(G)


def mul_table(G: FinAbGroup) -> np.ndarray:
    E = element_array(G)
    return element_index(G, (E[:, None, :] + E[None, :, :]) % _facs(G))


# --- cochains ----------------------------------------------------------------


class Cochain3:
    """A function G^3 -> mu_M given by integer exponents mod ``modulus``."""

    group: FinAbGroup
    modulus: int

    def exponents(self, A, B, C) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, a, b, c) -> Phase:
        e = self.exponents(np.asarray(a), np.asarray(b), np.asarray(c))
        return Phase(int(e), self.modulus)

    @cached_property
    def table(self) -> np.ndarray:
        """Dense exponent table indexed by element indices, shape (N, N, N)."""
        E = element_array(self.group)
        t = self.exponents(E[:, None, None, :], E[None, :, None, :], E[None, None, :, :])
        t = np.broadcast_to(t, (self.group.order,) * 3) % self.modulus
        t = np.ascontiguousarray(t)
        t.setflags(write=False)
        return t

    def __mul__(self, other: "Cochain3") -> "Cochain3":
        return ProductCochain3(self, other)

    def inverse(self) -> "Cochain3":
        return ScaledCochain3(self, -1)


@dataclass(frozen=True, eq=False)
class ProductCochain3(Cochain3):
    left: Cochain3
    right: Cochain3

    def __post_init__(self):
        if self.left.group != self.right.group:
            raise ValueError("cochains live on different groups")

    @property
    def group(self):
        return self.left.group

    @property
    def modulus(self):
        return lcm(self.left.modulus, self.right.modulus)

    def exponents(self, A, B, C):
        M = self.modulus
        l = self.left.exponents(A, B, C) * (M // self.left.modulus)
        r = self.right.exponents(A, B, C) * (M // self.right.modulus)
        return (l + r) % M


@dataclass(frozen=True, eq=False)
class ScaledCochain3(Cochain3):
    base: Cochain3
    power: int

    @property
    def group(self):
        return self.base.group

    @property
    def modulus(self):
        return self.base.modulus

    def exponents(self, A, B, C):
        return self.base.exponents(A, B, C) * self.power % self.modulus


class TableCochain3(Cochain3):
    """Cochain given by an explicit dense exponent table."""

    def __init__(self, group: FinAbGroup, table: np.ndarray, modulus: int):
        table = np.asarray(table, dtype=np.int64) % modulus
        if table.shape != (group.order,) * 3:
            raise ValueError("table shape does not match the group order")
        self.group = group
        self.modulus = modulus
        self._table = table

    def exponents(self, A, B, C):
        G = self.group
        return self._table[element_index(G, A), element_index(G, B), element_index(G, C)]

    @classmethod
    def from_function(cls, group: FinAbGroup, fn: Callable, modulus: int) -> "TableCochain3":
        els = group.elements
        t = np.zeros((group.order,) * 3, dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                for k, c in enumerate(els):
                    p = fn(a, b, c)
                    if modulus % p.den:
                        raise ValueError(f"value {p} is not a {modulus}-th root of unity")
                    t[i, j, k] = p.num * (modulus // p.den)
        return cls(group, t, modulus)


class Cocycle3(Cochain3):
    """The representative omega_c for a parameter sequence c."""

    def __init__(self, group: FinAbGroup, params: Sequence[int]):
        n = group.rank
        params = tuple(int(c) for c in params)
        expected = len(cocycle_param_slots(group))
        if len(params) != expected:
            raise ValueError(f"expected {expected} parameters for rank {n}, got {len(params)}")
        for c, (label, bound) in zip(params, cocycle_param_slots(group)):
            if not 0 <= c < bound:
                raise ValueError(f"parameter c{label}={c} outside 0..{bound - 1}")
        self.group = group
        self.params = params
        self.modulus = group.exponent

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Cocycle3":
        return cls(group, [0] * len(cocycle_param_slots(group)))

    @classmethod
    def from_parts(cls, group: FinAbGroup, c1=None, c2=None, c3=None) -> "Cocycle3":
        """Build from dicts keyed by 0-based index tuples (c1 may be a list)."""
        slots = cocycle_param_slots(group)
        pos = {label: k for k, (label, _) in enumerate(slots)}
        params = [0] * len(slots)
        for l, c in enumerate(c1 or []):
            params[pos[(l,)]] = c
        for key, c in dict(c2 or {}).items():
            params[pos[tuple(key)]] = c
        for key, c in dict(c3 or {}).items():
            params[pos[tuple(key)]] = c
        return cls(group, params)

    def parts(self) -> tuple[list[int], dict, dict]:
        c1, c2, c3 = [], {}, {}
        for c, (label, _) in zip(self.params, cocycle_param_slots(self.group)):
            if len(label) == 1:
                c1.append(c)
            elif len(label) == 2:
                c2[label] = c
            else:
                c3[label] = c
        return c1, c2, c3

    def exponents(self, A, B, C):
        G, M = self.group, self.modulus
        m = G.factors
        c1, c2, c3 = self.parts()
        A, B, C = np.asarray(A), np.asarray(B), np.asarray(C)
        shape = np.broadcast_shapes(A.shape, B.shape, C.shape)[:-1]
        out = np.zeros(shape, dtype=np.int64)
        carry = [(B[..., l] + C[..., l]) // m[l] for l in range(G.rank)]
        for l, c in enumerate(c1):
            if c:
                out = out + c * (M // m[l]) * A[..., l] * carry[l]
        for (s, t), c in c2.items():
            if c:
                out = out + c * (M // m[t]) * A[..., t] * carry[s]
        for (r, s, t), c in c3.items():
            if c:
                g = gcd(m[r], m[s], m[t])
                out = out + c * (M // g) * A[..., r] * B[..., s] * C[..., t]
        return out % M

    def to_json(self) -> dict:
        c1, c2, c3 = self.parts()
        return {
            "group": self.group.to_json(),
            "c": c1,
            "c2": [[s + 1, t + 1, c] for (s, t), c in sorted(c2.items()) if c],
            "c3": [[r + 1, s + 1, t + 1, c] for (r, s, t), c in sorted(c3.items()) if c],
        }

    def __repr__(self):
        return f"Cocycle3({self.group.factors}, {self.params})"

    def __eq__(self, other):
        return isinstance(other, Cocycle3) and (self.group, self.params) == (other.group, other.params)

    def __hash__(self):
        return hash((self.group, self.params))


def cocycle_param_slots(G: FinAbGroup) -> list[tuple[tuple[int, ...], int]]:
    """(0-based index label, range size) for each entry of the parameter sequence."""
    m = G.factors
    idx = range(G.rank)
    slots = [((l,), m[l]) for l in idx]
    slots += [((i, j), gcd(m[i], m[j])) for i, j in combinations(idx, 2)]
    slots += [((r, s, t), gcd(m[r], m[s], m[t])) for r, s, t in combinations(idx, 3)]
    return slots


def eval_cocycle(phi: Cochain3, a, b, c) -> Phase:
    G = phi.group
    return phi(G.check(a), G.check(b), G.check(c))


def enumerate_cocycles(G: FinAbGroup) -> Iterator[Cocycle3]:
    """All representatives omega_c, parameters in lexicographic order."""
    for params in product(*(range(b) for _, b in cocycle_param_slots(G))):
        yield Cocycle3(G, params)


@lru_cache(maxsize=8)
def _identity_indices(G: FinAbGroup) -> tuple[np.ndarray, ...]:
    """Flat table positions of the five factors of the cocycle identity."""
    N = G.order
    mt = mul_table(G)
    e, f, g, h = np.meshgrid(*(np.arange(N),) * 4, indexing="ij", sparse=True)
    flat = lambda x, y, z: np.broadcast_to((x * N + y) * N + z, (N,) * 4).ravel().astype(np.int32)
    return (
        flat(mt[e, f], g, h),
        flat(e, f, mt[g, h]),
        flat(e, f, g),
        flat(e, mt[f, g], h),
        flat(f, g, h),
    )


def _check_tables(G: FinAbGroup, T: np.ndarray, M: int) -> bool:
    # normalization w(f,1,g) = 1
    if np.any(T[:, 0, :] % M):
        return False
    N = G.order
    small = np.int8 if M < 25 else (np.int16 if M < 6000 else np.int64)
    flat = (T.ravel() % M).astype(small)
    if N**4 <= 1 << 22:
        i1, i2, i3, i4, i5 = _identity_indices(G)
        d = flat[i1] + flat[i2] - flat[i3] - flat[i4] - flat[i5]
        return not np.any(d % M)
    # w(ef,g,h) w(e,f,gh) = w(e,f,g) w(e,fg,h) w(f,g,h), one e at a time
    mt = mul_table(G)
    f, g, h = np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij", sparse=True)
    for e in range(N):
        lhs = T[mt[e, f], g, h] + T[e, f, mt[g, h]]
        rhs = T[e, f, g] + T[e, mt[f, g], h] + T[f, g, h]
        if np.any((lhs - rhs) % M):
            return False
    return True


def verify_3cocycle(phi: Cochain3) -> bool:
    """Exhaustive check of the normalized 3-cocycle identities over G^4."""
    return _check_tables(phi.group, phi.table, phi.modulus)


def verify_many(cocycles: Sequence[Cochain3]) -> list[bool]:
    return [verify_3cocycle(c) for c in cocycles]


# --- induced 2-cocycles ------------------------------------------------------


def phi_tilde_exponents(phi: Cochain3, g, x, y) -> np.ndarray:
    """Exponent (mod phi.modulus) of Phi(g,x,y) Phi(x,y,g) / Phi(x,g,y)."""
    return (phi.exponents(g, x, y) + phi.exponents(x, y, g) - phi.exponents(x, g, y)) % phi.modulus


def phi_tilde(phi: Cochain3, g) -> Callable[[Element, Element], Phase]:
    g = np.asarray(g)

    def tilde(x, y) -> Phase:
        return Phase(int(phi_tilde_exponents(phi, g, np.asarray(x), np.asarray(y))), phi.modulus)

    return tilde


def phi_tilde_table(phi: Cochain3) -> np.ndarray:
    """Array [g, x, y] of exponents of Phi~_g(x, y)."""
    T = phi.table
    return (T + T.transpose(2, 0, 1) - T.transpose(1, 0, 2)) % phi.modulus


def antisymmetry_ratio(phi: Cochain3, g1, g2, g3) -> Phase:
    """Phi~_{g1}(g2,g3) / Phi~_{g1}(g3,g2)."""
    g1, g2, g3 = (np.asarray(v) for v in (g1, g2, g3))
    e = phi_tilde_exponents(phi, g1, g2, g3) - phi_tilde_exponents(phi, g1, g3, g2)
    return Phase(int(e), phi.modulus)


def is_abelian(phi: Cochain3, S: Sequence[Element] | None = None) -> bool:
    """True iff every Phi~_g restricted to the subgroup S is symmetric."""
    G = phi.group
    S = G.elements if S is None else [tuple(s) for s in S]
    sset = set(S)
    for a in S:
        for b in S:
            if G.mul(a, b) not in sset:
                raise ValueError("element set is not closed under multiplication")
    A = np.asarray(S, dtype=np.int64).reshape(len(S), G.rank)
    g, x, y = A[:, None, None, :], A[None, :, None, :], A[None, None, :, :]
    d = phi_tilde_exponents(phi, g, x, y) - phi_tilde_exponents(phi, g, y, x)
    return not np.any(d % phi.modulus)


# --- 2-cochains ----------------------------------------------------------------


class Cochain2:
    """Normalized 2-cochain J: G x G -> mu_M as a dense exponent table."""

    def __init__(self, group: FinAbGroup, table: np.ndarray, modulus: int):
        table = np.asarray(table, dtype=np.int64) % modulus
        if table.shape != (group.order, group.order):
            raise ValueError("table shape does not match the group order")
        if np.any(table[0, :]) or np.any(table[:, 0]):
            raise ValueError("2-cochain is not normalized")
        self.group = group
        self.modulus = modulus
        self.table = table
        table.setflags(write=False)

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Cochain2":
        return cls(group, np.zeros((group.order,) * 2, dtype=np.int64), 1)

    def exponents(self, A, B) -> np.ndarray:
        G = self.group
        return self.table[element_index(G, np.asarray(A)), element_index(G, np.asarray(B))]

    def __call__(self, a, b) -> Phase:
        return Phase(int(self.exponents(a, b)), self.modulus)

    def inverse(self) -> "Cochain2":
        return Cochain2(self.group, -self.table, self.modulus)

    def to_json(self) -> dict:
        M = self.modulus
        return {
            "group": self.group.to_json(),
            "table": [[str(Phase(int(v), M)) for v in row] for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cochain2":
        G = FinAbGroup.from_json(data["group"])
        rows = [[Phase.parse(s) for s in row] for row in data["table"]]
        M = reduce(lcm, (p.den for row in rows for p in row), 1)
        return cls(G, [[p.num * (M // p.den) for p in row] for row in rows], M)


@dataclass(frozen=True, eq=False)
class Coboundary(Cochain3):
    """dJ(a,b,c) = J(b,c) J(a,bc) / (J(ab,c) J(a,b))."""

    J: Cochain2

    @property
    def group(self):
        return self.J.group

    @property
    def modulus(self):
        return self.J.modulus

    def exponents(self, A, B, C):
        f = _facs(self.group)
        J = self.J.exponents
        return (J(B, C) + J(A, (B + C) % f) - J((A + B) % f, C) - J(A, B)) % self.modulus


def coboundary(J: Cochain2) -> Coboundary:
    return Coboundary(J)


@dataclass(frozen=True, eq=False)
class Pullback(Cochain3):
    """(f*Phi)(a,b,c) = Phi(f(a), f(b), f(c))."""

    base: Cochain3
    hom: GroupHom

    def __post_init__(self):
        if self.hom.codomain != self.base.group:
            raise ValueError("homomorphism codomain is not the cocycle's group")

    @property
    def group(self):
        return self.hom.domain

    @property
    def modulus(self):
        return self.base.modulus

    def _push(self, A):
        img = np.asarray(self.hom.images, dtype=np.int64).reshape(self.hom.domain.rank, -1)
        return (np.asarray(A) @ img) % _facs(self.hom.codomain)

    def exponents(self, A, B, C):
        return self.base.exponents(self._push(A), self._push(B), self._push(C))


def pullback(phi: Cochain3, f: GroupHom) -> Pullback:
    return Pullback(phi, f)


# --- coboundary solver -------------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation(x: np.ndarray, p: int, cap: int) -> np.ndarray:
    v = np.full(x.shape, cap, dtype=np.int64)
    nz = x != 0
    y = x.copy()
    k = np.zeros(x.shape, dtype=np.int64)
    while True:
        mask = nz & (y % p == 0)
        if not mask.any():
            break
        y = np.where(mask, y // p, y)
        k += mask
    v[nz] = k[nz]
    return v


def solve_mod_prime_power(A: np.ndarray, b: np.ndarray, p: int, e: int) -> np.ndarray | None:
    """One solution of A x = b over Z/p^e (free variables zero), or None."""
    q = p**e
    A = np.asarray(A, dtype=np.int64) % q
    b = np.asarray(b, dtype=np.int64) % q
    keep = A.any(axis=1)
    if np.any(b[~keep]):
        return None
    Ab = np.unique(np.column_stack([A[keep], b[keep]]), axis=0)
    A, b = Ab[:, :-1].copy(), Ab[:, -1].copy()
    rows, cols = A.shape
    perm = np.arange(cols)
    pivots = []  # (row, valuation, unit inverse)
    r = 0
    while r < rows and r < cols:
        sub = A[r:, r:]
        if not sub.any():
            break
        units = np.flatnonzero(sub % p)
        if units.size:
            i, j = divmod(int(units[0]), sub.shape[1])
            v = 0
        else:
            val = _valuation(sub, p, e)
            i, j = np.unravel_index(np.argmin(val), val.shape)
            v = int(val[i, j])
        i, j = i + r, j + r
        A[[r, i]] = A[[i, r]]
        b[[r, i]] = b[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        perm[[r, j]] = perm[[j, r]]
        pv = int(A[r, r])
        unit_inv = pow(pv // p**v, -1, q)
        hit = np.flatnonzero(A[r + 1 :, r]) + r + 1
        if hit.size:
            factor = (A[hit, r] // p**v) * unit_inv % q
            A[hit] = (A[hit] - factor[:, None] * A[r]) % q
            b[hit] = (b[hit] - factor * b[r]) % q
        pivots.append((v, unit_inv))
        r += 1
    if np.any(b[r:] % q):
        return None
    y = np.zeros(cols, dtype=np.int64)
    for k in range(r - 1, -1, -1):
        v, uinv = pivots[k]
        rest = int((b[k] - A[k, k + 1 :] @ y[k + 1 :]) % q)
        if rest % p**v:
            return None
        y[k] = (rest // p**v) * uinv % p ** (e - v)
    x = np.zeros(cols, dtype=np.int64)
    x[perm] = y
    return x


def solve_mod(A: np.ndarray, b: np.ndarray, M: int) -> np.ndarray | None:
    """Solve A x = b over Z/M by prime-power elimination and CRT."""
    x = np.zeros(A.shape[1], dtype=np.int64)
    mod = 1
    for p, e in sorted(_factorize(M).items()):
        q = p**e
        xp = solve_mod_prime_power(A, b, p, e)
        if xp is None:
            return None
        # combine x mod `mod` with xp mod q
        t = (xp - x) * pow(mod, -1, q) % q
        x = x + mod * t
        mod *= q
    return x % M


def solve_coboundary(target: Cochain3, K: FinAbGroup | None = None) -> Cochain2:
    """A normalized J with dJ = target, or NotCoboundary."""
    K = target.group if K is None else K
    if K != target.group:
        raise ValueError("target lives on a different group")
    N = K.order
    T = target.table
    k = int(np.max(target.modulus // np.gcd(T, target.modulus))) if N > 1 else 1
    M = k * K.exponent
    if N == 1:
        return Cochain2.trivial(K)
    mt = mul_table(K)
    nz = np.arange(1, N)
    a, b_, c = np.meshgrid(nz, nz, nz, indexing="ij")
    a, b_, c = a.ravel(), b_.ravel(), c.ravel()
    n_unk = (N - 1) ** 2

    def var(x, y):
        return (x - 1) * (N - 1) + (y - 1)

    rows = np.arange(a.size)
    A = np.zeros((a.size, n_unk), dtype=np.int64)
    # J(b,c) + J(a,bc) - J(ab,c) - J(a,b); terms with a 1-argument vanish
    np.add.at(A, (rows, var(b_, c)), 1)
    bc, ab = mt[b_, c], mt[a, b_]
    m1 = bc != 0
    np.add.at(A, (rows[m1], var(a[m1], bc[m1])), 1)
    m2 = ab != 0
    np.add.at(A, (rows[m2], var(ab[m2], c[m2])), -1)
    np.add.at(A, (rows, var(a, b_)), -1)
    rhs = (T[a, b_, c] * M // target.modulus) % M
    sol = solve_mod(A % M, rhs, M)
    if sol is None:
        raise NotCoboundary("target is not a coboundary on the given group")
    table = np.zeros((N, N), dtype=np.int64)
    table[1:, 1:] = sol.reshape(N - 1, N - 1)
    J = Cochain2(K, table, M)
    return reduce_cochain2(J)


def reduce_cochain2(J: Cochain2) -> Cochain2:
    """Shrink the modulus to the least common order of the values."""
    g = reduce(gcd, J.table.ravel().tolist(), J.modulus)
    return Cochain2(J.group, J.table // g, J.modulus // g)
