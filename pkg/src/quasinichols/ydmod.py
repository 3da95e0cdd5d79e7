"""Twisted Yetter-Drinfeld modules with monomial generator actions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from .cocycles import (
    Cochain2,
    Cochain3,
    Pullback,
    antisymmetry_ratio,
    coboundary,
    element_array,
    element_index,
    phi_tilde_exponents,
)
from .exact_scalars import Cyclotomic, Phase, nullspace
from .groups import Element, FinAbGroup, GroupHom, Section, generated_subgroup


class ModuleError(ValueError):
    pass


# --- monomial matrices -------------------------------------------------------


class Monomial:
    """Monomial matrix: column j maps to ``zeta_M**exps[j]`` times basis vector ``targets[j]``."""

    __slots__ = ("targets", "exps", "modulus")

    def __init__(self, targets, exps, modulus: int = 1):
        self.targets = np.asarray(targets, dtype=np.int64)
        self.exps = np.asarray(exps, dtype=np.int64) % modulus
        self.modulus = int(modulus)

    @classmethod
    def identity(cls, n: int) -> "Monomial":
        return cls(np.arange(n), np.zeros(n, dtype=np.int64), 1)

    @classmethod
    def from_phases(cls, targets: Sequence[int], phases: Sequence[Phase]) -> "Monomial":
        M = reduce(lcm, (p.den for p in phases), 1)
        return cls(targets, [p.num * (M // p.den) for p in phases], M)

    @classmethod
    def diagonal(cls, phases: Sequence[Phase]) -> "Monomial":
        return cls.from_phases(range(len(phases)), phases)

    @property
    def size(self) -> int:
        return len(self.targets)

    def phase(self, j: int) -> Phase:
        return Phase(int(self.exps[j]), self.modulus)

    def phases(self) -> list[Phase]:
        return [self.phase(j) for j in range(self.size)]

    def lifted(self, M: int) -> np.ndarray:
        if M % self.modulus:
            raise ValueError("modulus does not divide the target")
        return self.exps * (M // self.modulus)

    def __matmul__(self, other: "Monomial") -> "Monomial":
        """Composition: apply ``other`` first."""
        M = lcm(self.modulus, other.modulus)
        exps = other.lifted(M) + self.lifted(M)[other.targets]
        return Monomial(self.targets[other.targets], exps, M)

    def scaled(self, exps, modulus: int) -> "Monomial":
        """Multiply column j by ``zeta_modulus**exps[j]``."""
        M = lcm(self.modulus, modulus)
        extra = np.asarray(exps, dtype=np.int64) * (M // modulus)
        return Monomial(self.targets, self.lifted(M) + extra, M)

    def inverse(self) -> "Monomial":
        inv_t = np.empty_like(self.targets)
        inv_t[self.targets] = np.arange(self.size)
        return Monomial(inv_t, -self.exps[inv_t], self.modulus)

    def reduced(self) -> "Monomial":
        g = reduce(np.gcd, self.exps.tolist(), self.modulus)
        return Monomial(self.targets, self.exps // g, self.modulus // g)

    def is_scalar(self) -> Phase | None:
        if self.size == 0 or np.any(self.targets != np.arange(self.size)):
            return None
        if np.any(self.exps != self.exps[0]):
            return None
        return self.phase(0)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        if self.size != other.size or np.any(self.targets != other.targets):
            return False
        M = lcm(self.modulus, other.modulus)
        return bool(np.all(self.lifted(M) == other.lifted(M)))

    def __hash__(self):
        r = self.reduced()
        return hash((r.targets.tobytes(), r.exps.tobytes(), r.modulus))

    def to_matrix(self) -> list[list[Cyclotomic]]:
        """Dense matrix over the cyclotomic field (rows = targets)."""
        n, M = self.size, self.modulus
        zero = Cyclotomic.zero(M)
        rows = [[zero] * n for _ in range(n)]
        for j in range(n):
            rows[int(self.targets[j])][j] = Cyclotomic.from_phase(self.phase(j), M)
        return rows

    def to_json(self) -> list[dict]:
        return [
            {"col": j, "row": int(self.targets[j]), "phase": str(self.phase(j))}
            for j in range(self.size)
        ]

    @classmethod
    def from_json(cls, n: int, entries: list[dict]) -> "Monomial":
        targets: list[int | None] = [None] * n
        phases = [Phase(0)] * n
        for e in entries:
            j = int(e["col"])
            if targets[j] is not None:
                raise ModuleError(f"column {j} given twice")
            targets[j] = int(e["row"])
            phases[j] = Phase.parse(e.get("phase", "0"))
        if any(t is None for t in targets) or sorted(targets) != list(range(n)):
            raise ModuleError("action entries do not form a monomial matrix")
        return cls.from_phases(targets, phases)

    def __repr__(self):
        cols = ", ".join(f"{j}->{t}:{self.phase(j)}" for j, t in enumerate(self.targets))
        return f"Monomial({cols})"


# --- modules -----------------------------------------------------------------


class YDModule:
    """G-graded space with projective actions of the standard generators of G."""

    def __init__(
        self,
        group: FinAbGroup,
        cocycle: Cochain3,
        degrees: Sequence[Sequence[int]],
        gen_actions: Sequence[Monomial],
        components: Sequence[Sequence[int]] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if cocycle.group != group:
            raise ModuleError("cocycle lives on a different group")
        self.group = group
        self.cocycle = cocycle
        self.degrees = tuple(group.check(d) for d in degrees)
        n = len(self.degrees)
        if len(gen_actions) != group.rank:
            raise ModuleError(f"need {group.rank} generator actions, got {len(gen_actions)}")
        for a in gen_actions:
            if a.size != n:
                raise ModuleError("generator action has the wrong size")
            for j in range(n):
                if self.degrees[int(a.targets[j])] != self.degrees[j]:
                    raise ModuleError("generator action does not preserve the grading")
        self.gen_actions = tuple(gen_actions)
        self.components = tuple(tuple(c) for c in (components or [range(n)]))
        if sorted(i for c in self.components for i in c) != list(range(n)):
            raise ModuleError("components must partition the basis")
        self.labels = tuple(labels) if labels else tuple(f"v{j + 1}" for j in range(n))
        self._acts: dict[Element, Monomial] = {}
        self._tilde: dict[tuple, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @cached_property
    def degree_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64).reshape(self.dim, self.group.rank)

    def tilde_exps(self, e: Element, f: Element) -> np.ndarray:
        """Exponents of Phi~_{deg(v_j)}(e, f), one per basis vector."""
        key = (e, f)
        if key not in self._tilde:
            D = self.degree_array
            self._tilde[key] = phi_tilde_exponents(
                self.cocycle, D, np.asarray(e)[None, :], np.asarray(f)[None, :]
            )
        return self._tilde[key]

    def act(self, x: Sequence[int]) -> Monomial:
        """Action of an arbitrary element via its canonical factorization."""
        G = self.group
        x = G.check(tuple(x))
        if x in self._acts:
            return self._acts[x]
        M = self.cocycle.modulus
        if x == G.identity:
            res = Monomial.identity(self.dim)
        else:
            l = next(k for k, v in enumerate(x) if v)
            head = tuple(v if k == l else 0 for k, v in enumerate(x))
            rest = tuple(0 if k <= l else v for k, v in enumerate(x))
            if rest != G.identity:
                # (head rest) . v = Phi~(head, rest)^-1 head . (rest . v)
                res = (self.act(head) @ self.act(rest)).scaled(-self.tilde_exps(head, rest), M)
            else:
                g = G.generator(l)
                prev = G.power(g, x[l] - 1)
                res = self.gen_actions[l]
                if prev != G.identity:
                    res = (res @ self.act(prev)).scaled(-self.tilde_exps(g, prev), M)
        self._acts[x] = res
        return res

    def verify_projective_law(self) -> bool:
        """e.(f.v) = Phi~_deg(v)(e,f) (ef).v for all e, f in G."""
        G = self.group
        for e in G.elements:
            ae = self.act(e)
            for f in G.elements:
                lhs = ae @ self.act(f)
                rhs = self.act(G.mul(e, f)).scaled(self.tilde_exps(e, f), self.cocycle.modulus)
                if lhs != rhs:
                    return False
        return True

    def support_group(self) -> list[Element]:
        return generated_subgroup(self.group, sorted(set(self.degrees)))

    def summand(self, k: int) -> "YDModule":
        idx = list(self.components[k])
        return self.restrict(idx)

    def restrict(self, idx: Sequence[int]) -> "YDModule":
        """Submodule spanned by the basis vectors ``idx`` (must be stable)."""
        pos = {j: k for k, j in enumerate(idx)}
        acts = []
        for a in self.gen_actions:
            try:
                t = [pos[int(a.targets[j])] for j in idx]
            except KeyError:
                raise ModuleError("basis subset is not stable under the action") from None
            acts.append(Monomial(t, a.exps[idx], a.modulus))
        comps = [[pos[j] for j in c] for c in self.components if set(c) <= set(idx)]
        return YDModule(
            self.group,
            self.cocycle,
            [self.degrees[j] for j in idx],
            acts,
            comps or None,
            [self.labels[j] for j in idx],
        )

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        from .serialize import cochain3_to_json

        return {
            "group": self.group.to_json(),
            "cocycle": cochain3_to_json(self.cocycle),
            "degrees": [list(d) for d in self.degrees],
            "actions": [a.to_json() for a in self.gen_actions],
            "components": [list(c) for c in self.components],
            "labels": list(self.labels),
        }

    def __repr__(self):
        return f"YDModule(dim={self.dim}, degrees={list(self.degrees)})"


def same_cochain(a: Cochain3, b: Cochain3) -> bool:
    if a.group != b.group:
        return False
    M = lcm(a.modulus, b.modulus)
    return bool(np.array_equal(a.table * (M // a.modulus), b.table * (M // b.modulus)))


def direct_sum(*modules: YDModule) -> YDModule:
    if not modules:
        raise ModuleError("empty direct sum")
    G, phi = modules[0].group, modules[0].cocycle
    for V in modules[1:]:
        if V.group != G:
            raise ModuleError("summands live over different groups")
        if V.cocycle is not phi and not same_cochain(V.cocycle, phi):
            raise ModuleError("summands live over different cocycles")
    degrees, comps, labels = [], [], []
    acts = [[] for _ in range(G.rank)]
    offset = 0
    for V in modules:
        degrees.extend(V.degrees)
        labels.extend(V.labels)
        comps.extend([[offset + j for j in c] for c in V.components])
        for l, a in enumerate(V.gen_actions):
            acts[l].append(a)
        offset += V.dim
    gen = []
    for parts in acts:
        M = reduce(lcm, (a.modulus for a in parts), 1)
        t, e, off = [], [], 0
        for a in parts:
            t.extend((a.targets + off).tolist())
            e.extend(a.lifted(M).tolist())
            off += a.size
        gen.append(Monomial(t, e, M))
    if len(set(labels)) != len(labels):
        labels = None
    return YDModule(G, phi, degrees, gen, comps, labels)


# --- simple modules ------------------------------------------------------------


def _power_product(phi: Cochain3, d: Element, g: Element, m: int, G: FinAbGroup) -> Phase:
    """prod_{i=1}^{m-1} Phi~_d(g, g^i)."""
    out = Phase(0)
    for i in range(1, m):
        e = phi_tilde_exponents(phi, np.asarray(d), np.asarray(g), np.asarray(G.power(g, i)))
        out = out * Phase(int(e), phi.modulus)
    return out


def simple_dimension(phi: Cochain3, g, g2, g3) -> int:
    """Order of Phi~_g(g2,g3)/Phi~_g(g3,g2)."""
    return antisymmetry_ratio(phi, g, g2, g3).order()


@dataclass
class SimpleYDSpec:
    """Data of a simple module of degree ``context[0]``.

    ``context`` lists standard generator indices (g1, g2, g3) with g1 the
    degree.  With ``balanced`` the cyclic generator acts by ``gamma`` on every
    step instead of only on the wrap-around.
    """

    context: tuple[int, int, int]
    alpha: Phase | None = None
    beta: Phase | None = None
    gamma: Phase | None = None
    dim: int | None = None
    balanced: bool = False


def _root(target: Phase, k: int, given: Phase | None, name: str) -> Phase:
    if given is None:
        return target.principal_root(k)
    if given**k != target:
        raise ModuleError(f"{name}={given} violates {name}^{k} = {target}")
    return given


def make_simple(G: FinAbGroup, phi: Cochain3, spec: SimpleYDSpec) -> YDModule:
    """Simple module from cyclic data on a rank-3 group."""
    if G.rank != 3 or sorted(spec.context) != [0, 1, 2]:
        raise ModuleError("context must be a permutation of the three standard generators")
    l1, l2, l3 = spec.context
    g1, g2, g3 = G.generator(l1), G.generator(l2), G.generator(l3)
    m1, m2, m3 = G.factors[l1], G.factors[l2], G.factors[l3]
    ratio = antisymmetry_ratio(phi, g1, g2, g3)
    n = ratio.order()
    if spec.dim is not None and spec.dim != n:
        raise ModuleError(f"dimension {spec.dim} does not match the ratio order {n}")
    if m2 % n or m3 % n:
        raise ModuleError("ratio order does not divide the generator orders")
    alpha = _root(_power_product(phi, g1, g1, m1, G), m1, spec.alpha, "alpha")
    beta = _root(_power_product(phi, g1, g2, m2, G), m2, spec.beta, "beta")
    gk = m3 if spec.balanced else m3 // n
    gamma = _root(_power_product(phi, g1, g3, m3, G), gk, spec.gamma, "gamma")
    acts: list[Monomial] = [None] * 3  # type: ignore[list-item]
    acts[l1] = Monomial.diagonal([alpha] * n)
    acts[l2] = Monomial.diagonal([beta * ratio ** i for i in range(n)])
    if spec.balanced:
        ph = [gamma] * n
    else:
        ph = [Phase(0)] * (n - 1) + [gamma]
    acts[l3] = Monomial.from_phases([(i + 1) % n for i in range(n)], ph)
    return YDModule(G, phi, [g1] * n, acts, [range(n)], [f"X{i + 1}" for i in range(n)])


def one_dim_module(
    G: FinAbGroup, phi: Cochain3, degree: Sequence[int], values: Sequence[Phase] | None = None
) -> YDModule:
    """1-dimensional module of the given degree; default generator values are least roots."""
    d = G.check(tuple(degree))
    vals = []
    for l, m in enumerate(G.factors):
        g = G.generator(l)
        target = _power_product(phi, d, g, m, G)
        vals.append(_root(target, m, None if values is None else values[l], f"value{l + 1}"))
    V = YDModule(G, phi, [d], [Monomial.diagonal([v]) for v in vals])
    if not V.verify_projective_law():
        raise ModuleError("Phi~ of this degree is not symmetric; no 1-dimensional module exists")
    return V


def classify_simple(V: YDModule) -> str:
    """diagonal, typeI, typeII or infinite for a simple module."""
    if len(V.components) != 1 or len(set(V.degrees)) != 1:
        raise ModuleError("classification needs a simple module")
    if V.dim == 1:
        return "diagonal"
    c = V.act(V.degrees[0]).is_scalar()
    if c is None:
        raise ModuleError("degree does not act by a scalar; module is not simple")
    if c == Phase(1, 2):
        return "typeI"
    if V.dim == 2 and c.order() == 3:
        return "typeII"
    return "infinite"


# --- standard bases ----------------------------------------------------------


@dataclass
class StandardBasis:
    """Joint eigenbasis: ``vectors[j]`` has degree ``degrees[j]`` and deg_i . Y_j = q[i][j] Y_j."""

    vectors: list[list[Cyclotomic]]
    degrees: list[Element]
    q: list[list[Phase]]
    eigen: list[dict[Element, Phase]] = field(repr=False, default_factory=list)


def _cycles(m: Monomial, idx: Sequence[int]) -> list[list[int]]:
    seen, out = set(), []
    for j in idx:
        if j in seen:
            continue
        cyc = [j]
        seen.add(j)
        k = int(m.targets[j])
        while k != j:
            cyc.append(k)
            seen.add(k)
            k = int(m.targets[k])
        out.append(cyc)
    return out


def _eigen_candidates(m: Monomial, idx: Sequence[int]) -> list[Phase]:
    cands = set()
    for cyc in _cycles(m, idx):
        prod_ = Phase(0)
        for j in cyc:
            prod_ = prod_ * m.phase(j)
        cands.update(prod_.roots(len(cyc)))
    return sorted(cands)


def _apply(m: Monomial, vec: list[Cyclotomic], idx: Sequence[int]) -> list[Cyclotomic]:
    pos = {j: k for k, j in enumerate(idx)}
    out = [Cyclotomic.zero() for _ in idx]
    for k, j in enumerate(idx):
        if vec[k]:
            t = pos[int(m.targets[j])]
            out[t] = out[t] + vec[k] * m.phase(j)
    return out


def _split(m: Monomial, space: list[list[Cyclotomic]], idx) -> list[tuple[Phase, list[list[Cyclotomic]]]]:
    """Decompose an m-stable subspace (given by a basis) into eigenspaces."""
    k = len(space)
    images = [_apply(m, v, idx) for v in space]
    out = []
    for lam in _eigen_candidates(m, idx):
        # (m - lam) sum_a c_a v_a = 0
        rows = [
            [images[a][r] - space[a][r] * lam for a in range(k)]
            for r in range(len(idx))
        ]
        ker = nullspace(rows)
        if ker:
            vecs = []
            for c in ker:
                vecs.append([sum((c[a] * space[a][r] for a in range(k)), Cyclotomic.zero()) for r in range(len(idx))])
            out.append((lam, vecs))
    if sum(len(v) for _, v in out) != k:
        return []
    return out


def has_standard_basis(V: YDModule) -> StandardBasis | None:
    """Joint eigenbasis for the support-group action, or None."""
    degs = sorted(set(V.degrees))
    acts = {d: V.act(d) for d in degs}
    for a in degs:
        for b in degs:
            if a < b and acts[a] @ acts[b] != acts[b] @ acts[a]:
                return None
    # blocks: connected under all degree actions
    parent = list(range(V.dim))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in acts.values():
        for j in range(V.dim):
            parent[find(j)] = find(int(m.targets[j]))
    blocks: dict[int, list[int]] = {}
    for j in range(V.dim):
        blocks.setdefault(find(j), []).append(j)
    vectors, vdegs, eigen = [], [], []
    for idx in sorted(blocks.values()):
        one = Cyclotomic.from_int(1)
        spaces = [({}, [[one if r == c else Cyclotomic.zero() for r in range(len(idx))] for c in range(len(idx))])]
        for d in degs:
            nxt = []
            for ev, sp in spaces:
                parts = _split(acts[d], sp, idx)
                if not parts:
                    return None
                for lam, vecs in parts:
                    nxt.append(({**ev, d: lam}, vecs))
            spaces = nxt
        for ev, sp in spaces:
            for v in sp:
                full = [Cyclotomic.zero() for _ in range(V.dim)]
                for k, j in enumerate(idx):
                    full[j] = v[k]
                vectors.append(full)
                vdegs.append(V.degrees[idx[0]])
                eigen.append(ev)
    q = [[eigen[j][vdegs[i]] for j in range(len(vectors))] for i in range(len(vectors))]
    return StandardBasis(vectors, vdegs, q, eigen)


# --- braiding on tensor powers --------------------------------------------------


def tensor_basis(dim: int, n: int) -> np.ndarray:
    """All index tuples of V^{(x)n} in lexicographic order, shape (dim**n, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.asarray(list(product(range(dim), repeat=n)), dtype=np.int64)


def tuple_index(tuples: np.ndarray, dim: int) -> np.ndarray:
    n = tuples.shape[-1]
    w = dim ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return tuples @ w


def prefix_degrees(V: YDModule, tuples: np.ndarray) -> np.ndarray:
    """Array [..., k, :] = degree of the first k factors, for k = 0..n."""
    G = V.group
    D = V.degree_array[tuples]  # (..., n, rank)
    cs = np.cumsum(D, axis=-2) % np.asarray(G.factors)
    zero = np.zeros(D.shape[:-2] + (1, G.rank), dtype=np.int64)
    return np.concatenate([zero, cs], axis=-2)


def braiding_matrix(V: YDModule, n: int, i: int) -> Monomial:
    """The i-th braid generator (1-based) on the left-bracketed n-th tensor power."""
    if not 1 <= i <= n - 1:
        raise ModuleError(f"braid position {i} out of range for n={n}")
    phi, dim = V.cocycle, V.dim
    T = tensor_basis(dim, n)
    P = prefix_degrees(V, T)
    a = P[:, i - 1]
    x = V.degree_array[T[:, i - 1]]
    y = V.degree_array[T[:, i]]
    M = phi.modulus
    acts = [V.act(d) for d in V.degrees]
    M = reduce(lcm, (m.modulus for m in acts), M)
    # x . Y with x = deg of the left factor
    act_t = np.array([[int(acts[jx].targets[jy]) for jy in range(dim)] for jx in range(dim)], dtype=np.int64).reshape(dim, dim)
    act_e = np.array([[int(acts[jx].lifted(M)[jy]) for jy in range(dim)] for jx in range(dim)], dtype=np.int64).reshape(dim, dim)
    jx, jy = T[:, i - 1], T[:, i]
    new = T.copy()
    new[:, i - 1] = act_t[jx, jy]
    new[:, i] = jx
    ph = (
        act_e[jx, jy]
        + (phi.exponents(a, y, x) - phi.exponents(a, x, y)) * (M // phi.modulus)
    )
    return Monomial(tuple_index(new, dim), ph, M)


# --- twisting and change of base ---------------------------------------------------


def twist_module(V: YDModule, J: Cochain2) -> YDModule:
    """g ._J X = J(g,x)/J(x,g) g . X; the result lives over Phi * dJ."""
    if J.group != V.group:
        raise ModuleError("2-cochain lives on a different group")
    G = V.group
    D = V.degree_array
    acts = []
    for l, a in enumerate(V.gen_actions):
        g = np.asarray(G.generator(l))[None, :]
        e = J.exponents(g, D) - J.exponents(D, g)
        acts.append(a.scaled(e, J.modulus))
    return YDModule(G, V.cocycle * coboundary(J), V.degrees, acts, V.components, V.labels)


def change_base(V: YDModule, pi: GroupHom, iota: Callable) -> YDModule:
    """Re-house V over the domain of pi via degrees iota(deg) and actions through pi."""
    if pi.codomain != V.group:
        raise ModuleError("projection codomain is not the module's group")
    H = pi.domain
    for d in set(V.degrees):
        if pi(iota(d)) != d:
            raise ModuleError("section is not a right inverse of the projection")
    acts = [V.act(pi(H.generator(l))) for l in range(H.rank)]
    return YDModule(H, Pullback(V.cocycle, pi), [iota(d) for d in V.degrees], acts, V.components, V.labels)
