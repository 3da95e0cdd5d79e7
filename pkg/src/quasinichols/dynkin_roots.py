"""Diagonal braidings: generalized Dynkin diagrams, Weyl groupoid roots, heights."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations, permutations
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .exact_scalars import Phase
from .groups import Element
from .ydmod import StandardBasis, YDModule, has_standard_basis

DEFAULT_CAPS = {"max_objects": 1024, "max_roots": 512}


@dataclass(frozen=True)
class Bicharacter:
    """q[i][j] = chi(e_i, e_j)."""

    q: tuple[tuple[Phase, ...], ...]
    degrees: tuple[Element, ...] | None = None

    def __post_init__(self):
        q = tuple(tuple(row) for row in self.q)
        if any(len(row) != len(q) for row in q):
            raise ValueError("braiding matrix must be square")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_standard_basis(cls, sb: StandardBasis) -> "Bicharacter":
        return cls(tuple(tuple(r) for r in sb.q), tuple(sb.degrees))

    @property
    def rank(self) -> int:
        return len(self.q)

    def value(self, alpha: Sequence[int], beta: Sequence[int]) -> Phase:
        out = Phase(0)
        for i, a in enumerate(alpha):
            for j, b in enumerate(beta):
                if a and b:
                    out = out * self.q[i][j] ** (a * b)
        return out

    def q_alpha(self, alpha: Sequence[int]) -> Phase:
        return self.value(alpha, alpha)

    def qtilde(self, i: int, j: int) -> Phase:
        return self.q[i][j] * self.q[j][i]

    def to_json(self) -> dict:
        return {"q": [[str(p) for p in row] for row in self.q]}

    @classmethod
    def from_json(cls, data: dict) -> "Bicharacter":
        return cls(tuple(tuple(Phase.parse(s) for s in row) for row in data["q"]))


@dataclass
class DynkinDiagram:
    vertices: list[Phase]
    edges: dict[tuple[int, int], Phase]
    names: list[str] = field(default_factory=list)

    def to_dot(self) -> str:
        names = self.names or [f"v{i + 1}" for i in range(len(self.vertices))]
        lines = ["graph dynkin {"]
        for name, p in zip(names, self.vertices):
            lines.append(f'  "{name}" [label="{p}"];')
        for (i, j), p in sorted(self.edges.items()):
            lines.append(f'  "{names[i]}" -- "{names[j]}" [label="{p}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def canonical(self) -> tuple:
        """Invariant under vertex relabelling (used to compare diagrams)."""
        n = len(self.vertices)
        best = None
        for perm in permutations(range(n)):
            pos = {v: k for k, v in enumerate(perm)}
            key = (
                tuple(str(self.vertices[v]) for v in perm),
                tuple(sorted((min(pos[i], pos[j]), max(pos[i], pos[j]), str(p)) for (i, j), p in self.edges.items())),
            )
            if best is None or key < best:
                best = key
        return best

    def to_json(self) -> dict:
        return {
            "vertices": [str(p) for p in self.vertices],
            "edges": [[i, j, str(p)] for (i, j), p in sorted(self.edges.items())],
        }


def dynkin_diagram(data: StandardBasis | Bicharacter) -> DynkinDiagram:
    B = data if isinstance(data, Bicharacter) else Bicharacter.from_standard_basis(data)
    n = B.rank
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            t = B.qtilde(i, j)
            if not t.is_one():
                edges[(i, j)] = t
    return DynkinDiagram([B.q[i][i] for i in range(n)], edges, [f"Y{i + 1}" for i in range(n)])


def _cartan_entry(qii: Phase, qt: Phase) -> int | None:
    # (m+1)_q = 0 happens first at m = ord(q) - 1 when q != 1
    bound = qii.order() if not qii.is_one() else None
    m = 0
    while True:
        if (qii**m * qt).is_one():
            return -m
        if bound is not None and m + 1 == bound:
            return -m
        if bound is None and m >= qt.order():
            return None
        m += 1


def cartan_matrix(B: Bicharacter) -> list[list[int | None]]:
    """Generalized Cartan matrix; None marks an undefined entry."""
    n = B.rank
    out = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i][j] = _cartan_entry(B.q[i][i], B.qtilde(i, j))
    return out


def reflect(B: Bicharacter, i: int, c: Sequence[Sequence[int]] | None = None) -> Bicharacter:
    """q'_jk = q_jk q_ik^{-c_ij} q_ji^{-c_ik} q_ii^{c_ij c_ik}."""
    c = cartan_matrix(B) if c is None else c
    if any(x is None for x in c[i]):
        raise ValueError(f"Cartan row {i} is undefined")
    q = B.q
    n = B.rank
    new = [
        [
            q[j][k] * q[i][k] ** (-c[i][j]) * q[j][i] ** (-c[i][k]) * q[i][i] ** (c[i][j] * c[i][k])
            for k in range(n)
        ]
        for j in range(n)
    ]
    return Bicharacter(tuple(tuple(r) for r in new), B.degrees)


@dataclass
class RootSystem:
    finite: bool
    positive_roots: list[tuple[int, ...]]
    objects_visited: int
    cap_hit: bool
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "finite": self.finite,
            "positive_roots": [list(r) for r in self.positive_roots],
            "objects_visited": self.objects_visited,
            "cap_hit": self.cap_hit,
        }


def _reflect_root(c_row: Sequence[int], i: int, alpha: tuple[int, ...]) -> tuple[int, ...]:
    # s_i(e_j) = e_j - c_ij e_i
    shift = sum(cij * a for cij, a in zip(c_row, alpha))
    return tuple(a - shift if k == i else a for k, a in enumerate(alpha))


def _det(rows: list[list[int]]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n, det = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _principal_minors_positive(C: list[list[int]]) -> bool:
    """Finite type test for a generalized Cartan matrix."""
    n = len(C)
    return all(
        _det([[C[i][j] for j in idx] for i in idx]) > 0
        for k in range(1, n + 1)
        for idx in combinations(range(n), k)
    )


def object_closure(B: Bicharacter, max_objects: int) -> dict | None:
    """All objects reachable by reflections with their Cartan matrices, or None past the cap."""
    cart = {B.q: cartan_matrix(B)}
    todo = deque([B])
    while todo:
        obj = todo.popleft()
        c = cart[obj.q]
        for i in range(B.rank):
            if any(x is None for x in c[i]):
                continue
            nb = reflect(obj, i, c)
            if nb.q not in cart:
                if len(cart) >= max_objects:
                    return None
                cart[nb.q] = cartan_matrix(nb)
                todo.append(nb)
    return cart


def standard_cartan(B: Bicharacter, max_objects: int) -> list[list[int]] | None:
    """The common Cartan matrix when every reachable object has the same one."""
    cart = object_closure(B, max_objects)
    if cart is None:
        return None
    mats = {tuple(map(tuple, c)) for c in cart.values()}
    if len(mats) != 1:
        return None
    C = [list(r) for r in mats.pop()]
    if any(x is None for r in C for x in r):
        return None
    return C


def root_system(B: Bicharacter, caps: dict | None = None) -> RootSystem:
    """Real roots of the Weyl groupoid through B.

    Each object a carries a root set R(a) containing its simple roots (and
    their negatives); R(r_i(a)) absorbs s_i(R(a)).  The fixpoint R(B) is the
    set of images of simple roots under all reflection paths.
    """
    caps = {**DEFAULT_CAPS, **(caps or {})}
    n = B.rank
    C = standard_cartan(B, caps["max_objects"])
    if C is not None and not _principal_minors_positive(C):
        # standard groupoid: its Weyl group is that of C, infinite unless C is of finite type
        return RootSystem(False, [], len(object_closure(B, caps["max_objects"])), False,
                          "standard Cartan matrix not of finite type")
    simple = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    base = set(simple) | {tuple(-x for x in r) for r in simple}
    objs: dict = {B.q: B}
    cart: dict = {}
    R: dict = {B.q: set(base)}
    work = deque([B.q])
    queued = {B.q}

    def done(finite, cap_hit, reason=""):
        pos = sorted((r for r in R[B.q] if all(x >= 0 for x in r)), key=lambda r: (sum(r), tuple(-x for x in r)))
        return RootSystem(finite, pos, len(objs), cap_hit, reason)

    while work:
        key = work.popleft()
        queued.discard(key)
        obj = objs[key]
        if key not in cart:
            cart[key] = cartan_matrix(obj)
        c = cart[key]
        for i in range(n):
            if any(x is None for x in c[i]):
                return done(False, False, f"undefined Cartan entry at vertex {i + 1}")
            nq = reflect(obj, i, c).q
            if nq not in objs:
                if len(objs) >= caps["max_objects"]:
                    return done(False, True, "max_objects exceeded")
                objs[nq] = Bicharacter(nq, B.degrees)
                R[nq] = set(base)
            images = {_reflect_root(c[i], i, r) for r in R[key]}
            new_roots = images - R[nq]
            if new_roots:
                for r in new_roots:
                    if any(x > 0 for x in r) and any(x < 0 for x in r):
                        R[nq] |= new_roots
                        return done(False, False, "mixed-sign root")
                R[nq] |= new_roots
                if len(R[nq]) > 2 * caps["max_roots"]:
                    return done(False, True, "max_roots exceeded")
                if nq not in queued:
                    work.append(nq)
                    queued.add(nq)
    return done(True, False)


def heights(rs: RootSystem, B: Bicharacter) -> list[int | None]:
    """Order of q_alpha per positive root; None for q_alpha = 1 (infinite height)."""
    out = []
    for a in rs.positive_roots:
        qa = B.q_alpha(a)
        out.append(None if qa.is_one() else qa.order())
    return out


def nichols_dimension(rs: RootSystem, hts: Sequence[int | None]) -> int:
    if not rs.finite or any(h is None for h in hts):
        raise ValueError("dimension needs a finite root system with finite heights")
    return prod(hts)


def hilbert_prediction(rs: RootSystem, hts: Sequence[int | None], N: int) -> list[int]:
    """Coefficients up to t^N of prod_alpha (1 + t^|a| + ... + t^{(ht-1)|a|})."""
    if any(h is None for h in hts):
        raise ValueError("infinite height")
    series = np.zeros(N + 1, dtype=object)
    series[0] = 1
    for a, h in zip(rs.positive_roots, hts):
        d = sum(a)
        fac = np.zeros(N + 1, dtype=object)
        for k in range(h):
            if k * d <= N:
                fac[k * d] = 1
        series = np.convolve(series, fac)[: N + 1]
    return [int(x) for x in series]


@dataclass
class Verdict:
    verdict: str  # finite | infinite | inconclusive
    reason: str
    standard_basis: StandardBasis | None = None
    bicharacter: Bicharacter | None = None
    roots: RootSystem | None = None
    heights: list[int | None] | None = None

    @property
    def dimension(self) -> int | None:
        if self.verdict != "finite":
            return None
        return nichols_dimension(self.roots, self.heights)


def is_finite_type(V: YDModule, caps: dict | None = None) -> Verdict:
    sb = has_standard_basis(V)
    if sb is None:
        return Verdict("infinite", "no standard basis: the cocycle is nonabelian on the support group")
    B = Bicharacter.from_standard_basis(sb)
    rs = root_system(B, caps)
    if rs.cap_hit:
        return Verdict("inconclusive", rs.reason, sb, B, rs)
    if not rs.finite:
        return Verdict("infinite", rs.reason, sb, B, rs)
    hts = heights(rs, B)
    if any(h is None for h in hts):
        return Verdict("infinite", "a positive root has q_alpha = 1", sb, B, rs, hts)
    return Verdict("finite", "finite arithmetic root system", sb, B, rs, hts)


def bosonization_dimension(V: YDModule, caps: dict | None = None) -> int:
    v = is_finite_type(V, caps)
    if v.verdict != "finite":
        raise ValueError(f"verdict is {v.verdict}: {v.reason}")
    return v.dimension * V.group.order
