"""Ready-made cocycles and modules used as fixtures throughout the package."""

from __future__ import annotations

from math import gcd, lcm
from typing import Sequence

from .cocycles import Cocycle3
from .exact_scalars import Phase
from .groups import FinAbGroup
from .ydmod import Monomial, SimpleYDSpec, YDModule, direct_sum, make_simple

MINUS = Phase(1, 2)


def sign_cocycle(G: FinAbGroup) -> Cocycle3:
    """Phi(a,b,c) = (-1)^(a_1 b_2 c_3) on a rank-3 group with even gcd of orders."""
    if G.rank != 3:
        raise ValueError("needs a rank-3 group")
    g = gcd(*G.factors)
    if g % 2:
        raise ValueError("gcd of the orders must be even")
    return Cocycle3.from_parts(G, c3={(0, 1, 2): g // 2})


def type_one_triple(
    G: FinAbGroup,
    beta: Sequence[Phase] = (Phase(0), Phase(0), Phase(1, 2)),
    gamma: Sequence[Phase] = (Phase(0), Phase(1, 2), Phase(1, 2)),
) -> YDModule:
    """U + V + W of type (I) with degrees e, f, g in the balanced bases.

    U: e.X = -X, f.X_1 = b1 X_1, f.X_2 = -b1 X_2, g swaps with c1.
    V: f.Y = -Y, g.Y_1 = b2 Y_1, g.Y_2 = -b2 Y_2, e swaps with c2.
    W: g.Z = -Z, f.Z_1 = b3 Z_1, f.Z_2 = -b3 Z_2, e swaps with c3.
    The defaults satisfy b2 b3 = b1 c2 = c1 c3 = -1.
    """
    phi = sign_cocycle(G)
    b1, b2, b3 = beta
    c1, c2, c3 = gamma
    U = make_simple(G, phi, SimpleYDSpec((0, 1, 2), MINUS, b1, c1, 2, balanced=True))
    V = make_simple(G, phi, SimpleYDSpec((1, 2, 0), MINUS, b2, c2, 2, balanced=True))
    W = make_simple(G, phi, SimpleYDSpec((2, 1, 0), MINUS, b3, c3, 2, balanced=True))
    for mod, name in ((U, "X"), (V, "Y"), (W, "Z")):
        mod.labels = (f"{name}1", f"{name}2")
    return direct_sum(U, V, W)


def diagonal_module(q: Sequence[Sequence[Phase]]) -> YDModule:
    """Diagonal braiding over Z_N^n with trivial cocycle, X_j of degree g_j and g_i.X_j = q_ij X_j."""
    n = len(q)
    N = lcm(*(p.den for row in q for p in row))
    G = FinAbGroup((N,) * n)
    phi = Cocycle3.trivial(G)
    acts = [Monomial.diagonal(list(row)) for row in q]
    return YDModule(
        G,
        phi,
        [G.generator(j) for j in range(n)],
        acts,
        [[j] for j in range(n)],
        [f"x{j + 1}" for j in range(n)],
    )


def cartan_type_a(n: int, vertex: Phase, edge: Phase | None = None) -> list[list[Phase]]:
    """Braiding matrix of an A_n chain: q_ii = vertex, q_{i,i+1} = edge (default vertex^-1), q_{i+1,i} = 1."""
    edge = vertex.inverse() if edge is None else edge
    q = [[Phase(0)] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = vertex
        if i + 1 < n:
            q[i][i + 1] = edge
    return q
