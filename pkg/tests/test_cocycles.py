from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quasinichols.cocycles import (
    Cochain2,
    Cocycle3,
    NotCoboundary,
    TableCochain3,
    antisymmetry_ratio,
    coboundary,
    enumerate_cocycles,
    is_abelian,
    phi_tilde,
    phi_tilde_table,
    pullback,
    solve_coboundary,
    verify_3cocycle,
)
from quasinichols.exact_scalars import Phase
from quasinichols.groups import FinAbGroup, GroupHom, generated_subgroup, hat_group

MINUS = Phase(1, 2)
Z2 = FinAbGroup((2,))
Z2_3 = FinAbGroup((2, 2, 2))


def same_values(a, b) -> bool:
    """Pointwise equality of two cochains on the same group."""
    from math import lcm

    L = lcm(a.modulus, b.modulus)
    return np.array_equal(a.table * (L // a.modulus) % L, b.table * (L // b.modulus) % L)


def test_enumeration_counts():
    assert len(list(enumerate_cocycles(Z2))) == 2
    assert len(list(enumerate_cocycles(FinAbGroup((2, 2))))) == 8
    assert len(list(enumerate_cocycles(Z2_3))) == 128
    assert len(list(enumerate_cocycles(FinAbGroup((2, 4))))) == 2 * 4 * 2


def test_sign_cocycle_value():
    phi = Cocycle3.from_parts(Z2_3, c3={(0, 1, 2): 1})
    assert phi((1, 0, 0), (0, 1, 0), (0, 0, 1)) == MINUS
    assert phi((0, 1, 0), (1, 0, 0), (0, 0, 1)).is_one()


def test_z4_value():
    phi = Cocycle3.from_parts(FinAbGroup((4,)), c1=[2])
    assert phi((1,), (3,), (3,)) == MINUS


@pytest.mark.parametrize("factors", [(2,), (3,), (2, 2), (2, 3)])
def test_normalized(factors):
    G = FinAbGroup(factors)
    for phi in enumerate_cocycles(G):
        T = phi.table
        assert not T[0].any() and not T[:, 0].any() and not T[:, :, 0].any()


def test_verify_examples():
    assert all(verify_3cocycle(phi) for phi in enumerate_cocycles(FinAbGroup((2, 2))))
    assert verify_3cocycle(Cocycle3.trivial(Z2_3))
    T = np.zeros((2, 2, 2), dtype=np.int64)
    T[1, 1, 0] = 1  # breaks normalization and the identity
    assert not verify_3cocycle(TableCochain3(Z2, T, 2))
    T = np.zeros((2, 2, 2), dtype=np.int64)
    T[1, 1, 1] = 1  # this one is the c1 = 1 cocycle, hence fine
    assert verify_3cocycle(TableCochain3(Z2, T, 2))


def test_verify_detects_single_flip():
    phi = Cocycle3.from_parts(FinAbGroup((2, 2)), c1=[1, 0], c2={(0, 1): 1})
    T = phi.table.copy()
    T[3, 2, 1] = (T[3, 2, 1] + 1) % 2
    assert not verify_3cocycle(TableCochain3(phi.group, T, phi.modulus))


def test_phi_tilde_examples():
    triv = Cocycle3.trivial(Z2_3)
    assert not phi_tilde_table(triv).any()
    phi = Cocycle3.from_parts(Z2_3, c3={(0, 1, 2): 1})
    g1, g2, g3 = Z2_3.generators()
    t = phi_tilde(phi, g1)
    assert t(g2, g3) == MINUS
    assert t(g3, g2).is_one()


def test_phi_tilde_table_matches_pointwise():
    G = FinAbGroup((2, 3))
    for phi in enumerate_cocycles(G):
        P = phi_tilde_table(phi)
        for gi, g in enumerate(G.elements):
            t = phi_tilde(phi, g)
            for xi, x in enumerate(G.elements):
                for yi, y in enumerate(G.elements):
                    assert t(x, y) == Phase(int(P[gi, xi, yi]), phi.modulus)


def test_abelianness():
    for phi in enumerate_cocycles(FinAbGroup((4,))):
        assert is_abelian(phi)
    phi = Cocycle3.from_parts(Z2_3, c3={(0, 1, 2): 1})
    assert not is_abelian(phi)
    assert is_abelian(phi, generated_subgroup(Z2_3, [(1, 0, 0), (0, 1, 0)]))
    with pytest.raises(ValueError):
        is_abelian(phi, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])


def test_antisymmetry_ratio():
    phi = Cocycle3.from_parts(Z2_3, c3={(0, 1, 2): 1})
    g1, g2, g3 = Z2_3.generators()
    assert antisymmetry_ratio(phi, g1, g2, g3) == MINUS
    assert antisymmetry_ratio(phi, g1, (0, 0, 0), g3).is_one()
    Z3_3 = FinAbGroup((3, 3, 3))
    psi = Cocycle3.from_parts(Z3_3, c3={(0, 1, 2): 1})
    r = antisymmetry_ratio(psi, *Z3_3.generators())
    assert r.order() == 3


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_coboundaries_are_cocycles(data):
    G = FinAbGroup((2, 2))
    N = G.order
    vals = data.draw(st.lists(st.integers(0, 3), min_size=N * N, max_size=N * N))
    T = np.array(vals).reshape(N, N)
    T[0, :] = 0
    T[:, 0] = 0
    J = Cochain2(G, T, 4)
    assert verify_3cocycle(coboundary(J))


def test_trivial_coboundary():
    dJ = coboundary(Cochain2.trivial(Z2_3))
    assert not (dJ.table % dJ.modulus).any()


def test_pullback_identity_and_hat():
    G = FinAbGroup((2, 2))
    phi = Cocycle3.from_parts(G, c1=[1, 1], c2={(0, 1): 1})
    assert same_values(pullback(phi, GroupHom.identity(G)), phi)
    H, pi, _ = hat_group(Z2)
    psi = pullback(Cocycle3.from_parts(Z2, c1=[1]), pi)
    assert psi((1,), (1,), (1,)) == MINUS
    assert verify_3cocycle(psi)


def test_solve_trivial_target():
    J = solve_coboundary(Cocycle3.trivial(FinAbGroup((2, 2))))
    assert not (J.table % J.modulus).any()


def test_solve_on_hat_group():
    H, pi, _ = hat_group(Z2)
    target = pullback(Cocycle3.from_parts(Z2, c1=[1]), pi)
    J = solve_coboundary(target)
    assert J.group == H
    assert same_values(coboundary(J), target)


def test_solve_fails_for_nontrivial_class():
    with pytest.raises(NotCoboundary):
        solve_coboundary(Cocycle3.from_parts(Z2, c1=[1]))
    with pytest.raises(NotCoboundary):
        solve_coboundary(Cocycle3.from_parts(FinAbGroup((3,)), c1=[2]))


def test_solve_recovers_a_coboundary():
    G = FinAbGroup((2, 3))
    rng = np.random.default_rng(3)
    T = rng.integers(0, 6, size=(6, 6))
    T[0, :] = 0
    T[:, 0] = 0
    target = coboundary(Cochain2(G, T, 6))
    assert same_values(coboundary(solve_coboundary(target)), target)


def test_cochain2_json_roundtrip():
    H, pi, _ = hat_group(Z2)
    J = solve_coboundary(pullback(Cocycle3.from_parts(Z2, c1=[1]), pi))
    back = Cochain2.from_json(J.to_json())
    assert same_values(coboundary(back), coboundary(J))
    with pytest.raises(ValueError):
        Cochain2(Z2, [[1, 0], [0, 0]], 2)
