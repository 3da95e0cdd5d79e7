from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasinichols.exact_scalars import (
    Cyclotomic,
    Phase,
    cyc_rank,
    cyclotomic_poly,
    euler_phi,
    integer_cyclotomic_rank,
    nullspace,
    power_table,
)

phases = st.builds(Phase, st.integers(-50, 50), st.integers(1, 24))


@pytest.mark.parametrize(
    "a, b, expected",
    [("1/2", "1/2", "0"), ("1/3", "1/3", "2/3"), ("1/4", "5/6", "1/12")],
)
def test_phase_mul(a, b, expected):
    assert Phase.parse(a) * Phase.parse(b) == Phase.parse(expected)


@pytest.mark.parametrize("p, order", [("1/2", 2), ("0", 1), ("3/12", 4)])
def test_phase_order(p, order):
    assert Phase.parse(p).order() == order


def test_phase_serialization():
    assert str(Phase(0)) == "0"
    assert str(Phase(3, 12)) == "1/4"
    assert str(Phase(-1, 4)) == "3/4"
    assert Phase.parse(" 2/4 ") == Phase(1, 2)


def test_phase_rejects_bad_denominator():
    with pytest.raises(ValueError):
        Phase(1, 0)


def test_phase_immutable():
    p = Phase(1, 3)
    with pytest.raises(AttributeError):
        p.num = 2


@given(phases, phases)
def test_phase_group_laws(a, b):
    assert a * b == b * a
    assert (a * b) / b == a
    assert a * a.inverse() == Phase(0)
    assert (a ** a.order()).is_one()


@given(phases, st.integers(1, 6))
def test_roots_are_roots(a, n):
    rs = a.roots(n)
    assert len(set(rs)) == n
    assert all(r ** n == a for r in rs)
    assert a.principal_root(n) == rs[0]


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert [euler_phi(n) for n in (1, 2, 5, 12)] == [1, 1, 4, 4]


def test_power_table_wraps():
    pt = power_table(5)
    # zeta^4 = -1 - z - z^2 - z^3
    assert pt[4].tolist() == [-1, -1, -1, -1]
    with pytest.raises(ValueError):
        pt[0, 0] = 7


@given(phases, phases)
def test_embedding_is_multiplicative(a, b):
    ca, cb = Cyclotomic.from_phase(a), Cyclotomic.from_phase(b)
    assert ca * cb == Cyclotomic.from_phase(a * b)


@given(phases, phases)
def test_embedding_is_injective(a, b):
    assert (Cyclotomic.from_phase(a) == Cyclotomic.from_phase(b)) == (a == b)


def test_cyclotomic_field_ops():
    z = Cyclotomic.from_phase(Phase(1, 3))
    one = Cyclotomic.from_int(1)
    # 1 + z + z^2 = 0
    assert (one + z + z * z).is_zero()
    assert z * z.inverse() == one
    assert (z / z) == one
    half = Cyclotomic.from_int(Fraction(1, 2))
    assert half + half == one
    assert z.galois(2) == z * z


def test_cyclotomic_lift_mixed_conductors():
    i = Cyclotomic.from_phase(Phase(1, 4))
    w = Cyclotomic.from_phase(Phase(1, 3))
    assert (i * w) == Cyclotomic.from_phase(Phase(7, 12))
    assert (i * i + 1).is_zero()


def test_rank_examples():
    minus = Phase(1, 2)
    i = Phase(1, 4)
    assert cyc_rank([[Cyclotomic.from_int(1) + Cyclotomic.from_phase(minus)]]) == 0
    assert cyc_rank([[1, 0], [0, 1]]) == 2
    assert cyc_rank([[1, i], [i, minus]]) == 1


def test_nullspace():
    i = Phase(1, 4)
    ker = nullspace([[1, i], [i, Phase(1, 2)]])
    assert len(ker) == 1
    v = ker[0]
    assert (Cyclotomic.from_int(1) * v[0] + Cyclotomic.from_phase(i) * v[1]).is_zero()


def test_integer_rank_matches_elimination():
    rng = np.random.default_rng(7)
    for N in (3, 4, 5, 12):
        deg = euler_phi(N)
        for _ in range(5):
            r, c = rng.integers(1, 5, size=2)
            counts = rng.integers(-2, 3, size=(r, c, N))
            # force a dependent row now and then
            if r > 1:
                counts[-1] = counts[0]
            coeffs = counts @ power_table(N)
            rows = [[Cyclotomic(N, coeffs[a, b].tolist()) for b in range(c)] for a in range(r)]
            assert coeffs.shape[-1] == deg
            assert integer_cyclotomic_rank(coeffs, N) == cyc_rank(rows)
