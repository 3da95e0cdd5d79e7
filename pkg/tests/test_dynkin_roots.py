from __future__ import annotations

import pytest

from quasinichols.constructions import cartan_type_a, diagonal_module, type_one_triple
from quasinichols.dynkin_roots import (
    Bicharacter,
    bosonization_dimension,
    cartan_matrix,
    dynkin_diagram,
    heights,
    hilbert_prediction,
    is_finite_type,
    nichols_dimension,
    reflect,
    root_system,
)
from quasinichols.exact_scalars import Phase
from quasinichols.groups import FinAbGroup
from quasinichols.ydmod import has_standard_basis

M1 = Phase(1, 2)
Z5 = Phase(1, 5)
ONE = Phase(0)


def bic(rows):
    return Bicharacter(tuple(tuple(Phase.parse(x) if isinstance(x, str) else x for x in r) for r in rows))


def cycle_pair_module():
    G = FinAbGroup((4, 4, 4))
    M = type_one_triple(G, beta=(Phase(0), Phase(1, 4), Phase(0)), gamma=(Phase(0), M1, M1))
    return M.restrict([2, 3, 4, 5])


@pytest.mark.parametrize(
    "q, c12",
    [
        ([[M1, M1], [ONE, M1]], -1),
        ([[M1, ONE], [ONE, M1]], 0),
        ([[Z5, Z5.inverse()], [ONE, Z5]], -1),
        ([[Phase(1, 3), Phase(1, 3)], [ONE, Phase(1, 3)]], -2),
    ],
)
def test_cartan_entries(q, c12):
    assert cartan_matrix(bic(q))[0][1] == c12


def test_cartan_undefined_for_trivial_vertex():
    assert cartan_matrix(bic([[ONE, M1], [ONE, M1]]))[0][1] is None


def test_reflection_is_involution_on_cartan_type():
    B = bic(cartan_type_a(3, Z5))
    for i in range(3):
        assert reflect(reflect(B, i), i).q == B.q


def test_diagram_examples():
    d = dynkin_diagram(bic([[M1]]))
    assert d.vertices == [M1] and d.edges == {}
    d = dynkin_diagram(bic([[M1, Phase(1, 3)], [Phase(2, 3), Phase(1, 3)]]))
    assert d.edges == {}
    d = dynkin_diagram(bic(cartan_type_a(3, M1)))
    assert set(d.edges) == {(0, 1), (1, 2)}
    assert "graph dynkin" in d.to_dot()


def test_diagram_canonical_ignores_order():
    a = bic([[M1, M1, ONE], [ONE, Z5, ONE], [ONE, ONE, M1]])
    b = bic([[M1, ONE, ONE], [ONE, M1, M1], [ONE, ONE, Z5]])
    assert dynkin_diagram(a).canonical() == dynkin_diagram(b).canonical()


def test_four_cycle_diagram():
    sb = has_standard_basis(cycle_pair_module())
    d = dynkin_diagram(sb)
    assert d.vertices == [M1] * 4
    # a 4-cycle, edge labels +-i
    assert len(d.edges) == 4
    deg = [sum(1 for e in d.edges if v in e) for v in range(4)]
    assert deg == [2, 2, 2, 2]
    assert {p.order() for p in d.edges.values()} == {4}


def test_roots_rank_one_and_a2():
    rs = root_system(bic([[M1]]))
    assert rs.finite and rs.positive_roots == [(1,)]
    rs = root_system(bic(cartan_type_a(2, M1)))
    assert rs.finite and rs.positive_roots == [(1, 0), (0, 1), (1, 1)]


def test_roots_a3():
    rs = root_system(bic(cartan_type_a(3, M1)))
    assert rs.finite and len(rs.positive_roots) == 6


def test_super_type_groupoid_is_finite():
    # q11 = -1 with q22 = zeta_3: objects differ but the root set stays {a1, a2, a1+a2}
    w = Phase(1, 3)
    B = bic([[M1, w.inverse()], [ONE, w]])
    rs = root_system(B)
    assert rs.finite
    assert rs.positive_roots == [(1, 0), (0, 1), (1, 1)]
    assert heights(rs, B) == [2, 3, 2]


def test_affine_pattern_is_infinite():
    rs = root_system(Bicharacter.from_standard_basis(has_standard_basis(cycle_pair_module())))
    assert not rs.finite and not rs.cap_hit


def test_caps_give_inconclusive():
    V = diagonal_module(cartan_type_a(2, Z5))
    v = is_finite_type(V, {"max_roots": 1})
    assert v.verdict == "inconclusive"
    assert v.dimension is None


def test_heights():
    assert heights(root_system(bic([[M1]])), bic([[M1]])) == [2]
    B = bic(cartan_type_a(2, M1))
    assert heights(root_system(B), B) == [2, 2, 2]
    B = bic([[Z5]])
    assert heights(root_system(B), B) == [5]


def test_dimension_and_series():
    B = bic([[M1]])
    rs = root_system(B)
    assert nichols_dimension(rs, heights(rs, B)) == 2
    assert hilbert_prediction(rs, heights(rs, B), 1) == [1, 1]
    B = bic(cartan_type_a(2, M1))
    rs = root_system(B)
    assert nichols_dimension(rs, heights(rs, B)) == 8
    # (1+t)^2 (1+t^2)
    assert hilbert_prediction(rs, heights(rs, B), 4) == [1, 2, 2, 2, 1]
    B = bic(cartan_type_a(2, Z5))
    rs = root_system(B)
    assert nichols_dimension(rs, heights(rs, B)) == 125
    assert hilbert_prediction(rs, heights(rs, B), 2)[2] == 4


def test_verdicts():
    assert is_finite_type(type_one_triple(FinAbGroup((2, 2, 2)))).verdict == "infinite"
    v = is_finite_type(diagonal_module([[M1]]))
    assert v.verdict == "finite" and v.dimension == 2
    v = is_finite_type(diagonal_module(cartan_type_a(2, Z5)))
    assert v.verdict == "finite" and v.dimension == 125
    assert is_finite_type(cycle_pair_module()).verdict == "infinite"
    # q_11 = 1: a polynomial generator
    assert is_finite_type(diagonal_module([[ONE]])).verdict == "infinite"


def test_bosonization():
    assert bosonization_dimension(diagonal_module([[M1]])) == 4
    assert bosonization_dimension(diagonal_module(cartan_type_a(2, M1))) == 32
    assert bosonization_dimension(diagonal_module(cartan_type_a(2, Z5))) == 3125
    with pytest.raises(ValueError):
        bosonization_dimension(type_one_triple(FinAbGroup((2, 2, 2))))


def test_bicharacter_json():
    B = bic(cartan_type_a(2, Z5))
    assert Bicharacter.from_json(B.to_json()).q == B.q
    with pytest.raises(ValueError):
        Bicharacter(((M1, M1),))
