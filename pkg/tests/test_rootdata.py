"""Diagram tables: derived marks, comarks, symmetrizers, weight arithmetic."""

from fractions import Fraction

import pytest

from krverify.rootdata import FAMILIES, WeightVec, diagram

# Independent transcription of the diagram adjacency (node pairs only), used
# as the oracle for the simple-root columns.
ADJACENCY = {
    "E6_1": {(0, 2), (2, 4), (1, 3), (3, 4), (4, 5), (5, 6)},
    "E7_1": {(0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)},
    "E8_1": {(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)},
    "F4_1": {(0, 1), (1, 2), (2, 3), (3, 4)},
    "E6_2": {(0, 1), (1, 2), (2, 3), (3, 4)},
}

EXPECTED = {
    # family: (marks, comarks, symmetrizers)
    "E6_1": ((1, 1, 2, 2, 3, 2, 1), (1, 1, 2, 2, 3, 2, 1), (1,) * 7),
    "E7_1": ((1, 2, 2, 3, 4, 3, 2, 1), (1, 2, 2, 3, 4, 3, 2, 1), (1,) * 8),
    "E8_1": ((1, 2, 3, 4, 6, 5, 4, 3, 2), (1, 2, 3, 4, 6, 5, 4, 3, 2), (1,) * 9),
    "F4_1": ((1, 2, 3, 4, 2), (1, 2, 3, 2, 1), (2, 2, 2, 1, 1)),
    "E6_2": ((1, 2, 3, 2, 1), (1, 2, 3, 4, 2), (1, 1, 1, 2, 2)),
}


@pytest.mark.parametrize("family", FAMILIES)
def test_cartan_matches_adjacency(family):
    d = diagram(family)
    n = len(d.nodes)
    for i in range(n):
        for j in range(n):
            if i == j:
                assert d.cartan[i][j] == 2
            elif (i, j) in ADJACENCY[family] or (j, i) in ADJACENCY[family]:
                assert d.cartan[i][j] in (-1, -2)
            else:
                assert d.cartan[i][j] == 0


@pytest.mark.parametrize("family", FAMILIES)
def test_derived_tables(family):
    d = diagram(family)
    marks, comarks, sym = EXPECTED[family]
    assert d.marks == marks
    assert d.comarks == comarks
    assert d.symmetrizers == sym
    n = len(d.nodes)
    assert all(sum(d.cartan[i][j] * d.marks[j] for j in range(n)) == 0 for i in range(n))
    assert all(sum(d.comarks[i] * d.cartan[i][j] for i in range(n)) == 0 for j in range(n))


def test_twisted_arrow_orientations():
    # A_23 = -1 for the untwisted double edge, A_32 = -1 for the twisted one.
    f4 = diagram("F4_1")
    assert f4.cartan[2][3] == -1 and f4.cartan[3][2] == -2
    e62 = diagram("E6_2")
    assert e62.cartan[2][3] == -2 and e62.cartan[3][2] == -1


def test_pairing_examples():
    d = diagram("E6_1")
    assert d.pairing(3, d.fundamental(3)) == 1
    assert d.pairing(2, d.fundamental(3)) == 0
    for i in d.nodes:
        for j in d.nodes:
            assert d.pairing(i, d.simple_root(j)) == d.cartan[i][j]
    assert d.pairing(0, d.varpi(3)) == -2
    with pytest.raises(ValueError):
        d.pairing(9, d.fundamental(3))


def test_simple_root_columns():
    d = diagram("E6_1")
    assert d.simple_root(0).lam == tuple(d.cartan[i][0] for i in range(7))
    assert d.simple_root(0).delta == 1
    assert d.simple_root(4).delta == 0
    with pytest.raises(ValueError):
        d.simple_root(7)


@pytest.mark.parametrize("family", FAMILIES)
def test_delta_is_marks_combination(family):
    d = diagram(family)
    delta = d.delta_weight()
    assert all(c == 0 for c in delta.lam)
    assert delta.delta == 1


@pytest.mark.parametrize("family", FAMILIES)
def test_varpi_level_zero(family):
    d = diagram(family)
    for r in d.classical_nodes:
        w = d.varpi(r)
        assert d.level(w) == 0
        assert w.lam[r] == 1 and w.lam[0] == -d.comarks[r]
    with pytest.raises(ValueError):
        d.varpi(0)


def test_varpi_examples():
    assert diagram("E6_1").varpi(3).lam == (-2, 0, 0, 1, 0, 0, 0)
    assert diagram("F4_1").varpi(4).lam == (-1, 0, 0, 0, 1)


def test_comarks_match_stated_extremal_weights():
    # Lambda_0 coefficient of s*varpi_r must reproduce the stated weights.
    stated = {("E6_1", 3): 2, ("E6_1", 5): 2, ("E7_1", 2): 2, ("E7_1", 6): 2,
              ("E8_1", 1): 2, ("F4_1", 4): 1, ("E6_2", 4): 2}
    for (family, r), coeff in stated.items():
        d = diagram(family)
        for s in (1, 2, 3):
            assert d.varpi(r).scale(s).lam[0] == -coeff * s


@pytest.mark.parametrize("family", FAMILIES)
def test_classical_projection_of_alpha0(family):
    # alpha_0 = (delta - sum_{i>0} a_i alpha_i) / a_0 in the classical quotient
    d = diagram(family)
    a = d.marks
    lhs = d.simple_root(0).classical()
    acc = [Fraction(0)] * (len(d.nodes) - 1)
    for i, node in enumerate(d.classical_nodes):
        root = d.simple_root(node).classical()
        acc = [x - Fraction(a[node], a[0]) * y for x, y in zip(acc, root)]
    assert tuple(acc) == tuple(Fraction(x) for x in lhs)


def test_weight_arithmetic():
    d = diagram("E6_1")
    w = d.varpi(3).scale(2) - d.simple_root(0)
    assert w.lam[0] == -6
    assert w.delta == -1
    assert w.same_mod_delta(WeightVec("E6_1", w.lam, Fraction(5)))
    assert w.classical() == w.lam[1:]


def test_dump_contains_tables():
    text = diagram("F4_1").dump()
    assert "cartan" in text and "marks" in text and "symmetrizers" in text
