"""Decomposition oracles: closed forms and the Kleber tree."""

import pytest

from krverify.classrep import classical
from krverify.kleber import (
    CASES,
    Decomposition,
    UnsupportedError,
    closed_form_decompose,
    kleber_decompose,
)
from krverify.rootdata import diagram


def fw(family, *pairs):
    nodes = diagram(family).classical_nodes
    out = [0] * len(nodes)
    for node, c in pairs:
        out[nodes.index(node)] += c
    return tuple(out)


def test_closed_form_e6_r3_s1():
    dec = closed_form_decompose("E6_1", 3, 1)
    assert set(dec.weights()) == {fw("E6_1", (3, 1)), fw("E6_1", (6, 1))}


def test_closed_form_e6_r3_s2():
    dec = closed_form_decompose("E6_1", 3, 2)
    assert set(dec.weights()) == {
        fw("E6_1", (3, 2)),
        fw("E6_1", (3, 1), (6, 1)),
        fw("E6_1", (6, 2)),
    }


def test_closed_form_f4_s1():
    # only the k = k' = 0 term survives at s = 1 because k <= floor(s/2)
    dec = closed_form_decompose("F4_1", 4, 1)
    assert dec.weights() == (fw("F4_1", (4, 1)),)


def test_closed_form_e62_s1():
    dec = closed_form_decompose("E6_2", 4, 1)
    assert set(dec.weights()) == {fw("E6_2", (4, 1)), fw("E6_2", (1, 1)), fw("E6_2")}


def test_closed_form_rejects_bad_s():
    with pytest.raises(ValueError):
        closed_form_decompose("E6_1", 3, 0)


@pytest.mark.parametrize("family,r,smax", [("E6_1", 3, 3), ("E6_1", 5, 3), ("E7_1", 2, 2)])
def test_kleber_matches_closed_form(family, r, smax):
    for s in range(1, smax + 1):
        assert kleber_decompose(family, r, s).entries == closed_form_decompose(family, r, s).entries


def test_kleber_matches_closed_form_e8_s1():
    assert kleber_decompose("E8_1", 1, 1).entries == closed_form_decompose("E8_1", 1, 1).entries


def test_kleber_zero_orbit_node_is_irreducible():
    for s in (1, 2, 3):
        dec = kleber_decompose("E6_1", 6, s)
        assert dec.entries == ((fw("E6_1", (6, s)), 1),)


def test_kleber_rejects_twisted():
    with pytest.raises(UnsupportedError):
        kleber_decompose("E6_2", 4, 1)
    with pytest.raises(UnsupportedError):
        kleber_decompose("F4_1", 4, 1)


@pytest.mark.parametrize("family,r", CASES)
def test_multiplicity_free_and_sorted(family, r):
    for s in (1, 2):
        dec = closed_form_decompose(family, r, s)
        assert dec.is_multiplicity_free()
        assert dec.entries == tuple(sorted(dec.entries))


@pytest.mark.parametrize("family,r", [("E6_1", 3), ("E7_1", 2), ("E8_1", 1)])
def test_weights_below_top_in_dominance_order(family, r):
    s = 2
    system = classical(family)
    d = diagram(family)
    top = d.varpi(r).scale(s).classical()
    for wt in kleber_decompose(family, r, s).weights():
        diff = system.to_root_coords(tuple(t - w for t, w in zip(top, wt)))
        assert all(x.denominator == 1 and x >= 0 for x in diff)


def test_json_shape():
    data = closed_form_decompose("E6_2", 4, 1).as_json()
    assert all(set(entry) == {"weight", "mult"} for entry in data)
    assert all(set(entry["weight"]) == {"1", "2", "3", "4"} for entry in data)


def test_from_pairs_merges_and_validates():
    dec = Decomposition.from_pairs("E6_1", [((0,) * 6, 1), ((0,) * 6, 2)])
    assert dec.entries == (((0,) * 6, 3),)
    with pytest.raises(ValueError):
        Decomposition.from_pairs("E6_1", [((0,) * 6, 0)])


def test_total_dim_small():
    assert closed_form_decompose("E6_1", 3, 1).total_dim() == 351 + 27
    assert closed_form_decompose("E6_2", 4, 1).total_dim() == 52 + 26 + 1
