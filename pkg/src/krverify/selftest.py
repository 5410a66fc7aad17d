"""Programmatic invariant suites behind the `selftest` subcommand.

Quick spot checks of the arithmetic kernel, the diagram tables and the
classical oracles; the pytest suite covers the same ground more heavily.
"""

from __future__ import annotations

import random

from .classrep import classical
from .kleber import closed_form_decompose, kleber_decompose
from .qlaurent import Laurent, in_qpow_A, is_positive, qbinom, qint
from .rootdata import FAMILIES, diagram

_POS_ROOT_COUNTS = {"E6_1": 36, "E7_1": 63, "E8_1": 120, "F4_1": 24, "E6_2": 24}


def _check_qlaurent(rng: random.Random) -> None:
    q = Laurent.gen()
    for _ in range(200):
        m = rng.randint(1, 30)
        k = rng.randint(0, m)
        b = qbinom(m, k)
        assert b == qbinom(m, m - k), "symmetry"
        assert b == b.bar(), "bar invariance"
        assert b.at_one() == _binom(m, k), "q -> 1"
        if 1 <= k <= m:
            pascal = q**k * qbinom(m - 1, k) + q ** (k - m) * qbinom(m - 1, k - 1)
            assert b == pascal, "Pascal"
        assert in_qpow_A(b, -k * (m - k)), "binomial valuation"
        assert in_qpow_A(qint(m), 1 - m), "integer valuation"
    f = qint(5)
    assert is_positive(f) and not is_positive(-f)


def _binom(m: int, k: int) -> int:
    out = 1
    for j in range(k):
        out = out * (m - j) // (j + 1)
    return out


def _check_rootdata() -> None:
    for family in FAMILIES:
        d = diagram(family)
        n = len(d.nodes)
        assert all(sum(d.cartan[i][j] * d.marks[j] for j in range(n)) == 0 for i in range(n))
        assert all(sum(d.comarks[i] * d.cartan[i][j] for i in range(n)) == 0 for j in range(n))
        delta = d.delta_weight()
        assert all(c == 0 for c in delta.lam) and delta.delta == 1
        for r in d.classical_nodes:
            assert d.level(d.varpi(r)) == 0


def _check_classrep() -> None:
    for family, count in _POS_ROOT_COUNTS.items():
        system = classical(family)
        assert len(system.positive_roots) == count, family
    e6 = classical("E6_1")
    assert e6.weyl_dim((0, 0, 1, 0, 0, 0)) == 351
    table = e6.freudenthal((0, 0, 1, 0, 0, 0))
    assert sum(m * e6.orbit_size(mu) for mu, m in table.items()) == 351
    f4 = classical("F4_1")
    assert f4.freudenthal((0, 0, 0, 1)).get((0, 0, 0, 0)) == 2


def _check_kleber() -> None:
    for family, r, s in (("E6_1", 3, 2), ("E6_1", 5, 2), ("E7_1", 2, 1)):
        assert kleber_decompose(family, r, s).entries == closed_form_decompose(family, r, s).entries


def run(stream) -> bool:
    """Run every suite, printing one line each; returns overall success."""
    rng = random.Random(0)
    suites = [
        ("qlaurent", lambda: _check_qlaurent(rng)),
        ("rootdata", _check_rootdata),
        ("classrep", _check_classrep),
        ("kleber", _check_kleber),
    ]
    ok = True
    for name, fn in suites:
        try:
            fn()
            stream.write(f"selftest {name}: pass\n")
        except AssertionError as exc:
            stream.write(f"selftest {name}: FAIL ({exc})\n")
            ok = False
    return ok
