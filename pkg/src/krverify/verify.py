"""Case tables and the checker for the two sufficiency conditions.

For each supported (family, node) the table carries the defining word
template, the expected weights, and the transcribed closed-form norms.  The
checker recomputes every norm from first principles through the word
calculus, tests

  (i)  pairwise orthogonality plus diagonal norms in 1 + qA, and
  (ii) raising-operator norms inside q_i^(-2<h_i,weight>-2) qA,

and cross-checks the engine values against the transcribed closed forms,
reporting (never asserting) any mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .kleber import index_range
from .qlaurent import Laurent, in_KZ, in_one_plus_qA, in_qpow_A, is_positive, qbinom, qint
from .uqcalc import (
    CaseContext,
    UndecidedVanishingError,
    VectorExpr,
    apply_letter,
    e_norm_via_f,
    norm_sq,
    normalize,
    word_text,
)

Idx = tuple  # (k,) or (kp, k)


@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    family: str
    node: int
    scheme: str  # "one", "two", "two_half"
    partner: int
    chain: tuple  # (node, power-multiplier) pairs, outermost first
    f_zero: tuple[int, ...]
    table_node: Optional[int] = None
    notes: tuple[str, ...] = ()

    def indices(self, s: int) -> list[Idx]:
        return index_range(self.family, self.node, s)

    def word(self, s: int, idx: Idx):
        if self.scheme == "one":
            (k,) = idx
            kp = None
            powers = [(n, m * k) for n, m in self.chain]
        else:
            kp, k = idx
            powers = [(self.chain[0][0], kp)] + [(n, m * k) for n, m in self.chain[1:]]
        return tuple(("e", n, p) for n, p in powers if p)

    def expected_weight(self, s: int, idx: Idx):
        """Affine fundamental-weight coefficients of the stated weight."""
        n_nodes = len(_diagram_nodes(self.family))
        lam = [0] * n_nodes
        if self.scheme == "one":
            (k,) = idx
            lam[self.node] = s - k
            lam[self.partner] += k
            lam[0] = -(2 * s - k)
        elif self.scheme == "two":
            kp, k = idx
            lam[self.node] = s - k
            lam[self.partner] += k - kp
            lam[0] = -(2 * s - 2 * kp)
        else:  # two_half (F4 pattern)
            kp, k = idx
            lam[self.node] = s - 2 * k
            lam[self.partner] += k - kp
            lam[0] = -(s - 2 * kp)
        return tuple(lam)


def _diagram_nodes(family: str):
    from .rootdata import diagram

    return diagram(family).nodes


CASES: dict[str, CaseSpec] = {
    spec.case_id: spec
    for spec in (
        CaseSpec("E6_1_r3", "E6_1", 3, "one", 6, ((6, 1), (5, 1), (4, 1), (2, 1), (0, 1)), (1, 2, 4, 5)),
        CaseSpec("E6_1_r5", "E6_1", 5, "one", 1, ((1, 1), (3, 1), (4, 1), (2, 1), (0, 1)), (2, 3, 4, 6),
                 notes=("word applies to the extremal vector; the k = 0 vector is that vector itself",)),
        CaseSpec("E7_1_r2", "E7_1", 2, "one", 7, ((7, 1), (6, 1), (5, 1), (4, 1), (3, 1), (1, 1), (0, 1)), (1, 3, 4, 5, 6),
                 notes=("word applies to the extremal vector; the k = 0 vector is that vector itself",)),
        CaseSpec("E7_1_r6", "E7_1", 6, "two", 1,
                 ((0, 1), (1, 1), (3, 1), (4, 1), (5, 1), (2, 1), (4, 1), (3, 1), (1, 1), (0, 1)), (2, 3, 4, 5, 7)),
        CaseSpec("E8_1_sec36", "E8_1", 1, "two", 8,
                 ((0, 1), (8, 1), (7, 1), (6, 1), (5, 1), (4, 1), (3, 1), (2, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (0, 1)),
                 (2, 3, 4, 5, 6, 7), table_node=7,
                 notes=("construction uses node 1 (extremal weight at node 1) while the summary table lists node 7; both labels surfaced, neither guessed",)),
        CaseSpec("F4_1_r4", "F4_1", 4, "two_half", 1,
                 ((0, 1), (1, 1), (2, 1), (3, 2), (2, 1), (1, 1), (0, 1)), (2, 3),
                 notes=("closed forms are displayed with 2s where first principles give s; mismatches are reported, conditions are checked from engine values",)),
        CaseSpec("E6_2_r4", "E6_2", 4, "two", 1,
                 ((0, 1), (1, 1), (2, 1), (3, 1), (2, 1), (1, 1), (0, 1)), (2, 3)),
    )
}

#: (family, node) pairs in summary-table order, with per-family default smax.
DEFAULT_SMAX = {
    "E6_1_r3": 3,
    "E6_1_r5": 3,
    "E7_1_r2": 2,
    "E7_1_r6": 2,
    "E8_1_sec36": 2,
    "F4_1_r4": 3,
    "E6_2_r4": 3,
}


def case_for(family: str, node: int) -> CaseSpec:
    for spec in CASES.values():
        if spec.family == family and node in (spec.node, spec.table_node):
            return spec
    raise ValueError(f"no case for family {family} node {node}")


# -- condition checks ----------------------------------------------------------


def _region_text(n: int) -> str:
    return f"q^{n}*qA"


def _take_certs(ctx: CaseContext, start: int) -> list[str]:
    out = sorted({c.describe() for c in ctx.cert_log[start:]})
    return out


def check_condition_i(spec: CaseSpec, ctx: CaseContext) -> list[dict]:
    """Diagonal norms in 1 + qA; distinct weights give the off-diagonal zeros."""
    s = ctx.s
    rows = []
    weights = {}
    for idx in spec.indices(s):
        word = spec.word(s, idx)
        wt = ctx.weight_of(word)
        weights[idx] = wt.lam
        assert wt.lam == spec.expected_weight(s, idx), (idx, wt.lam)
    distinct = len(set(weights.values())) == len(weights)
    for idx in spec.indices(s):
        mark = len(ctx.cert_log)
        word = spec.word(s, idx)
        value = norm_sq(ctx, VectorExpr.from_word(word))
        ok = in_one_plus_qA(value) and distinct
        kp, k = (None, idx[0]) if spec.scheme == "one" else (idx[0], idx[1])
        certs = _take_certs(ctx, mark)
        if distinct:
            certs.append("orthogonality:distinct-weights")
        rows.append(
            {
                "kind": "i",
                "k": k,
                "kp": kp,
                "i": None,
                "value": value.text(),
                "required": "1+qA",
                "pass": bool(ok),
                "certificates": certs,
            }
        )
    return rows


def check_condition_ii(spec: CaseSpec, ctx: CaseContext) -> list[dict]:
    """|e_i u|^2 inside q_i^(-2<h_i,wt>-2) qA for every vector and node."""
    s = ctx.s
    rows = []
    for idx in spec.indices(s):
        word = spec.word(s, idx)
        v = VectorExpr.from_word(word)
        lam = ctx.weight_of(word)
        kp, k = (None, idx[0]) if spec.scheme == "one" else (idx[0], idx[1])
        for i in ctx.diagram.classical_nodes:
            mark = len(ctx.cert_log)
            h = ctx.diagram.pairing(i, lam)
            bound = ctx.sym[i] * (-2 * h - 2)
            try:
                value = e_norm_via_f(ctx, v, i)
                ok = in_qpow_A(value, bound + 1)
                text = value.text()
            except UndecidedVanishingError as exc:
                ok = False
                text = f"undecided: {word_text(exc.word)}"
            rows.append(
                {
                    "kind": "ii",
                    "k": k,
                    "kp": kp,
                    "i": i,
                    "value": text,
                    "required": _region_text(bound),
                    "pass": bool(ok),
                    "certificates": _take_certs(ctx, mark),
                }
            )
    return rows


# -- closed-form crosschecks ----------------------------------------------------


def _mono(e: int) -> Laurent:
    return Laurent.monomial(e)


def _f_vec(ctx: CaseContext, i: int, v: VectorExpr) -> VectorExpr:
    return apply_letter(ctx, ("f", i, 1), v)


def crosscheck_closed_forms(spec: CaseSpec, ctx: CaseContext) -> list[dict]:
    """Engine norms against the transcribed closed forms, with exact equality.

    The paper-side expressions keep the extremal norm |f_r u|^2 symbolic;
    that factor is resolved through the engine, so a mismatch always points
    at the displayed k- or k'-dependence rather than at the base norm.
    """
    s = ctx.s
    d0 = ctx.sym[0]
    dp = ctx.sym[spec.partner]
    r = spec.node
    rows: list[dict] = []
    fr_u = norm_sq(ctx, VectorExpr.from_word((("f", r, 1),)))

    def row(label: str, engine: Laurent, paper: Laurent) -> None:
        rows.append(
            {
                "label": label,
                "engine": engine.text(),
                "paper": paper.text(),
                "match": bool(engine == paper),
            }
        )

    def top_factor(j: int) -> Laurent:
        return _mono(d0 * j * (2 * s - j)) * qbinom(2 * s, j, d0)

    if spec.scheme == "one":
        for (k,) in spec.indices(s):
            word = spec.word(s, (k,))
            v = VectorExpr.from_word(word)
            n = norm_sq(ctx, v)
            row(f"norm(u_{k})", n, top_factor(k))
            if k >= 1:
                fp = norm_sq(ctx, _f_vec(ctx, spec.partner, v))
                row(
                    f"norm(f{spec.partner} u_{k})",
                    fp,
                    _mono(dp * (k - 1)) * qbinom(k, k - 1, dp) * top_factor(k),
                )
                for i in spec.f_zero:
                    row(f"norm(f{i} u_{k})", norm_sq(ctx, _f_vec(ctx, i, v)), Laurent.zero())
            fr = norm_sq(ctx, _f_vec(ctx, r, v))
            row(
                f"norm(f{r} u_{k})",
                fr,
                _mono(d0 * k * (2 * s - 1 - k)) * qbinom(2 * s - 1, k, d0) * fr_u,
            )
    else:
        for kp, k in spec.indices(s):
            word = spec.word(s, (kp, k))
            v = VectorExpr.from_word(word)
            n = norm_sq(ctx, v)
            row(f"norm(u_{kp}_{k})", n, top_factor(kp) * top_factor(k))
            if kp >= 1:
                base = VectorExpr.from_word(spec.word(s, (0, k)))
                for i in ctx.diagram.classical_nodes:
                    delta = 1 if i == spec.partner else 0
                    fn = norm_sq(ctx, _f_vec(ctx, i, v))
                    f0k = norm_sq(ctx, _f_vec(ctx, i, base))
                    row(
                        f"norm(f{i} u_{kp}_{k})",
                        fn,
                        _mono(d0 * kp * (2 * s - delta - kp)) * qbinom(2 * s - delta, kp, d0) * f0k,
                    )
            else:
                if k >= 1:
                    fp = norm_sq(ctx, _f_vec(ctx, spec.partner, v))
                    row(
                        f"norm(f{spec.partner} u_0_{k})",
                        fp,
                        _mono(dp * (k - 1)) * qbinom(k, k - 1, dp) * n,
                    )
                    for i in spec.f_zero:
                        row(f"norm(f{i} u_0_{k})", norm_sq(ctx, _f_vec(ctx, i, v)), Laurent.zero())
                fr = norm_sq(ctx, _f_vec(ctx, r, v))
                row(
                    f"norm(f{r} u_0_{k})",
                    fr,
                    _mono(d0 * k * (2 * s - 1 - k)) * qbinom(2 * s - 1, k, d0) * fr_u,
                )
    return rows


# -- case driver -----------------------------------------------------------------


def run_case(case_id: str, s: int, serre_slack: int = 4) -> dict:
    """Verify one case at one size; returns the JSON-ready report object."""
    spec = CASES[case_id]
    ctx = CaseContext(spec.family, spec.node, s, serre_slack=serre_slack)
    report: dict = {
        "case": spec.case_id,
        "family": spec.family,
        "node": spec.node,
        "s": s,
    }
    if spec.table_node is not None:
        report["table_node"] = spec.table_node
    conditions = check_condition_i(spec, ctx) + check_condition_ii(spec, ctx)
    report["conditions"] = conditions
    report["crosscheck"] = crosscheck_closed_forms(spec, ctx)
    decomposition_weights = set(ctx.decomposition.weights())
    vector_weights = {
        tuple(ctx.weight_of(spec.word(s, idx)).classical()) for idx in spec.indices(s)
    }
    report["weights_match_decomposition"] = vector_weights == decomposition_weights
    report["notes"] = list(spec.notes)
    report["all_pass"] = all(c["pass"] for c in conditions) and report["weights_match_decomposition"]
    return report


def collect_norm_values(report: dict) -> list[str]:
    """Canonical texts of all norm values a report computed (for audits)."""
    out = [c["value"] for c in report["conditions"] if not c["value"].startswith("undecided")]
    out.extend(r["engine"] for r in report["crosscheck"])
    return out
