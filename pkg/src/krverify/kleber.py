"""Classical decompositions of the modules under test.

Two independent sources: the parameterized closed forms attached to each
case family, and (for the simply laced untwisted families) the Kleber tree
algorithm evaluated at a single rectangle.  The verifier requires them to
agree wherever both are defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classrep import classical
from .rootdata import diagram

SIMPLY_LACED = ("E6_1", "E7_1", "E8_1")


class UnsupportedError(ValueError):
    """Kleber tree requested outside the simply laced untwisted families."""


@dataclass(frozen=True)
class Decomposition:
    """Multiset of dominant classical weights with multiplicities.

    Weights are fundamental-weight coefficient tuples over the classical
    nodes, sorted canonically.  Entries are pairwise distinct.
    """

    family: str
    entries: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def from_pairs(family: str, pairs) -> Decomposition:
        acc: dict[tuple[int, ...], int] = {}
        for wt, mult in pairs:
            acc[tuple(wt)] = acc.get(tuple(wt), 0) + mult
        if any(m <= 0 for m in acc.values()):
            raise ValueError("multiplicities must be positive")
        return Decomposition(family, tuple(sorted(acc.items())))

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for _, m in self.entries)

    def weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(wt for wt, _ in self.entries)

    def total_dim(self) -> int:
        system = classical(self.family)
        return sum(m * system.weyl_dim(wt) for wt, m in self.entries)

    def as_json(self) -> list[dict]:
        nodes = diagram(self.family).classical_nodes
        return [
            {"weight": {str(n): c for n, c in zip(nodes, wt)}, "mult": m}
            for wt, m in self.entries
        ]


def _fw(family: str, *pairs: tuple[int, int]) -> tuple[int, ...]:
    """Classical weight sum(c * varpi_node) as a coefficient tuple."""
    nodes = diagram(family).classical_nodes
    out = [0] * len(nodes)
    for node, c in pairs:
        out[nodes.index(node)] += c
    return tuple(out)


# Case keys are (family, construction node).
CASES = (
    ("E6_1", 3),
    ("E6_1", 5),
    ("E7_1", 2),
    ("E7_1", 6),
    ("E8_1", 1),
    ("F4_1", 4),
    ("E6_2", 4),
)

# (family, r) -> (partner node, index scheme); one_param cases run 0 <= k <= s,
# two_param cases 0 <= k' <= k <= s, and F4_1 bounds k by floor(s/2).
_SCHEMES = {
    ("E6_1", 3): ("one", 6),
    ("E6_1", 5): ("one", 1),
    ("E7_1", 2): ("one", 7),
    ("E7_1", 6): ("two", 1),
    ("E8_1", 1): ("two", 8),
    ("F4_1", 4): ("two_half", 1),
    ("E6_2", 4): ("two", 1),
}


def index_range(family: str, r: int, s: int):
    """Index tuples (k,) or (kp, k) parameterizing the case at size s."""
    kind, _ = _SCHEMES[(family, r)]
    if kind == "one":
        return [(k,) for k in range(s + 1)]
    top = s // 2 if kind == "two_half" else s
    return [(kp, k) for k in range(top + 1) for kp in range(k + 1)]


def highest_weight_for(family: str, r: int, s: int, idx) -> tuple[int, ...]:
    """Classical highest weight attached to one index tuple."""
    kind, partner = _SCHEMES[(family, r)]
    if kind == "one":
        (k,) = idx
        return _fw(family, (r, s - k), (partner, k))
    kp, k = idx
    if kind == "two_half":
        return _fw(family, (r, s - 2 * k), (partner, k - kp))
    return _fw(family, (r, s - k), (partner, k - kp))


def closed_form_decompose(family: str, r: int, s: int) -> Decomposition:
    """The paper-side parameterized decomposition instantiated at s."""
    if s <= 0:
        raise ValueError("s must be positive")
    if (family, r) not in _SCHEMES:
        raise ValueError(f"({family}, r={r}) is not one of the supported cases")
    pairs = [(highest_weight_for(family, r, s, idx), 1) for idx in index_range(family, r, s)]
    dec = Decomposition.from_pairs(family, pairs)
    if not dec.is_multiplicity_free():
        raise RuntimeError("closed form produced a repeated weight")
    return dec


# -- Kleber tree --------------------------------------------------------------


def kleber_decompose(family: str, r: int, s: int) -> Decomposition:
    """Decomposition of the (r, s) module from the Kleber tree.

    Chains of componentwise non-increasing increments d_1 >= d_2 >= ... >= 0
    over the classical nodes are grown while every partial weight
    min(i, s) * fw_r - sum(increments so far) stays dominant.  Each chain is
    one admissible configuration; its multiplicity contribution is the
    product of binomial(p + m, m) over the parts data of the configuration.
    """
    if family not in SIMPLY_LACED:
        raise UnsupportedError(f"Kleber tree is implemented for {SIMPLY_LACED} only")
    if s <= 0:
        raise ValueError("s must be positive")
    system = classical(family)
    nodes = diagram(family).classical_nodes
    if r not in nodes:
        raise ValueError(f"node {r} is not classical in {family}")
    n = system.rank
    r_pos = nodes.index(r)
    fw_r = tuple(int(i == r_pos) for i in range(n))

    def weight_at(level: int, sigma) -> tuple[int, ...]:
        scale = min(level, s)
        return tuple(
            scale * fw_r[i] - sum(system.cartan[i][j] * sigma[j] for j in range(n))
            for i in range(n)
        )

    counts: dict[tuple[int, ...], int] = {}

    def contribution(chain: list[tuple[int, ...]]) -> int:
        # chain[t] is the increment d_{t+1}; parts are m_i = d_i - d_{i+1} and
        # the vacancy numbers are read off the level weights.
        total = 1
        sigma = [0] * n
        for t, d in enumerate(chain):
            sigma = [a + b for a, b in zip(sigma, d)]
            nxt = chain[t + 1] if t + 1 < len(chain) else (0,) * n
            mu = weight_at(t + 1, sigma)
            for a in range(n):
                m = d[a] - nxt[a]
                if m:
                    total *= _binom(mu[a] + m, m)
        return total

    def grow(chain: list[tuple[int, ...]], sigma: tuple[int, ...], bound) -> None:
        lam = weight_at(s, sigma)
        counts[lam] = counts.get(lam, 0) + contribution(chain)
        level = len(chain) + 1
        for d in _increments(system, sigma, bound, level, s, fw_r):
            new_sigma = tuple(a + b for a, b in zip(sigma, d))
            grow(chain + [d], new_sigma, d)

    grow([], (0,) * n, None)
    pairs = [(wt, m) for wt, m in counts.items() if m]
    return Decomposition.from_pairs(family, pairs)


def _increments(system, sigma, bound, level, s, fw_r):
    """Nonzero increment vectors d <= bound keeping the level weight dominant."""
    n = system.rank
    lam_target = tuple(min(level, s) * f for f in fw_r)
    # d is bounded by invA . (lam_target) - sigma componentwise.
    room = system.to_root_coords(lam_target)
    caps = []
    for j in range(n):
        cap = int(room[j]) - sigma[j]
        if bound is not None:
            cap = min(cap, bound[j])
        if cap < 0:
            return
        caps.append(cap)
    d = [0] * n

    def dominant_possible(upto: int) -> bool:
        for i in range(n):
            if i >= upto:
                continue
            slack = lam_target[i]
            for j in range(n):
                tot = sigma[j] + (d[j] if j < upto else 0)
                hi = sigma[j] + (d[j] if j < upto else caps[j])
                slack -= system.cartan[i][j] * (tot if system.cartan[i][j] > 0 else 0)
                slack -= system.cartan[i][j] * (hi if system.cartan[i][j] < 0 else 0)
            if slack < 0:
                return False
        return True

    def rec(pos: int):
        if pos == n:
            if not any(d):
                return
            mu = tuple(
                lam_target[i] - sum(system.cartan[i][j] * (sigma[j] + d[j]) for j in range(n))
                for i in range(n)
            )
            if all(m >= 0 for m in mu):
                yield tuple(d)
            return
        for v in range(caps[pos] + 1):
            d[pos] = v
            if dominant_possible(pos + 1):
                yield from rec(pos + 1)
        d[pos] = 0

    yield from rec(0)


def _binom(p: int, m: int) -> int:
    if m < 0 or p < m:
        return 0
    out = 1
    for j in range(m):
        out = out * (p - j) // (j + 1)
    return out
