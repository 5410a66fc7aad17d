"""Affine Cartan data for the five exceptional families used by the verifier.

Cartan matrices are transcribed from the affine Dynkin diagrams (Bourbaki
node labels).  Marks, comarks and symmetrizers are *derived* from the matrix
(null vectors and minimal symmetrization) rather than transcribed, so a
transcription slip in the adjacency data trips the consistency checks
instead of silently propagating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = ("E6_1", "E7_1", "E8_1", "F4_1", "E6_2")

# Adjacency with arrows: plain edges are (i, j); a double edge with the arrow
# pointing i -> j (i long, j short) is encoded as (i, j, 2), giving
# A[i][j] = -1 and A[j][i] = -2.
_EDGES = {
    "E6_1": [(0, 2), (2, 4), (1, 3), (3, 4), (4, 5), (5, 6)],
    "E7_1": [(0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8_1": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)],
    "F4_1": [(0, 1), (1, 2), (2, 3, 2), (3, 4)],
    # Arrow points toward node 2, so A[2][3] = -2 and A[3][2] = -1.
    "E6_2": [(0, 1), (1, 2), (3, 2, 2), (3, 4)],
}

_NODES = {
    "E6_1": (0, 1, 2, 3, 4, 5, 6),
    "E7_1": (0, 1, 2, 3, 4, 5, 6, 7),
    "E8_1": (0, 1, 2, 3, 4, 5, 6, 7, 8),
    "F4_1": (0, 1, 2, 3, 4),
    "E6_2": (0, 1, 2, 3, 4),
}


@dataclass(frozen=True)
class WeightVec:
    """Integer vector over the fundamental weights plus a delta coefficient.

    ``lam`` holds the coefficient of Lambda_i for every node i of the affine
    diagram, in node order.  The delta coefficient is tracked exactly but
    weights of level-zero modules are compared with it ignored (P' = P/Z.delta).
    """

    family: str
    lam: tuple[int, ...]
    delta: Fraction = Fraction(0)

    def __add__(self, other: WeightVec) -> WeightVec:
        assert self.family == other.family
        return WeightVec(
            self.family,
            tuple(a + b for a, b in zip(self.lam, other.lam)),
            self.delta + other.delta,
        )

    def __sub__(self, other: WeightVec) -> WeightVec:
        return self + other.scale(-1)

    def scale(self, c: int) -> WeightVec:
        return WeightVec(self.family, tuple(c * a for a in self.lam), c * self.delta)

    def same_mod_delta(self, other: WeightVec) -> bool:
        return self.family == other.family and self.lam == other.lam

    def classical(self) -> tuple[int, ...]:
        """Drop the Lambda_0 and delta components."""
        return self.lam[1:]


class AffineDiagram:
    """Cartan matrix, symmetrizers, marks and comarks for one affine family."""

    def __init__(self, family: str):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.nodes = _NODES[family]
        n = len(self.nodes)
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            A[i][i] = 2
        for edge in _EDGES[family]:
            if len(edge) == 2:
                i, j = edge
                A[i][j] = A[j][i] = -1
            else:
                i, j, _ = edge
                A[i][j] = -1
                A[j][i] = -2
        self.cartan = tuple(tuple(row) for row in A)
        # marks: right null vector (A a = 0); comarks: left null vector.
        self.marks = _null_vector([list(row) for row in A])
        self.comarks = _null_vector([list(col) for col in zip(*A)])
        self.symmetrizers = _symmetrizers(A)
        self._check()

    def _check(self) -> None:
        A, n = self.cartan, len(self.nodes)
        for i in range(n):
            assert A[i][i] == 2
            for j in range(n):
                if i != j:
                    assert A[i][j] <= 0
                    assert (A[i][j] == 0) == (A[j][i] == 0)
                assert self.symmetrizers[i] * A[i][j] == self.symmetrizers[j] * A[j][i]
        assert all(sum(A[i][j] * self.marks[j] for j in range(n)) == 0 for i in range(n))
        assert all(sum(self.comarks[i] * A[i][j] for i in range(n)) == 0 for j in range(n))
        assert self.marks[0] == 1 and self.comarks[0] == 1

    # -- node bookkeeping ---------------------------------------------------

    @property
    def classical_nodes(self) -> tuple[int, ...]:
        return self.nodes[1:]

    def check_node(self, i: int) -> None:
        if i not in self.nodes:
            raise ValueError(f"node {i} not in {self.family}")

    # -- weights ------------------------------------------------------------

    def zero_weight(self) -> WeightVec:
        return WeightVec(self.family, (0,) * len(self.nodes))

    def fundamental(self, i: int) -> WeightVec:
        """Lambda_i."""
        self.check_node(i)
        lam = [0] * len(self.nodes)
        lam[i] = 1
        return WeightVec(self.family, tuple(lam))

    def simple_root(self, j: int) -> WeightVec:
        """alpha_j = sum_i A_ij Lambda_i, plus delta for j = 0."""
        self.check_node(j)
        lam = tuple(self.cartan[i][j] for i in range(len(self.nodes)))
        return WeightVec(self.family, lam, Fraction(1 if j == 0 else 0))

    def varpi(self, r: int) -> WeightVec:
        """Level-zero fundamental weight Lambda_r - <c, Lambda_r> Lambda_0."""
        self.check_node(r)
        if r == 0:
            raise ValueError("varpi is defined for classical nodes only")
        return self.fundamental(r) - self.fundamental(0).scale(self.comarks[r])

    def pairing(self, i: int, w: WeightVec) -> int:
        """<h_i, w>; depends only on the Lambda coefficients."""
        self.check_node(i)
        return w.lam[i]

    def level(self, w: WeightVec) -> int:
        return sum(a * c for a, c in zip(w.lam, self.comarks))

    def delta_weight(self) -> WeightVec:
        """delta = sum_j a_j alpha_j; its Lambda coefficients vanish."""
        out = self.zero_weight()
        for j, a in zip(self.nodes, self.marks):
            out = out + self.simple_root(j).scale(a)
        return out

    # -- audit dump ----------------------------------------------------------

    def dump(self) -> str:
        lines = [f"family {self.family}  nodes {list(self.nodes)}"]
        lines.append("cartan")
        for row in self.cartan:
            lines.append("  " + " ".join(f"{x:3d}" for x in row))
        lines.append("marks        " + " ".join(str(x) for x in self.marks))
        lines.append("comarks      " + " ".join(str(x) for x in self.comarks))
        lines.append("symmetrizers " + " ".join(str(x) for x in self.symmetrizers))
        return "\n".join(lines)


def _null_vector(rows: list[list[int]]) -> tuple[int, ...]:
    """Primitive positive integer null vector of a corank-one matrix."""
    n = len(rows)
    mat = [[Fraction(x) for x in row] for row in rows]
    # Gaussian elimination to reduced row echelon form.
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
    free = [c for c in range(n) if c not in {c for _, c in pivots}]
    if len(free) != 1:
        raise ValueError("matrix does not have a one-dimensional kernel")
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for pr, pc in pivots:
        vec[pc] = -mat[pr][fc]
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    if any(x < 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError("null vector is not strictly positive")
    return tuple(ints)


def _symmetrizers(A: list[list[int]]) -> tuple[int, ...]:
    """Minimal positive integers s with diag(s).A symmetric.

    Ratios s_i/s_j = A_ji/A_ij are propagated along edges of the (connected)
    diagram, then scaled to minimal integers.
    """
    n = len(A)
    ratio: list[Fraction | None] = [None] * n
    ratio[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and A[i][j] != 0 and ratio[j] is None:
                ratio[j] = ratio[i] * Fraction(A[i][j], A[j][i])
                stack.append(j)
    if any(x is None for x in ratio):
        raise ValueError("diagram is not connected")
    denom_lcm = 1
    for x in ratio:
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in ratio]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def diagram(family: str) -> AffineDiagram:
    """Shared immutable diagram instance for a family."""
    return AffineDiagram(family)
