"""Classical representation-theory oracles.

Weyl dimension formula and Freudenthal weight multiplicities for the finite
type subdiagram (nodes other than 0) of each affine family.  These supply
the sound vanishing test: a vector whose weight has multiplicity zero in the
classical decomposition is zero.

All weights are tuples of fundamental-weight coefficients over the classical
nodes, in node order.  Roots are tuples of simple-root coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rootdata import AffineDiagram, diagram

#: Guard for dominant conjugation loops.
MAX_REFLECTIONS = 10**6

_WEYL_ORDER_E = {6: 51840, 7: 2903040, 8: 696729600}


class ClassicalRootSystem:
    """Positive roots, Weyl vector and bilinear form of the I_0 subdiagram."""

    def __init__(self, affine: AffineDiagram):
        self.family = affine.family
        self.nodes = affine.classical_nodes
        n = len(self.nodes)
        idx = {node: a for a, node in enumerate(self.nodes)}
        self.cartan = tuple(
            tuple(affine.cartan[i][j] for j in self.nodes) for i in self.nodes
        )
        self.sym = tuple(affine.symmetrizers[i] for i in self.nodes)
        self.rank = n
        self._idx = idx
        self.positive_roots = self._positive_roots()
        self.rho = (1,) * n
        self._alpha_wt = tuple(
            tuple(self.cartan[i][j] for i in range(n)) for j in range(n)
        )
        self._inv_cartan = _invert(self.cartan)

    # -- roots ---------------------------------------------------------------

    def _positive_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = list(simple)
        while queue:
            alpha = queue.pop()
            for i in range(n):
                h = sum(self.cartan[i][j] * alpha[j] for j in range(n))
                beta = list(alpha)
                beta[i] -= h
                beta_t = tuple(beta)
                if all(c >= 0 for c in beta_t) and any(beta_t) and beta_t not in seen:
                    seen.add(beta_t)
                    queue.append(beta_t)
        return tuple(sorted(seen))

    # -- bilinear form --------------------------------------------------------

    def inner_wt_root(self, mu: tuple[int, ...], root: tuple[int, ...]) -> Fraction:
        """(mu, root) with mu in weight coordinates, root in root coordinates."""
        return Fraction(sum(c * s * m for c, s, m in zip(root, self.sym, mu)))

    def inner_wt_wt(self, mu, nu) -> Fraction:
        nu_root = self.to_root_coords(nu)
        return sum(
            (c * s * m for c, s, m in zip(nu_root, self.sym, mu)), Fraction(0)
        )

    def to_root_coords(self, mu) -> tuple[Fraction, ...]:
        """Exact simple-root coordinates of a weight-coordinate vector."""
        return tuple(
            sum((row[j] * Fraction(mu[j]) for j in range(self.rank)), Fraction(0))
            for row in self._inv_cartan
        )

    def root_to_wt(self, root) -> tuple[int, ...]:
        n = self.rank
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(n)) for i in range(n))

    # -- Weyl group ------------------------------------------------------------

    def is_dominant(self, mu) -> bool:
        return all(m >= 0 for m in mu)

    def reflect(self, i: int, mu) -> tuple[int, ...]:
        return tuple(m - mu[i] * self._alpha_wt[i][a] for a, m in enumerate(mu))

    def dominant_conjugate(self, mu) -> tuple[int, ...]:
        mu = tuple(mu)
        for _ in range(MAX_REFLECTIONS):
            i = next((a for a, m in enumerate(mu) if m < 0), None)
            if i is None:
                return mu
            mu = self.reflect(i, mu)
        raise RuntimeError("dominant conjugation did not terminate")

    def weyl_order(self) -> int:
        return _weyl_order_of(self.cartan, range(self.rank))

    def orbit_size(self, mu) -> int:
        """Size of the Weyl orbit of a dominant weight via its stabilizer."""
        mu = self.dominant_conjugate(mu)
        fixed = [a for a, m in enumerate(mu) if m == 0]
        return self.weyl_order() // _weyl_order_of(self.cartan, fixed)

    # -- dimension and multiplicities -------------------------------------------

    def weyl_dim(self, lam) -> int:
        """dim V(lam) by the Weyl dimension formula, exact."""
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        lam_rho = tuple(l + r for l, r in zip(lam, self.rho))
        out = Fraction(1)
        for alpha in self.positive_roots:
            out *= self.inner_wt_root(lam_rho, alpha) / self.inner_wt_root(self.rho, alpha)
        if out.denominator != 1:
            raise RuntimeError("Weyl dimension formula gave a non-integer")
        return int(out)

    def dominant_below(self, lam) -> list[tuple[int, ...]]:
        """All dominant weights mu with lam - mu a nonnegative root sum."""
        lam = tuple(lam)
        n = self.rank
        lam_root = self.to_root_coords(lam)
        if any(x.denominator != 1 for x in lam_root):
            # lam itself must be reachable from itself; coords of differences
            # are what matters, and cmax below stays valid.
            pass
        cmax = [int(x) for x in lam_root]  # floor; c <= invA . lam componentwise
        out: list[tuple[int, ...]] = []
        c = [0] * n

        def ub(j: int, upto: int) -> int:
            return c[j] if j < upto else cmax[j]

        def feasible(upto: int) -> bool:
            # Row i of (lam - A c >= 0) relaxed with upper bounds for free vars.
            for i in range(n):
                slack = lam[i] - 2 * (c[i] if i < upto else 0)
                if i >= upto:
                    continue
                for j in range(n):
                    if j != i and self.cartan[i][j]:
                        slack += (-self.cartan[i][j]) * ub(j, upto)
                if slack < 0:
                    return False
            return True

        def rec(pos: int) -> None:
            if pos == n:
                mu = tuple(lam[i] - sum(self.cartan[i][j] * c[j] for j in range(n)) for i in range(n))
                if all(m >= 0 for m in mu):
                    out.append(mu)
                return
            for v in range(cmax[pos] + 1):
                c[pos] = v
                if feasible(pos + 1):
                    rec(pos + 1)
            c[pos] = 0

        rec(0)
        return out

    def freudenthal(self, lam) -> dict[tuple[int, ...], int]:
        """Dominant weight multiplicity table of V(lam)."""
        return _freudenthal_cached(self.family, tuple(lam))

    def _freudenthal(self, lam) -> dict[tuple[int, ...], int]:
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        doms = self.dominant_below(lam)
        depth = {}
        for mu in doms:
            cc = self.to_root_coords(tuple(l - m for l, m in zip(lam, mu)))
            depth[mu] = sum(cc)
        order = sorted(doms, key=lambda mu: (depth[mu], mu))
        lam_rho = tuple(l + 1 for l in lam)
        norm_lam = self.inner_wt_wt(lam_rho, lam_rho)
        alpha_wts = [self.root_to_wt(a) for a in self.positive_roots]
        table: dict[tuple[int, ...], int] = {}
        for mu in order:
            if mu == lam:
                table[mu] = 1
                continue
            total = Fraction(0)
            for alpha, alpha_wt in zip(self.positive_roots, alpha_wts):
                j = 1
                while True:
                    nu = tuple(m + j * a for m, a in zip(mu, alpha_wt))
                    mult = table.get(self.dominant_conjugate(nu), 0)
                    if mult == 0:
                        break
                    total += mult * self.inner_wt_root(nu, alpha)
                    j += 1
            mu_rho = tuple(m + 1 for m in mu)
            denom = norm_lam - self.inner_wt_wt(mu_rho, mu_rho)
            val = 2 * total / denom
            if val.denominator != 1 or val <= 0:
                raise RuntimeError("Freudenthal recursion produced an invalid value")
            table[mu] = int(val)
        return table

    def weight_multiplicity_in(self, lam, mu) -> int:
        """Multiplicity of the weight mu in V(lam); mu need not be dominant."""
        dom = self.dominant_conjugate(mu)
        diff = self.to_root_coords(tuple(l - m for l, m in zip(lam, dom)))
        if any(x.denominator != 1 or x < 0 for x in diff):
            return 0
        return self.freudenthal(lam).get(dom, 0)


def weight_multiplicity(system: ClassicalRootSystem, decomposition, mu) -> int:
    """Total multiplicity of mu across a classical decomposition.

    ``decomposition`` iterates over (dominant weight, multiplicity) pairs.
    """
    mu = tuple(mu)
    return sum(m * system.weight_multiplicity_in(lam, mu) for lam, m in decomposition)


@lru_cache(maxsize=None)
def classical(family: str) -> ClassicalRootSystem:
    return ClassicalRootSystem(diagram(family))


@lru_cache(maxsize=None)
def _freudenthal_cached(family: str, lam: tuple[int, ...]) -> dict:
    return classical(family)._freudenthal(lam)


def _invert(mat) -> tuple[tuple[Fraction, ...], ...]:
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        p = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[p] = aug[p], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _weyl_order_of(cartan, node_positions) -> int:
    """Order of the parabolic Weyl group generated by the given positions."""
    nodes = list(node_positions)
    if not nodes:
        return 1
    present = set(nodes)
    seen: set[int] = set()
    order = 1
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in nodes:
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        order *= _component_order(cartan, comp)
    return order


def _component_order(cartan, comp) -> int:
    """Weyl group order of one connected subdiagram."""
    n = len(comp)
    pairs = [(i, j) for i in comp for j in comp if i < j and cartan[i][j] != 0]
    bond = {cartan[i][j] * cartan[j][i] for i, j in pairs}
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if 3 in bond:
        return 12  # G2
    if 2 in bond:
        if n == 4:
            return 1152  # F4
        return (2**n) * fact  # B_n / C_n share an order
    degrees = {i: sum(1 for j in comp if j != i and cartan[i][j] != 0) for i in comp}
    branch = [i for i, d in degrees.items() if d == 3]
    if not branch:
        return fact * (n + 1)  # A_n
    arms = sorted(_arm_lengths(cartan, comp, branch[0]))
    if arms[0] == 1 and arms[1] == 1:
        return 2 ** (n - 1) * fact  # D_n
    return _WEYL_ORDER_E[n]


def _arm_lengths(cartan, comp, branch) -> list[int]:
    lengths = []
    for j in comp:
        if j == branch or cartan[branch][j] == 0:
            continue
        length = 0
        prev, cur = branch, j
        while True:
            length += 1
            nxt = [k for k in comp if k not in (prev, cur) and cartan[cur][k] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        lengths.append(length)
    return lengths
