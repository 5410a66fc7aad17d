"""Exact arithmetic in Q(q), restricted to Laurent polynomials.

Every quantity this package manipulates (q-integers, q-binomials, norms of
vectors under a prepolarization) is a Laurent polynomial over Q, so the full
rational function field is never needed.  Coefficients are arbitrary
precision rationals and all operations are exact; any inexact division is a
bug and raises :class:`InexactDivisionError`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

CoeffLike = Union[int, Fraction]


class InexactDivisionError(ArithmeticError):
    """A polynomial division that should have been exact was not."""


class Laurent:
    """A Laurent polynomial in q with rational coefficients.

    Immutable value type.  Terms live in a dict ``{exponent: coefficient}``
    with no zero coefficients stored; the zero polynomial has no terms.

    >>> q = Laurent.gen()
    >>> (q + q**-1).text()
    'q^-1 + q'
    >>> (q * q**-1).text()
    '1'
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, CoeffLike] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> Laurent:
        return _ZERO

    @staticmethod
    def one() -> Laurent:
        return _ONE

    @staticmethod
    def gen() -> Laurent:
        """The generator q."""
        return _Q

    @staticmethod
    def monomial(exp: int, coeff: CoeffLike = 1) -> Laurent:
        """The monomial ``coeff * q^exp``."""
        return Laurent({exp: coeff})

    @staticmethod
    def from_const(c: CoeffLike) -> Laurent:
        return Laurent({0: c})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        """Minimum stored exponent.  Undefined for the zero polynomial."""
        if not self._terms:
            raise ValueError("valuation of the zero polynomial is undefined")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self._terms)

    def leading_low_coeff(self) -> Fraction:
        """Coefficient of the lowest-exponent term."""
        return self._terms[self.valuation()]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Laurent.from_const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Laurent | int) -> Laurent:
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return _wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Laurent | int) -> Laurent:
        return self + (-_coerce(other))

    def __rsub__(self, other: Laurent | int) -> Laurent:
        return (-self) + _coerce(other)

    def __mul__(self, other: Laurent | int | Fraction) -> Laurent:
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return _wrap({e: c * other for e, c in self._terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Laurent:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible here")
            ((e, c),) = self._terms.items()
            return Laurent({-e: Fraction(1) / c}) ** (-n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: Laurent) -> Laurent:
        """Exact quotient self / other; raises if the division is inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return _ZERO
        rem = dict(self._terms)
        dlow = other.valuation()
        dc = other._terms[dlow]
        out: dict[int, Fraction] = {}
        # Cancel from the bottom; each step kills the lowest remaining term.
        while rem:
            low = min(rem)
            coeff = rem[low] / dc
            out[low - dlow] = coeff
            for e, c in other._terms.items():
                t = low - dlow + e
                s = rem.get(t, 0) - coeff * c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
            if rem and min(rem) <= low:
                raise InexactDivisionError(f"{self.text()} is not divisible by {other.text()}")
        return _wrap(out)

    # -- involutions and specializations ------------------------------------

    def bar(self) -> Laurent:
        """The bar involution q -> q^-1."""
        return _wrap({-e: c for e, c in self._terms.items()})

    def at_one(self) -> Fraction:
        """Specialize q = 1."""
        return sum(self._terms.values(), Fraction(0))

    def subs_power(self, d: int) -> Laurent:
        """Substitute q -> q^d."""
        if d == 0:
            raise ValueError("substitution power must be nonzero")
        return _wrap({e * d: c for e, c in self._terms.items()})

    # -- text --------------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: ascending exponents, `c*q^e` terms.

        >>> (Laurent({0: 1, 2: 1})).text()
        '1 + q^2'
        >>> (Laurent({-3: Fraction(-1, 2), 1: 1})).text()
        '-1/2*q^-3 + q'
        """
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for e in sorted(self._terms):
            c = self._terms[e]
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Laurent('{self.text()}')"


def _wrap(terms: dict[int, Fraction]) -> Laurent:
    out = Laurent.__new__(Laurent)
    out._terms = terms
    return out


def _coerce(x: Laurent | int | Fraction) -> Laurent:
    if isinstance(x, Laurent):
        return x
    return Laurent.from_const(x)


_ZERO = Laurent()
_ONE = Laurent({0: 1})
_Q = Laurent({1: 1})


# -- q-integers and q-binomials ---------------------------------------------


def qint(m: int, d: int = 1) -> Laurent:
    """The balanced q-integer [m] in the variable q^d.

    [m] = (q^dm - q^-dm) / (q^d - q^-d), expanded:
    q^{d(m-1)} + q^{d(m-3)} + ... + q^{d(1-m)} for m > 0, zero for m = 0,
    and -[-m] for m < 0.

    >>> qint(2).text()
    'q^-1 + q'
    >>> qint(-1).text()
    '-1'
    """
    if d <= 0:
        raise ValueError("d must be a positive integer")
    if m == 0:
        return _ZERO
    if m < 0:
        return -qint(-m, d)
    return _wrap({d * e: Fraction(1) for e in range(1 - m, m, 2)})


@lru_cache(maxsize=None)
def qfact(k: int, d: int = 1) -> Laurent:
    """The q-factorial [k]! in the variable q^d."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = _ONE
    for j in range(2, k + 1):
        out = out * qint(j, d)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, k: int, d: int = 1) -> Laurent:
    """The Gaussian binomial [m; k] in the variable q^d, m arbitrary.

    Computed as [m][m-1]...[m-k+1] / [k]! with an exact-division check;
    the quotient is always a Laurent polynomial.

    >>> qbinom(2, 1).text()
    'q^-1 + q'
    >>> qbinom(2, 3).text()
    '0'
    """
    if d <= 0:
        raise ValueError("d must be a positive integer")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return _ONE
    num = _ONE
    for j in range(k):
        num = num * qint(m - j, d)
        if num.is_zero():
            return _ZERO
    try:
        return num.exact_div(qfact(k, d))
    except InexactDivisionError as exc:  # pragma: no cover - arithmetic bug guard
        raise InexactDivisionError(f"qbinom({m},{k},{d}) did not divide exactly") from exc


# -- membership predicates and the total order -------------------------------

#: Region names accepted by :func:`membership`.
REGIONS = ("in_A", "in_qA", "in_one_plus_qA", "in_KZ")


def in_A(f: Laurent) -> bool:
    """Membership in A: no pole at q = 0, i.e. valuation >= 0."""
    return f.is_zero() or f.valuation() >= 0


def in_qA(f: Laurent) -> bool:
    """Membership in qA: valuation >= 1."""
    return f.is_zero() or f.valuation() >= 1


def in_qpow_A(f: Laurent, n: int) -> bool:
    """Membership in q^n A: valuation >= n."""
    return f.is_zero() or f.valuation() >= n


def in_one_plus_qA(f: Laurent) -> bool:
    """Membership in 1 + qA.  The zero polynomial is not a member."""
    return in_qA(f - _ONE)


def in_KZ(f: Laurent) -> bool:
    """All coefficients integral (Laurent-polynomial slice of K_Z)."""
    return all(c.denominator == 1 for c in f._terms.values())


def membership(f: Laurent, region: str, n: int | None = None) -> bool:
    """Dispatch on a region name; ``in_qpowN_A`` takes the exponent ``n``."""
    if region == "in_A":
        return in_A(f)
    if region == "in_qA":
        return in_qA(f)
    if region == "in_one_plus_qA":
        return in_one_plus_qA(f)
    if region == "in_qpowN_A":
        if n is None:
            raise ValueError("in_qpowN_A needs the exponent n")
        return in_qpow_A(f, n)
    if region == "in_KZ":
        return in_KZ(f)
    raise ValueError(f"unknown region {region!r}")


def is_positive(f: Laurent) -> bool:
    """Positivity for the total order on Q(q).

    f > 0 iff f is nonzero and the coefficient of its lowest-exponent term
    is a positive rational, i.e. f lies in some q^n(d + qA) with d > 0.
    """
    return bool(f) and f.leading_low_coeff() > 0


def compare(f: Laurent, g: Laurent) -> int:
    """Total order: -1, 0, or 1 according to f < g, f = g, f > g."""
    diff = f - g
    if diff.is_zero():
        return 0
    return 1 if is_positive(diff) else -1
