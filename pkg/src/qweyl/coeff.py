"""Exact coefficient arithmetic.

Two coefficient domains cover everything the engine needs:

* ``Scalar`` -- Laurent polynomials in s = q^(1/2) over the Gaussian
  rationals Q(i).  Every scalar prefactor appearing in the algebra
  presentations (q, q^(1/2), q^(1-N), q-integers, ...) lives here.
* ``HSeries`` -- power series in h truncated at a fixed order K, with
  q = e^h.  These drive the order-by-order realization checks.

All values are immutable; arithmetic is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NonUnit, NotDivisible, OrderMismatch

__all__ = [
    "GaussianRational",
    "Scalar",
    "HSeries",
    "qint",
    "expand_q_to_h",
    "hseries_divide",
    "GR_ZERO",
    "GR_ONE",
    "GR_I",
]


class GaussianRational:
    """A Gaussian rational re + i*im with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_real(self):
        return self.im == 0

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({_frac_str(self.re)} {sign} {_imag_str(abs(self.im))})"


def _as_gauss(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational(v)
    return NotImplemented


def _frac_str(f: Fraction) -> str:
    return str(f)


def _imag_str(f: Fraction) -> str:
    if f == 1:
        return "i"
    if f == -1:
        return "-i"
    return f"{f} i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class Scalar:
    """Laurent polynomial in s = q^(1/2) with GaussianRational coefficients.

    Stored as a map from the s-exponent to its coefficient; zero
    coefficients are never kept.  The exponent of q^k is 2k, so integer
    and half-integer q-powers share one integer grading.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls):
        return _S_ZERO

    @classmethod
    def one(cls):
        return _S_ONE

    @classmethod
    def i(cls):
        return _S_I

    @classmethod
    def from_gauss(cls, g):
        return cls({0: g})

    @classmethod
    def from_int(cls, n):
        return cls({0: GaussianRational(n)})

    @classmethod
    def from_fraction(cls, f):
        return cls({0: GaussianRational(f)})

    @classmethod
    def s_power(cls, e, coeff=GR_ONE):
        return cls({e: coeff})

    @classmethod
    def q_power(cls, k):
        """q^k as a scalar; k may be a Fraction with denominator 1 or 2."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("q-exponent must be an integer or half-integer")
        return cls({int(e): GR_ONE})

    # -- ring structure ----------------------------------------------

    def items(self):
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(self.items())

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            n = terms.get(e, GR_ZERO) + c
            if n:
                terms[e] = n
            else:
                terms.pop(e, None)
        return Scalar(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                n = terms.get(e, GR_ZERO) + c1 * c2
                if n:
                    terms[e] = n
                else:
                    terms.pop(e, None)
        return Scalar(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _S_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- queries -----------------------------------------------------

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == {0: GR_ONE}

    def is_monomial(self):
        return len(self._terms) == 1

    def monomial(self):
        """The (exponent, coefficient) pair of a one-term scalar."""
        if len(self._terms) != 1:
            raise NonUnit(f"not a monomial scalar: {self}")
        return next(iter(self._terms.items()))

    def valuation(self):
        return min(self._terms) if self._terms else None

    def degree(self):
        return max(self._terms) if self._terms else None

    def constant_coefficient(self):
        return self._terms.get(0, GR_ZERO)

    # -- operations --------------------------------------------------

    def inverse(self):
        """Inverse of a monomial unit c*s^e; NonUnit otherwise."""
        e, c = self.monomial()
        return Scalar({-e: c.inverse()})

    def conjugate(self):
        """Complex conjugation: i -> -i, s -> s (q real)."""
        return Scalar({e: c.conjugate() for e, c in self._terms.items()})

    def eval_at_one(self):
        """Specialize q -> 1 (s -> 1), returning a GaussianRational."""
        out = GR_ZERO
        for _, c in self._terms.items():
            out = out + c
        return out

    def eval_complex(self, s_value):
        """Numeric evaluation at a float/complex value of s."""
        out = 0j
        for e, c in self._terms.items():
            out += c.to_complex() * (s_value ** e)
        return out

    # -- rendering ---------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.items():
            body = _term_str(e, c)
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append("- " + body[1:])
            else:
                pieces.append("+ " + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"Scalar<{self}>"


def _term_str(e, c):
    if e == 0:
        return str(c)
    if e % 2 == 0:
        k = e // 2
        qpart = "q" if k == 1 else f"q^{k}"
    else:
        qpart = f"q^({e}/2)"
    if c == GR_ONE:
        return qpart
    if c == -GR_ONE:
        return f"-{qpart}"
    return f"{c} {qpart}"


def _as_scalar(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction)):
        return Scalar({0: GaussianRational(v)})
    if isinstance(v, GaussianRational):
        return Scalar({0: v})
    return NotImplemented


_S_ZERO = Scalar()
_S_ONE = Scalar({0: GR_ONE})
_S_I = Scalar({0: GR_I})


def qint(n: int) -> Scalar:
    """The q-integer [n] = (s^n - s^-n)/(s - s^-1), an exact Laurent polynomial.

    [0] = 0, [1] = 1, [2] = s + s^-1, [-n] = -[n].
    """
    if n == 0:
        return _S_ZERO
    if n < 0:
        return -qint(-n)
    return Scalar({n - 1 - 2 * j: GR_ONE for j in range(n)})


def qint_base(m: int, k: int) -> Scalar:
    """(q^(k m) - q^(-k m))/(q^k - q^(-k)): the q-integer [m] in base q^k."""
    if m == 0:
        return _S_ZERO
    if m < 0:
        return -qint_base(-m, k)
    return Scalar({2 * k * (m - 1 - 2 * j): GR_ONE for j in range(m)})


class HSeries:
    """Power series in h truncated at a fixed order K (coefficients h^0..h^K).

    Operands of ring operations must share K; mixing orders raises
    OrderMismatch rather than silently truncating.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        tup = tuple(c if isinstance(c, GaussianRational) else GaussianRational(c)
                    for c in coeffs)
        if not tup:
            raise ValueError("HSeries needs at least the h^0 coefficient")
        object.__setattr__(self, "_coeffs", tup)

    def __setattr__(self, *a):
        raise AttributeError("HSeries is immutable")

    @property
    def order(self):
        return len(self._coeffs) - 1

    @property
    def coeffs(self):
        return self._coeffs

    @classmethod
    def zero(cls, K):
        return cls((GR_ZERO,) * (K + 1))

    @classmethod
    def one(cls, K):
        return cls((GR_ONE,) + (GR_ZERO,) * K)

    @classmethod
    def h(cls, K):
        if K < 1:
            raise ValueError("order must be >= 1 to hold h")
        return cls((GR_ZERO, GR_ONE) + (GR_ZERO,) * (K - 1))

    @classmethod
    def from_gauss(cls, g, K):
        return cls((g,) + (GR_ZERO,) * K)

    def _check(self, other):
        if self.order != other.order:
            raise OrderMismatch(
                f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        return HSeries(tuple(a + b for a, b in zip(self._coeffs, other._coeffs)))

    def __sub__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        return HSeries(tuple(a - b for a, b in zip(self._coeffs, other._coeffs)))

    def __neg__(self):
        return HSeries(tuple(-a for a in self._coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            g = other if isinstance(other, GaussianRational) else GaussianRational(other)
            return HSeries(tuple(a * g for a in self._coeffs))
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        K = self.order
        out = [GR_ZERO] * (K + 1)
        for n1, c1 in enumerate(self._coeffs):
            if not c1:
                continue
            for n2 in range(K + 1 - n1):
                c2 = other._coeffs[n2]
                if c2:
                    out[n1 + n2] = out[n1 + n2] + c1 * c2
        return HSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return any(self._coeffs)

    def is_zero(self):
        return not any(self._coeffs)

    def shift(self, n):
        """Multiply by h^n within the same truncation order."""
        K = self.order
        out = [GR_ZERO] * (K + 1)
        for j, c in enumerate(self._coeffs):
            if c and j + n <= K:
                out[j + n] = c
        return HSeries(out)

    def truncate(self, K):
        if K > self.order:
            raise OrderMismatch("cannot extend a truncated series")
        return HSeries(self._coeffs[: K + 1])

    def valuation(self):
        for j, c in enumerate(self._coeffs):
            if c:
                return j
        return None

    def conjugate(self):
        """Coefficientwise complex conjugation (h is real)."""
        return HSeries(tuple(c.conjugate() for c in self._coeffs))

    def __str__(self):
        pieces = []
        for j, c in enumerate(self._coeffs):
            if not c:
                continue
            if j == 0:
                body = str(c)
            else:
                hpart = "h" if j == 1 else f"h^{j}"
                if c == GR_ONE:
                    body = hpart
                elif c == -GR_ONE:
                    body = f"-{hpart}"
                else:
                    body = f"{c} {hpart}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append("- " + body[1:])
            else:
                pieces.append("+ " + body)
        return " ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"HSeries<{self} + O(h^{self.order + 1})>"


def expand_q_to_h(a: Scalar, K: int) -> HSeries:
    """Substitute s = e^(h/2) into a scalar and truncate at order K.

    A ring homomorphism up to O(h^(K+1)): each s^e contributes the
    exponential series of (e/2) h.
    """
    if K < 0:
        raise ValueError("truncation order must be >= 0")
    out = [GR_ZERO] * (K + 1)
    for e, c in a.items():
        half = Fraction(e, 2)
        power = Fraction(1)
        for n in range(K + 1):
            if n > 0:
                power = power * half / n
            term = c * GaussianRational(power)
            if term:
                out[n] = out[n] + term
    return HSeries(out)


def hseries_divide(num: HSeries, den: HSeries) -> HSeries:
    """Exact truncated quotient num/den of order K - v, v = valuation(den).

    Requires every numerator coefficient below order v to vanish;
    otherwise the quotient would not be a power series.
    """
    if num.order != den.order:
        raise OrderMismatch(
            f"series orders differ: {num.order} vs {den.order}")
    v = den.valuation()
    if v is None:
        raise ZeroDivisionError("division by the zero series")
    for j in range(min(v, num.order + 1)):
        if num.coeffs[j]:
            raise NotDivisible(
                f"numerator has a nonzero h^{j} term below valuation {v}")
    K = num.order - v
    lead = den.coeffs[v].inverse()
    rem = list(num.coeffs[v:])
    dshift = den.coeffs[v:]
    out = [GR_ZERO] * (K + 1)
    for j in range(K + 1):
        c = rem[j] * lead
        out[j] = c
        if c:
            for t in range(j, K + 1):
                rem[t] = rem[t] - c * dshift[t - j]
    return HSeries(out)


def exp_series(coeff: GaussianRational, K: int) -> HSeries:
    """exp(coeff * h) truncated at order K."""
    out = [GR_ZERO] * (K + 1)
    term = GR_ONE
    out[0] = term
    for n in range(1, K + 1):
        term = term * coeff * GaussianRational(Fraction(1, n))
        out[n] = term
    return HSeries(out)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
