"""Weyl-algebra specifics: normal ordering with p-localization, the
order-by-order h-series realization of the u-localized phase-space
algebra, and the inner-derivation solver.

A LocalWeylElement is sum c_{a,b}(h) x^a p^b with a >= 0 and b any
integer; products are normal-ordered through the exact closed form

    p^b x^a = sum_j  C(a, j) (b)_j (-i)^j  x^(a-j) p^(b-j)

((b)_j the falling factorial, valid for negative b as well), which for
a = 1 is the localization rule p^b x = x p^b - i b p^(b-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .coeff import (GR_I, GR_ONE, GR_ZERO, GaussianRational, HSeries, Scalar,
                    binomial, expand_q_to_h, hseries_divide)
from .errors import NoSolution, OrderMismatch
from .freealg import Element
from .linalg import ScalarFraction, solve_gauss
from .report import Report
from . import catalog

__all__ = [
    "LocalWeylElement",
    "build_u",
    "build_u_inv",
    "build_xi",
    "verify_qheis5_realization",
    "DerivationSpec",
    "inner_derivation_solve",
]


class LocalWeylElement:
    """sum over (a, b) of c_{a,b}(h) x^a p^b, all series sharing one order K."""

    __slots__ = ("K", "terms")

    def __init__(self, K: int, terms: Optional[Dict[Tuple[int, int], HSeries]] = None):
        self.K = K
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0:
                    raise ValueError("x-exponent must be nonnegative")
                if c.order != K:
                    raise OrderMismatch("coefficient series order differs from K")
                if not c.is_zero():
                    clean[(a, b)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, K):
        return cls(K)

    @classmethod
    def monomial(cls, a, b, K, coeff=None):
        c = coeff if coeff is not None else HSeries.one(K)
        return cls(K, {(a, b): c})

    @classmethod
    def one(cls, K):
        return cls.monomial(0, 0, K)

    @classmethod
    def x(cls, K):
        return cls.monomial(1, 0, K)

    @classmethod
    def p(cls, K):
        return cls.monomial(0, 1, K)

    @classmethod
    def p_inv(cls, K):
        return cls.monomial(0, -1, K)

    # -- ring ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LocalWeylElement):
            return NotImplemented
        if other.K != self.K:
            raise OrderMismatch("mixed truncation orders")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            n = terms.get(k)
            n = c if n is None else n + c
            if n.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = n
        return LocalWeylElement(self.K, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LocalWeylElement(self.K, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "LocalWeylElement":
        """Multiply by a coefficient: HSeries (same K), GaussianRational,
        Fraction/int, or Scalar (expanded via q = e^h)."""
        if isinstance(c, Scalar):
            c = expand_q_to_h(c, self.K)
        if isinstance(c, HSeries):
            if c.order != self.K:
                raise OrderMismatch("mixed truncation orders")
            return LocalWeylElement(self.K,
                                    {k: v * 0 + v * c for k, v in self.terms.items()})
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        return LocalWeylElement(self.K, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LocalWeylElement):
            return NotImplemented
        if other.K != self.K:
            raise OrderMismatch("mixed truncation orders")
        K = self.K
        acc: Dict[Tuple[int, int], HSeries] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                # p^b1 x^a2 = sum_j C(a2,j) (b1)_j (-i)^j x^(a2-j) p^(b1-j)
                falling = Fraction(1)
                coeff = GR_ONE
                for j in range(a2 + 1):
                    if j > 0:
                        falling *= (b1 - j + 1)
                        coeff = coeff * GaussianRational(0, -1)  # an extra (-i)
                    if falling == 0:
                        break
                    w = (GaussianRational(binomial(a2, j) * falling) * coeff)
                    key = (a1 + a2 - j, b1 + b2 - j)
                    add = c * w
                    cur = acc.get(key)
                    cur = add if cur is None else cur + add
                    if cur.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = cur
        return LocalWeylElement(K, acc)

    def __eq__(self, other):
        if not isinstance(other, LocalWeylElement):
            return NotImplemented
        return self.K == other.K and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    # -- series utilities -------------------------------------------------

    def divide_series(self, den: HSeries) -> "LocalWeylElement":
        """Coefficientwise exact division; the order drops by den's valuation."""
        v = den.valuation()
        newK = self.K - (v or 0)
        return LocalWeylElement(
            newK, {k: hseries_divide(c, den) for k, c in self.terms.items()})

    def truncate(self, K: int) -> "LocalWeylElement":
        return LocalWeylElement(K, {k: c.truncate(K) for k, c in self.terms.items()})

    def order_part(self, n: int) -> Dict[Tuple[int, int], GaussianRational]:
        """The h^n coefficient of every monomial."""
        return {k: c.coeffs[n] for k, c in self.terms.items() if c.coeffs[n]}

    def lowest_order_nonzero(self) -> Optional[int]:
        vals = [c.valuation() for c in self.terms.values()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def star(self) -> "LocalWeylElement":
        """Antilinear antimultiplicative involution with x, p real."""
        out = LocalWeylElement.zero(self.K)
        for (a, b), c in self.terms.items():
            piece = (LocalWeylElement.monomial(0, b, self.K, c.conjugate())
                     * LocalWeylElement.monomial(a, 0, self.K))
            out = out + piece
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            mono = []
            if a:
                mono.append("x" if a == 1 else f"x^{a}")
            if b:
                mono.append("p" if b == 1 else f"p^{b}")
            word = " ".join(mono) if mono else "1"
            bits.append(f"({c}) {word}")
        return " + ".join(bits)

    def __repr__(self):
        return f"LocalWeyl<{self} + O(h^{self.K + 1})>"


def build_u(K: int) -> LocalWeylElement:
    """u = exp(-i h p x) normal-ordered and truncated at order K."""
    if K < 1:
        raise ValueError("order must be >= 1")
    px = LocalWeylElement.p(K) * LocalWeylElement.x(K)
    out = LocalWeylElement.one(K)
    term = LocalWeylElement.one(K)
    for n in range(1, K + 1):
        # multiply by (-i h / n) (p x); the h-shift keeps the order fixed
        term = term * px
        term = LocalWeylElement(
            K, {k: (c * GaussianRational(0, Fraction(-1, n))).shift(1)
                for k, c in term.terms.items()})
        out = out + term
    return out


def build_u_inv(K: int) -> LocalWeylElement:
    """u^-1 = q exp(i h x p) truncated at order K (ubar = q^-1 u^-1)."""
    if K < 1:
        raise ValueError("order must be >= 1")
    xp = LocalWeylElement.x(K) * LocalWeylElement.p(K)
    out = LocalWeylElement.one(K)
    term = LocalWeylElement.one(K)
    for n in range(1, K + 1):
        term = term * xp
        term = LocalWeylElement(
            K, {k: (c * GaussianRational(0, Fraction(1, n))).shift(1)
                for k, c in term.terms.items()})
        out = out + term
    return out.scale(expand_q_to_h(Scalar.q_power(1), K))


def build_xi(K: int) -> LocalWeylElement:
    """xi = (i/p) (u - u^-1)/(q - q^-1), exact through order K.

    The numerator starts at order h (the h^0 parts of u and u^-1 cancel),
    so the division by q - q^-1 = 2h + O(h^3) is exact; the order-0 part
    of the result is x itself.
    """
    if K < 1:
        raise ValueError("order must be >= 1")
    KK = K + 1
    w = build_u(KK) - build_u_inv(KK)
    den = expand_q_to_h(Scalar.q_power(1) - Scalar.q_power(-1), KK)
    quot = w.divide_series(den)          # order K
    ip_inv = LocalWeylElement.monomial(0, -1, K, HSeries.from_gauss(GR_I, K))
    return ip_inv * quot


_REALIZATION_GENS = ("xi", "p", "u", "uinv")


def _realization_images(K: int) -> Dict[str, LocalWeylElement]:
    return {
        "xi": build_xi(K),
        "p": LocalWeylElement.p(K),
        "u": build_u(K),
        "uinv": build_u_inv(K),
    }


def _element_to_local(e: Element, images: Dict[str, LocalWeylElement],
                      K: int) -> LocalWeylElement:
    """Evaluate a presentation element under the realization, clearing any
    fraction-field denominators first (returns (value, cleared) pairs is
    avoided: the caller passes elements already cleared)."""
    out = LocalWeylElement.zero(K)
    for w, c in e.terms.items():
        piece = LocalWeylElement.one(K)
        for gid in w:
            piece = piece * images[e.pres.generators[gid].name]
        if isinstance(c, ScalarFraction):
            if not c.den.is_one():
                raise ValueError("clear denominators before realization")
            c = c.num
        out = out + piece.scale(c)
    return out


def _clear_denominators(lhs: Element, rhs: Element):
    """Multiply lhs - rhs by the product of all coefficient denominators,
    returning an equivalent relation over the Laurent ring."""
    rel = lhs - rhs
    den = Scalar.one()
    for c in rel.terms.values():
        if isinstance(c, ScalarFraction) and not c.den.is_one():
            den = den * c.den
    if den.is_one():
        return rel
    return rel * (rel.pres.coeff_one * den)


def verify_qheis5_realization(K: int, variant: str = "corrected") -> Report:
    """Substitute the h-series realization into every displayed relation of
    the chosen variant; a relation passes when its residual vanishes
    identically through order K."""
    if variant not in ("corrected", "printed"):
        raise ValueError("variant must be 'corrected' or 'printed'")
    pres = catalog.q_heisenberg(f"final_{variant}")
    images = _realization_images(K)
    rep = Report(suite="qheis5-realization",
                 inputs={"order": K, "variant": variant})
    for name, lhs, rhs in pres.display_relations:
        rel = _clear_denominators(lhs, rhs)
        val = _element_to_local(rel, images, K)
        lead = val.lowest_order_nonzero()
        note = "" if val.is_zero() else f"leading residual at order h^{lead}"
        rep.add(name, val.is_zero(), residual=_brief(val), note=note)
    return rep


def _brief(v: LocalWeylElement, maxlen: int = 120) -> str:
    if v.is_zero():
        return ""
    n = v.lowest_order_nonzero()
    lead = v.order_part(n)
    bits = []
    for (a, b), c in sorted(lead.items()):
        mono = []
        if a:
            mono.append("x" if a == 1 else f"x^{a}")
        if b:
            mono.append("p" if b == 1 else f"p^{b}")
        bits.append(f"({c}) h^{n} " + (" ".join(mono) if mono else "1"))
    s = " + ".join(bits) + " + ..."
    return s if len(s) <= maxlen else s[:maxlen] + "..."


# -- inner derivations ------------------------------------------------------


@dataclass
class DerivationSpec:
    """A derivation of A_1 given by its values on x and p.

    Images must have constant Gaussian-rational coefficients (the Weyl
    algebra itself is q-free) and satisfy the consistency condition
    delta(x p - p x - i) = 0.
    """

    dx: Element
    dp: Element
    degree_bound: int


def _const_coeff(c) -> GaussianRational:
    if isinstance(c, Scalar):
        if c.is_zero():
            return GR_ZERO
        e, g = c.monomial()
        if e != 0:
            raise ValueError("inner-derivation solver works over Q(i) coefficients")
        return g
    raise ValueError("expected Scalar coefficients")


def _pbw_words(pres, max_deg):
    """PBW words x^j p^k with 1 <= j + k <= max_deg (constants excluded)."""
    x, p = pres.gen("x1").id, pres.gen("p1").id
    out = []
    for d in range(1, max_deg + 1):
        for j in range(d + 1):
            out.append((x,) * j + (p,) * (d - j))
    return out


def inner_derivation_solve(spec: DerivationSpec) -> Element:
    """Find a with [a, x] = delta(x), [a, p] = delta(p) in A_1, of degree
    <= degree_bound + 1 and zero constant term; NoSolution if the linear
    system is inconsistent within the bound.

    The solution is unique because the center of the Weyl algebra is the
    constants, which are excluded from the basis.
    """
    pres = spec.dx.pres
    if pres is not spec.dp.pres:
        raise ValueError("images live in different presentations")
    x, p = pres.gen_element("x1"), pres.gen_element("p1")

    consistency = spec.dx * p + x * spec.dp - spec.dp * x - p * spec.dx
    if not pres.normal_form(consistency).is_zero():
        raise ValueError("images violate delta(x p - p x - i) = 0")

    basis = _pbw_words(pres, spec.degree_bound + 1)
    targets = []
    columns = []
    for w in basis:
        e = Element(pres, {w: pres.coeff_one})
        columns.append((pres.normal_form(e * x - x * e),
                        pres.normal_form(e * p - p * e)))
    # collect every word appearing anywhere
    words = set()
    for cx, cp in columns:
        words.update(cx.terms)
        words.update(cp.terms)
    ndx = pres.normal_form(spec.dx)
    ndp = pres.normal_form(spec.dp)
    words.update(ndx.terms)
    words.update(ndp.terms)
    words = sorted(words, key=pres.word_key)

    rows = []
    rhs = []
    for which, target in ((0, ndx), (1, ndp)):
        for w in words:
            rows.append([_const_coeff(col[which].terms.get(w, Scalar.zero()))
                         for col in columns])
            rhs.append(_const_coeff(target.terms.get(w, Scalar.zero())))
    sol = solve_gauss(rows, rhs)
    if sol is None:
        raise NoSolution(
            f"no inner generator of degree <= {spec.degree_bound + 1} matches")
    out = pres.zero()
    for w, c in zip(basis, sol):
        if c:
            out = out + Element(pres, {w: Scalar.from_gauss(c)})
    return out
