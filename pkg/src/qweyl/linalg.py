"""The fraction field Q(i)(q^(1/2)) and exact dense matrices over it.

Laurent-polynomial scalars are enough for most of the engine, but
spectral projectors, metric factors and several structure constants
genuinely carry denominators like q - q^-1 or 1 + q^(N-2).  A
ScalarFraction is a reduced quotient of two Scalars; matrices over it
support the exact products, inverses and rank-one factorizations the
structural layer needs.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .coeff import GR_ONE, GR_ZERO, GaussianRational, Scalar

__all__ = ["ScalarFraction", "FMatrix"]


def _scalar_to_poly(a: Scalar) -> Tuple[int, List[GaussianRational]]:
    """Write a nonzero Laurent scalar as s^v * (c_0 + c_1 s + ...), c_0 != 0."""
    v = a.valuation()
    d = a.degree()
    coeffs = [GR_ZERO] * (d - v + 1)
    for e, c in a.items():
        coeffs[e - v] = c
    return v, coeffs


def _poly_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead_inv = den[-1].inverse()
    quot = [GR_ZERO] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if not c:
            continue
        f = c * lead_inv
        quot[i - dd] = f
        for j, dc in enumerate(den):
            num[i - dd + j] = num[i - dd + j] - f * dc
    while num and not num[-1]:
        num.pop()
    return quot, num


def _poly_gcd(a, b):
    a = list(a)
    b = list(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _poly_to_scalar(v: int, coeffs) -> Scalar:
    return Scalar({v + j: c for j, c in enumerate(coeffs)})


class ScalarFraction:
    """A reduced quotient num/den of Laurent scalars, den nonzero.

    Canonical form: gcd(num, den) = 1 over Q(i)[s], den a polynomial in s
    with nonzero constant term and leading coefficient 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar, _reduced=False):
        if den.is_zero():
            raise ZeroDivisionError("scalar fraction with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("ScalarFraction is immutable")

    @classmethod
    def from_scalar(cls, a: Scalar) -> "ScalarFraction":
        return cls(a, Scalar.one(), _reduced=True)

    @classmethod
    def one(cls) -> "ScalarFraction":
        return cls.from_scalar(Scalar.one())

    @classmethod
    def zero(cls) -> "ScalarFraction":
        return cls.from_scalar(Scalar.zero())

    def _coerce(self, other):
        if isinstance(other, ScalarFraction):
            return other
        if isinstance(other, Scalar):
            return ScalarFraction.from_scalar(other)
        if isinstance(other, (int,)):
            return ScalarFraction.from_scalar(Scalar.from_int(other))
        if isinstance(other, GaussianRational):
            return ScalarFraction.from_scalar(Scalar.from_gauss(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarFraction(self.num * o.den + o.num * self.den,
                              self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarFraction(self.num * o.den - o.num * self.den,
                              self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero scalar fraction")
        return ScalarFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ScalarFraction(-self.num, self.den, _reduced=True)

    def __pow__(self, n: int):
        if n < 0:
            return (ScalarFraction.one() / self) ** (-n)
        out = ScalarFraction.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ScalarFraction(self.den, self.num)

    def conjugate(self):
        return ScalarFraction(self.num.conjugate(), self.den.conjugate())

    def eval_at_one(self):
        dv = self.den.eval_at_one()
        if not dv:
            raise ZeroDivisionError("denominator vanishes at q = 1")
        return self.num.eval_at_one() * dv.inverse()

    def eval_complex(self, s_value):
        return self.num.eval_complex(s_value) / self.den.eval_complex(s_value)

    def as_scalar(self) -> Scalar:
        """The underlying Scalar when the denominator is trivial or a monomial."""
        if self.den.is_one():
            return self.num
        e, c = self.den.monomial()
        return self.num * Scalar({-e: c.inverse()})

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if " " in ns:
            ns = f"({ns})"
        return f"{ns} / ({ds})"

    def __repr__(self):
        return f"ScalarFraction<{self}>"


def _reduce(num: Scalar, den: Scalar) -> Tuple[Scalar, Scalar]:
    if num.is_zero():
        return Scalar.zero(), Scalar.one()
    nv, np_ = _scalar_to_poly(num)
    dv, dp = _scalar_to_poly(den)
    g = _poly_gcd(np_, dp)
    if len(g) > 1:
        np_, _ = _poly_divmod(np_, g)
        dp, _ = _poly_divmod(dp, g)
    # normalize: den has s-valuation 0 and leading coefficient 1
    lead = dp[-1]
    if lead != GR_ONE:
        inv = lead.inverse()
        np_ = [c * inv for c in np_]
        dp = [c * inv for c in dp]
    return _poly_to_scalar(nv - dv, np_), _poly_to_scalar(0, dp)


class FMatrix:
    """A dense matrix over ScalarFraction with exact arithmetic."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[ScalarFraction]]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, n, m):
        z = ScalarFraction.zero()
        return cls([[z for _ in range(m)] for _ in range(n)])

    @classmethod
    def identity(cls, n):
        z, o = ScalarFraction.zero(), ScalarFraction.one()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __setitem__(self, ij, v):
        self.rows[ij[0]][ij[1]] = v

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return FMatrix([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return FMatrix([[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return FMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, FMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            out = []
            zero = ScalarFraction.zero()
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        if a.num and b.num:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return FMatrix(out)
        return FMatrix([[a * other for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FMatrix):
            return NotImplemented
        return self.rows == other.rows

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def transpose(self):
        return FMatrix([list(c) for c in zip(*self.rows)])

    def inverse(self):
        """Gauss-Jordan inverse; raises ValueError when singular."""
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        b = FMatrix.identity(n).rows
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = a[col][col].inverse()
            a[col] = [v * inv for v in a[col]]
            b[col] = [v * inv for v in b[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                    b[r] = [v - f * w for v, w in zip(b[r], b[col])]
        return FMatrix(b)

    def rank(self):
        a = [list(r) for r in self.rows]
        rank = 0
        for col in range(self.ncols):
            piv = next((r for r in range(rank, self.nrows)
                        if not a[r][col].is_zero()), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            inv = a[rank][col].inverse()
            a[rank] = [v * inv for v in a[rank]]
            for r in range(self.nrows):
                if r != rank and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[rank])]
            rank += 1
        return rank

    def row_reduce(self):
        """Reduced row-echelon form; returns (rref rows, pivot column list)."""
        a = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            piv = next((r for r in range(rank, self.nrows)
                        if not a[r][col].is_zero()), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            inv = a[rank][col].inverse()
            a[rank] = [v * inv for v in a[rank]]
            for r in range(self.nrows):
                if r != rank and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[rank])]
            pivots.append(col)
            rank += 1
        return a[:rank], pivots


def solve_gauss(rows, rhs):
    """Solve A x = b over GaussianRational; None when inconsistent.

    rows: list of coefficient lists; rhs: list of GaussianRational.
    Underdetermined coordinates are set to zero.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrow = len(m)
    ncol = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncol):
        piv = next((r for r in range(rank, nrow) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [v * inv for v in m[rank]]
        for r in range(nrow):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, nrow):
        if m[r][ncol]:
            return None
    x = [GR_ZERO] * ncol
    for r, col in enumerate(pivots):
        x[col] = m[r][ncol]
    return x
