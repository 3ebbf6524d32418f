"""Exact Laurent-polynomial arithmetic over arbitrary-precision integers.

Two formal variables are supported and kept strictly apart: ``q`` and
``u``, where ``u`` stands for the half-power t^(1/2), so every
half-integer power of t is an integer power of u.  All arithmetic is
exact; no floating point appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _int_gcd

VARIABLES = ("q", "u")


class VariableMismatchError(ValueError):
    """Raised when an operation mixes polynomials in different variables."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class LaurentPoly:
    """A Laurent polynomial with integer coefficients in one variable.

    Terms are stored sparsely as a map exponent -> nonzero coefficient;
    the zero polynomial is the empty map.  Instances are immutable:
    every operation returns a fresh polynomial.
    """

    __slots__ = ("variable", "_terms")

    def __init__(self, variable, terms=None):
        if variable not in VARIABLES:
            raise ValueError(f"unknown variable {variable!r}, expected one of {VARIABLES}")
        object.__setattr__(self, "variable", variable)
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e, c = int(e), int(c)
                if c:
                    acc[e] = acc.get(e, 0) + c
        object.__setattr__(self, "_terms", {e: c for e, c in acc.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variable="q"):
        return cls(variable)

    @classmethod
    def one(cls, variable="q"):
        return cls(variable, {0: 1})

    @classmethod
    def monomial(cls, variable, exponent, coefficient=1):
        return cls(variable, {exponent: coefficient})

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_one(self):
        return self._terms == {0: 1}

    def items(self):
        """Terms as (exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._terms.items())

    def coeff(self, exponent):
        return self._terms.get(exponent, 0)

    @property
    def min_exp(self):
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    @property
    def max_exp(self):
        if not self._terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._terms)

    def content(self):
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = _int_gcd(g, abs(c))
        return g

    @property
    def is_unit_monomial(self):
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def _check(self, other):
        if self.variable != other.variable:
            raise VariableMismatchError(
                f"cannot mix variables {self.variable!r} and {other.variable!r}")

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.variable, terms)

    def __sub__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) - c
        return LaurentPoly(self.variable, terms)

    def __neg__(self):
        return LaurentPoly(self.variable, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.variable, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.variable, terms)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined for LaurentPoly")
        out = LaurentPoly.one(self.variable)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by x^k."""
        return LaurentPoly(self.variable, {e + k: c for e, c in self._terms.items()})

    def divexact(self, other):
        """Exact division; raises ExactDivisionError when the quotient is not a Laurent polynomial."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return LaurentPoly.zero(self.variable)
        sa, sb = self.min_exp, other.min_exp
        rem = {e - sa: c for e, c in self._terms.items()}
        div = {e - sb: c for e, c in other._terms.items()}
        db = max(div)
        lead = div[db]
        quot = {}
        while rem:
            dr = max(rem)
            if dr < db:
                raise ExactDivisionError("inexact polynomial division")
            c, r = divmod(rem[dr], lead)
            if r:
                raise ExactDivisionError("inexact polynomial division")
            quot[dr - db] = c
            for e, bc in div.items():
                e2 = e + dr - db
                v = rem.get(e2, 0) - c * bc
                if v:
                    rem[e2] = v
                else:
                    rem.pop(e2, None)
        return LaurentPoly(self.variable, {e + sa - sb: c for e, c in quot.items()})

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly)
                and self.variable == other.variable
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.variable, tuple(self.items())))

    # -- rendering --------------------------------------------------------

    def _monomial_str(self, e):
        if self.variable == "q":
            if e == 0:
                return ""
            if e == 1:
                return "q"
            return f"q^{e}"
        # u = t^(1/2): display in terms of t
        if e == 0:
            return ""
        if e % 2 == 0:
            k = e // 2
            return "t" if k == 1 else f"t^{k}"
        return f"t^({e}/2)"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.items():
            mono = self._monomial_str(e)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.variable!r}, {dict(self.items())!r})"

    def to_json(self):
        return {"variable": self.variable,
                "terms": [[e, str(c)] for e, c in self.items()]}

    @classmethod
    def from_json(cls, data):
        return cls(data["variable"], {int(e): int(c) for e, c in data["terms"]})


def qnum(k, variable="q"):
    """The quantum bracket x^k - x^(-k) in the requested variable."""
    if k == 0:
        return LaurentPoly.zero(variable)
    return LaurentPoly(variable, {k: 1, -k: -1})


def specialize_t_to_q(p):
    """Substitute u -> q^(-2), i.e. t -> q^(-4), turning a u-polynomial into a q-polynomial."""
    if p.variable != "u":
        raise VariableMismatchError("specialization is defined on polynomials in u = t^(1/2)")
    return LaurentPoly("q", {-2 * e: c for e, c in p.items()})


# ---------------------------------------------------------------------------
# polynomial gcd (content + primitive pseudo-remainder sequence)
# ---------------------------------------------------------------------------


def _prim_parts(p):
    c = p.content()
    return c, p.divexact(LaurentPoly(p.variable, {0: c}))


def _pseudo_rem(a, b):
    """Pseudo-remainder of ordinary polynomials (min_exp >= 0), as dicts of terms."""
    var = a.variable
    ra = dict(a._terms)
    db = b.max_exp
    lead = b.coeff(db)
    while ra and max(ra) >= db:
        dr = max(ra)
        cr = ra[dr]
        # multiply remainder by lead, then cancel the top term
        ra = {e: c * lead for e, c in ra.items()}
        for e, c in b._terms.items():
            e2 = e + dr - db
            v = ra.get(e2, 0) - cr * c
            if v:
                ra[e2] = v
            else:
                ra.pop(e2, None)
    return LaurentPoly(var, ra)


def poly_gcd(a, b):
    """GCD in Z[x, x^-1], normalized to minimal exponent 0 and positive content."""
    if a.is_zero and b.is_zero:
        return LaurentPoly.zero(a.variable)
    if a.is_zero:
        b = b.shift(-b.min_exp)
        return b if b.coeff(b.max_exp) > 0 else -b
    if b.is_zero:
        return poly_gcd(b, a)
    a._check(b)
    a = a.shift(-a.min_exp)
    b = b.shift(-b.min_exp)
    ca, pa = _prim_parts(a)
    cb, pb = _prim_parts(b)
    c = _int_gcd(ca, cb)
    while not pb.is_zero:
        r = _pseudo_rem(pa, pb)
        if r.is_zero:
            pa = pb
            break
        r = r.shift(-r.min_exp)
        _, r = _prim_parts(r)
        pa, pb = pb, r
        if pb.max_exp == 0:
            pa = LaurentPoly.one(a.variable)
            break
    g = pa.shift(-pa.min_exp) * c
    if g.coeff(g.max_exp) < 0:
        g = -g
    return g


# ---------------------------------------------------------------------------
# unit normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitNormalForm:
    """Decomposition p = unit_sign * x^unit_exponent * normal.

    The ``normal`` part has minimal exponent 0 and a positive
    lowest-degree coefficient, so two polynomials agree up to a unit
    +-x^k exactly when their normal parts are equal.
    """

    unit_sign: int
    unit_exponent: int
    normal: LaurentPoly

    def reconstruct(self):
        return self.normal.shift(self.unit_exponent) * self.unit_sign

    def unit_str(self):
        mono = self.normal._monomial_str(self.unit_exponent) or "1"
        return ("-" if self.unit_sign < 0 else "+") + mono


def normalize_unit(p):
    """Unit normal form of a nonzero Laurent polynomial."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no unit normal form")
    m = p.min_exp
    sign = 1 if p.coeff(m) > 0 else -1
    normal = p.shift(-m) * sign
    return UnitNormalForm(sign, m, normal)


# ---------------------------------------------------------------------------
# field of fractions
# ---------------------------------------------------------------------------


class RatFn:
    """Quotient of two Laurent polynomials, kept in canonical form.

    Canonical means: numerator and denominator have no common
    polynomial factor (including integer content), the denominator has
    minimal exponent 0, and its lowest coefficient is positive.
    Equality of values is therefore plain componentwise equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPoly.one(num.variable)
        num._check(den)
        if den.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if num.is_zero:
            num = LaurentPoly.zero(num.variable)
            den = LaurentPoly.one(num.variable)
        else:
            g = poly_gcd(num, den)
            if not g.is_one:
                num = num.divexact(g)
                den = den.divexact(g)
            m = den.min_exp
            num = num.shift(-m)
            den = den.shift(-m)
            if den.coeff(0) < 0:
                num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @classmethod
    def zero(cls, variable="q"):
        return cls(LaurentPoly.zero(variable))

    @classmethod
    def one(cls, variable="q"):
        return cls(LaurentPoly.one(variable))

    @property
    def variable(self):
        return self.num.variable

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_one

    def as_poly(self):
        if not self.den.is_one:
            raise ExactDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = _coerce(other, self.variable)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = _coerce(other, self.variable)
        return RatFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(other, self.variable)
        return RatFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _coerce(other, self.variable)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, RatFn)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFn({self.num!r}, {self.den!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _coerce(value, variable):
    if isinstance(value, RatFn):
        return value
    if isinstance(value, LaurentPoly):
        return RatFn(value)
    if isinstance(value, int):
        return RatFn(LaurentPoly(variable, {0: value}))
    raise TypeError(f"cannot coerce {value!r} to RatFn")


def rat_arith(op, a, b):
    """Field arithmetic on RatFn values: op in {add, sub, mul, div}."""
    if a.variable != b.variable:
        raise VariableMismatchError(
            f"cannot mix variables {a.variable!r} and {b.variable!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
