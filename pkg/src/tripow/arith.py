"""Exact scalar arithmetic.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator, zero stored as 0/1).  On top of them this module provides dense
univariate polynomials and reduced rational functions in a single variable
``eps``, which is enough to carry a perturbed matrix through the power-factor
recursion and then read off the value at ``eps = 0`` exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, InputError, ParseError, PoleError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([-−]?)(\d+)(?:/(\d+))?$")


def rat_canonicalize(n: int, d: int) -> Fraction:
    if d == 0:
        raise InputError("zero denominator")
    return Fraction(n, d)


def rat_pow(q: Fraction, e: int) -> Fraction:
    """Exact ``q**e`` with the convention ``0**0 == 1``."""
    q = Fraction(q)
    if q == 0:
        if e < 0:
            raise DomainError("0 raised to a negative power")
        return Fraction(1) if e == 0 else Fraction(0)
    return q**e


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]``; both ASCII '-' and U+2212 are accepted."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


Scalar = Union[int, Fraction]


class Polynomial:
    """Dense polynomial over Q in ``eps``; ``coeffs[d]`` multiplies ``eps**d``.

    Instances are immutable.  Trailing zeros are stripped, so the zero
    polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, value: Scalar) -> Polynomial:
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def at_zero(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> Polynomial:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return Polynomial(c * inv for c in self.coeffs)

    def scale(self, k: Scalar) -> Polynomial:
        if k == 1:
            return self
        return Polynomial(c * k for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.at_zero())
        return hash(self.coeffs)

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for d, c in enumerate(b):
            out[d] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result, base = Polynomial.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Polynomial):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Polynomial(), self
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * (len(rem) - db)
        for d in range(len(rem) - 1 - db, -1, -1):
            c = rem[d + db] * inv_lead
            quot[d] = c
            if c:
                for t, y in enumerate(other.coeffs):
                    rem[d + t] -= c * y
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            var = "" if d == 0 else ("eps" if d == 1 else f"eps^{d}")
            if var and c == 1:
                terms.append(var)
            elif var and c == -1:
                terms.append(f"-{var}")
            elif var:
                terms.append(f"{format_rational(c)}*{var}")
            else:
                terms.append(format_rational(c))
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    return None


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0)`` is the zero polynomial."""
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


class RationalFunction:
    """Reduced quotient ``num/den`` of polynomials in ``eps``.

    Canonical form: ``gcd(num, den) == 1`` and ``den`` monic, so two equal
    functions always have identical fields.  Every arithmetic operation
    returns a canonical result.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Polynomial.constant(1) if den is None else _as_poly(den)
        if num is None or den is None:
            raise InputError("RationalFunction parts must be polynomials or rationals")
        if den.is_zero():
            raise InputError("zero denominator polynomial")
        g = poly_gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
        lead = den.lead
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> RationalFunction:
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def at_zero(self) -> Fraction:
        return ratfunc_eval_at_zero(self)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            return RationalFunction._raw(self.num + self.den.scale(other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return RationalFunction._raw(a * d + c * b, b * d)
        b1, d1 = b // g, d // g
        num = a * d1 + c * b1
        h = poly_gcd(num, g)
        if not h.is_one():
            num, g = num // h, g // h
        return RationalFunction._raw(num, (b1 * d1 * g).monic()) if num.coeffs else _RF_ZERO

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _RF_ZERO
            return RationalFunction._raw(self.num.scale(other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return _RF_ZERO
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        if not g1.is_one():
            a, d = a // g1, d // g1
        if not g2.is_one():
            c, b = c // g2, b // g2
        num, den = a * c, b * d
        lead = den.lead
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        lead = self.num.lead
        return RationalFunction._raw(self.den.scale(1 / lead), self.num.scale(1 / lead))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("rational function divided by zero")
            return RationalFunction._raw(self.num.scale(1 / Fraction(other)), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return self.inverse() ** (-e)
        # powers of a reduced fraction stay reduced
        return RationalFunction._raw(self.num**e, self.den**e)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


_RF_ZERO = RationalFunction._raw(Polynomial(), Polynomial.constant(1))


def ratfunc_simplify(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


def ratfunc_eval_at_zero(f: RationalFunction) -> Fraction:
    d0 = f.den.at_zero()
    if d0 == 0:
        raise PoleError(f"{f} has a pole at eps = 0")
    return f.num.at_zero() / d0


def lift(x) -> RationalFunction:
    """Embed a rational (or pass through a rational function)."""
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction._raw(Polynomial.constant(x), Polynomial.constant(1))


def eval_at_zero(x) -> Fraction:
    """Value at ``eps = 0`` of a rational function or a plain rational."""
    if isinstance(x, RationalFunction):
        return ratfunc_eval_at_zero(x)
    return Fraction(x)

