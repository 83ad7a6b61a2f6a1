"""Exact Gaussian-rational scalars.

Every coefficient handled by the package is a complex number whose real and
imaginary parts are rationals.  Rationals are :class:`fractions.Fraction`
(always reduced, denominator positive, zero stored as ``0/1``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussScalar", "ZERO", "ONE", "I", "arith", "pow_two_i", "as_scalar"]


class GaussScalar:
    """Immutable complex number ``re + im*i`` with rational components."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating-point components are not exact; use Fraction or str")
        re = re if type(re) is Fraction else Fraction(re)
        im = im if type(im) is Fraction else Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussScalar is immutable")

    def __reduce__(self):
        return (GaussScalar, (self.re, self.im))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussScalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussScalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if type(other) is int:
            return GaussScalar._raw(self.re * other, self.im * other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussScalar._raw(a * c, b)
        return GaussScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by the zero scalar")
        a, b = self.re, self.im
        return GaussScalar._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussScalar":
        return GaussScalar._raw(self.re, -self.im)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.re, self.im)) if self.im else hash(self.re)
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- text forms ---------------------------------------------------------

    def to_json(self) -> dict:
        """``{"re": "p/q", "im": "p/q"}`` with ``/q`` omitted when q == 1."""
        return {"re": _frac_text(self.re), "im": _frac_text(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussScalar":
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ValueError(f"unexpected scalar fields {sorted(extra)}")
            return cls(_parse_frac(obj.get("re", "0")), _parse_frac(obj.get("im", "0")))
        if isinstance(obj, bool):
            raise ValueError(f"not a scalar: {obj!r}")
        if isinstance(obj, int):
            return cls(obj)
        if isinstance(obj, str):
            return cls.parse(obj)
        raise ValueError(f"not an exact scalar: {obj!r}")

    @classmethod
    def parse(cls, text: str) -> "GaussScalar":
        """Parse short forms such as ``3``, ``-1/2``, ``i``, ``2i``, ``1-3/4i``."""
        s = text.replace(" ", "")
        m = _SCALAR_RE.fullmatch(s)
        if not s or m is None:
            raise ValueError(f"cannot parse scalar {text!r}")
        real, imag = m.group("re"), m.group("im")
        if real is None and imag is None:
            raise ValueError(f"cannot parse scalar {text!r}")
        re_part = _parse_frac(real) if real else Fraction(0)
        im_part = Fraction(0)
        if imag is not None:
            if imag in ("", "+"):
                im_part = Fraction(1)
            elif imag == "-":
                im_part = Fraction(-1)
            else:
                im_part = _parse_frac(imag)
        return cls(re_part, im_part)

    def __str__(self):
        if not self.im:
            return _frac_text(self.re)
        im = "" if abs(self.im) == 1 else _frac_text(abs(self.im))
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"({_frac_text(self.re)}{'-' if self.im < 0 else '+'}{im}i)"

    def __repr__(self):
        return f"GaussScalar({self})"


_NUM = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<re>[+-]?{_NUM}(?![\d/]*i))?(?:(?P<im>[+-]?(?:{_NUM})?)i)?"
)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_frac(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"scalar component must be a decimal string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text.strip()):
        raise ValueError(f"scalar component {text!r} is not an exact rational")
    q = Fraction(text.strip())
    return q


def _coerce(x):
    if type(x) is GaussScalar:
        return x
    if isinstance(x, GaussScalar):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return GaussScalar._raw(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


def as_scalar(x) -> GaussScalar:
    """Coerce ints, Fractions, strings or JSON objects to a GaussScalar."""
    if isinstance(x, GaussScalar):
        return x
    if isinstance(x, (str, dict)):
        return GaussScalar.from_json(x)
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to an exact scalar")
    return c


ZERO = GaussScalar(0)
ONE = GaussScalar(1)
I = GaussScalar(0, 1)
TWO_I = GaussScalar(0, 2)


def arith(a: GaussScalar, b: GaussScalar, kind: str) -> GaussScalar:
    """Dispatch one field operation by name: add, sub, mul, div or neg (unary on ``a``)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "neg":
        return -a
    raise ValueError(f"unknown operation {kind!r}")


_POW_TWO_I = [ONE]


def pow_two_i(m: int) -> GaussScalar:
    """(2i)**m, exact."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    while len(_POW_TWO_I) <= m:
        _POW_TWO_I.append(_POW_TWO_I[-1] * TWO_I)
    return _POW_TWO_I[m]
