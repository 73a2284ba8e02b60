"""Exact scalars: rationals and Gaussian rationals.

Rationals are ``fractions.Fraction`` (arbitrary precision, always in
lowest terms with positive denominator), re-exported as ``Rational``.
``GaussianRational`` is the field Q(i) built on top of it; it is the
scalar type of every operator matrix in the package.

String grammar (used by every file format):

* rational: ``p`` or ``p/q`` with integer ``p`` and positive ``q``
  (``Fraction`` prints exactly this way);
* Gaussian rational: ``re``, ``im i``, or ``re+im i`` / ``re-im i``,
  where the coefficient of a unit imaginary part may be omitted
  (``i``, ``-i``).  Examples: ``3``, ``-1/2``, ``i``, ``2i``,
  ``1/2-3/4i``.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = _re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``; reject anything outside the grammar."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ParseError(f"malformed rational {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    return str(value)


class GaussianRational:
    """An exact complex number re + im*i with rational re, im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- field operations ------------------------------------------------

    def __add__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.abs_sq()
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        """|z|^2 = re^2 + im^2, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if not self.re:
            return imag
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the ``re+im i`` grammar documented in the module header."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ParseError("empty Gaussian rational")
        if not s.endswith("i"):
            return cls(parse_rational(s))
        body = s[:-1]
        # Interior sign (not leading, not part of p/q) splits re from im.
        split = -1
        for pos in range(1, len(body)):
            if body[pos] in "+-":
                split = pos
        if split == -1:
            re_part, im_part = None, body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = parse_rational(im_part)
        re = parse_rational(re_part) if re_part else Fraction(0)
        return cls(re, im)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
