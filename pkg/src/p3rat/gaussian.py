"""Exact Gaussian-rational arithmetic.

A GaussianRational is a complex number a+bi whose real and imaginary parts
are arbitrary-precision rationals (gmpy2.mpq).  It is the coefficient field
for every exact computation in this package: no operation here ever rounds.

The string form is ``a/b+c/d*i`` (either part may be an integer, the
imaginary part may be omitted when zero); parsing is exact and round-trips
bit-for-bit.
"""

from __future__ import annotations

import re as _re

from gmpy2 import mpq, mpz

__all__ = ["GaussianRational", "GR", "ZERO", "ONE", "IUNIT", "Params"]

_PART = _re.compile(r"^[+-]?\d+(/\d+)?$")


class GaussianRational:
    """Immutable exact complex number with rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, *_):
        raise AttributeError("GaussianRational is immutable")

    # -- ring/field operations ------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates and hashing ----------------------------------------------

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_rational(self):
        return self.im == 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversions ----------------------------------------------------------

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im > 0:
            return f"{self.re}+{self.im}*i"
        return f"{self.re}-{-self.im}*i"

    def __repr__(self):
        return f"GR('{self}')"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse the exact string form; no float syntax is accepted."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty GaussianRational string")

        def rational_value(part):
            if not _PART.match(part):
                raise ValueError(f"bad rational part in {text!r}")
            return mpq(part.lstrip("+"))

        def imag_value(part):
            part = part.replace("*i", "").replace("i", "")
            if part in ("", "+"):
                return mpq(1)
            if part == "-":
                return mpq(-1)
            return rational_value(part)

        if _re.match(r"^[+-]?(?:\d+(?:/\d+)?\*?)?i$", s):
            return GaussianRational(0, imag_value(s))
        if _PART.match(s):
            return GaussianRational(rational_value(s), 0)
        m = _re.match(r"^(?P<re>[+-]?\d+(?:/\d+)?)(?P<im>[+-](?:\d+(?:/\d+)?\*?)?i)$", s)
        if not m:
            raise ValueError(f"cannot parse GaussianRational {text!r}")
        return GaussianRational(rational_value(m.group("re")), imag_value(m.group("im")))

    def to_mpc(self, ctx):
        """Convert to an mpmath complex number in context ``ctx`` (rounds)."""
        re = ctx.mpf(self.re.numerator) / ctx.mpf(self.re.denominator)
        im = ctx.mpf(self.im.numerator) / ctx.mpf(self.im.denominator)
        return ctx.mpc(re, im)

    def abs_upper(self):
        """Cheap exact upper bound |re|+|im| >= |z|."""
        return abs(self.re) + abs(self.im)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, type(mpz(0)), type(mpq(0)))):
        return GaussianRational(x)
    return NotImplemented


def GR(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; GR('1/2-3*i') also parses strings."""
    if isinstance(re, str):
        if im:
            raise ValueError("cannot combine string and imaginary argument")
        return GaussianRational.parse(re)
    if isinstance(re, GaussianRational) and not im:
        return re
    return GaussianRational(re, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IUNIT = GaussianRational(0, 1)


class Params:
    """Integer index n and complex parameter m; carries the ODE constants.

    theta0 = n + m and theta_inf = m - n + 1, so theta0 + theta_inf = 2m + 1
    and theta0 - theta_inf = 2n - 1 automatically.
    """

    __slots__ = ("n", "m")

    def __init__(self, n: int, m):
        self.n = int(n)
        self.m = GR(m)

    @property
    def theta0(self) -> GaussianRational:
        return self.m + self.n

    @property
    def theta_inf(self) -> GaussianRational:
        return self.m - self.n + 1

    def __repr__(self):
        return f"Params(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Params) and self.n == other.n and self.m == other.m
