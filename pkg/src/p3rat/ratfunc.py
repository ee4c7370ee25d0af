"""Reduced rational functions over the Gaussian rationals.

A RationalFunction keeps num/den coprime (exact gcd) with a monic
denominator, so equality of values is equality of components.  Derivatives
are formed on the unreduced quotient-rule expression and reduced once at
the end, which avoids gcd churn in long chains.
"""

from __future__ import annotations

import logging

from .errors import DegreeMismatch, DenominatorUnderflow, PoleHit
from .gaussian import GR, ONE, ZERO, GaussianRational
from .poly import Polynomial, poly_gcd

__all__ = ["RationalFunction"]

_log = logging.getLogger(__name__)


def _abs_horner(poly, r, ctx):
    """sum_k |c_k| r^k at nonnegative real r (coefficient mass at radius r)."""
    acc = ctx.mpf(0)
    for c in reversed(poly.coeffs):
        u = c.abs_upper()
        acc = acc * r + ctx.mpf(u.numerator) / ctx.mpf(u.denominator)
    return acc


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        num = num if isinstance(num, Polynomial) else Polynomial([GR(num)])
        if den is None:
            den = Polynomial([ONE])
        den = den if isinstance(den, Polynomial) else Polynomial([GR(den)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and not num.is_zero() and num.degree > 0 and den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.div_exact(g)
                den = den.div_exact(g)
        if num.is_zero():
            den = Polynomial([ONE])
        elif den.leading() != ONE:
            inv = den.leading().inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFunction is immutable")

    # -- structure ---------------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num.coeffs[0] if self.num.coeffs else ZERO

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"

    # -- field operations -----------------------------------------------------------

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_rf(other) + (-self)

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero rational function")
        return RationalFunction(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return _as_rf(other) * self.reciprocal()

    def derivative(self) -> "RationalFunction":
        # quotient rule on the unreduced form, single reduction at the end
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def compose_neg(self) -> "RationalFunction":
        """u(x) -> u(-x)."""
        return RationalFunction(self.num.compose_neg(), self.den.compose_neg())

    # -- expansions ---------------------------------------------------------------

    def laurent_at_infinity(self, k: int):
        """First k coefficients of u = a0 + a1/x + a2/x^2 + ...

        Requires deg num == deg den (finite nonzero limit at infinity).
        """
        if self.num.degree != self.den.degree:
            raise DegreeMismatch(
                f"deg num = {self.num.degree} != deg den = {self.den.degree}"
            )
        pr = self.num.reversed().coeffs
        qr = self.den.reversed().coeffs
        q0_inv = qr[0].inverse()
        out = []
        for j in range(k):
            acc = pr[j] if j < len(pr) else ZERO
            for t in range(j):
                q = qr[j - t] if j - t < len(qr) else ZERO
                acc = acc - out[t] * q
            out.append(acc * q0_inv)
        return out

    # -- evaluation ---------------------------------------------------------------

    def eval_exact(self, x) -> GaussianRational:
        x = GR(x)
        d = self.den.eval_exact(x)
        if d.is_zero():
            raise PoleHit(f"exact evaluation at pole x = {x}")
        return self.num.eval_exact(x) * d.inverse()

    def eval(self, x, precision_bits: int = 128):
        """Certified big-float evaluation.

        Horner at a working precision that adapts to the evaluation condition
        number cond = sum_k |c_k||z|^k / |p(z)| of both polynomials, so the
        returned quotient has relative error <= 2^(-precision_bits + g) with
        g the logged guard; raises DenominatorUnderflow when |den(z)| falls
        below 2^(-precision_bits/2) relative to its own coefficient mass at z
        (z is then numerically a pole).
        """
        import mpmath

        guard = max(16, (max(self.num.degree, self.den.degree, 1)).bit_length() + 8)
        wp = precision_bits + 2 * guard
        val = None
        for _attempt in range(4):
            with mpmath.workprec(wp):
                z = x if isinstance(x, (mpmath.mpc, mpmath.mpf)) else (
                    x.to_mpc(mpmath.mp) if isinstance(x, GaussianRational)
                    else mpmath.mpc(x)
                )
                az = abs(z)
                nv = self.num.eval_mpc(z, mpmath.mp)
                dv = self.den.eval_mpc(z, mpmath.mp)
                bd = _abs_horner(self.den, az, mpmath.mp)
                if abs(dv) < bd * mpmath.mpf(2) ** (-(precision_bits // 2)):
                    raise DenominatorUnderflow(f"denominator underflow at x = {z}")
                cond = bd / abs(dv)
                if nv != 0:
                    cond = max(cond, _abs_horner(self.num, az, mpmath.mp) / abs(nv))
                need = precision_bits + int(mpmath.log(cond, 2)) + guard
                if wp >= need or nv == 0:
                    _log.debug("eval at wp=%d (guard %d)", wp, guard)
                    val = nv / dv
                    break
            wp = need + guard
        if val is None:
            with mpmath.workprec(wp):
                val = self.num.eval_mpc(z, mpmath.mp) / self.den.eval_mpc(z, mpmath.mp)
        with mpmath.workprec(precision_bits):
            return +val

    # -- serialization ----------------------------------------------------------------

    def to_dict(self):
        return {"num": self.num.to_lists(), "den": self.den.to_lists()}

    @staticmethod
    def from_dict(d) -> "RationalFunction":
        return RationalFunction(
            Polynomial.from_lists(d["num"]), Polynomial.from_lists(d["den"]),
            reduce=False,
        )


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (Polynomial, GaussianRational, int)):
        num = x if isinstance(x, Polynomial) else Polynomial([GR(x)])
        return RationalFunction(num, reduce=False)
    return NotImplemented
