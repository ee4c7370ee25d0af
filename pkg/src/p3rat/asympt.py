"""Scaling-limit machinery: the first-integral quartic, its equilibria and
degenerations, the conjectured outer limit, and the coordinate transforms
used for pole/zero maps.

The quartic attached to the autonomous model at base point y0 with
integration constant C is

    P(q; y0, C) = -(y0^2/4) q^4 + (i y0/2) q^3 + C q^2 + (i y0/2) q - y0^2/4,

whose coefficient list is palindromic: the root set is invariant under
q -> 1/q.  Double roots q = p0 solve y0 p0^4 - i p0^3 + i p0 - y0 = 0, i.e.
p0 in {1, -1, p0+(y0), p0-(y0)} with

    p0+-(y0) = i/(2 y0) -+ i sqrt(1/(4 y0^2) + 1)    (principal branch),

and then C = -i y0/(4 p0) - 3 i y0 p0/4 + y0^2 p0^2 / 2 makes

    P = -(y0^2/4) (q - p0)^2 (q^2 + b q + c),  b = 2 p0 - 2i/y0,  c = 1/p0^2.

Everything here runs in exact Gaussian-rational arithmetic whenever the
inputs are exact (and the square root exists in the field), and in mpmath
big-float arithmetic otherwise.
"""

from __future__ import annotations

import mpmath

from gmpy2 import isqrt as zisqrt, mpq

from .errors import BranchPoint, InvalidPlane, ZeroP0
from .gaussian import GR, IUNIT, ONE, GaussianRational
from .umemura import build_u, eval_u

__all__ = [
    "Quartic",
    "EquilibriumSet",
    "equilibria",
    "c_of",
    "factored_quartic",
    "outer_limit",
    "convergence_probe",
    "plane_transform",
    "PLANES",
    "gaussian_sqrt",
]

PLANES = ("x", "y", "w", "xiPlus", "xiMinus", "z")


def _is_exact(*vals) -> bool:
    return all(isinstance(v, GaussianRational) for v in vals)


def _iunit(exact: bool):
    return IUNIT if exact else mpmath.mpc(0, 1)


def _as_num(v, exact: bool):
    if exact:
        return GR(v)
    if isinstance(v, GaussianRational):
        return v.to_mpc(mpmath.mp)
    return mpmath.mpc(v)


def rational_sqrt(q):
    """Exact sqrt of a nonnegative mpq, or None if not a perfect square."""
    if q < 0:
        return None
    rn, rd = zisqrt(q.numerator), zisqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return mpq(rn, rd)
    return None


def gaussian_sqrt(z: GaussianRational):
    """Principal square root of z in Q(i) if it exists there, else None."""
    a, b = z.re, z.im
    t = rational_sqrt(a * a + b * b)
    if t is None:
        return None
    c2 = (a + t) / 2
    c = rational_sqrt(c2)
    if c is None:
        return None
    if b == 0:
        if a >= 0:
            return GaussianRational(c, 0)
        d = rational_sqrt(-a)
        return None if d is None else GaussianRational(0, d)
    if c == 0:
        return None
    d = b / (2 * c)
    # principal branch: real part positive (c > 0 unless z is negative real)
    return GaussianRational(c, d)


class Quartic:
    """P(q; y0, C); exact when (y0, C) are GaussianRational."""

    def __init__(self, y0, C):
        self.exact = _is_exact(y0, C)
        self.y0 = y0 if self.exact else _as_num(y0, False)
        self.C = C if self.exact else _as_num(C, False)

    def coefficients(self):
        """[q^0, q^1, q^2, q^3, q^4] coefficients."""
        i = _iunit(self.exact)
        y0, C = self.y0, self.C
        lead = -(y0 * y0) / 4
        mid = i * y0 / 2
        return [lead, mid, C, mid, lead]

    def reversal_symmetric(self) -> bool:
        c = self.coefficients()
        return list(reversed(c)) == c if self.exact else all(
            abs(a - b) == 0 for a, b in zip(c, reversed(c))
        )

    def __call__(self, q):
        acc = None
        for c in reversed(self.coefficients()):
            acc = c if acc is None else acc * q + c
        return acc


class EquilibriumSet:
    """The four double-root candidates {1, -1, p0+, p0-}."""

    __slots__ = ("y0", "values", "degenerate", "exact")

    def __init__(self, y0, values, degenerate, exact):
        self.y0 = y0
        self.values = tuple(values)  # order: +1, -1, p0+, p0-
        self.degenerate = degenerate
        self.exact = exact

    @property
    def p0_plus(self):
        return self.values[2]

    @property
    def p0_minus(self):
        return self.values[3]

    def quartic_residuals(self, precision_bits: int = 128):
        """Residuals of y0 p^4 - i p^3 + i p - y0 at each member (exact in
        exact mode, at `precision_bits` otherwise)."""
        i = _iunit(self.exact)
        if self.exact:
            y0 = self.y0
            return [y0 * p * p * p * p - i * p * p * p + i * p - y0
                    for p in self.values]
        with mpmath.workprec(precision_bits):
            y0 = _as_num(self.y0, False)
            return [+(y0 * p**4 - i * p**3 + i * p - y0) for p in self.values]


def equilibria(y0, precision_bits: int = 128) -> EquilibriumSet:
    """All four equilibrium values at base point y0.

    Exact when y0 is Gaussian rational and 1/(4 y0^2) + 1 is a perfect
    square in Q(i); big-float at `precision_bits` otherwise.  At the corner
    points y0 = +-i/2 the pair p0+- collapses and the set is flagged
    degenerate (no error is raised).
    """
    if isinstance(y0, GaussianRational):
        if y0.is_zero():
            raise BranchPoint("equilibria undefined at y0 = 0")
        disc = ONE / (y0 * y0 * 4) + 1
        if disc.is_zero():
            center = IUNIT / (y0 * 2)
            return EquilibriumSet(y0, [ONE, -ONE, center, center], True, True)
        root = gaussian_sqrt(disc)
        if root is not None:
            center = IUNIT / (y0 * 2)
            off = IUNIT * root
            return EquilibriumSet(y0, [ONE, -ONE, center - off, center + off], False, True)
        with mpmath.workprec(precision_bits):
            return _equilibria_numeric(y0.to_mpc(mpmath.mp))
    with mpmath.workprec(precision_bits):
        return _equilibria_numeric(mpmath.mpc(y0))


def _equilibria_numeric(y0):
    if y0 == 0:
        raise BranchPoint("equilibria undefined at y0 = 0")
    one = mpmath.mpf(1)
    disc = 1 / (4 * y0 * y0) + 1
    center = mpmath.mpc(0, 1) / (2 * y0)
    if disc == 0:
        return EquilibriumSet(y0, [one, -one, center, center], True, False)
    off = mpmath.mpc(0, 1) * mpmath.sqrt(disc)  # principal branch
    return EquilibriumSet(y0, [one, -one, center - off, center + off], False, False)


def c_of(y0, p0):
    """Integration constant making q = p0 a double root of the quartic."""
    exact = _is_exact(y0, p0)
    y0 = _as_num(y0, exact)
    p0 = _as_num(p0, exact)
    if (p0.is_zero() if exact else p0 == 0):
        raise ZeroP0("p0 must be nonzero")
    i = _iunit(exact)
    quarter = GR("1/4") if exact else mpmath.mpf(1) / 4
    return (
        -(i * y0) * quarter / p0
        - i * y0 * p0 * 3 * quarter
        + y0 * y0 * p0 * p0 / 2
    )


def factored_quartic(y0, p0):
    """Coefficients of -(y0^2/4)(q-p0)^2 (q^2 + b q + c) plus (b, c)."""
    exact = _is_exact(y0, p0)
    y0 = _as_num(y0, exact)
    p0 = _as_num(p0, exact)
    if (p0.is_zero() if exact else p0 == 0):
        raise ZeroP0("p0 must be nonzero")
    i = _iunit(exact)
    one = ONE if exact else mpmath.mpf(1)
    b = p0 * 2 - i * 2 / y0
    c = one / (p0 * p0)
    lead = -(y0 * y0) / 4
    # (q - p0)^2 = q^2 - 2 p0 q + p0^2
    sq = [p0 * p0, -p0 * 2, one]
    quad = [c, b, one]
    prod = [None] * 5
    for a_i, av in enumerate(sq):
        for b_i, bv in enumerate(quad):
            cur = prod[a_i + b_i]
            term = av * bv * lead
            prod[a_i + b_i] = term if cur is None else cur + term
    return prod, b, c


def outer_limit(y, precision_bits: int = 128):
    """The conjectured limit of u_n(ny; m) outside the accumulation domain:
    i * p0+(y), independent of m by construction (it takes no m argument)."""
    eq = equilibria(y if isinstance(y, GaussianRational) else mpmath.mpc(y),
                    precision_bits)
    if eq.degenerate:
        raise BranchPoint(f"outer limit degenerates at corner y = {eq.y0}")
    with mpmath.workprec(precision_bits):
        p0 = eq.p0_plus if not eq.exact else eq.p0_plus.to_mpc(mpmath.mp)
        return mpmath.mpc(0, 1) * p0


def convergence_probe(m, y, n_list, precision_bits: int = 192):
    """err(n) = |u_n(n y; m) - outer limit| for each n; emitted for
    monotonicity inspection (the caller asserts decrease, not a rate)."""
    lim = outer_limit(y, precision_bits)
    ym = y.to_mpc(mpmath.mp) if isinstance(y, GaussianRational) else mpmath.mpc(y)
    out = []
    for n in n_list:
        u = build_u(n, GR(m))
        with mpmath.workprec(precision_bits):
            val = eval_u(u, ym * n, precision_bits)
            out.append((n, abs(val - lim)))
    return out


def plane_transform(x, plane: str, n: int, y0=None):
    """Map a point from the x-plane into the requested viewing plane.

    y = x/n;  w = x - n*y0;  xi+- = (-+ i x - n/2) / (n/32)^(1/3);  z = n*x,
    with the real cube root of n/32.
    """
    if plane not in PLANES:
        raise InvalidPlane(f"plane must be one of {PLANES}, got {plane!r}")
    if plane != "x" and n < 1:
        raise InvalidPlane("plane transforms need n >= 1")
    x = mpmath.mpc(x)
    if plane == "x":
        return x
    if plane == "y":
        return x / n
    if plane == "z":
        return x * n
    if plane == "w":
        if y0 is None:
            raise InvalidPlane("w-plane transform needs y0")
        y0 = y0.to_mpc(mpmath.mp) if isinstance(y0, GaussianRational) else mpmath.mpc(y0)
        return x - n * y0
    scale = mpmath.cbrt(mpmath.mpf(n) / 32)
    if plane == "xiPlus":
        return (-mpmath.mpc(0, 1) * x - mpmath.mpf(n) / 2) / scale
    return (mpmath.mpc(0, 1) * x - mpmath.mpf(n) / 2) / scale
