"""Half-integer-parameter backends: spherical Hankel ratios, Bessel-polynomial
fractions, moment integrals, and the finite Hankel linear systems.

For m = 1/2 + k (k >= 0) the solution at index n is produced by a
(k+1)x(k+1) linear system whose matrix is Hankel in the moments

    M+_j = -i pi H2_{n+j-k-5/2}(-2ix)      (j = 2, ..., 2k+4 appear),

and for m = -1/2 - k by a k x k system in

    M-_j = +i pi H1_{n+k+1/2-j}(-2ix)      (k = 0 needs no solve at all),

where H1/H2 are Hankel functions of half-integer order evaluated through
their exact spherical polynomial parts:

    h2_l(z) = e^{-iz} P_l(1/z),   h1_l(z) = e^{+iz} conj-coeff(P_l)(1/z),

with P_l generated by the exact three-term recurrence
P_{l+1} = (2l+1) w P_l - P_{l-1} from P_0 = i w, P_1 = i w^2 - w (and run
downward for negative orders).  Floats enter only at final evaluation.

These canonical moment values equal the defining contour integrals up to
one j-independent constant per (sign, x) fixed by the contour orientation
and the branch of the half-integer power; every emitted quantity (ratios,
determinant-based solution values) is invariant under that constant, so it
is never asserted.  A quadrature oracle evaluates the same integrals on an
explicit decay path in the t = log(lambda) plane and must agree with the
closed forms to tolerance, constant included.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

import mpmath

from gmpy2 import mpq

from .errors import ContourFailure, SingularHankel
from .gaussian import GR, IUNIT, ONE, GaussianRational
from .poly import Polynomial, X
from .ratfunc import RationalFunction

__all__ = [
    "SphericalHankel2",
    "sph_hankel2",
    "sph_hankel1",
    "u_half_polyratio",
    "moment",
    "HankelSolve",
    "solve_halfint",
]


class SphericalHankel2:
    """h2_l(z) = e^{-iz} * poly_part(1/z), poly_part exact over Q(i)."""

    __slots__ = ("order", "poly_part", "kind")

    def __init__(self, order, poly_part, kind=2):
        self.order = order
        self.poly_part = poly_part
        self.kind = kind

    def eval(self, z, precision_bits=128):
        with mpmath.workprec(precision_bits + 16):
            z = mpmath.mpc(z)
            sgn = -1 if self.kind == 2 else 1
            val = mpmath.exp(mpmath.mpc(0, sgn) * z) * self.poly_part.eval_mpc(1 / z, mpmath.mp)
        with mpmath.workprec(precision_bits):
            return +val


@lru_cache(maxsize=None)
def _h2_poly(order: int) -> Polynomial:
    p0 = Polynomial([0, IUNIT])            # i/z
    p1 = Polynomial([0, -ONE, IUNIT])      # -1/z + i/z^2
    if order == 0:
        return p0
    if order == 1:
        return p1
    if order > 1:
        a, b = _h2_poly(order - 2), _h2_poly(order - 1)
        return X.scale(2 * (order - 1) + 1) * b - a
    # downward: P_{l-1} = (2l+1) w P_l - P_{l+1}
    l = order + 1
    return X.scale(2 * l + 1) * _h2_poly(l) - _h2_poly(l + 1)


def sph_hankel2(order: int) -> SphericalHankel2:
    """Exact polynomial part of the order-`order` spherical Hankel (kind 2).

    Defined for every integer order via the recurrence run in both
    directions; the part has exactly |order|+1 nonzero terms for order >= 0.
    """
    return SphericalHankel2(order, _h2_poly(order), kind=2)


def sph_hankel1(order: int) -> SphericalHankel2:
    """Kind-1 companion: coefficients conjugated, prefactor e^{+iz}."""
    part = Polynomial([c.conjugate() for c in _h2_poly(order).coeffs])
    return SphericalHankel2(order, part, kind=1)


def u_half_polyratio(n: int) -> RationalFunction:
    """The m = 1/2 solution as an explicit ratio of Bessel-type polynomials:

        sum_{j=1}^{n} (2n-j-1)!/((n-j)!(j-1)!) (4x)^j
        ------------------------------------------------
        sum_{j=0}^{n} (2n-j)!/((n-j)!  j!   )  (4x)^j

    (The argument scaling 4x is pinned by the n=1 cross-check against the
    recurrence construction; see the package notes on normalization.)
    """
    if n < 1:
        raise ValueError("defined for n >= 1")
    num = [GR(0)] * (n + 1)
    den = [GR(0)] * (n + 1)
    for j in range(1, n + 1):
        num[j] = GR(mpq(factorial(2 * n - j - 1) * 4**j,
                        factorial(n - j) * factorial(j - 1)))
    for j in range(0, n + 1):
        den[j] = GR(mpq(factorial(2 * n - j) * 4**j,
                        factorial(n - j) * factorial(j)))
    return RationalFunction(Polynomial(num), Polynomial(den))


def _check_x(x, precision_bits):
    """Reject x on the closed negative imaginary axis (branch/contour cut)."""
    with mpmath.workprec(precision_bits):
        x = mpmath.mpc(x)
    if x == 0:
        raise ContourFailure("x = 0 excluded")
    if x.real == 0 and x.imag < 0:
        raise ContourFailure("x on the negative imaginary axis: no admissible contour")
    return x


def _moment_order(sign: int, n: int, k: int, j: int) -> int:
    # spherical order l with half-integer Hankel order l + 1/2
    return n + j - k - 3 if sign > 0 else n + k - j


def moment(sign: int, n: int, k: int, j: int, x, precision_bits: int = 128,
           method: str = "hankel"):
    """Canonical moment value; `method` picks the closed form or quadrature.

    hankel:      -i pi sqrt(2z/pi) h2_l(z)  (plus)  /  +i pi sqrt(2z/pi) h1_l(z)
                 (minus), z = -2ix, principal sqrt.
    quadrature:  direct integral of e^{mu t -+ 2ix sinh t} over the decay
                 contour in the t-plane (Gauss-Legendre panels, adaptive).
    """
    x = _check_x(x, precision_bits)
    l = _moment_order(sign, n, k, j)
    if method == "hankel":
        h = sph_hankel2(l) if sign > 0 else sph_hankel1(l)
        with mpmath.workprec(precision_bits + 16):
            z = mpmath.mpc(-2j) * x
            pref = mpmath.mpc(0, -mpmath.pi) if sign > 0 else mpmath.mpc(0, mpmath.pi)
            val = pref * mpmath.sqrt(2 * z / mpmath.pi) * h.eval(z, precision_bits + 16)
        with mpmath.workprec(precision_bits):
            return +val
    if method == "quadrature":
        return _moment_quadrature(sign, n, k, j, x, precision_bits)
    raise ValueError(f"unknown moment method {method!r}")


def _moment_quadrature(sign, n, k, j, x, precision_bits):
    """The same contour integral on an explicit straight path between the
    midpoints of the decay sectors at Re t -> -oo and Re t -> +oo."""
    wp = precision_bits + 40
    with mpmath.workprec(wp):
        phi = mpmath.arg(x)
        if sign > 0:
            mu = mpmath.mpf(2 * k + 5) / 2 - n - j
            alpha = phi - mpmath.pi / 2
            beta = -phi - mpmath.pi / 2
            xfac = mpmath.mpc(0, -2) * x
        else:
            mu = n + k + mpmath.mpf(1) / 2 - j
            alpha = phi - 3 * mpmath.pi / 2
            beta = mpmath.pi / 2 - phi
            xfac = mpmath.mpc(0, 2) * x
        # truncation: |x| e^T must dominate prec bits plus the mu*T growth
        pbits = mpmath.mpf(wp + 20) * mpmath.log(2)
        T = mpmath.log((pbits + 10) / min(abs(x), 1)) + 2
        for _ in range(3):
            T = mpmath.log((pbits + abs(mu) * T + 10) / abs(x)) + 2
        a = -T + mpmath.mpc(0, 1) * alpha
        b = T + mpmath.mpc(0, 1) * beta

        def f(s):
            t = a + (b - a) * s
            return mpmath.exp(mu * t + xfac * mpmath.sinh(t)) * (b - a)

        val = mpmath.quad(f, [0, mpmath.mpf(1) / 4, mpmath.mpf(1) / 2,
                              mpmath.mpf(3) / 4, 1])
    with mpmath.workprec(precision_bits):
        return +val


class HankelSolve:
    """Solution record of one half-integer linear system."""

    __slots__ = ("sign", "n", "k", "x", "coeffs", "determinant", "u_value",
                 "precision_bits", "method")

    def __init__(self, sign, n, k, x, coeffs, determinant, u_value,
                 precision_bits, method):
        self.sign = sign
        self.n = n
        self.k = k
        self.x = x
        self.coeffs = coeffs
        self.determinant = determinant
        self.u_value = u_value
        self.precision_bits = precision_bits
        self.method = method


def solve_halfint(n: int, k: int, sign: int, x, precision_bits: int = 128,
                  method: str = "hankel") -> HankelSolve:
    """Value of the rational solution at parameter m = sign*(1/2 + k) via the
    finite Hankel system; raises SingularHankel where the system degenerates
    (for the plus sign those x are exactly the zeros of the solution).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    x = _check_x(x, precision_bits)
    wp = precision_bits + 16

    jmax = 2 * k + 3 if sign > 0 else 2 * k + 1
    mts = {j: moment(sign, n, k, j, x, wp, method) for j in range(0, jmax + 1)}

    with mpmath.workprec(wp):
        if sign > 0:
            dim = k + 1
            H = mpmath.matrix(dim, dim)
            for p in range(1, dim + 1):
                for q in range(1, dim + 1):
                    H[p - 1, q - 1] = mts[p + q]
            det = mpmath.det(H) if dim > 1 else H[0, 0]
            _require_nonsingular(det, mts, dim, precision_bits)
            rhs = mpmath.matrix(dim, 1)
            rhs[0] = mpmath.mpc(0, -1) * mpmath.sqrt(2 * mpmath.pi) * factorial(k)
            a = mpmath.lu_solve(H, rhs) if dim > 1 else mpmath.matrix([rhs[0] / H[0, 0]])
            series = sum(a[j - 1] * mts[j + k + 2] for j in range(1, dim + 1))
            if a[dim - 1] == 0 or series == 0:
                raise SingularHankel("degenerate normalization in the plus-case formula")
            u = mpmath.sqrt(2 * mpmath.pi) * factorial(k) * a[0] / (a[dim - 1] * series)
            coeffs = [+v for v in a]
        else:
            if k == 0:
                if mts[1] == 0:
                    raise SingularHankel("zero denominator in the k=0 ratio")
                u = mpmath.mpc(0, 1) * mts[0] / mts[1]
                coeffs = []
                det = mpmath.mpc(1)
            else:
                dim = k
                H = mpmath.matrix(dim, dim)
                for p in range(1, dim + 1):
                    for q in range(1, dim + 1):
                        H[p - 1, q - 1] = mts[p + q]
                det = mpmath.det(H) if dim > 1 else H[0, 0]
                _require_nonsingular(det, mts, dim, precision_bits)
                rhs = mpmath.matrix(dim, 1)
                for p in range(1, dim + 1):
                    rhs[p - 1] = -mts[p]
                c = mpmath.lu_solve(H, rhs) if dim > 1 else mpmath.matrix([rhs[0] / H[0, 0]])
                numer = mpmath.mpc(0, 1) * (mts[0] + sum(c[j - 1] * mts[j]
                                                         for j in range(1, dim + 1)))
                denom = c[dim - 1] * (mts[k + 1] + sum(c[j - 1] * mts[j + k + 1]
                                                       for j in range(1, dim + 1)))
                if denom == 0:
                    raise SingularHankel("degenerate normalization in the minus-case formula")
                u = numer / denom
                coeffs = [+v for v in c]
    with mpmath.workprec(precision_bits):
        return HankelSolve(sign, n, k, x, coeffs, +mpmath.mpc(det), +u,
                           precision_bits, method)


def _require_nonsingular(det, mts, dim, precision_bits):
    # scale against the moment family, not the matrix itself: for dim = 1
    # the matrix entry IS the determinant and would mask its own vanishing
    scale = max(abs(v) for v in mts.values())
    if scale == 0 or abs(det) < (scale ** dim) * mpmath.mpf(2) ** (-(precision_bits // 2)):
        raise SingularHankel(
            f"|D| = {mpmath.nstr(abs(det), 5)} below threshold at this x"
        )


def hankel_matrix_entries(sign: int, n: int, k: int, x, precision_bits: int = 128):
    """The moment matrix as nested lists (Hankel structure by construction:
    entry (p,q) depends on p+q only); exposed for structure assertions."""
    dim = k + 1 if sign > 0 else max(k, 1)
    mts = {j: moment(sign, n, k, j, x, precision_bits) for j in range(2, 2 * dim + 1)}
    return [[mts[p + q] for q in range(1, dim + 1)] for p in range(1, dim + 1)]
