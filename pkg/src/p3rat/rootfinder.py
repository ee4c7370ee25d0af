"""Certified arbitrary-precision roots of the exact polynomial factors, and
the pole/zero maps assembled from them.

find_roots first strips the exact multiplicity of the root at x = 0 (the
valuation is an integer, read off the coefficient list), then runs
Aberth-Ehrlich simultaneous iteration on the deflated polynomial.

Initialization places the starting points on annuli whose radii come from
the upper convex hull of (k, log2 |c_k|) - the Newton polygon of the exact
coefficients - equiangular per annulus with a deterministic phase offset of
half a root spacing so symmetric configurations cannot stall.  (A single
circle at an a-priori root bound is hopeless here: coefficient magnitudes
in this family make any such bound exponentially larger than the actual
root moduli, and the iteration then spends O(degree) full sweeps merely
contracting.)

The iteration runs in three deterministic stages: vectorized hardware
floats down to ~1e-10, then big-float sweeps at the working precision with
in-place updates in fixed index order (the all-at-once update is prone to
limit cycles), then a short Newton polish.  Certification is recorded on
the RootSet:
  * residualBound:  max |p(r)| / (maxcoeff * max(1,|r|)^deg) over the roots;
  * errorRadius:    max over roots of deg * |p(r)/p'(r)|  (every disk of
    this radius about a root estimate contains a true root);
  * minSeparation:  the roots are certified pairwise distinct - hence all
    simple - whenever minSeparation > 2 * errorRadius.

Certification recorded on the RootSet:
  * residualBound:  max |p(r)| / (maxcoeff * max(1,|r|)^deg) over the roots;
  * errorRadius:    max over roots of deg * |p(r)/p'(r)|  (every disk of
    this radius about a root estimate contains a true root);
  * minSeparation:  the roots are certified pairwise distinct - hence all
    simple - whenever minSeparation > 2 * errorRadius.
"""

from __future__ import annotations

import mpmath
import numpy as np

from .asympt import plane_transform
from .errors import MultiplePole, NonConvergence
from .gaussian import GR, Params
from .poly import Polynomial
from .ratfunc import RationalFunction
from .umemura import get_table

__all__ = ["RootSet", "find_roots", "residues_at_poles", "PoleZeroMap", "build_map",
           "FACTOR_ROLES"]


class RootSet:
    """Roots of one exact polynomial at a fixed working precision."""

    __slots__ = ("source", "origin_multiplicity", "roots", "precision_bits",
                 "residual_bound", "min_separation", "error_radius", "degree",
                 "converged", "sweeps")

    def __init__(self, source, origin_multiplicity, roots, precision_bits,
                 residual_bound, min_separation, error_radius, degree,
                 converged, sweeps):
        self.source = source
        self.origin_multiplicity = origin_multiplicity
        self.roots = list(roots)
        self.precision_bits = precision_bits
        self.residual_bound = residual_bound
        self.min_separation = min_separation
        self.error_radius = error_radius
        self.degree = degree
        self.converged = converged
        self.sweeps = sweeps

    def count_ok(self) -> bool:
        return len(self.roots) + self.origin_multiplicity == self.degree

    def separation_certified(self) -> bool:
        """True when all listed roots are provably pairwise distinct."""
        if len(self.roots) < 2:
            return True
        return self.min_separation > 2 * self.error_radius


def _coeff_log2(poly: Polynomial):
    """log2 of exact coefficient magnitude upper bounds (None for zeros)."""
    out = []
    for c in poly.coeffs:
        u = c.abs_upper()
        out.append(None if u == 0
                   else u.numerator.bit_length() - u.denominator.bit_length())
    return out


def _newton_polygon_radii(poly: Polynomial):
    """Per-root starting radii as log2 values, from the upper convex hull of
    the points (k, log2 |c_k|).  Hull segment from k1 to k2 contributes
    k2 - k1 roots of radius ~ 2^((h1 - h2)/(k2 - k1))."""
    logs = _coeff_log2(poly)
    pts = [(k, h) for k, h in enumerate(logs) if h is not None]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    radii = []
    for (k1, h1), (k2, h2) in zip(hull, hull[1:]):
        r_log2 = (h1 - h2) / (k2 - k1)
        radii.extend([r_log2] * (k2 - k1))
    return radii  # length == degree


def _initial_points_f64(poly: Polynomial):
    """Deterministic float64 starting configuration on Newton-polygon annuli."""
    d = poly.degree
    radii = _newton_polygon_radii(poly)
    z = np.empty(d, dtype=np.complex128)
    seg = 0
    last = None
    for j, rl in enumerate(radii):
        if rl != last:
            seg += 1
            last = rl
        angle = 2 * np.pi * ((j + 0.5) / d + 0.26 * seg)
        z[j] = np.exp2(min(max(rl, -500.0), 500.0)) * np.exp(1j * angle)
    return z


def _float64_coeffs(poly: Polynomial):
    """Coefficients as complex128, uniformly scaled by 2^-top so the largest
    magnitude is ~1 (roots are invariant under uniform scaling; tiny
    coefficients flushing to zero only perturbs the seeding stage)."""
    logs = _coeff_log2(poly)
    top = max(h for h in logs if h is not None)
    out = np.zeros(len(poly.coeffs), dtype=np.complex128)
    with mpmath.workprec(64):
        scale = mpmath.mpf(2) ** (-top)
        for k, c in enumerate(poly.coeffs):
            if logs[k] is None:
                continue
            re = float(mpmath.mpf(c.re.numerator) / mpmath.mpf(c.re.denominator) * scale)
            im = float(mpmath.mpf(c.im.numerator) / mpmath.mpf(c.im.denominator) * scale)
            out[k] = re + 1j * im
    return out


def _aberth_f64(poly: Polynomial, max_sweeps=400, target=1e-10):
    """Vectorized hardware-float Aberth stage; returns (points, stalled)."""
    cs = _float64_coeffs(poly)
    dcs = cs[1:] * np.arange(1, len(cs))
    z = _initial_points_f64(poly)
    d = len(z)
    best = np.inf
    stall = 0
    with np.errstate(all="ignore"):
        for _ in range(max_sweeps):
            p = np.zeros(d, dtype=np.complex128)
            for c in cs[::-1]:
                p = p * z + c
            dp = np.zeros(d, dtype=np.complex128)
            for c in dcs[::-1]:
                dp = dp * z + c
            nj = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            w = nj / (1.0 - nj * s)
            bad = ~np.isfinite(w)
            w[bad] = 0.0
            z = z - w
            worst = float(np.max(np.abs(w) / np.maximum(1.0, np.abs(z))))
            if worst < target and not bad.any():
                return z, False
            if worst > 0.5 * best:
                stall += 1
                if stall > 60:
                    return z, True
            else:
                stall = 0
                best = min(best, worst)
    return z, True


def find_roots(poly: Polynomial, precision_bits: int | None = None,
               source: str = "", max_sweeps_per_degree: int = 200) -> RootSet:
    """All complex roots of an exact polynomial, certified as documented above.

    precision_bits defaults to max(256, 4*degree): coefficient magnitudes in
    this polynomial family grow super-exponentially with the index, and 256
    bits stops being comfortable past degree ~300.
    """
    if poly.is_zero():
        raise ValueError("cannot find roots of the zero polynomial")
    if precision_bits is None:
        precision_bits = max(256, 4 * poly.degree)
    if precision_bits < 128:
        raise ValueError("precision_bits must be >= 128")

    v = poly.valuation()
    deflated = poly.shift(-v)
    d = deflated.degree
    if d == 0:
        return RootSet(source, v, [], precision_bits, mpmath.mpf(0),
                       mpmath.mpf("inf"), mpmath.mpf(0), poly.degree, True, 0)

    cap = max_sweeps_per_degree * d

    with mpmath.workprec(precision_bits + 32):
        cs_full = deflated.coeffs_mpc(mpmath.mp)
        dcs_full = deflated.derivative().coeffs_mpc(mpmath.mp)

    # stage 0: vectorized hardware floats from the Newton-polygon annuli
    try:
        z64, _stalled = _aberth_f64(deflated)
        seeds = [mpmath.mpc(float(w.real), float(w.imag)) for w in z64]
    except (OverflowError, ValueError, FloatingPointError):
        with mpmath.workprec(precision_bits + 32):
            seeds = _initial_points_mp(deflated)

    # stage 1: big-float Aberth, in-place updates in fixed order
    total_sweeps = 0
    converged = True
    target = mpmath.mpf(2) ** (-(precision_bits // 2))
    with mpmath.workprec(precision_bits + 32):
        zs = [+w for w in seeds]
        while True:
            if total_sweeps > cap:
                converged = False
                break
            total_sweeps += 1
            worst = mpmath.mpf(0)
            for j in range(d):
                zj = zs[j]
                pv = _horner(cs_full, zj)
                dv = _horner(dcs_full, zj)
                if dv == 0:
                    worst = max(worst, mpmath.mpf(1))
                    continue
                nj = pv / dv
                s = mpmath.mpc(0)
                for k in range(d):
                    if k != j:
                        s += 1 / (zj - zs[k])
                denom = 1 - nj * s
                wj = nj if denom == 0 else nj / denom
                zs[j] = zj - wj
                worst = max(worst, abs(wj) / max(1, abs(zj)))
            if worst <= target:
                break
        z = zs

    # Newton polish at full precision; quadratic from 2^(-prec/2) saturates in 2 steps
    with mpmath.workprec(precision_bits + 32):
        cs = cs_full
        dcs = dcs_full
        roots = []
        for zj in z:
            w = +zj
            for _ in range(3):
                dv = _horner(dcs, w)
                if dv == 0:
                    break
                w = w - _horner(cs, w) / dv
            roots.append(w)

        maxc = deflated.max_abs_upper()
        maxc_f = mpmath.mpf(maxc.numerator) / mpmath.mpf(maxc.denominator)
        res_bound = mpmath.mpf(0)
        err_radius = mpmath.mpf(0)
        for w in roots:
            pv = abs(_horner(cs, w))
            res_bound = max(res_bound, pv / (maxc_f * max(1, abs(w)) ** d))
            dv = abs(_horner(dcs, w))
            err_radius = max(err_radius, mpmath.mpf("inf") if dv == 0 else d * pv / dv)
        min_sep = mpmath.mpf("inf")
        for j in range(len(roots)):
            for k in range(j + 1, len(roots)):
                min_sep = min(min_sep, abs(roots[j] - roots[k]))

    with mpmath.workprec(precision_bits):
        roots = [+w for w in roots]
        rs = RootSet(source, v, roots, precision_bits, +res_bound, +min_sep,
                     +err_radius, poly.degree, converged, total_sweeps)
    _sort_points(rs.roots)
    if not converged:
        raise NonConvergence(
            f"Aberth iteration hit the {cap}-sweep cap for {source or 'polynomial'}",
            rootset=rs,
        )
    return rs


def _horner(cs, z):
    acc = mpmath.mpc(0)
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _initial_points_mp(poly: Polynomial):
    """Big-float fallback of the annulus seeding (same geometry)."""
    d = poly.degree
    radii = _newton_polygon_radii(poly)
    pts = []
    seg = 0
    last = None
    for j, rl in enumerate(radii):
        if rl != last:
            seg += 1
            last = rl
        angle = 2 * mpmath.pi * (mpmath.mpf(2 * j + 1) / (2 * d) + mpmath.mpf(26) / 100 * seg)
        pts.append(mpmath.mpf(2) ** rl * mpmath.exp(mpmath.mpc(0, 1) * angle))
    return pts


def _sort_points(pts):
    """Deterministic order: by modulus, then phase (ties broken bitwise)."""
    pts.sort(key=lambda p: (abs(p), mpmath.arg(p), mpmath.nstr(p, 30)))


def residues_at_poles(u: RationalFunction, rs: RootSet, precision_bits: int = 256):
    """(pole, residue) at every pole listed in rs, via num(r)/den'(r).

    Demands the separation certificate (simple poles).  If the reduced
    denominator of u has a root at x = 0 it is a genuine pole of u at the
    fixed singular point; the caller accounts for it separately via
    `origin_residue`.
    """
    if not rs.separation_certified():
        raise MultiplePole(
            "separation certificate failed: "
            f"min separation {mpmath.nstr(rs.min_separation, 5)} vs "
            f"error radius {mpmath.nstr(rs.error_radius, 5)}"
        )
    dden = u.den.derivative()
    out = []
    with mpmath.workprec(precision_bits + 32):
        ncs = u.num.coeffs_mpc(mpmath.mp)
        dcs = dden.coeffs_mpc(mpmath.mp)
        for r in rs.roots:
            out.append((r, _horner(ncs, r) / _horner(dcs, r)))
    with mpmath.workprec(precision_bits):
        return [(+r, +v) for r, v in out]


def origin_residue(u: RationalFunction):
    """Exact residue at x = 0 if u has a pole there, else None.

    The pole must be simple (true for this solution family); then the
    residue is num(0)/den'(0), an exact Gaussian rational.
    """
    vd = u.den.valuation() if not u.den.is_zero() else 0
    vn = u.num.valuation() if not u.num.is_zero() else 0
    if vd <= vn:
        return None
    if vd - vn > 1:
        raise MultiplePole(f"origin pole of order {vd - vn}")
    return u.num.eval_exact(GR(0)) / u.den.derivative().eval_exact(GR(0))


# factor name -> (classification, filled marker), following the map legend:
# poles from s_n(m) (filled) and s_{n-1}(m-1) (unfilled); zeros from
# s_n(m-1) (filled) and s_{n-1}(m) (unfilled).
FACTOR_ROLES = {
    "s_n(m)": ("pole", True),
    "s_{n-1}(m-1)": ("pole", False),
    "s_n(m-1)": ("zero", True),
    "s_{n-1}(m)": ("zero", False),
}


class PoleZeroMap:
    """Roots of the four factors of u_n, mapped into a viewing plane."""

    __slots__ = ("n", "m", "plane", "y0", "precision_bits", "rootsets", "points")

    def __init__(self, n, m, plane, y0, precision_bits, rootsets, points):
        self.n = n
        self.m = m
        self.plane = plane
        self.y0 = y0
        self.precision_bits = precision_bits
        self.rootsets = rootsets      # factor name -> RootSet (x-plane roots)
        self.points = points          # list of (point, class, filled, factor)


def build_map(n: int, m, plane: str = "y", precision_bits: int = 256,
              y0=None) -> PoleZeroMap:
    """Locate all poles and zeros of u_n(x;m) and map them into `plane`."""
    m = GR(m)
    if n < 1:
        raise ValueError("maps need n >= 1")
    tm = get_table(m, n)
    tm1 = get_table(m - 1, n)
    factors = {
        "s_n(m)": tm.s(n),
        "s_{n-1}(m-1)": tm1.s(n - 1),
        "s_n(m-1)": tm1.s(n),
        "s_{n-1}(m)": tm.s(n - 1),
    }
    rootsets = {}
    points = []
    for name, poly in factors.items():
        if poly.degree < 1:
            rootsets[name] = None
            continue
        rs = find_roots(poly, precision_bits, source=name)
        rootsets[name] = rs
        cls, filled = FACTOR_ROLES[name]
        with mpmath.workprec(precision_bits):
            for r in rs.roots:
                points.append((plane_transform(r, plane, n, y0), cls, filled, name))
    points.sort(key=lambda t: (abs(t[0]), mpmath.arg(t[0]) if t[0] != 0 else 0,
                               mpmath.nstr(t[0], 30), t[3]))
    return PoleZeroMap(n, m, plane, y0, precision_bits, rootsets, points)
