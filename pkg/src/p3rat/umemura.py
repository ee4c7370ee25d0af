"""Exact construction of the polynomial family s_n(x;m) and the rational
ODE solutions u_n(x;m) assembled from it, plus exact verification tools.

The family is generated by s_{-1} = s_0 = 1 and the bilinear recurrence

    s_{n+1} = [ (4x+2m+1) s_n^2 - s_n s_n' - x (s_n s_n'' - (s_n')^2) ] / (2 s_{n-1}),

whose division is exact for every n; a nonzero remainder means an
arithmetic bug and raises NonExactDivision.  Throughout, m is specialized
to a Gaussian rational per run (bivariate arithmetic in (x,m) is rejected:
coefficient blowup for no benefit).

u_n(x;m) = s_n(x;m-1) s_{n-1}(x;m) / (s_n(x;m) s_{n-1}(x;m-1)) for n >= 0,
and u_{-n} = 1/u_n.  The second-order ODE residual is verified either as a
fully expanded polynomial identity (exact, used for moderate n) or by
exact evaluation at random Gaussian-rational sample points (for larger n,
where expansion is expensive).
"""

from __future__ import annotations

import functools
import logging
import random

from gmpy2 import mpq

from .errors import NonExactDivision, PoleHit
from .gaussian import GR, ONE, Params, ZERO, GaussianRational
from .poly import Polynomial, X
from .ratfunc import RationalFunction

__all__ = [
    "UmemuraTable",
    "umemura_extend",
    "get_table",
    "build_u",
    "check_negm_symmetry",
    "piii_residual",
    "piii_residual_parts",
    "piii_residual_sampled",
    "sample_points",
    "laurent_at_infinity",
    "eval_u",
]

log = logging.getLogger(__name__)


class UmemuraTable:
    """Entries s_{-1}, s_0, ..., s_N for one value of m.

    Invariants checked at every extension step: deg s_n = n(n+1)/2 and the
    leading coefficient is 2^{n(n+1)/2}.
    """

    def __init__(self, m):
        self.m = GR(m)
        self.entries = [Polynomial([ONE]), Polynomial([ONE])]  # s_{-1}, s_0

    @property
    def nmax(self) -> int:
        return len(self.entries) - 2

    def s(self, n: int) -> Polynomial:
        if n < -1:
            raise IndexError("s_n defined for n >= -1")
        if n > self.nmax:
            umemura_extend(self, n)
        return self.entries[n + 1]

    def to_dict(self):
        return {
            "m": str(self.m),
            "N": self.nmax,
            "entries": [p.to_lists() for p in self.entries],
        }

    @staticmethod
    def from_dict(d) -> "UmemuraTable":
        t = UmemuraTable(GaussianRational.parse(d["m"]))
        t.entries = [Polynomial.from_lists(e) for e in d["entries"]]
        return t


def umemura_extend(table: UmemuraTable, N: int) -> UmemuraTable:
    """Extend the table in place so entries up to s_N exist."""
    m = table.m
    lin = X.scale(4) + Polynomial([m * 2 + 1])  # 4x + 2m + 1
    while table.nmax < N:
        n = table.nmax
        sn = table.entries[-1]
        sm = table.entries[-2]
        d1 = sn.derivative()
        d2 = d1.derivative()
        numer = lin * (sn * sn) - sn * d1 - X * (sn * d2 - d1 * d1)
        s_next = numer.div_exact(sm.scale(2))
        d = (n + 1) * (n + 2) // 2
        if s_next.degree != d or s_next.leading() != GR(mpq(2) ** d):
            raise NonExactDivision(
                f"structure invariant broken at n={n + 1}: "
                f"deg={s_next.degree}, expected {d}"
            )
        table.entries.append(s_next)
    return table


_TABLE_CACHE: dict[GaussianRational, UmemuraTable] = {}


def get_table(m, N: int = 0) -> UmemuraTable:
    """Shared per-m table cache (tables only ever grow)."""
    m = GR(m)
    t = _TABLE_CACHE.get(m)
    if t is None:
        t = _TABLE_CACHE[m] = UmemuraTable(m)
    if t.nmax < N:
        umemura_extend(t, N)
    return t


def build_u(n: int, m) -> RationalFunction:
    """The rational solution with index n and parameter m, fully reduced."""
    return _build_u_cached(int(n), GR(m))


@functools.lru_cache(maxsize=None)
def _build_u_cached(n: int, m: GaussianRational) -> RationalFunction:
    if n < 0:
        return build_u(-n, m).reciprocal()
    if n == 0:
        return RationalFunction(Polynomial([ONE]), reduce=False)
    tm = get_table(m, n)
    tm1 = get_table(m - 1, n)
    return RationalFunction(tm1.s(n) * tm.s(n - 1), tm.s(n) * tm1.s(n - 1))


def check_negm_symmetry(n: int, m) -> bool:
    """Exact identity u_n(x;-m) * u_n(-x;m) = 1."""
    m = GR(m)
    prod = build_u(n, -m) * build_u(n, m).compose_neg()
    return prod.is_constant() and prod.constant_value() == ONE


def piii_residual_parts(u: RationalFunction, p: Params):
    """Numerator polynomial of the ODE residual, plus its a-priori degree bound.

    With u = P/Q and W = P'Q - PQ' (so u' = W/Q^2, u'' = (W'Q - 2WQ')/Q^3,
    W' = P''Q - PQ''), multiplying the residual of

        u'' = (u')^2/u - u'/x + (4 Th0 u^2 + 4(1-ThInf))/x + 4u^3 - 4/u

    by the denominator x P Q^3 gives the polynomial

        T = x P (W'Q - 2WQ') - x W^2 + W P Q
            - 4 Th0 P^3 Q - 4 (1-ThInf) P Q^3 - 4x P^4 + 4x Q^4.
    """
    P, Q = u.num, u.den
    if P.is_zero():
        raise ValueError("residual undefined for u = 0")
    dP, dQ = P.derivative(), Q.derivative()
    W = dP * Q - P * dQ
    dW = dP.derivative() * Q - P * dQ.derivative()
    P2 = P * P
    P3 = P2 * P
    Q2 = Q * Q
    th0 = p.theta0
    thi = p.theta_inf
    T = (
        (X * P) * (dW * Q - (W * dQ).scale(2))
        - X * (W * W)
        + W * (P * Q)
        - (P3 * Q).scale(th0 * 4)
        - (P * (Q2 * Q)).scale((ONE - thi) * 4)
        - (X * (P3 * P)).scale(4)
        + (X * (Q2 * Q2)).scale(4)
    )
    bound = 4 * max(P.degree, Q.degree) + 1
    return T, bound


def piii_residual(u: RationalFunction, p: Params) -> Polynomial:
    """Fully expanded ODE residual; the zero polynomial iff u solves the ODE."""
    return piii_residual_parts(u, p)[0]


def sample_points(count: int, seed: int = 20210614):
    """Deterministic generic Gaussian-rational sample points.

    Numerators/denominators are drawn up to 10^6, so for a residual of
    degree bound B the chance that a nonzero residual vanishes at all
    `count` points is below (B/10^12)^count -- negligible for B ~ 10^3.
    """
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(1, 10**6)
        c = rng.randint(-10**6, 10**6)
        d = rng.randint(1, 10**6)
        z = GaussianRational(mpq(a, b), mpq(c, d))
        if not z.is_zero():
            pts.append(z)
    return pts


def piii_residual_sampled(u: RationalFunction, p: Params, pts) -> list:
    """Exact residual values at the given points (all zero for genuine u_n).

    Evaluates the cleared-denominator residual T without expanding it:
    only scalar Horner evaluations of P, Q and their derivatives occur.
    """
    P, Q = u.num, u.den
    dP, dQ = P.derivative(), Q.derivative()
    d2P, d2Q = dP.derivative(), dQ.derivative()
    th0 = p.theta0
    thi = p.theta_inf
    bound = 4 * max(P.degree, Q.degree) + 1
    log.info("sampled residual: degree bound %d at %d points", bound, len(pts))
    out = []
    for x in pts:
        x = GR(x)
        if x.is_zero():
            raise PoleHit("sample point x = 0 is the fixed singular point")
        qv = Q.eval_exact(x)
        if qv.is_zero():
            raise PoleHit(f"sample point {x} is a pole of u")
        pv = P.eval_exact(x)
        dpv, dqv = dP.eval_exact(x), dQ.eval_exact(x)
        w = dpv * qv - pv * dqv
        dw = d2P.eval_exact(x) * qv - pv * d2Q.eval_exact(x)
        t = (
            x * pv * (dw * qv - w * dqv * 2)
            - x * w * w
            + w * pv * qv
            - th0 * 4 * (pv**3 * qv)
            - (ONE - thi) * 4 * (pv * qv**3)
            - x * 4 * pv**4
            + x * 4 * qv**4
        )
        out.append(t)
    return out


def laurent_at_infinity(u: RationalFunction, k: int) -> list:
    """First k coefficients of u = a + b/x + ...; for u_n: a=1, b=-n/2."""
    return u.laurent_at_infinity(k)


def eval_u(u: RationalFunction, x, precision_bits: int = 128):
    """High-precision Horner evaluation of u at a complex point."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    return u.eval(x, precision_bits)
