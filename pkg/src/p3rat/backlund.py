"""Two independent routes to u_n: Gromak's map on rational functions, and
the potential-level chain (y, v, s, t) for the first-order Lax system

    x y' = -2xs + ThInf y            x v' = -2xt(st - x) - ThInf v
    x s' = (1-ThInf)s - 2xy + 4yst   x t' = ThInf t - 2yt^2 + 2v,

which conserves I = (2 ThInf/x) st - ThInf - (2/x) yt(st - x) + (2/x) vs.

Chain members factor as (rational in x) times e^{+-2x} x^{+-...}; the
transcendental factors never mix, so they are carried as symbolic tags and
the whole chain stays in exact rational arithmetic:

    y = Ry(x) e^{2x} x^m        s = Rs(x) e^{2x} x^m
    t = Rt(x) e^{-2x} x^{-m-1}  v = Rv(x) e^{-2x} x^{-m-1}

(the power x^{ThInf} = x^{m+1} of the n=0 closed form is split as x^m tag
plus one explicit rational factor x, so only one symbolic power is ever
needed).  Differentiation acts on tagged components as

    d/dx [R e^{2 sig x} x^p] = (R' + 2 sig R + p R / x) e^{2 sig x} x^p

with p = m for the (+) class and p = -m-1 for the (-) class.
"""

from __future__ import annotations

from .errors import DegenerateDenominator, ZeroDenominator
from .gaussian import GR, IUNIT, ONE, Params, GaussianRational
from .poly import Polynomial, X
from .ratfunc import RationalFunction

__all__ = [
    "Potentials",
    "SystemResidual",
    "seed_potentials",
    "backlund_step",
    "u_from_potentials",
    "check_system",
    "check_integral",
    "gromak_step",
    "first_order_identity",
]

RX = RationalFunction(X, reduce=False)

# symbolic tag constants: (exponential sign, power sign) per component
EXP_TAGS = {"y": +1, "s": +1, "t": -1, "v": -1}
POW_TAGS = EXP_TAGS


def _rf(c) -> RationalFunction:
    return RationalFunction(Polynomial([GR(c)]), reduce=False)


class Potentials:
    """One step of the potential chain: four rational parts plus ThInf."""

    __slots__ = ("ry", "rv", "rs", "rt", "theta_inf", "m")

    def __init__(self, ry, rv, rs, rt, theta_inf, m):
        self.ry, self.rv, self.rs, self.rt = ry, rv, rs, rt
        self.theta_inf = GR(theta_inf)
        self.m = GR(m)
        if rs.is_zero() or ry.is_zero():
            raise ZeroDenominator("potential components y, s must not vanish identically")

    @property
    def n(self) -> int:
        """Chain index recovered from ThInf = m - n + 1 (must be integral)."""
        d = self.m - self.theta_inf + 1
        if d.im != 0 or d.re.denominator != 1:
            raise ValueError("theta_inf inconsistent with integer chain index")
        return int(d.re)

    def to_dict(self):
        return {
            "m": str(self.m),
            "thetaInf": str(self.theta_inf),
            "components": {
                name: {
                    "expTag": EXP_TAGS[name],
                    "powTag": POW_TAGS[name],
                    **getattr(self, "r" + name).to_dict(),
                }
                for name in ("y", "v", "s", "t")
            },
        }

    @staticmethod
    def from_dict(d) -> "Potentials":
        comp = {k: RationalFunction.from_dict(v) for k, v in d["components"].items()}
        return Potentials(
            comp["y"], comp["v"], comp["s"], comp["t"],
            GaussianRational.parse(d["thetaInf"]), GaussianRational.parse(d["m"]),
        )


class SystemResidual:
    """Cleared-denominator residual of each of the four system equations."""

    __slots__ = ("eqs",)

    def __init__(self, eqs):
        self.eqs = tuple(eqs)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.eqs)


def seed_potentials(m, scale=1) -> Potentials:
    """The n=0 closed forms; `scale` is the free constant of integration.

    y = -(K/4) e^{2x} x^{ThInf},  s = +(K/4) e^{2x} x^{ThInf},
    t = (1-2 ThInf) K^{-1} e^{-2x} x^{-ThInf},
    v = -(1/4)(1-2 ThInf)(4x+1+2 ThInf) K^{-1} e^{-2x} x^{-ThInf},
    with ThInf = m+1.  u = -y/s = 1 for every K.
    """
    m = GR(m)
    K = GR(scale)
    if K.is_zero():
        raise ValueError("scale constant must be nonzero")
    thi = m + 1
    c = ONE - thi * 2  # 1 - 2 ThInf
    ry = RationalFunction(X.scale(K * GR("-1/4")), reduce=False)
    rs = RationalFunction(X.scale(K * GR("1/4")), reduce=False)
    rt = _rf(c / K)
    rv = RationalFunction(
        (X.scale(4) + Polynomial([thi * 2 + 1])).scale(c / K * GR("-1/4")),
        reduce=False,
    )
    return Potentials(ry, rv, rs, rt, thi, m)


def u_from_potentials(P: Potentials) -> RationalFunction:
    """u = -y/s; the exponential and power tags cancel identically."""
    return -P.ry / P.rs


def _d_plus(P: Potentials, r: RationalFunction) -> RationalFunction:
    return r.derivative() + r * _rf(2) + r * _rf(P.m) / RX


def _d_minus(P: Potentials, r: RationalFunction) -> RationalFunction:
    return r.derivative() - r * _rf(2) + r * _rf(-P.m - 1) / RX


def backlund_step(P: Potentials) -> Potentials:
    """One step up the chain (ThInf -> ThInf - 1, n -> n + 1).

    Every new component is assembled at the polynomial level over an
    explicit common denominator and reduced exactly once.
    """
    thi = P.theta_inf
    i = IUNIT
    A, B = P.ry.num, P.ry.den
    C, D = P.rv.num, P.rv.den
    E, F = P.rs.num, P.rs.den
    G_, H = P.rt.num, P.rt.den
    X2 = X * X
    BB = B * B
    BH = B * H

    rv_new = RationalFunction((X * G_).scale(-i), H)

    # (i/x) (x s - (ThInf-1) y + y^2 t / x) over den F B^2 H x^2
    bracket = X2 * (E * BB) * H - (X * (A * F) * BH).scale(thi - 1) + (A * A) * (G_ * F)
    ry_new = RationalFunction(bracket.scale(i), X2 * (F * BB) * H)

    # curly combination x^2 + y^2 t^2/x^2 - ThInf y t/x - v y/x over den B^2 H^2 D x^2
    g_num = (
        (X2 * X2) * (BB * (H * H)) * D
        + (A * A) * (G_ * G_) * D
        - (X * (A * G_) * (BH * D)).scale(thi)
        - X * (C * A) * (B * (H * H))
    )
    if g_num.is_zero():
        raise ZeroDenominator("Backlund denominator combination vanished identically")

    rs_new = RationalFunction(
        (A * g_num).scale(i), (BB * B) * ((H * H) * D) * (X2 * X2)
    )

    # x (y t^2/x - ThInf t - v) / curly  over den B H^2 D x
    bracket2 = (A * (G_ * G_)) * D - (X * (G_ * D) * BH).scale(thi) - X * (C * B) * (H * H)
    rt_new = RationalFunction((bracket2 * B * X2).scale(i), g_num)

    return Potentials(ry_new, rv_new, rs_new, rt_new, thi - 1, P.m)


def check_system(P: Potentials) -> SystemResidual:
    """Residual of all four system equations; zero for chain members."""
    thi = _rf(P.theta_inf)
    ry, rv, rs, rt = P.ry, P.rv, P.rs, P.rt
    st = rs * rt / RX
    yt = ry * rt / RX
    e1 = RX * _d_plus(P, ry) + _rf(2) * RX * rs - thi * ry
    e2 = RX * _d_minus(P, rv) + _rf(2) * RX * rt * (st - RX) + thi * rv
    e3 = RX * _d_plus(P, rs) - (_rf(1) - thi) * rs + _rf(2) * RX * ry - _rf(4) * ry * st
    e4 = RX * _d_minus(P, rt) - thi * rt + _rf(2) * yt * rt - _rf(2) * rv
    return SystemResidual([e.num for e in (e1, e2, e3, e4)])


def check_integral(P: Potentials) -> RationalFunction:
    """The conserved combination; identically Theta0 = n + m on the chain."""
    thi = _rf(P.theta_inf)
    st = P.rs * P.rt / RX
    yt = P.ry * P.rt / RX
    vs = P.rv * P.rs / RX
    two = _rf(2)
    return two * thi / RX * st - thi - two / RX * yt * (st - RX) + two / RX * vs


def gromak_step(u: RationalFunction, p: Params) -> RationalFunction:
    """Backlund map on the solution itself: (Th0, ThInf) -> (Th0+1, ThInf-1).

        u -> [x u' + 2x u^2 + 2x - 2(1-ThInf) u - u]
             / ( u [x u' + 2x u^2 + 2x + 2 Th0 u + u] )
    """
    P, Q = u.num, u.den
    if P.is_zero():
        raise DegenerateDenominator("cannot apply the map to u = 0")
    W = P.derivative() * Q - P * Q.derivative()
    base = X * W + (X * (P * P + Q * Q)).scale(2)
    na = base - (P * Q).scale((ONE - p.theta_inf) * 2 + 1)
    nb = base + (P * Q).scale(p.theta0 * 2 + 1)
    den = P * nb
    if den.is_zero():
        raise DegenerateDenominator("transformation denominator vanished identically")
    return RationalFunction(na * Q, den)


def first_order_identity(u: RationalFunction, P: Potentials, p: Params) -> Polynomial:
    """Residual of x u' = 2x - (1-2 ThInf) u + 4 st u^2 - 2x u^2 with
    st read off the potentials; the zero polynomial for chain members."""
    st = P.rs * P.rt / RX
    thi = p.theta_inf
    e = (
        RX * u.derivative()
        - _rf(2) * RX
        + _rf(ONE - thi * 2) * u
        - _rf(4) * st * u * u
        + _rf(2) * RX * u * u
    )
    return e.num
