import pytest

from p3rat.backlund import (EXP_TAGS, POW_TAGS, Potentials, backlund_step,
                            check_integral, check_system, first_order_identity,
                            gromak_step, seed_potentials, u_from_potentials)
from p3rat.errors import DegenerateDenominator
from p3rat.gaussian import GR, ONE, Params
from p3rat.poly import Polynomial, X
from p3rat.ratfunc import RationalFunction
from p3rat.umemura import build_u


def test_seed_closed_forms_m0():
    P = seed_potentials(GR(0))
    assert P.ry == RationalFunction(X.scale(GR("-1/4")), reduce=False)
    assert P.rs == RationalFunction(X.scale(GR("1/4")), reduce=False)
    assert P.rt == RationalFunction(Polynomial([-1]), reduce=False)
    assert P.rv == RationalFunction(Polynomial([GR("3/4"), 1]), reduce=False)
    assert P.theta_inf == ONE
    assert u_from_potentials(P).constant_value() == ONE


def test_seed_m_half_t_component():
    P = seed_potentials(GR("1/2"))
    # 1 - 2*ThInf = 1 - 3 = -2
    assert P.rt == RationalFunction(Polynomial([-2]), reduce=False)


def test_tags_fixed():
    assert EXP_TAGS == {"y": +1, "s": +1, "t": -1, "v": -1}
    assert POW_TAGS["v"] == -1


def test_one_step_matches_gromak_and_build_u():
    for m in [GR(0), GR("1/2"), GR("4/5*i")]:
        P1 = backlund_step(seed_potentials(m))
        assert P1.theta_inf == m  # decrement from m+1
        assert u_from_potentials(P1) == build_u(1, m)


def test_seed_system_and_integral(m_set):
    for m in m_set:
        P = seed_potentials(m)
        assert check_system(P).is_zero()
        ci = check_integral(P)
        assert ci.is_constant() and ci.constant_value() == m


def test_chain_invariants_and_triple_oracle():
    for m in [GR(1), GR("4/5*i")]:
        P = seed_potentials(m)
        ug = build_u(0, m)
        for n in range(1, 5):
            P = backlund_step(P)
            ug = gromak_step(ug, Params(n - 1, m))
            ub = build_u(n, m)
            assert ug == ub
            assert u_from_potentials(P) == ub
            assert check_system(P).is_zero()
            ci = check_integral(P)
            assert ci.is_constant() and ci.constant_value() == GR(n) + m
            assert first_order_identity(ub, P, Params(n, m)).is_zero()


def test_system_negative_control():
    P = seed_potentials(GR(0))
    tampered = Potentials(P.ry, P.rv + RationalFunction(Polynomial([1]), reduce=False),
                          P.rs, P.rt, P.theta_inf, P.m)
    assert not check_system(tampered).is_zero()
    ci = check_integral(tampered)
    assert not (ci.is_constant() and ci.constant_value() == P.m)


def test_first_order_negative_control():
    m = GR(0)
    P = seed_potentials(m)
    wrong = Potentials(P.ry, P.rv, P.rs, P.rt, P.theta_inf + 1, m)
    u0 = build_u(0, m)
    assert not first_order_identity(u0, wrong, Params(-1, m + 1)).is_zero()


def test_gromak_from_seed_closed_form():
    m = GR("2/7")
    u1 = gromak_step(build_u(0, m), Params(0, m))
    # (4x + 2m - 1)/(4x + 2m + 1)
    expect = RationalFunction(X.scale(4) + Polynomial([m * 2 - 1]),
                              X.scale(4) + Polynomial([m * 2 + 1]))
    assert u1 == expect


def test_gromak_rejects_zero():
    with pytest.raises(DegenerateDenominator):
        gromak_step(RationalFunction(Polynomial([]), Polynomial([1]), reduce=False),
                    Params(0, GR(0)))


def test_scaling_invariance():
    a = seed_potentials(GR("1/2"), scale=GR("5/3-2*i"))
    b = seed_potentials(GR("1/2"))
    for _ in range(3):
        a = backlund_step(a)
        b = backlund_step(b)
        assert u_from_potentials(a) == u_from_potentials(b)


def test_chain_json_round_trip():
    P = backlund_step(seed_potentials(GR("4/5*i")))
    d = P.to_dict()
    assert d["components"]["y"]["expTag"] == 1
    assert d["components"]["t"]["powTag"] == -1
    Q = Potentials.from_dict(d)
    assert Q.ry == P.ry and Q.rt == P.rt and Q.theta_inf == P.theta_inf
