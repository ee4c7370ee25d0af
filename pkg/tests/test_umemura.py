import mpmath
import pytest

from p3rat.errors import PoleHit
from p3rat.gaussian import GR, ONE, Params
from p3rat.poly import Polynomial, X
from p3rat.ratfunc import RationalFunction
from p3rat.umemura import (UmemuraTable, build_u, check_negm_symmetry, eval_u,
                           get_table, laurent_at_infinity, piii_residual,
                           piii_residual_parts, piii_residual_sampled,
                           sample_points, umemura_extend)


def test_initial_conditions():
    t = UmemuraTable(GR("4/5*i"))
    assert t.s(-1) == Polynomial([1])
    assert t.s(0) == Polynomial([1])


def test_s1_closed_form():
    # one hand evaluation of the recurrence: s_1 = 2x + m + 1/2
    for m in [GR(0), GR("1/2"), GR("4/5*i")]:
        assert get_table(m, 1).s(1) == X.scale(2) + Polynomial([m + GR("1/2")])


def test_degree_and_leading_structure(m_set):
    for m in m_set:
        t = get_table(m, 12)
        for n in range(13):
            d = n * (n + 1) // 2
            assert t.s(n).degree == d
            if d:
                assert t.s(n).leading() == GR(2) ** d


def test_half_integer_origin_valuations():
    # order of vanishing (n-k-1)(n-k)/2 at m = 1/2 + k, n > k+1
    for k, m in [(0, GR("1/2")), (1, GR("3/2")), (2, GR("5/2"))]:
        t = get_table(m, 8)
        for n in range(k + 2, 9):
            assert t.s(n).valuation() == (n - k - 1) * (n - k) // 2
    # s_3(x;1/2) in particular vanishes to order 3 (not 1)
    assert get_table(GR("1/2"), 3).s(3).valuation() == 3
    assert get_table(GR("1/2"), 3).s(3).degree == 6
    assert get_table(GR("1/2"), 3).s(3).leading() == GR(2) ** 6


def test_build_u_low_index():
    m = GR("4/5*i")
    assert build_u(0, m).constant_value() == ONE
    u1 = build_u(1, m)
    # (2x + m - 1/2)/(2x + m + 1/2), monic denominator
    assert u1 == RationalFunction(X.scale(2) + Polynomial([m - GR("1/2")]),
                                  X.scale(2) + Polynomial([m + GR("1/2")]))
    # inversion: u_{-1} = 1/u_1
    assert build_u(-1, m) == u1.reciprocal()
    assert (build_u(-4, m) * build_u(4, m)).constant_value() == ONE


def test_piii_residual_zero_and_negative_control(m_set):
    for m in m_set:
        for n in range(0, 5):
            assert piii_residual(build_u(n, m), Params(n, m)).is_zero()
    bad = RationalFunction(X, reduce=False)
    assert not piii_residual(bad, Params(1, GR(0))).is_zero()


def test_piii_residual_sampled():
    m = GR(1)
    u = build_u(9, m)
    pts = sample_points(20)
    vals = piii_residual_sampled(u, Params(9, m), pts)
    assert all(v.is_zero() for v in vals)
    # degree bound is logged alongside
    _, bound = piii_residual_parts(u, Params(9, m))
    assert bound == 4 * u.num.degree + 1
    # negative control: perturbed u fails at some point
    pert = RationalFunction(u.num + Polynomial([1]), u.den, reduce=False)
    assert any(not v.is_zero()
               for v in piii_residual_sampled(pert, Params(9, m), pts))
    with pytest.raises(PoleHit):
        piii_residual_sampled(u, Params(9, m), [GR(0)])


def test_negm_symmetry(m_set):
    assert check_negm_symmetry(1, GR("3/4"))
    assert check_negm_symmetry(0, GR("4/5*i"))
    assert check_negm_symmetry(5, GR("4/5*i"))
    for m in m_set:
        assert check_negm_symmetry(3, m)


def test_laurent_values():
    a, b = laurent_at_infinity(build_u(1, GR("2/3")), 2)
    assert a == ONE and b == GR("-1/2")
    a, b = laurent_at_infinity(build_u(0, GR("2/3")), 2)
    assert a == ONE and b.is_zero()
    a, b = laurent_at_infinity(build_u(7, GR("4/5*i")), 2)
    assert a == ONE and b == GR("-7/2")


def test_eval_u_examples():
    assert abs(eval_u(build_u(0, GR(7)), mpmath.mpc(1, 1), 128) - 1) == 0
    with mpmath.workprec(140):
        v = eval_u(build_u(1, GR(0)), mpmath.mpc(1), 128)
        assert abs(v - mpmath.mpf(3) / 5) < mpmath.mpf(2) ** -120
    with pytest.raises(ValueError):
        eval_u(build_u(1, GR(0)), mpmath.mpc(1), 32)


def test_table_json_round_trip():
    t = get_table(GR("1/2-3*i"), 4)
    from p3rat.emit import table_from_json, table_to_json
    t2 = table_from_json(table_to_json(t))
    assert t2.m == t.m
    assert t2.entries == t.entries[: len(t2.entries)]


def test_extend_is_idempotent():
    t = UmemuraTable(GR("1/3"))
    umemura_extend(t, 5)
    before = list(t.entries)
    umemura_extend(t, 3)
    assert t.entries == before
