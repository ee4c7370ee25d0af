import pytest

from p3rat.errors import NonExactDivision
from p3rat.gaussian import GR, ONE
from p3rat.poly import Polynomial, X, poly_gcd


def P(*cs):
    return Polynomial([GR(c) if isinstance(c, str) else c for c in cs])


def test_normalization_and_degree():
    assert Polynomial([1, 2, 0, 0]).degree == 1
    assert Polynomial([]).is_zero()
    assert Polynomial([0, 0]).is_zero()
    assert P(0, 0, 3).valuation() == 2
    assert (X ** 5).valuation() == 5


def test_ring_ops():
    a = P(1, 2, 3)
    b = P("1/2", 0, 0, 1)
    assert a + b - b == a
    assert a * b == b * a
    assert (a * b).degree == a.degree + b.degree
    assert (a - a).is_zero()
    assert a.scale(GR("2/3")).leading() == GR(2)


def test_derivative_and_compose_neg():
    p = P(5, "1/2", 0, 7)
    assert p.derivative() == P("1/2", 0, 21)
    q = p.compose_neg()
    assert q.eval_exact(GR(2)) == p.eval_exact(GR(-2))


def test_divmod_exact_and_remainder():
    a = P(1, 2, 1)  # (x+1)^2
    b = P(1, 1)
    assert a.div_exact(b) == b
    with pytest.raises(NonExactDivision):
        P(1, 0, 1).div_exact(b)
    q, r = P(3, 1, 4, 1).divmod(P(1, 2))
    assert q * P(1, 2) + r == P(3, 1, 4, 1)


def test_shift():
    p = P(1, 1)
    assert p.shift(2) == P(0, 0, 1, 1)
    assert p.shift(2).shift(-2) == p
    with pytest.raises(NonExactDivision):
        p.shift(-1)


def test_gcd_coprime():
    a = P(1, 1) * P(2, 1)
    b = P(3, 1) * P(5, 1)
    assert poly_gcd(a, b) == Polynomial([ONE])


def test_gcd_with_common_factor():
    g = P("1/3", "2/7", 1) * P(GR("1+i"), 1)
    a = g * P(1, 1) * P(-2, 1)
    b = g * P(4, 1)
    got = poly_gcd(a, b)
    assert got == g.monic()


def test_gcd_pure_power_of_x():
    a = X ** 3 * P(1, 1)
    b = X ** 5 * P(2, 1)
    assert poly_gcd(a, b) == X ** 3


def test_gcd_large_coefficients():
    # coefficients far beyond one modular image force CRT reconstruction
    big = GR(10 ** 60 + 7) / GR(10 ** 21 + 9)
    g = P(big, GR("1/2"), 1) * P(1, GR(0, 10 ** 45), 1)
    a = g * P(1, 2, 1)
    b = g * P(-5, 1)
    assert poly_gcd(a, b) == g.monic()


def test_eval_paths_agree():
    p = P("1/3", GR("2-i"), 0, GR(0, 5))
    x = GR("3/7+2*i")
    exact = p.eval_exact(x)
    import mpmath
    with mpmath.workprec(128):
        approx = p.eval_mpc(x.to_mpc(mpmath.mp), mpmath.mp)
        diff = abs(approx - exact.to_mpc(mpmath.mp))
        assert diff < mpmath.mpf(2) ** -100


def test_json_round_trip():
    p = P("1/3", GR("2-1/5*i"), 0, 7)
    assert Polynomial.from_json(p.to_json()) == p
