import mpmath
import pytest

from p3rat.asympt import (Quartic, c_of, convergence_probe, equilibria,
                          factored_quartic, gaussian_sqrt, outer_limit,
                          plane_transform)
from p3rat.errors import BranchPoint, InvalidPlane, ZeroP0
from p3rat.gaussian import GR, IUNIT, ONE

CORNER = GR("1/2*i")


def test_gaussian_sqrt():
    assert gaussian_sqrt(GR("16/25")) == GR("4/5")
    assert gaussian_sqrt(GR("2*i")) == GR("1+i")
    assert gaussian_sqrt(GR(-4)) == GR("2*i")
    assert gaussian_sqrt(GR(2)) is None


def test_quartic_palindromic():
    q = Quartic(GR("3/7-2*i"), GR("1/3"))
    assert q.reversal_symmetric()
    qn = Quartic(mpmath.mpc(2, 1), mpmath.mpc(0.3))
    assert qn.reversal_symmetric()


def test_corner_degeneracy_exact():
    eq = equilibria(CORNER)
    assert eq.exact and eq.degenerate
    assert eq.p0_plus == ONE and eq.p0_minus == ONE
    C = c_of(CORNER, ONE)
    assert C == GR("3/8")
    coeffs, b, c = factored_quartic(CORNER, ONE)
    assert b == GR(-2) and c == ONE
    # the factored form IS the quartic, and it is (1/16)(q-1)^4
    assert coeffs == Quartic(CORNER, C).coefficients()
    assert coeffs == [GR("1/16"), GR("-1/4"), GR("3/8"), GR("-1/4"), GR("1/16")]


def test_lower_corner():
    eq = equilibria(GR("-1/2*i"))
    assert eq.degenerate and eq.p0_plus == -ONE
    coeffs, _, _ = factored_quartic(GR("-1/2*i"), -ONE)
    assert coeffs == Quartic(GR("-1/2*i"), c_of(GR("-1/2*i"), -ONE)).coefficients()


def test_exact_equilibria_perfect_square_disc():
    # 1/(4 y0^2) + 1 = 16/25 at y0 = 5i/6
    eq = equilibria(GR("5/6*i"))
    assert eq.exact and not eq.degenerate
    assert eq.p0_plus == GR("3/5-4/5*i")
    assert eq.p0_minus == GR("3/5+4/5*i")
    assert all(r.is_zero() for r in eq.quartic_residuals())
    # exact factorization identity at an off-corner point
    C = c_of(GR("5/6*i"), eq.p0_plus)
    coeffs, _, c = factored_quartic(GR("5/6*i"), eq.p0_plus)
    assert coeffs == Quartic(GR("5/6*i"), C).coefficients()
    assert c == ONE / (eq.p0_plus * eq.p0_plus)


def test_numeric_equilibria_residuals():
    eq = equilibria(mpmath.mpc(2), 128)
    assert not eq.degenerate
    for r in eq.quartic_residuals(128):
        assert abs(r) < mpmath.mpf(10) ** -25


def test_c_of_unit_p0_gives_c_one():
    _, _, c = factored_quartic(GR("9/4+3*i"), ONE)
    assert c == ONE
    with pytest.raises(ZeroP0):
        c_of(GR(2), GR(0))


def test_equilibria_rejects_zero():
    with pytest.raises(BranchPoint):
        equilibria(GR(0))


def test_outer_limit_values():
    # closed form at y=2: (sqrt(17) - 1)/4
    with mpmath.workprec(160):
        v = outer_limit(2, 150)
        ref = (mpmath.sqrt(17) - 1) / 4
        assert abs(v - ref) < mpmath.mpf(2) ** -140
    far = outer_limit(mpmath.mpf(10) ** 8, 128)
    assert abs(far - 1) < mpmath.mpf(10) ** -7
    with pytest.raises(BranchPoint):
        outer_limit(CORNER, 128)


def test_probe_decreasing_small():
    rows = convergence_probe(GR(0), 2, [2, 4, 8], 160)
    assert rows[0][1] > rows[1][1] > rows[2][1]


def test_plane_transforms():
    n = 20
    assert abs(plane_transform(mpmath.mpc(0, 10), "xiPlus", n)) < mpmath.mpf(10) ** -20
    assert abs(plane_transform(mpmath.mpc(2), "w", n, GR("1/10"))) < mpmath.mpf(10) ** -20
    assert plane_transform(mpmath.mpc(1), "z", n) == 20
    assert plane_transform(mpmath.mpc(5), "y", n) == mpmath.mpf(1) / 4
    with pytest.raises(InvalidPlane):
        plane_transform(mpmath.mpc(1), "nope", n)
    with pytest.raises(InvalidPlane):
        plane_transform(mpmath.mpc(1), "w", n)
    # xi planes map the corner x = +- i n/2 to the origin
    xi = plane_transform(mpmath.mpc(0, -10), "xiMinus", n)
    assert abs(xi) < mpmath.mpf(10) ** -20
