import mpmath
import pytest

from p3rat.gaussian import GR
from p3rat.poly import Polynomial, X
from p3rat.rootfinder import (build_map, find_roots, origin_residue,
                              residues_at_poles)
from p3rat.umemura import build_u, get_table

TOL20 = mpmath.mpf(10) ** -20


def test_linear_factor():
    rs = find_roots(get_table(GR(0), 1).s(1), 128, source="s_1(0)")
    assert rs.origin_multiplicity == 0
    assert len(rs.roots) == 1
    assert abs(rs.roots[0] + mpmath.mpf(1) / 4) < TOL20


def test_pure_valuation():
    rs = find_roots(X ** 3, 128)
    assert rs.origin_multiplicity == 3
    assert rs.roots == []
    assert rs.count_ok()


def test_counts_and_certificates_midsize():
    rs = find_roots(get_table(GR("4/5*i"), 8).s(8), 256, source="s_8")
    assert rs.count_ok()
    assert len(rs.roots) == 36
    assert rs.separation_certified()
    assert rs.residual_bound < mpmath.mpf(2) ** -80


def test_determinism_bit_identical():
    poly = get_table(GR(1), 6).s(6)
    a = find_roots(poly, 192)
    b = find_roots(poly, 192)
    assert all(x == y for x, y in zip(a.roots, b.roots))
    assert a.residual_bound == b.residual_bound
    assert a.min_separation == b.min_separation


@pytest.mark.slow
def test_remark1_counts_n20():
    rs = find_roots(get_table(GR("1/2"), 20).s(20), 256, source="s_20(1/2)")
    assert rs.origin_multiplicity == 190
    assert len(rs.roots) == 20
    assert rs.separation_certified()


def test_residue_of_u1():
    m = GR("2/3")
    u = build_u(1, m)
    rs = find_roots(u.den, 256)
    pairs = residues_at_poles(u, rs, 256)
    assert len(pairs) == 1
    pole, res = pairs[0]
    # pole at -(2m+1)/4, residue -1/2
    assert abs(pole - GR("-7/12").to_mpc(mpmath.mp)) < TOL20
    assert abs(res + mpmath.mpf(1) / 2) < TOL20


def test_residues_u0_empty():
    u = build_u(0, GR("1/3"))
    assert origin_residue(u) is None
    # constant denominator: no poles at all
    assert u.den.degree == 0


def test_residue_sum_u6():
    u = build_u(6, GR(0))
    rs = find_roots(u.den, 256)
    pairs = residues_at_poles(u, rs, 256)
    total = sum(v for _, v in pairs)
    assert abs(total + 3) < TOL20
    for _, v in pairs:
        assert min(abs(v - mpmath.mpf(1) / 2), abs(v + mpmath.mpf(1) / 2)) < TOL20


def test_map_n1_points():
    pm = build_map(1, GR(0), "x", 128)
    poles = [p for p, cls, _, _ in pm.points if cls == "pole"]
    zeros = [p for p, cls, _, _ in pm.points if cls == "zero"]
    assert len(poles) == 1 and len(zeros) == 1
    assert abs(poles[0] + mpmath.mpf(1) / 4) < TOL20
    assert abs(zeros[0] - mpmath.mpf(1) / 4) < TOL20


def test_map_z_plane_linearity():
    pmx = build_map(3, GR(1), "x", 128)
    pmz = build_map(3, GR(1), "z", 128)
    for (px, *_), (pz, *_) in zip(pmx.points, pmz.points):
        assert abs(pz - 3 * px) < mpmath.mpf(2) ** -90


def test_map_classification_roles():
    pm = build_map(2, GR(0), "x", 128)
    for _, cls, filled, factor in pm.points:
        if factor == "s_n(m)":
            assert cls == "pole" and filled
        elif factor == "s_{n-1}(m-1)":
            assert cls == "pole" and not filled
        elif factor == "s_n(m-1)":
            assert cls == "zero" and filled
        else:
            assert cls == "zero" and not filled
