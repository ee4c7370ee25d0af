"""Command-line front end.

    p3rat polys   --n 20 --m "1/2" --out polys.json
    p3rat u       --n 5 --m "0" --out u5.json
    p3rat verify  --n 0:8 --m "0" --m "1/2" [--sampled-from 9]
    p3rat roots   --n 20 --m "1/2" --prec 256 --out roots.json
    p3rat map     --n 20 --m "0" --plane y --prec 256 --out map.csv [--format svg]
    p3rat halfint --n 3 --k 0 --sign + --x "1" --out rows.json
    p3rat probe   --m "0" --y 2 --n-list 5,10,20 --out probe.csv
    p3rat asympt  --y0 "1/2*i" --out cert.json

Exit status: 0 all checks passed / output written, 1 a verification suite
failed, 2 usage error.  m and y0 parse exactly ("a/b+c/d*i"); float syntax
is rejected everywhere an exact value is expected.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from . import emit
from .asympt import convergence_probe, c_of, equilibria, factored_quartic, Quartic
from .backlund import (backlund_step, check_integral, check_system, gromak_step,
                       seed_potentials, u_from_potentials)
from .errors import P3ratError
from .gaussian import GR, ONE, Params, GaussianRational
from .halfint import solve_halfint
from .rootfinder import build_map, find_roots
from .umemura import (build_u, check_negm_symmetry, get_table, laurent_at_infinity,
                      piii_residual, piii_residual_sampled, sample_points)

PLANES = ("x", "y", "w", "xiPlus", "xiMinus", "z")


def _parse_n_range(text):
    if ":" in text:
        a, b = text.split(":", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _parse_x(text):
    """Numeric sample point: 'a', 'a+bi', 'a-bi' with decimal parts."""
    t = text.replace(" ", "").replace("*i", "j").replace("i", "j")
    return mpmath.mpmathify(t)


def _out(args, lines_or_text, default_stream=sys.stdout):
    if args.out:
        emit.write_text(args.out, lines_or_text)
    else:
        text = lines_or_text if isinstance(lines_or_text, str) else "\n".join(lines_or_text)
        default_stream.write(text + "\n")


def cmd_polys(args):
    m = GaussianRational.parse(args.m[0])
    n = max(_parse_n_range(args.n))
    t = get_table(m, n)
    _out(args, emit.table_to_json(t))
    return 0


def cmd_u(args):
    m = GaussianRational.parse(args.m[0])
    rows = [emit.u_to_dict(build_u(n, m), n, m) for n in _parse_n_range(args.n)]
    _out(args, json.dumps(rows if len(rows) > 1 else rows[0]))
    return 0


def cmd_verify(args):
    ns = _parse_n_range(args.n)
    ms = [GaussianRational.parse(s) for s in args.m] or [GR(0)]
    sampled_from = args.sampled_from
    failures = 0
    report = []

    def check(name, ok, note=""):
        nonlocal failures
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({note})" if note else "")
        report.append(line)
        if not ok:
            failures += 1

    for m in ms:
        chain_u = build_u(0, m)
        pot = seed_potentials(m)
        for n in ns:
            p = Params(n, m)
            u = build_u(n, m)
            if n <= sampled_from:
                ok = piii_residual(u, p).is_zero()
                check(f"ode-residual n={n} m={m}", ok, "exact, full expansion")
            else:
                vals = piii_residual_sampled(u, p, sample_points(20))
                check(f"ode-residual n={n} m={m}", all(v.is_zero() for v in vals),
                      "exact at 20 random points")
            if n >= 1:
                chain_u = gromak_step(chain_u, Params(n - 1, m))
                pot = backlund_step(pot)
                check(f"gromak-chain n={n} m={m}", chain_u == u, "exact")
                check(f"potential-chain n={n} m={m}", u_from_potentials(pot) == u, "exact")
                ci = check_integral(pot)
                check(f"integral n={n} m={m}",
                      ci.is_constant() and ci.constant_value() == p.theta0, "exact")
                check(f"system n={n} m={m}", check_system(pot).is_zero(), "exact")
            check(f"negm-symmetry n={n} m={m}", check_negm_symmetry(n, m), "exact")
            a, b = laurent_at_infinity(u, 2)
            check(f"laurent n={n} m={m}", a == ONE and b == GR(f"-{n}") / 2
                  if n else a == ONE and b.is_zero(), "exact: a=1, b=-n/2")
    _out(args, report)
    return 1 if failures else 0


def cmd_roots(args):
    m = GaussianRational.parse(args.m[0])
    rows = []
    for n in _parse_n_range(args.n):
        poly = get_table(m, n).s(n)
        if poly.degree < 1:
            continue
        rs = find_roots(poly, args.prec, source=f"s_{n}({m})")
        rows.append({
            "n": n, "m": str(m), "prec": rs.precision_bits,
            "originMultiplicity": rs.origin_multiplicity,
            "roots": [[emit.format_mpf(r.real, args.prec),
                       emit.format_mpf(r.imag, args.prec)] for r in rs.roots],
            "residualBound": emit.format_mpf(rs.residual_bound, 32),
            "minSeparation": emit.format_mpf(rs.min_separation, 32),
            "separationCertified": rs.separation_certified(),
        })
    _out(args, json.dumps(rows))
    return 0


def cmd_map(args):
    m = GaussianRational.parse(args.m[0])
    n = _parse_n_range(args.n)[0]
    y0 = GaussianRational.parse(args.y0) if args.y0 else None
    pm = build_map(n, m, args.plane, args.prec, y0)
    if args.format == "svg":
        _out(args, emit.map_svg(pm))
    else:
        _out(args, emit.map_csv_lines(pm))
    return 0


def cmd_halfint(args):
    sign = +1 if args.sign in ("+", "+1", "plus") else -1
    x = _parse_x(args.x)
    rows = []
    for n in _parse_n_range(args.n):
        hs = solve_halfint(n, args.k, sign, x, args.prec)
        rows.append({
            "n": n, "k": args.k, "sign": sign,
            "x": [emit.format_mpf(mpmath.mpc(x).real, args.prec),
                  emit.format_mpf(mpmath.mpc(x).imag, args.prec)],
            "re": emit.format_mpf(hs.u_value.real, args.prec),
            "im": emit.format_mpf(hs.u_value.imag, args.prec),
            "D": [emit.format_mpf(hs.determinant.real, args.prec),
                  emit.format_mpf(hs.determinant.imag, args.prec)],
            "method": hs.method,
        })
    _out(args, json.dumps(rows))
    return 0


def cmd_probe(args):
    m = GaussianRational.parse(args.m[0])
    n_list = [int(s) for s in args.n_list.split(",")]
    y = _parse_x(args.y)
    rows = convergence_probe(m, y, n_list, args.prec)
    _out(args, emit.probe_csv_lines(m, y, rows, args.prec))
    decreasing = all(rows[i][1] > rows[i + 1][1] for i in range(len(rows) - 1))
    return 0 if decreasing else 1


def cmd_asympt(args):
    y0 = GaussianRational.parse(args.y0)
    eq = equilibria(y0, args.prec)
    out = {
        "y0": str(y0),
        "degenerate": eq.degenerate,
        "exact": eq.exact,
    }
    if eq.exact:
        out["equilibria"] = [str(v) for v in eq.values]
        out["quarticResiduals"] = [str(r) for r in eq.quartic_residuals()]
        pc = eq.p0_plus
        C = c_of(y0, pc)
        out["C"] = str(C)
        coeffs, b, c = factored_quartic(y0, pc)
        out["factoredMatchesQuartic"] = coeffs == Quartic(y0, C).coefficients()
        out["b"] = str(b)
        out["c"] = str(c)
        if eq.degenerate:
            # quadruple-root certificate: quartic == -(y0^2/4)(q - p0)^4
            p0 = pc
            quad = [p0 * p0, -p0 * 2, ONE]
            fourth = [None] * 5
            for i1, v1 in enumerate(quad):
                for i2, v2 in enumerate(quad):
                    t = v1 * v2 * (-(y0 * y0) / 4)
                    fourth[i1 + i2] = t if fourth[i1 + i2] is None else fourth[i1 + i2] + t
            out["quadrupleRoot"] = fourth == Quartic(y0, C).coefficients()
    else:
        res = eq.quartic_residuals(args.prec)
        out["equilibria"] = [emit.format_mpf(v, args.prec) if not hasattr(v, "re")
                             else str(v) for v in eq.values]
        out["maxResidual"] = emit.format_mpf(max(abs(r) for r in res), 32)
    _out(args, json.dumps(out))
    return 0


def make_parser():
    ap = argparse.ArgumentParser(prog="p3rat",
                                 description="exact and certified tools for the "
                                             "rational Painleve-III family")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n=True, m=True, prec_default=256):
        if n:
            p.add_argument("--n", required=True, help="index or range a:b")
        if m:
            p.add_argument("--m", action="append", default=[],
                           help='exact parameter "a/b+c/d*i" (repeatable)')
        p.add_argument("--prec", type=int, default=prec_default,
                       help="working precision in bits")
        p.add_argument("--out", help="output path (stdout when omitted)")

    p = sub.add_parser("polys", help="emit the polynomial table as JSON")
    common(p)
    p.set_defaults(fn=cmd_polys)

    p = sub.add_parser("u", help="emit u_n as exact JSON")
    common(p)
    p.set_defaults(fn=cmd_u)

    p = sub.add_parser("verify", help="run the exact verification suites")
    common(p)
    p.add_argument("--sampled-from", type=int, default=8,
                   help="use sampled residual checks for n above this")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("roots", help="certified roots of s_n")
    common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("map", help="pole/zero map as CSV or SVG")
    common(p)
    p.add_argument("--plane", choices=PLANES, default="y")
    p.add_argument("--y0", help="base point for the w-plane")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.set_defaults(fn=cmd_map)

    p = sub.add_parser("halfint", help="half-integer Hankel-system solve")
    common(p, prec_default=128)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--sign", default="+", choices=("+", "-", "+1", "-1", "plus", "minus"))
    p.add_argument("--x", required=True, help="sample point, e.g. '1' or '0.4+0.7i'")
    p.set_defaults(fn=cmd_halfint)

    p = sub.add_parser("probe", help="outer-limit convergence table")
    common(p, n=False, prec_default=192)
    p.add_argument("--y", required=True)
    p.add_argument("--n-list", default="5,10,20")
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("asympt", help="quartic equilibrium/degeneracy certificate")
    common(p, n=False, m=False, prec_default=128)
    p.add_argument("--y0", required=True, help='exact base point "a/b+c/d*i"')
    p.set_defaults(fn=cmd_asympt)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except P3ratError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
