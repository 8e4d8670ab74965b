"""Command-line front end: every subcommand writes one table as CSV or JSON.

Exit codes: 0 success, 2 invalid input, 3 a failed selftest criterion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .policy import AnnulusError, DEFAULT_POLICY, TruncationPolicy
from .sampling import DEFAULT_SEED, annulus_points, disk_points

SUBCOMMANDS = (
    "greens", "kernels", "critical", "dichotomy", "rho", "modular-check", "trace",
    "coeffs", "checks", "bol-check", "prepotential", "spectral", "selftest",
)
EXIT_OK, EXIT_USAGE, EXIT_SELFTEST = 0, 2, 3
FLOAT_FMT = "{:.17g}"


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument types


def _complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}")


def _complex_list(s: str) -> list:
    return [_complex(p) for p in s.split(",") if p.strip()]


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not (v > 0.0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be positive and finite")
    return v


def _nonneg_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--R", type=_positive_float, default=2.0, help="outer radius of A(1, R)")
    common.add_argument("--a", type=_complex, default=None, help="pole / second point")
    common.add_argument("--z", type=_complex_list, default=None, help="comma-separated evaluation points")
    common.add_argument("--radii", type=_positive_int, default=None, help="radial grid size")
    common.add_argument("--angles", type=_positive_int, default=None, help="angular grid size")
    common.add_argument("--tol", type=_positive_float, default=None, help="series relative tolerance")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", type=str, default=None, help="output file (directory for selftest)")
    common.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="annulus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"annulus {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    helps = {
        "greens": "G(z, a) by all four closed forms",
        "kernels": "Bergman and Schiffer kernels (annulus) or the disk kernel family",
        "critical": "critical point of G(., a) and zero of K(., a)",
        "dichotomy": "scan a polar grid of poles for the critical-point / Bergman-zero split",
        "rho": "rho(R) by the wp root and by the integral formula",
        "modular-check": "Eisenstein identities and the modulus invariant at tau = i pi / log R",
        "trace": "level line of G(., a) through z",
        "coeffs": "Taylor coefficients c_n of the regular part of G at z",
        "checks": "potential-geometry checks (Kubo average, Levy bounds, curvature, geodesics)",
        "bol-check": "Bol-operator and weighted-Bergman checks",
        "prepotential": "prepotential of u'' + Q u / 2 = 0",
        "spectral": "eigenbasis partial sums of G^s against the theta formula",
        "selftest": "run the acceptance suite and write its CSV artifacts",
    }
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name in ("kernels", "trace", "coeffs"):
            sp.add_argument("--domain", choices=("annulus", "disk"), default="annulus")
        if name == "prepotential":
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--example", choices=("cos",), default=None)
            g.add_argument("--custom", choices=("cos", "cosh", "exp", "linear"), default=None)
    return p


# --------------------------------------------------------------------------
# output


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT.format(float(v))
    return str(v)


def _json_cell(v):
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def render(header, rows, fmt: str, meta: dict) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([_cell(v) for v in r] for r in rows)
        return buf.getvalue()
    data = [{h: _json_cell(v) for h, v in zip(header, r)} for r in rows]
    return json.dumps({"meta": meta, "data": data}, indent=1, sort_keys=True) + "\n"


def _meta(args) -> dict:
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if isinstance(v, complex):
            v = [v.real, v.imag]
        elif isinstance(v, list):
            v = [[c.real, c.imag] for c in v]
        cfg[k] = v
    return {"subcommand": args.subcommand, "version": __version__, "config": cfg}


def _split(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# --------------------------------------------------------------------------
# subcommands


def _policy(args) -> TruncationPolicy:
    if args.tol is None:
        return DEFAULT_POLICY
    if not args.tol <= 1e-4:
        raise UsageError("--tol must lie in (0, 1e-4]")
    return TruncationPolicy(rel_tol=args.tol)


def _annulus(args):
    from .greens import annulus

    if not args.R > 1.0:
        raise UsageError("--R must exceed 1")
    return annulus(args.R, _policy(args))


def _points(args, dom=None, n: int = 8):
    if args.z is not None:
        return args.z
    if dom is None:
        return list(disk_points(n, 0.8, seed=args.seed))
    return list(annulus_points(n, 1.0 + 0.05 * (dom.R - 1.0), dom.R - 0.05 * (dom.R - 1.0), seed=args.seed))


def cmd_greens(args):
    from . import greens as gr

    dom = _annulus(args)
    a = args.a if args.a is not None else complex(math.sqrt(dom.R), 0.0)
    header = ["z_re", "z_im", "a_re", "a_im"] + [f"G_{f}" for f in gr.FORMULAS]
    rows = []
    for z in _points(args, dom):
        rows.append(_split(z) + _split(a) + [float(gr.G(z, a, dom, f)) for f in gr.FORMULAS])
    return header, rows


def cmd_kernels(args):
    if args.domain == "disk":
        from . import disk as dk

        zeta = args.a if args.a is not None else 0.3 + 0.2j
        header = ["z_re", "z_im", "zeta_re", "zeta_im", "neumann", "hydro_greens", "k_harmonic",
                  "K_dirichlet_re", "K_dirichlet_im", "L_adjoint_re", "L_adjoint_im", "bergman_re", "bergman_im"]
        rows = []
        for z in _points(args):
            v = {k: complex(dk.eval_kernel(k, z, zeta)) for k in dk.KINDS}
            b = complex(dk.bergman_disk(z, zeta))
            rows.append(_split(z) + _split(zeta) + [v["neumann"].real, v["hydro_greens"].real, v["k_harmonic"].real]
                        + _split(v["K_dirichlet"]) + _split(v["L_adjoint"]) + _split(b))
        return header, rows
    from . import greens as gr

    dom = _annulus(args)
    a = args.a if args.a is not None else complex(math.sqrt(dom.R), 0.0)
    header = ["z_re", "z_im", "a_re", "a_im", "K_re", "K_im", "L_re", "L_im", "L_mode"]
    mode = "closed" if dom.closed_form_L else "fd"
    rows = []
    for z in _points(args, dom):
        K = complex(gr.bergman_K(z, a, dom))
        L = complex(gr.schiffer_L(z, a, dom, mode=mode))
        rows.append(_split(z) + _split(a) + _split(K) + _split(L) + [mode])
    return header, rows


def cmd_critical(args):
    from . import critical as cr

    dom = _annulus(args)
    rho = cr.solve_rho(dom).rho
    poles = [args.a] if args.a is not None else _points(args, dom)
    header = ["a_re", "a_im", "zG_re", "zG_im", "residual_G", "zK_re", "zK_im", "class_G", "class_K"]
    rows = []
    for a in poles:
        zg = cr.critical_point(a, dom)
        zk = cr.bergman_zero(a, dom, rho)
        rows.append(_split(a) + _split(zg) + [cr.critical_residual(zg, a, dom)]
                    + ([None, None] if zk is None else _split(zk))
                    + [cr.classify(zg, dom, rho), "none" if zk is None else cr.classify(zk, dom, rho)])
    return header, rows


def cmd_dichotomy(args):
    from . import critical as cr

    dom = _annulus(args)
    rep = cr.dichotomy_scan(dom, args.radii or 40, args.angles or 16)
    bad = {id(p) for p in rep.violations}
    header = ["a_re", "a_im", "zG_re", "zG_im", "zK_re", "zK_im", "class_G", "class_K", "violation"]
    rows = [_split(p.a) + _split(p.z_G) + ([None, None] if p.z_K is None else _split(p.z_K))
            + [p.class_G, p.class_K or "none", int(id(p) in bad)] for p in rep.grid]
    print(f"dichotomy R={dom.R:g} rho={rep.rho:.17g} points={len(rep.grid)} violations={len(rep.violations)}",
          file=sys.stderr)
    return header, rows


def cmd_rho(args):
    from . import critical as cr

    dom = _annulus(args)
    a = cr.solve_rho(dom)
    b = cr.rho_integral(dom)
    header = ["R", "rho", "residual", "method"]
    return header, [[dom.R, a.rho, a.residual, "wp_root"], [dom.R, b.rho, b.residual, "integral"]]


def cmd_modular_check(args):
    from . import modular as md

    if not args.R > 1.0:
        raise UsageError("--R must exceed 1")
    pol = _policy(args)
    p = md.ModularPoint.from_annulus(args.R)
    E = md.eisenstein(p, pol)
    ram = md.ramanujan_residuals(p, pol)
    d1, d2 = md.discriminant(p, pol), md.discriminant_from_eisenstein(p, pol)
    f, fp = md.modulus_invariant(p, pol)
    rows = [
        ["tau_im", p.tau.imag], ["E2", E.e2.real], ["E4", E.e4.real], ["E6", E.e6.real],
        ["ramanujan_residual_max", max(abs(r) for r in ram)],
        ["chazy_residual", abs(md.chazy_residual(p, pol))],
        ["discriminant", d1.real], ["discriminant_relative_defect", abs(d1 - d2) / abs(d1)],
        ["f", f.real], ["f_prime", fp.real],
        ["f_modulus1_relative_defect", abs(f - md.modulus1_rhs(p, pol)) / abs(f)],
    ]
    return ["quantity", "value"], rows


def cmd_trace(args):
    from . import geometry as geo

    if args.domain == "disk":
        from .disk import UNIT_DISK

        a = args.a if args.a is not None else 0.0
        f = geo.greens_field(UNIT_DISK, a)
        z0 = args.z[0] if args.z else a + 0.5
    else:
        dom = _annulus(args)
        a = args.a if args.a is not None else complex(0.5 * (1.0 + dom.R), 0.0)
        f = geo.greens_field(dom, a)
        if args.z:
            z0 = args.z[0]
        else:
            # the G = 0.3 level on the ray through a, outward side
            ra = abs(a)
            z0 = geo.level_point(f, 0.3, a, a / ra, dom.R - ra - 1e-12)
    rec = geo.level_line_trace(f, z0, tol=args.tol or 1e-8)
    header = ["t", "z_re", "z_im", "u"]
    rows = [[t] + _split(z) + [float(f.value(z))] for t, z in rec.samples]
    print(f"trace closed={rec.closed} period={rec.period} u_drift={rec.u_drift:.3e} "
          f"newton_residual={rec.newton_residual:.3e}", file=sys.stderr)
    return header, rows


def cmd_coeffs(args):
    from . import geometry as geo

    if args.domain == "disk":
        from .disk import UNIT_DISK as dom
    else:
        dom = _annulus(args)
    zeta = args.z[0] if args.z else (0.3 + 0.2j if args.domain == "disk" else complex(0.5 * (1.0 + dom.R), 0.0))
    N = args.radii or 8
    if N > 12:
        raise UsageError("--radii (number of coefficients) must be <= 12")
    tc = geo.taylor_coeffs(zeta, dom, N)
    bound = [None] + list(tc.bound(float(geo._distance(zeta, dom))))
    header = ["n", "c_re", "c_im", "bound"]
    return header, [[n, c.real, c.imag, b] for n, (c, b) in enumerate(zip(tc.c, bound))]


def _check_table(res):
    header = ["check", "value", "op", "bound", "counts", "passed"]
    return header, [[c.name, c.value, c.op, c.bound, int(c.counts), int(c.passed)] for c in res.checks]


def cmd_checks(args):
    from .acceptance import criterion_8

    return _check_table(criterion_8(args.seed))


def cmd_bol_check(args):
    from .acceptance import criterion_10

    return _check_table(criterion_10(args.seed))


def cmd_prepotential(args):
    from . import prepotential as pp

    name = args.custom or args.example or "cos"
    ctx = pp.catalog_context(name)
    us = args.z or ([0.3, 0.5, 0.8] if name in ("cos", "cosh") else [1.2, 1.5, 2.0])
    header = ["u_re", "u_im", "F_legendre_re", "F_legendre_im", "F_partial_re", "F_partial_im",
              "third_order_residual", "F_closed_re"]
    rows = []
    for u in us:
        F = pp.prepotential_F(ctx, u)
        try:
            Fp = _split(pp.prepotential_F(ctx, u, "partial"))
        except AnnulusError:
            Fp = [None, None]
        try:
            r3 = abs(pp.third_order_residual(ctx, u))
        except AnnulusError:
            r3 = None
        closed = complex(pp.cos_closed_form(u)).real if name == "cos" else None
        rows.append(_split(u) + _split(F) + Fp + [r3, closed])
    return header, rows


def cmd_spectral(args):
    from . import spectral as sp

    dom = _annulus(args)
    z = args.z[0] if args.z else 1.2 + 0.0j
    a = args.a if args.a is not None else 1.7 + 0.0j
    if not (1.0 < abs(z) < dom.R and 1.0 < abs(a) < dom.R):
        raise UsageError("--z and --a must lie inside the annulus")
    M, N = args.radii or 200, args.angles or 200
    header = ["s", "G_s_partial", "G_theta", "relative_gap", "M", "N"]
    return header, [list(r) + [M, N] for r in sp.eigen_trend(z, a, dom, M=M, N=N)]


def cmd_selftest(args):
    from .acceptance import run_acceptance

    results = run_acceptance(args.seed, args.out or "selftest_artifacts", echo=print)
    return all(r.passed for r in results)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in SUBCOMMANDS}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        if args.subcommand == "selftest":
            return EXIT_OK if cmd_selftest(args) else EXIT_SELFTEST
        header, rows = HANDLERS[args.subcommand](args)
    except (UsageError, AnnulusError, ValueError) as e:
        print(f"annulus {args.subcommand}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = render(header, rows, args.format, _meta(args))
    if args.out:
        Path(args.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
