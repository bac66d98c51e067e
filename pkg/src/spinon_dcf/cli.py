"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
All output is deterministic given the flags; floats are serialized with
17 significant digits so files round-trip losslessly.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import ed
from .dcf import intensity_sumrule, s2_pm
from .formfactor import constants
from .kinematics import band_boundaries
from .specfun import QuadratureError, QuadratureSpec

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class _Parser(argparse.ArgumentParser):
    # usage problems must exit with code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    p = _Parser(prog="spinon-dcf",
                description="Exact two-spinon dynamical correlation function "
                            "of the isotropic Heisenberg antiferromagnet.")
    p.add_argument("--config", help="JSON file with default option values")
    p.add_argument("--quad-tol", type=float, default=None,
                   help="absolute and relative quadrature tolerance")
    p.add_argument("--split-point", type=float, default=None,
                   help="upper limit of the finite quadrature segment")
    p.add_argument("--max-subdivisions", type=int, default=None)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for grid scans "
                        "(default: SPINON_DCF_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", help="print the DCF prefactor constants")

    ev = sub.add_parser("eval", help="evaluate S2 at one (k, omega) point")
    ev.add_argument("--k", type=float, required=True)
    ev.add_argument("--omega", type=float, required=True)

    sc = sub.add_parser("scan", help="S^zz on a (k, omega) grid")
    sc.add_argument("--k-points", type=int, required=True)
    sc.add_argument("--omega-points", type=int, required=True)
    sc.add_argument("--format", choices=("csv", "json"), default=None)
    sc.add_argument("--output", default=None)
    sc.add_argument("--plot", default=None, help="also render a heatmap PNG")

    ls = sub.add_parser("lineshape", help="fixed-k frequency scan")
    ls.add_argument("--k", type=float, required=True)
    ls.add_argument("--omega-points", type=int, default=64)
    ls.add_argument("--format", choices=("csv", "json"), default=None)
    ls.add_argument("--output", default=None)
    ls.add_argument("--plot", default=None)

    sr = sub.add_parser("sumrule", help="integrated two-spinon intensity I2")
    sr.add_argument("--k-points", type=int, default=32)
    sr.add_argument("--omega-points", type=int, default=32)

    edp = sub.add_parser("ed", help="finite-chain spectral lines")
    edp.add_argument("--sites", type=int, required=True)
    edp.add_argument("--delta", type=float, default=-1.0)
    edp.add_argument("--format", choices=("csv", "json"), default=None)
    edp.add_argument("--output", default=None)
    edp.add_argument("--plot", default=None)

    cp = sub.add_parser("compare", help="ED vs analytic band edge and intensity")
    cp.add_argument("--sites", type=int, required=True)
    cp.add_argument("--plot", default=None)
    return p


def _merge_config(args) -> None:
    """Resolution order: flags > config file > built-in defaults."""
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    for attr, default in (
        ("quad_tol", 1e-10),
        ("split_point", 40.0),
        ("max_subdivisions", 60),
        ("threads", None),
        ("format", "csv"),
        ("output", None),
    ):
        if getattr(args, attr, None) is None and hasattr(args, attr):
            setattr(args, attr, cfg.get(attr, default))
    if getattr(args, "threads", None) is None:
        args.threads = int(os.environ.get("SPINON_DCF_THREADS", "1"))


def _quad_spec(args) -> QuadratureSpec:
    return QuadratureSpec(
        abs_tol=args.quad_tol, rel_tol=args.quad_tol,
        split_point=args.split_point, max_subdivisions=args.max_subdivisions,
    )


def _write_rows(header, rows, fmt, output):
    """Serialize rows of (already formatted) strings as CSV or JSON."""
    if fmt == "csv":
        text = ",".join(header) + "\n"
        text += "".join(",".join(row) + "\n" for row in rows)
    else:
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps(records, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_constants(args) -> int:
    c = constants(_quad_spec(args))
    print(f"gamma_ratio      = {_fmt(c.gamma_ratio)}")
    print(f"a_plus_sq_half   = {_fmt(c.a_plus_sq_half)} (quad error <= {_fmt(c.quad_error)})")
    print(f"a_minus_sq_half  = {_fmt(c.a_minus_sq_half)} (quad error <= {_fmt(c.quad_error)})")
    print(f"prefactor        = {_fmt(c.prefactor)}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    v = s2_pm(args.k, args.omega, _quad_spec(args))
    print(f"k         = {_fmt(v.k)}")
    print(f"omega     = {_fmt(v.omega)}")
    print(f"region    = {v.region.value}")
    print(f"s_pm      = {_fmt(v.s_pm)}")
    print(f"s_zz      = {_fmt(v.s_zz)}")
    print(f"gamma_arg = {_fmt(v.gamma_arg)}")
    print(f"edge_flag = {v.edge_flag.value}")
    return EXIT_OK


def _cmd_scan(args) -> int:
    if args.k_points < 2 or args.omega_points < 2:
        raise SystemExit(EXIT_USAGE)
    spec = _quad_spec(args)
    ks = np.linspace(0.0, 2.0 * math.pi, args.k_points)
    omegas = np.linspace(0.0, 1.05 * 2.0 * math.pi, args.omega_points)
    points = [(k, w) for k in ks for w in omegas]
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        values = list(pool.map(lambda p: s2_pm(p[0], p[1], spec), points))
    rows = [
        (_fmt(k), _fmt(w), _fmt(v.s_zz), v.region.value, v.edge_flag.value)
        for (k, w), v in zip(points, values)
    ]
    _write_rows(("k", "omega", "s_zz", "region", "edge_flag"),
                rows, args.format, args.output)
    if args.plot:
        from . import plots
        plots.scan_heatmap(ks, omegas, [v.s_zz for v in values], args.plot)
    return EXIT_OK


def _cmd_lineshape(args) -> int:
    from .dcf import lineshape
    shape = lineshape(args.k, args.omega_points, _quad_spec(args))
    rows = [(_fmt(w), _fmt(v)) for w, v in zip(shape.omega_grid, shape.values)]
    _write_rows(("omega", "s_zz"), rows, args.format, args.output)
    if args.plot:
        from . import plots
        plots.lineshape_figure(shape, args.plot)
    return EXIT_OK


def _cmd_sumrule(args) -> int:
    r = intensity_sumrule(_quad_spec(args), args.k_points, args.omega_points)
    print(f"I2               = {_fmt(r.value)}")
    print(f"refinement_delta = {_fmt(r.error_estimate)}")
    print(f"k_points         = {r.k_points}")
    print(f"omega_points     = {r.omega_points}")
    return EXIT_OK


def _cmd_ed(args) -> int:
    spec = ed.ChainSpec(sites=args.sites, delta_param=args.delta)
    lines = ed.spectral_lines(spec)
    rows = [
        (str(l.momentum_index), _fmt(2.0 * math.pi * l.momentum_index / args.sites),
         _fmt(l.omega), _fmt(l.weight))
        for l in lines
    ]
    _write_rows(("momentum_index", "k", "omega", "weight"),
                rows, args.format, args.output)
    if args.plot:
        from . import plots
        plots.ed_spectrum(lines, args.sites, args.plot)
    return EXIT_OK


def _cmd_compare(args) -> int:
    spec = ed.ChainSpec(sites=args.sites)
    report = ed.band_check(spec)
    print(f"sites                  = {report.sites}")
    print(f"label_shift            = {_fmt(report.label_shift)}")
    print(f"ground_energy_per_site = {_fmt(report.ground_energy_per_site)}")
    print("momentum_index,k_physical,omega_min,w_lower,rel_deviation,"
          "ed_intensity,analytic_intensity,ratio")
    lines = ed.spectral_lines(spec)
    qspec = _quad_spec(args)
    for entry in report.entries:
        edw = _windowed_intensity(lines, entry, args.sites)
        ana = _analytic_intensity(entry.k_physical, qspec)
        ratio = edw / ana if ana > 0 else float("nan")
        cells = [
            str(entry.momentum_index), _fmt(entry.k_physical),
            _fmt(entry.omega_min) if entry.omega_min is not None else "",
            _fmt(entry.w_lower),
            _fmt(entry.rel_deviation) if entry.rel_deviation is not None else "",
            _fmt(edw), _fmt(ana), _fmt(ratio) if ana > 0 else "",
        ]
        print(",".join(cells))
    if args.plot:
        from . import plots
        plots.compare_figure(report, args.plot)
    return EXIT_OK


def _windowed_intensity(lines, entry, sites) -> float:
    w_l = entry.w_lower
    w_u = 2.0 * math.pi * math.sin(entry.k_physical / 2.0)
    lo, hi = 0.8 * w_l, 1.2 * w_u
    return sum(l.weight for l in lines
               if l.momentum_index == entry.momentum_index and lo <= l.omega <= hi)


def _analytic_intensity(k: float, spec: QuadratureSpec, nodes: int = 24) -> float:
    """(1/2pi) * integral of s2_pm over the band at fixed k."""
    w_l, w_u = band_boundaries(k)
    width = w_u - w_l
    if width <= 0:
        return 0.0
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (x + 1.0)
    total = sum(
        wi * 0.5 * 2.0 * width * ui * s2_pm(k, w_l + width * ui * ui, spec).s_pm
        for ui, wi in zip(u, w)
    )
    return total / (2.0 * math.pi)


_COMMANDS = {
    "constants": _cmd_constants,
    "eval": _cmd_eval,
    "scan": _cmd_scan,
    "lineshape": _cmd_lineshape,
    "sumrule": _cmd_sumrule,
    "ed": _cmd_ed,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _merge_config(args)
        if args.quad_tol <= 0 or args.split_point <= 0 or args.max_subdivisions < 1:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "threads", 1) < 1:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (QuadratureError, ArithmeticError, ed.DegenerateGroundStateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
