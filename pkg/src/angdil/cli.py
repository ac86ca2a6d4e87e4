"""Command-line entry point: ``angdil {profile,check,schwarz,ingest-verify,selftest}``.

Exit codes: 0 success / all checks passed, 1 a check failed, 2 invalid
configuration or input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import pipeline
from .config import CHECK_GROUPS, load_config
from .errors import AngdilError, ConfigError
from .ingest import parse_sampled_map
from .mapping import validate_regular
from .report import write_tables

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ids(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _add_run_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", type=Path, help="YAML run configuration")
    sp.add_argument("--map", dest="family",
                    help="identity | rotation | radial_power | twist | angular_reparam | suite | sampled")
    sp.add_argument("--path", help="sampled-map file (CSV or .json) for --map sampled")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--phi", type=float)
    sp.add_argument("--coeffs", type=_floats, help="twist: c1,c2,... for g(r)=sum c_k r^k; "
                                                   "angular_reparam: sine coefficients a1,a2,...")
    sp.add_argument("--cos-coeffs", type=_floats, help="angular_reparam cosine coefficients b1,b2,...")
    sp.add_argument("--p", type=_floats, help="comma-separated exponents >= 2")
    sp.add_argument("--r-min", type=float)
    sp.add_argument("--r-max", type=float)
    sp.add_argument("--r-count", type=int)
    sp.add_argument("--spacing", choices=("linear", "geometric"))
    sp.add_argument("--circle-nodes", type=int)
    sp.add_argument("--tol-rel", type=float)
    sp.add_argument("--tol-abs", type=float)
    sp.add_argument("--checks", type=_ids, help=f"subset of {','.join(CHECK_GROUPS)} (or full ids)")
    sp.add_argument("--out", help="output directory (default $ANGDIL_OUT or ./results)")
    sp.add_argument("--format", dest="formats", type=_ids, help="csv,json")
    sp.add_argument("--plots", action="store_true", default=None, help="also write SVG charts")


_FLAG_TO_FIELD = {
    "family": "map.family", "path": "map.path", "alpha": "map.alpha", "phi": "map.phi",
    "coeffs": "map.coeffs", "cos_coeffs": "map.cos_coeffs", "p": "p_list",
    "r_min": "grid.r_min", "r_max": "grid.r_max", "r_count": "grid.count", "spacing": "grid.spacing",
    "circle_nodes": "quadrature.circle_nodes", "tol_rel": "tolerances.tol_rel",
    "tol_abs": "tolerances.tol_abs", "checks": "checks", "out": "output.directory",
    "formats": "output.formats", "plots": "output.plots",
}


def config_from_args(args):
    overrides = {field: getattr(args, flag) for flag, field in _FLAG_TO_FIELD.items()
                 if getattr(args, flag, None) is not None}
    if args.path is not None and args.family is None:
        overrides["map.family"] = "sampled"
    return load_config(args.config, overrides)


def _prepare_out(cfg) -> Path:
    out = cfg.output_dir()
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_profile(args) -> int:
    cfg = config_from_args(args)
    rows = pipeline.run_profile(cfg)
    out = _prepare_out(cfg)
    files = write_tables(out, "profile", rows, pipeline.PROFILE_COLUMNS, cfg.output.formats)
    if cfg.output.plots:
        from .plots import emit_plots
        files += emit_plots(out, profile_rows=rows)
    print(f"profile: {len(rows)} rows")
    for f in files:
        print(f"  wrote {f}")
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = config_from_args(args)
    run = pipeline.run_check(cfg)
    out = _prepare_out(cfg)
    files = write_tables(out, "checks", run.rows, pipeline.CHECK_COLUMNS, cfg.output.formats)
    if cfg.output.plots:
        from .plots import emit_plots
        files += emit_plots(out, check_rows=run.rows)
    for row in run.rows:
        if not row["pass"] and row["asserted"]:
            print(f"FAIL {row['map']} {row['inequality_id']} p={row['p']:g} r1={row['r1']:.6g} "
                  f"margin={row['margin']:.6g} {row['note']}")
    print(run.summary())
    for f in files:
        print(f"  wrote {f}")
    return run.exit_code


def cmd_schwarz(args) -> int:
    cfg = config_from_args(args)
    run = pipeline.run_schwarz(cfg)
    out = _prepare_out(cfg)
    files = write_tables(out, "schwarz", run.rows, pipeline.SCHWARZ_COLUMNS, cfg.output.formats,
                         extra={"proxies": run.proxies})
    files += write_tables(out, "schwarz_proxy", run.proxies, pipeline.PROXY_COLUMNS,
                          [f for f in cfg.output.formats if f == "csv"])
    if cfg.output.plots:
        from .plots import emit_plots
        files += emit_plots(out, schwarz_rows=run.rows)
    for p in run.proxies:
        print(f"{p['map']} p={p['p']:g}: liminf proxy {p['proxy_liminf']:.12g} "
              f"({'pass' if p['pass'] else 'FAIL'}: <= 1)")
    for f in files:
        print(f"  wrote {f}")
    return run.exit_code


def cmd_ingest_verify(args) -> int:
    sm = parse_sampled_map(args.file)
    report = validate_regular(sm, args.n_r, args.n_theta, r_min=sm.r_values[0], r_max=sm.r_values[-1])
    print(f"{args.file}: {len(sm.r_values)} radii x {sm.theta_count} angles, "
          f"r in [{sm.r_values[0]:.6g}, {sm.r_values[-1]:.6g}], flags {sm.asserted_flags}")
    print(report.summary())
    for r, t, j in report.violations[:10]:
        print(f"  J={j:.6g} at r={r:.17g}, theta={t:.17g}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest() else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="angdil", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_ in (("profile", cmd_profile, "tabulate L, S, S' and delta_p"),
                              ("check", cmd_check, "evaluate the inequality suite"),
                              ("schwarz", cmd_schwarz, "Schwarz-type functional near the origin")):
        sp = sub.add_parser(name, help=help_)
        _add_run_flags(sp)
        sp.set_defaults(func=func)
    sp = sub.add_parser("ingest-verify", help="parse a sampled map and report regularity")
    sp.add_argument("file", type=Path)
    sp.add_argument("--n-r", type=int, default=64)
    sp.add_argument("--n-theta", type=int, default=256)
    sp.set_defaults(func=cmd_ingest_verify)
    sp = sub.add_parser("selftest", help="run the built-in closed-form oracle suite")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AngdilError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
