"""Pipelines behind the CLI subcommands: build maps from a config, run, tabulate."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .bounds import BoundCheckResult, BoundContext, Tolerance
from .config import RunConfig
from .errors import HypothesisError, OutOfDomainError, RegularityError
from .geometry import geometry_profile
from .dilatation import dilatation_profile
from .ingest import SampledMapping, parse_sampled_map
from .mapping import Mapping, build_mapping, builtin_suite, validate_regular
from .quadrature import CircleRule, RadialRule

PROFILE_COLUMNS = ["map", "p", "r", "L", "S_green", "S_jacobian", "dS", "delta_p", "delta_err",
                   "area_gap", "area_budget"]
CHECK_COLUMNS = ["map", "inequality_id", "p", "r1", "r2", "lhs", "rhs", "margin", "tolerance",
                 "pass", "asserted", "sharp", "note"]
SCHWARZ_COLUMNS = ["map", "p", "r", "l_f", "tail_integral", "functional", "in_tail"]
PROXY_COLUMNS = ["map", "p", "proxy_liminf", "pass"]


def build_maps(cfg: RunConfig) -> dict[str, Mapping]:
    m = cfg.map
    if m.family == "suite":
        return builtin_suite()
    if m.family == "sampled":
        sm = parse_sampled_map(m.path)
        return {f"sampled({sm.source})": sm}
    mp = build_mapping(m.family, alpha=m.alpha, phi=m.phi, coeffs=m.coeffs, cos_coeffs=m.cos_coeffs)
    return {mp.describe(): mp}


def rules(cfg: RunConfig) -> tuple[CircleRule, RadialRule]:
    q = cfg.quadrature
    return CircleRule(q.circle_nodes), RadialRule(q.rel_tol, q.abs_tol, q.max_depth)


def _context(mapping, p, cfg) -> BoundContext:
    circle, radial = rules(cfg)
    return BoundContext(mapping, p, circle_rule=circle, radial_rule=radial,
                        tol=Tolerance(cfg.tolerances.tol_abs, cfg.tolerances.tol_rel),
                        n_modulus_samples=cfg.quadrature.modulus_samples)


# ---------------------------------------------------------------------------
# profile

def run_profile(cfg: RunConfig) -> list[dict]:
    circle, radial = rules(cfg)
    radii = cfg.grid.radii()
    rows = []
    for name, mapping in build_maps(cfg).items():
        geo = geometry_profile(mapping, radii, circle, radial, r_min=cfg.quadrature.area_r_min)
        for p in cfg.p_list:
            dil = dilatation_profile(mapping, p, radii, circle)
            for k, r in enumerate(radii):
                rows.append({
                    "map": name, "p": p, "r": float(r),
                    "L": geo.length_values[k], "S_green": geo.area_green[k],
                    "S_jacobian": geo.area_jacobian[k], "dS": geo.area_derivative[k],
                    "delta_p": dil.delta_values[k], "delta_err": dil.error_estimates[k],
                    "area_gap": abs(geo.area_jacobian[k] - geo.area_green[k]),
                    "area_budget": geo.error_budget[k],
                })
    return rows


# ---------------------------------------------------------------------------
# check

@dataclass
class CheckRun:
    rows: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def asserted_rows(self):
        return [r for r in self.rows if r["asserted"]]

    @property
    def all_passed(self) -> bool:
        return all(r["pass"] for r in self.asserted_rows)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1

    def worst(self) -> dict | None:
        rows = self.asserted_rows
        return min(rows, key=lambda r: r["margin"]) if rows else None

    def summary(self) -> str:
        n = len(self.asserted_rows)
        failed = sum(not r["pass"] for r in self.asserted_rows)
        info = len(self.rows) - n
        w = self.worst()
        text = f"{n - failed}/{n} asserted checks passed"
        if info:
            text += f" ({info} informational rows)"
        if w is not None:
            where = f"r={w['r1']:.6g}" + (f"..{w['r2']:.6g}" if not math.isnan(w["r2"]) else "")
            text += (f"; min margin {w['margin']:.6g} ({w['inequality_id']}, p={w['p']:g}, {where}, "
                     f"map {w['map']})")
        if self.skipped:
            text += f"; skipped: {'; '.join(self.skipped)}"
        return text


def result_row(name: str, res: BoundCheckResult) -> dict:
    return {
        "map": name, "inequality_id": res.inequality_id, "p": res.p, "r1": res.r1, "r2": res.r2,
        "lhs": res.lhs, "rhs": res.rhs, "margin": res.margin, "tolerance": res.tolerance,
        "pass": res.passed, "asserted": res.asserted, "sharp": res.sharp, "note": res.note,
    }


def regularity_row(name: str, r: float, theta: float, jacobian: float, note: str = "") -> dict:
    """A located J > 0 check; lhs 0, rhs J, passes only for strictly positive J."""
    return {
        "map": name, "inequality_id": "regularity", "p": float("nan"), "r1": r, "r2": float("nan"),
        "lhs": 0.0, "rhs": jacobian, "margin": jacobian, "tolerance": 0.0, "pass": jacobian > 0,
        "asserted": True, "sharp": False, "note": note or f"theta={theta:.17g}",
    }


def _validation_range(mapping, cfg) -> tuple[float, float]:
    if isinstance(mapping, SampledMapping):
        return max(cfg.grid.r_min, mapping.r_values[0]), mapping.r_values[-1]
    return cfg.grid.r_min, 1.0


def check_map(name: str, mapping: Mapping, cfg: RunConfig, run: CheckRun) -> None:
    lo, hi = _validation_range(mapping, cfg)
    report = validate_regular(mapping, max(cfg.grid.count, 2), cfg.quadrature.circle_nodes,
                              r_min=lo, r_max=hi)
    r, theta = report.min_location
    run.rows.append(regularity_row(name, r, theta, report.min_jacobian,
                                   note=f"theta={theta:.17g}; {len(report.violations)} violations; "
                                        f"max|f|={report.max_modulus:.17g}"))
    if not report.passed:
        run.skipped.append(f"{name}: inequality suite not run (hypotheses fail)")
        return
    radii = cfg.grid.radii()
    radii = radii[radii < 1.0]
    wanted = set(cfg.checks)
    pointwise = wanted & {"lemma1", "isoperimetric", "lemma2", "lemma3", "theorem1", "inclusion_lf"}
    for p in cfg.p_list:
        ctx = _context(mapping, p, cfg)
        try:
            if pointwise:
                for res in bounds.pointwise_suite(ctx, radii, pointwise, cfg.max_pairs):
                    run.rows.append(result_row(name, res))
            if "theorem2" in wanted:
                run.rows.append(result_row(name, bounds.check_theorem2(ctx, p, cfg.schwarz.radii())))
            if "corollary1" in wanted and p > 2:
                for res in bounds.corollary1_check(ctx, p, cfg.schwarz.radii()):
                    run.rows.append(result_row(name, res))
        except RegularityError as exc:
            run.rows.append(regularity_row(name, exc.r, exc.theta, exc.jacobian))
        except (OutOfDomainError, HypothesisError) as exc:
            run.skipped.append(f"{name} p={p:g}: {exc}")


def run_check(cfg: RunConfig) -> CheckRun:
    run = CheckRun()
    for name, mapping in build_maps(cfg).items():
        check_map(name, mapping, cfg, run)
    run.rows.sort(key=lambda r: (r["map"], r["inequality_id"], _nan_key(r["p"]), r["r1"], _nan_key(r["r2"])))
    return run


def _nan_key(x: float) -> float:
    return -1.0 if math.isnan(x) else x


# ---------------------------------------------------------------------------
# schwarz

@dataclass
class SchwarzRun:
    rows: list[dict] = field(default_factory=list)
    proxies: list[dict] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if all(p["pass"] for p in self.proxies) else 1


def run_schwarz(cfg: RunConfig) -> SchwarzRun:
    out = SchwarzRun()
    grid = cfg.schwarz.radii()
    tol = Tolerance(cfg.tolerances.tol_abs, cfg.tolerances.tol_rel)
    for name, mapping in build_maps(cfg).items():
        if not mapping.fixes_origin:
            raise HypothesisError(f"{name}: the Schwarz-type functional needs f(0) = 0")
        for p in cfg.p_list:
            prof = bounds.schwarz_profile(_context(mapping, p, cfg), p, grid)
            tail = prof.tail_slice
            in_tail = np.zeros(len(grid), dtype=bool)
            in_tail[tail] = True
            for k, r in enumerate(prof.radii):
                out.rows.append({"map": name, "p": p, "r": float(r), "l_f": prof.min_modulus[k],
                                 "tail_integral": prof.tail_integrals[k],
                                 "functional": prof.functional_values[k], "in_tail": bool(in_tail[k])})
            out.proxies.append({"map": name, "p": p, "proxy_liminf": prof.proxy_liminf,
                                "pass": prof.proxy_liminf <= 1.0 + tol(1.0)})
    return out
