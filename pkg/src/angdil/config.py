"""Run configuration: YAML file + command-line overrides + defaults."""

from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .errors import ConfigError
from .mapping import FAMILIES

OUT_ENV = "ANGDIL_OUT"

CHECK_GROUPS = ("lemma1", "isoperimetric", "lemma2", "lemma3", "theorem1", "theorem2",
                "corollary1", "inclusion_lf")

# full inequality ids map onto the group that produces them
_ID_TO_GROUP = {
    "lemma3_p2": "lemma3", "lemma3_pgt2": "lemma3",
    "theorem1_p2": "theorem1", "theorem1_pgt2": "theorem1",
    "theorem2_p2": "theorem2", "theorem2_pgt2": "theorem2",
    "corollary1_printed": "corollary1", "corollary1_rederived": "corollary1",
}


@dataclass
class MapSpec:
    family: str = "identity"
    alpha: float | None = None
    phi: float | None = None
    coeffs: list[float] = field(default_factory=list)
    cos_coeffs: list[float] = field(default_factory=list)
    path: str | None = None


@dataclass
class GridSpec:
    r_min: float = 0.05
    r_max: float = 0.95
    count: int = 20
    spacing: str = "linear"

    def radii(self) -> np.ndarray:
        if self.spacing == "geometric":
            return np.geomspace(self.r_min, self.r_max, self.count)
        return np.linspace(self.r_min, self.r_max, self.count)


@dataclass
class QuadratureSpec:
    circle_nodes: int = 256
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_depth: int = 40
    area_r_min: float = 1e-3
    modulus_samples: int = 512


@dataclass
class SchwarzSpec:
    """Geometric grid toward the origin for the liminf proxies."""

    r_max: float = 0.5
    r_min: float = 1e-9
    count: int = 40

    def radii(self) -> np.ndarray:
        return np.geomspace(self.r_max, self.r_min, self.count)


@dataclass
class ToleranceSpec:
    tol_abs: float = 1e-10
    tol_rel: float = 1e-7


@dataclass
class OutputSpec:
    directory: str | None = None
    formats: list[str] = field(default_factory=lambda: ["csv", "json"])
    plots: bool = False


@dataclass
class RunConfig:
    map: MapSpec = field(default_factory=MapSpec)
    p_list: list[float] = field(default_factory=lambda: [2.0])
    grid: GridSpec = field(default_factory=GridSpec)
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    schwarz: SchwarzSpec = field(default_factory=SchwarzSpec)
    checks: list[str] = field(default_factory=lambda: list(CHECK_GROUPS))
    max_pairs: int = 50
    tolerances: ToleranceSpec = field(default_factory=ToleranceSpec)
    output: OutputSpec = field(default_factory=OutputSpec)

    def output_dir(self) -> Path:
        return Path(self.output.directory or os.environ.get(OUT_ENV) or "results")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


# ---------------------------------------------------------------------------
# loading

def _merge(target, data: dict, prefix: str):
    """Copy ``data`` into the dataclass instance ``target``, recursing into nested sections."""
    if not isinstance(data, dict):
        raise ConfigError(prefix or "<root>", f"expected a mapping, got {type(data).__name__}")
    names = {f.name: f for f in dataclasses.fields(target)}
    for key, value in data.items():
        path = f"{prefix}.{key}" if prefix else str(key)
        if key not in names:
            raise ConfigError(path, "unknown field")
        current = getattr(target, key)
        if dataclasses.is_dataclass(current):
            _merge(current, value, path)
        else:
            setattr(target, key, value)


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the YAML file, then flag overrides (dotted keys); validated."""
    cfg = RunConfig()
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ConfigError("config", f"invalid YAML: {exc}") from None
        _merge(cfg, data, "")
    for dotted, value in (overrides or {}).items():
        *parents, leaf = dotted.split(".")
        obj = cfg
        for name in parents:
            obj = getattr(obj, name)
        setattr(obj, leaf, value)
    validate(cfg)
    return cfg


# ---------------------------------------------------------------------------
# validation

def _num(path, value, *, integer=False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(path, "must be finite")
    if integer and int(value) != value:
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return value


def _num_list(path, values) -> list[float]:
    if not isinstance(values, (list, tuple)):
        raise ConfigError(path, f"expected a list, got {values!r}")
    return [float(_num(f"{path}[{i}]", v)) for i, v in enumerate(values)]


def validate(cfg: RunConfig) -> RunConfig:
    """Check every invariant, normalising types in place; raises ConfigError naming the field."""
    m = cfg.map
    family = str(m.family).replace("-", "_").lower()
    if family not in FAMILIES + ("suite", "sampled"):
        raise ConfigError("map.family", f"unknown family {m.family!r}")
    m.family = family
    if family == "radial_power":
        if m.alpha is None:
            raise ConfigError("map.alpha", "required for radial_power")
        if not _num("map.alpha", m.alpha) > 0:
            raise ConfigError("map.alpha", "must be > 0")
    if m.phi is not None:
        m.phi = float(_num("map.phi", m.phi))
    m.coeffs = _num_list("map.coeffs", m.coeffs)
    m.cos_coeffs = _num_list("map.cos_coeffs", m.cos_coeffs)
    if family == "sampled":
        if not m.path:
            raise ConfigError("map.path", "required for sampled maps")
        if not Path(m.path).is_file():
            raise ConfigError("map.path", f"no such file: {m.path}")

    cfg.p_list = _num_list("p_list", cfg.p_list)
    if not cfg.p_list:
        raise ConfigError("p_list", "must not be empty")
    for i, p in enumerate(cfg.p_list):
        if p < 2:
            raise ConfigError(f"p_list[{i}]", f"exponent must be >= 2, got {p}")

    g = cfg.grid
    g.r_min = float(_num("grid.r_min", g.r_min))
    g.r_max = float(_num("grid.r_max", g.r_max))
    g.count = int(_num("grid.count", g.count, integer=True))
    if g.r_min <= 0:
        raise ConfigError("grid.r_min", "must be > 0")
    if g.r_max > 1:
        raise ConfigError("grid.r_max", "must be <= 1")
    if g.r_max <= g.r_min:
        raise ConfigError("grid.r_max", "must exceed grid.r_min")
    if g.count < 2:
        raise ConfigError("grid.count", "must be >= 2")
    if g.spacing not in ("linear", "geometric"):
        raise ConfigError("grid.spacing", "must be 'linear' or 'geometric'")

    q = cfg.quadrature
    q.circle_nodes = int(_num("quadrature.circle_nodes", q.circle_nodes, integer=True))
    if q.circle_nodes < 8 or q.circle_nodes % 2:
        raise ConfigError("quadrature.circle_nodes", "must be an even integer >= 8")
    for name in ("rel_tol", "abs_tol", "area_r_min"):
        v = float(_num(f"quadrature.{name}", getattr(q, name)))
        if v <= 0:
            raise ConfigError(f"quadrature.{name}", "must be > 0")
        setattr(q, name, v)
    q.max_depth = int(_num("quadrature.max_depth", q.max_depth, integer=True))
    if q.max_depth < 1:
        raise ConfigError("quadrature.max_depth", "must be >= 1")
    q.modulus_samples = int(_num("quadrature.modulus_samples", q.modulus_samples, integer=True))
    if q.modulus_samples < 16:
        raise ConfigError("quadrature.modulus_samples", "must be >= 16")
    if q.area_r_min >= g.r_min:
        raise ConfigError("quadrature.area_r_min", "must be below grid.r_min")

    s = cfg.schwarz
    s.r_max = float(_num("schwarz.r_max", s.r_max))
    s.r_min = float(_num("schwarz.r_min", s.r_min))
    s.count = int(_num("schwarz.count", s.count, integer=True))
    if not 0 < s.r_min < s.r_max < 1:
        raise ConfigError("schwarz.r_min", "need 0 < schwarz.r_min < schwarz.r_max < 1")
    if s.count < 4:
        raise ConfigError("schwarz.count", "must be >= 4")

    if not isinstance(cfg.checks, (list, tuple)):
        raise ConfigError("checks", "expected a list of inequality ids")
    groups = []
    for i, c in enumerate(cfg.checks):
        grp = _ID_TO_GROUP.get(c, c)
        if grp not in CHECK_GROUPS:
            raise ConfigError(f"checks[{i}]", f"unknown inequality id {c!r}")
        if grp not in groups:
            groups.append(grp)
    cfg.checks = groups
    cfg.max_pairs = int(_num("max_pairs", cfg.max_pairs, integer=True))
    if cfg.max_pairs < 1:
        raise ConfigError("max_pairs", "must be >= 1")

    t = cfg.tolerances
    for name in ("tol_abs", "tol_rel"):
        v = float(_num(f"tolerances.{name}", getattr(t, name)))
        if v < 0:
            raise ConfigError(f"tolerances.{name}", "must be >= 0")
        setattr(t, name, v)

    o = cfg.output
    if isinstance(o.formats, str):
        o.formats = [f.strip() for f in o.formats.split(",") if f.strip()]
    for i, f in enumerate(o.formats):
        if f not in ("csv", "json"):
            raise ConfigError(f"output.formats[{i}]", f"unsupported format {f!r}")
    if not isinstance(o.plots, bool):
        raise ConfigError("output.plots", "expected true or false")
    return cfg


def dump_config(cfg: RunConfig) -> str:
    return yaml.safe_dump(cfg.as_dict(), sort_keys=False)
