"""Sampled maps on a polar tensor grid, exposed through the :class:`Mapping` interface.

File formats
------------
CSV: header ``r,theta,re,im`` then one row per grid node in any order.  The
(r, theta) pairs must form a full tensor grid whose angles are 2 pi j / n
to within 1e-12.

JSON (path ends in ``.json``)::

    {"r_values": [...], "theta_count": n,
     "samples": [[re, im], ...],          # row-major: r outer, theta inner
     "asserted_flags": {"regular": true, "n_property": true, "fixes_origin": true}}

Jets are finite differences at the nodes (fourth-order periodic central
differences in theta, second-order in r via :func:`numpy.gradient`) and are
bilinearly interpolated to query points, with wrap-around in theta.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import OutOfDomainError, ParseError, StructureError
from .mapping import Mapping, PolarJet, PolarPoint, TWO_PI, polar_jet

HEADER = ["r", "theta", "re", "im"]
ANGLE_TOL = 1e-12
MODULUS_SLACK = 1e-9
HULL_SLACK = 1e-12
FLAG_NAMES = ("regular", "n_property", "fixes_origin")


@dataclass(frozen=True, eq=False)
class SampledMapping(Mapping):
    r_values: np.ndarray
    theta_count: int
    samples: np.ndarray
    asserted_flags: dict = field(default_factory=dict)
    source: str = ""
    family = "sampled"

    def __post_init__(self):
        r = np.asarray(self.r_values, dtype=float)
        s = np.asarray(self.samples, dtype=complex)
        n = int(self.theta_count)
        if r.ndim != 1 or len(r) < 3:
            raise StructureError("need at least 3 radii")
        if n < 16:
            raise StructureError("need theta_count >= 16")
        if np.any(np.diff(r) <= 0):
            raise StructureError("radii must be strictly increasing (no duplicates)")
        if r[0] <= 0 or r[-1] > 1:
            raise StructureError("radii must lie in (0, 1]")
        if s.shape != (len(r), n):
            raise StructureError(f"samples have shape {s.shape}, expected {(len(r), n)}")
        if not np.all(np.isfinite(s)):
            raise StructureError("samples must be finite")
        mod = np.abs(s)
        if mod.max() > 1.0 + MODULUS_SLACK:
            i, j = np.unravel_index(int(np.argmax(mod)), mod.shape)
            raise OutOfDomainError(
                f"|f| = {mod[i, j]!r} > 1 at r={r[i]!r}, theta={TWO_PI * j / n!r}")
        flags = {k: bool(self.asserted_flags.get(k, False)) for k in FLAG_NAMES}
        r.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "r_values", r)
        object.__setattr__(self, "theta_count", n)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "asserted_flags", flags)
        dtheta = TWO_PI / n
        d_theta = (-np.roll(s, -2, axis=1) + 8.0 * np.roll(s, -1, axis=1)
                   - 8.0 * np.roll(s, 1, axis=1) + np.roll(s, 2, axis=1)) / (12.0 * dtheta)
        d_r = np.gradient(s, r, axis=0, edge_order=2)
        for a in (d_theta, d_r):
            a.setflags(write=False)
        object.__setattr__(self, "_node_d_theta", d_theta)
        object.__setattr__(self, "_node_d_r", d_r)

    @property
    def fixes_origin(self):
        return self.asserted_flags.get("fixes_origin", False)

    @property
    def theta_values(self) -> np.ndarray:
        return TWO_PI * np.arange(self.theta_count) / self.theta_count

    def _locate(self, r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        r, theta = np.broadcast_arrays(r, theta)
        lo, hi = self.r_values[0], self.r_values[-1]
        outside = (r < lo - HULL_SLACK) | (r > hi + HULL_SLACK) | ~np.isfinite(r)
        if outside.any():
            bad = r[outside].flat[0]
            raise OutOfDomainError(f"radius {bad!r} outside the sampled hull [{lo!r}, {hi!r}]")
        rc = np.clip(r, lo, hi)
        i = np.clip(np.searchsorted(self.r_values, rc, side="right") - 1, 0, len(self.r_values) - 2)
        wr = (rc - self.r_values[i]) / (self.r_values[i + 1] - self.r_values[i])
        u = np.mod(theta, TWO_PI) * (self.theta_count / TWO_PI)
        j = np.floor(u).astype(int)
        wt = u - j
        j = np.mod(j, self.theta_count)
        j1 = np.mod(j + 1, self.theta_count)
        return i, wr, j, j1, wt

    def _interp(self, table, loc):
        i, wr, j, j1, wt = loc
        a = table[i, j] * (1 - wt) + table[i, j1] * wt
        b = table[i + 1, j] * (1 - wt) + table[i + 1, j1] * wt
        return a * (1 - wr) + b * wr

    def values(self, r, theta):
        return self._interp(self.samples, self._locate(r, theta))

    def jets(self, r, theta):
        loc = self._locate(r, theta)
        return (self._interp(self.samples, loc), self._interp(self._node_d_r, loc),
                self._interp(self._node_d_theta, loc))

    def params(self):
        return {"source": self.source, "grid": f"{len(self.r_values)}x{self.theta_count}"}


def sampled_jet(mapping: SampledMapping, point: PolarPoint) -> PolarJet:
    return polar_jet(mapping, point)


# ---------------------------------------------------------------------------
# reading

def parse_sampled_map(path, asserted_flags: dict | None = None) -> SampledMapping:
    """Load a sampled map from CSV, or JSON when the path ends in ``.json``."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return _parse_json(path)
    return _parse_csv(path, asserted_flags or {})


def _parse_csv(path: Path, flags: dict) -> SampledMapping:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", 1) from None
        if [h.strip() for h in header] != HEADER:
            raise ParseError(f"header must be exactly {','.join(HEADER)!r}", 1)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 fields, got {len(row)}", line)
            try:
                vals = [float(c) for c in row]
            except ValueError:
                raise ParseError(f"non-numeric field in {row!r}", line) from None
            if not all(math.isfinite(v) for v in vals):
                raise ParseError(f"non-finite value in {row!r}", line)
            rows.append((line, *vals))
    if not rows:
        raise StructureError("no data rows")

    radii = sorted({r for _, r, _, _, _ in rows})
    n = len(rows) // len(radii)
    if n * len(radii) != len(rows):
        raise StructureError(f"{len(rows)} rows do not form a full grid over {len(radii)} radii")
    r_index = {r: i for i, r in enumerate(radii)}
    samples = np.full((len(radii), n), np.nan, dtype=complex)
    seen = np.zeros((len(radii), n), dtype=bool)
    for line, r, theta, re, im in rows:
        j = int(round(theta * n / TWO_PI))
        if j < 0 or j >= n or abs(theta - TWO_PI * j / n) > ANGLE_TOL:
            raise StructureError(f"line {line}: theta={theta!r} is not on the grid 2*pi*j/{n}")
        i = r_index[r]
        if seen[i, j]:
            raise StructureError(f"line {line}: duplicate node (r={r!r}, j={j})")
        seen[i, j] = True
        samples[i, j] = complex(re, im)
    if not seen.all():
        i, j = np.argwhere(~seen)[0]
        raise StructureError(f"grid incomplete: missing node r={radii[i]!r}, j={j}")
    return SampledMapping(np.array(radii), n, samples, flags, source=str(path))


def _parse_json(path: Path) -> SampledMapping:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    for key in ("r_values", "theta_count", "samples"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    r = np.asarray(data["r_values"], dtype=float)
    n = int(data["theta_count"])
    raw = np.asarray(data["samples"], dtype=float)
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise ParseError("samples must be a list of [re, im] pairs")
    if raw.shape[0] != len(r) * n:
        raise StructureError(f"{raw.shape[0]} samples, expected {len(r)} x {n}")
    samples = (raw[:, 0] + 1j * raw[:, 1]).reshape(len(r), n)
    return SampledMapping(r, n, samples, data.get("asserted_flags", {}), source=str(path))


# ---------------------------------------------------------------------------
# writing

def sample_grid(func, r_values, theta_count: int) -> np.ndarray:
    """Evaluate ``func(r, theta)`` (vectorised) on the tensor grid."""
    r_values = np.asarray(r_values, dtype=float)
    thetas = TWO_PI * np.arange(theta_count) / theta_count
    R, T = np.meshgrid(r_values, thetas, indexing="ij")
    return np.broadcast_to(np.asarray(func(R, T), dtype=complex), R.shape).copy()


def sample_mapping(mapping_or_func, r_values, theta_count: int, asserted_flags: dict | None = None,
                   source: str = "") -> SampledMapping:
    func = mapping_or_func.values if isinstance(mapping_or_func, Mapping) else mapping_or_func
    samples = sample_grid(func, r_values, theta_count)
    if asserted_flags is None:
        asserted_flags = {"regular": True, "n_property": True,
                          "fixes_origin": getattr(mapping_or_func, "fixes_origin", False)}
    return SampledMapping(np.asarray(r_values, dtype=float), theta_count, samples, asserted_flags, source)


def write_sampled_map(path, sm: SampledMapping) -> Path:
    """Write CSV or JSON (by suffix) with round-trip float formatting."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = sm.theta_count
    if path.suffix.lower() == ".json":
        payload = {
            "r_values": sm.r_values.tolist(),
            "theta_count": n,
            "samples": [[float(z.real), float(z.imag)] for z in sm.samples.ravel()],
            "asserted_flags": dict(sm.asserted_flags),
        }
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for i, r in enumerate(sm.r_values):
            for j in range(n):
                z = sm.samples[i, j]
                w.writerow([repr(float(r)), repr(TWO_PI * j / n), repr(float(z.real)), repr(float(z.imag))])
    return path
