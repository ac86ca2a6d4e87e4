"""Checkable predicates for every inequality of the area-distortion theory.

Each ``check_*`` returns a :class:`BoundCheckResult` for a claim of the form
``lhs <= rhs``; the margin is ``rhs - lhs`` and a check passes when
``margin >= -tolerance`` with tolerance = tol_abs + tol_rel * max(1, |rhs|).

All quantities of one (map, p) pair go through a :class:`BoundContext`,
which caches delta_p(r), S(r), L(r) and S'(r) by radius so that suites over
radius grids and radius pairs do not repeat circle integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dilatation import delta_p, min_modulus
from .errors import HypothesisError
from .geometry import area_derivative, curve_length, disk_area_green
from .mapping import Mapping
from .quadrature import CircleRule, RadialRule, integrate_radial, integrate_segments

FOUR_PI = 4.0 * math.pi
TWO_PI = 2.0 * math.pi

INEQUALITY_IDS = (
    "lemma1", "isoperimetric", "lemma2", "lemma3_p2", "lemma3_pgt2",
    "theorem1_p2", "theorem1_pgt2", "theorem2_p2", "theorem2_pgt2",
    "corollary1_printed", "corollary1_rederived", "inclusion_lf",
)

SHARP_REL = 1e-6


@dataclass(frozen=True)
class Tolerance:
    tol_abs: float = 1e-10
    tol_rel: float = 1e-7

    def __call__(self, rhs: float) -> float:
        return self.tol_abs + self.tol_rel * max(1.0, abs(rhs))


@dataclass
class BoundCheckResult:
    inequality_id: str
    p: float
    radii: tuple[float, ...]
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool
    asserted: bool = True
    note: str = ""

    @property
    def sharp(self) -> bool:
        return abs(self.margin) <= SHARP_REL * abs(self.rhs)

    @property
    def r1(self) -> float:
        return self.radii[0]

    @property
    def r2(self) -> float:
        return self.radii[1] if len(self.radii) > 1 else float("nan")


def make_result(inequality_id: str, p: float, radii, lhs: float, rhs: float,
                tol: Tolerance = Tolerance(), *, asserted: bool = True, note: str = "") -> BoundCheckResult:
    lhs, rhs = float(lhs), float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ArithmeticError(f"{inequality_id}: non-finite side lhs={lhs!r} rhs={rhs!r}")
    margin = rhs - lhs
    t = tol(rhs)
    return BoundCheckResult(inequality_id, float(p), tuple(float(r) for r in radii), lhs, rhs,
                            margin, t, margin >= -t, asserted, note)


class BoundContext:
    """Cached radial functionals of one map at one exponent p."""

    def __init__(self, mapping: Mapping, p: float, *, circle_rule: CircleRule = CircleRule(),
                 radial_rule: RadialRule = RadialRule(), tol: Tolerance = Tolerance(),
                 n_modulus_samples: int = 512):
        if not float(p) >= 2.0:
            raise ValueError(f"exponent p must be >= 2, got {p!r}")
        self.mapping = mapping
        self.p = float(p)
        self.circle_rule = circle_rule
        self.radial_rule = radial_rule
        self.tol = tol
        self.n_modulus_samples = n_modulus_samples
        self._delta: dict[float, float] = {}
        self._area: dict[float, float] = {}
        self._length: dict[float, float] = {}
        self._darea: dict[float, float] = {}
        self._lf: dict[float, float] = {}

    def with_p(self, p: float) -> "BoundContext":
        return BoundContext(self.mapping, p, circle_rule=self.circle_rule, radial_rule=self.radial_rule,
                            tol=self.tol, n_modulus_samples=self.n_modulus_samples)

    @property
    def is_p2(self) -> bool:
        return self.p == 2.0

    def delta(self, r: float) -> float:
        r = float(r)
        if r not in self._delta:
            self._delta[r] = delta_p(self.mapping, self.p, r, self.circle_rule).value
        return self._delta[r]

    def inv_delta(self, r: float) -> float:
        return 1.0 / self.delta(r)

    def area(self, r: float) -> float:
        r = float(r)
        if r not in self._area:
            self._area[r] = disk_area_green(self.mapping, r, self.circle_rule)
        return self._area[r]

    def length(self, r: float) -> float:
        r = float(r)
        if r not in self._length:
            self._length[r] = curve_length(self.mapping, r, self.circle_rule)
        return self._length[r]

    def area_derivative(self, r: float) -> float:
        r = float(r)
        if r not in self._darea:
            self._darea[r] = area_derivative(self.mapping, r, self.circle_rule)
        return self._darea[r]

    def min_modulus(self, r: float) -> float:
        r = float(r)
        if r not in self._lf:
            self._lf[r] = min_modulus(self.mapping, r, self.n_modulus_samples)
        return self._lf[r]

    def inverse_delta_integral(self, a: float, b: float) -> float:
        """Integral of dt / delta_p(t) over [a, b]."""
        return integrate_radial(self.inv_delta, a, b, self.radial_rule).value

    def tail_integrals(self, radii) -> np.ndarray:
        """Integral of dt / delta_p(t) over [r, 1] for every r in ``radii`` (any order).

        Computed segment by segment along the sorted grid and accumulated from
        r = 1 downward, so geometric grids reaching far toward the origin stay
        accurate.
        """
        radii = np.asarray(radii, dtype=float)
        pts = np.unique(np.concatenate([radii, [1.0]]))
        seg, _, _ = integrate_segments(self.inv_delta, pts, self.radial_rule)
        tails = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
        lookup = dict(zip(pts.tolist(), tails.tolist()))
        return np.array([lookup[float(r)] for r in radii])


def _ctx(mapping_or_ctx, p, **kw) -> BoundContext:
    if isinstance(mapping_or_ctx, BoundContext):
        return mapping_or_ctx if mapping_or_ctx.p == float(p) else mapping_or_ctx.with_p(p)
    return BoundContext(mapping_or_ctx, p, **kw)


def _check_open_radius(r):
    if not 0.0 < r < 1.0:
        raise ValueError(f"radius must lie in (0, 1), got {r!r}")


# ---------------------------------------------------------------------------
# pointwise-in-r claims

def check_lemma1(mapping, p: float, r: float, **kw) -> BoundCheckResult:
    """L(r)^p <= delta_p(r) S'(r)."""
    ctx = _ctx(mapping, p, **kw)
    _check_open_radius(r)
    lhs = ctx.length(r) ** ctx.p
    rhs = ctx.delta(r) * ctx.area_derivative(r)
    return make_result("lemma1", ctx.p, (r,), lhs, rhs, ctx.tol)


def check_isoperimetric(mapping, r: float, p: float = 2.0, **kw) -> BoundCheckResult:
    """4 pi S(r) <= L(r)^2 (p is carried only as a label)."""
    ctx = _ctx(mapping, p, **kw)
    lhs = FOUR_PI * ctx.area(r)
    rhs = ctx.length(r) ** 2
    return make_result("isoperimetric", ctx.p, (r,), lhs, rhs, ctx.tol)


def check_lemma2(mapping, p: float, r: float, **kw) -> BoundCheckResult:
    """(4 pi)^(p/2) S(r)^(p/2) / delta_p(r) <= S'(r)."""
    ctx = _ctx(mapping, p, **kw)
    _check_open_radius(r)
    lhs = FOUR_PI ** (ctx.p / 2.0) * ctx.area(r) ** (ctx.p / 2.0) / ctx.delta(r)
    rhs = ctx.area_derivative(r)
    return make_result("lemma2", ctx.p, (r,), lhs, rhs, ctx.tol)


def check_inclusion(mapping, r: float, p: float = 2.0, **kw) -> BoundCheckResult:
    """pi l_f(r)^2 <= S(r), valid when f(0) = 0."""
    ctx = _ctx(mapping, p, **kw)
    if not ctx.mapping.fixes_origin:
        raise HypothesisError("inclusion bound needs f(0) = 0")
    lhs = math.pi * ctx.min_modulus(r) ** 2
    rhs = ctx.area(r)
    return make_result("inclusion_lf", ctx.p, (r,), lhs, rhs, ctx.tol)


# ---------------------------------------------------------------------------
# integrated claims

def lemma3_sides(ctx: BoundContext, r1: float, r2: float, integral: float) -> tuple[float, float]:
    S1, S2 = ctx.area(r1), ctx.area(r2)
    p = ctx.p
    if ctx.is_p2:
        return S1, S2 * math.exp(-FOUR_PI * integral)
    e = (2.0 - p) / 2.0
    return S1 ** e - S2 ** e, FOUR_PI ** (p / 2.0) * (p - 2.0) / 2.0 * integral


def check_lemma3(mapping, p: float, r1: float, r2: float, *, integral: float | None = None,
                 **kw) -> BoundCheckResult:
    """Both branches of the two-radius area comparison; ``integral`` may be precomputed."""
    ctx = _ctx(mapping, p, **kw)
    if r1 > r2:
        raise ValueError(f"lemma3 needs r1 <= r2, got r1={r1!r}, r2={r2!r}")
    if not (0.0 < r1 and r2 <= 1.0):
        raise ValueError("lemma3 needs 0 < r1 <= r2 <= 1")
    if integral is None:
        integral = ctx.inverse_delta_integral(r1, r2)
    lhs, rhs = lemma3_sides(ctx, r1, r2, integral)
    ident = "lemma3_p2" if ctx.is_p2 else "lemma3_pgt2"
    return make_result(ident, ctx.p, (r1, r2), lhs, rhs, ctx.tol)


def area_bound(p: float, tail_integral: float) -> float:
    """Upper bound on S(r) given the integral of dt / delta_p(t) over [r, 1]."""
    if p == 2.0:
        return math.pi * math.exp(-FOUR_PI * tail_integral)
    x = TWO_PI ** (p - 1.0) * (p - 2.0) * tail_integral
    return math.pi * math.exp(-2.0 / (p - 2.0) * math.log1p(x))


def radial_factor(p: float, tail_integral: float) -> float:
    """1 / R_p(r): the factor multiplying |f| in the Schwarz-type functional."""
    if p == 2.0:
        return math.exp(TWO_PI * tail_integral)
    x = TWO_PI ** (p - 1.0) * (p - 2.0) * tail_integral
    return math.exp(math.log1p(x) / (p - 2.0))


def theorem1_bound(mapping, p: float, r: float, *, tail_integral: float | None = None,
                   **kw) -> BoundCheckResult:
    """Measured S(r) against the p-branch upper bound built from [r, 1]."""
    ctx = _ctx(mapping, p, **kw)
    _check_open_radius(r)
    if tail_integral is None:
        tail_integral = ctx.inverse_delta_integral(r, 1.0)
    rhs = area_bound(ctx.p, tail_integral)
    ident = "theorem1_p2" if ctx.is_p2 else "theorem1_pgt2"
    return make_result(ident, ctx.p, (r,), ctx.area(r), rhs, ctx.tol)


# ---------------------------------------------------------------------------
# behaviour at the origin

@dataclass
class SchwarzProfile:
    p: float
    radii: np.ndarray
    functional_values: np.ndarray
    proxy_liminf: float
    min_modulus: np.ndarray = field(default=None)
    tail_integrals: np.ndarray = field(default=None)

    @property
    def tail_slice(self) -> slice:
        return slice(len(self.radii) - tail_count(len(self.radii)), None)


def tail_count(n: int) -> int:
    return max(1, math.ceil(n / 4))


def geometric_grid(r_max: float, r_min: float, count: int) -> np.ndarray:
    """Decreasing geometric grid from r_max to r_min."""
    return np.geomspace(r_max, r_min, count)


def _decreasing(r_grid) -> np.ndarray:
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.ndim != 1 or len(r_grid) < 1:
        raise ValueError("radius grid must be a non-empty 1-D sequence")
    if np.any(np.diff(r_grid) >= 0):
        raise ValueError("radius grid must be strictly decreasing")
    if r_grid[-1] <= 0 or r_grid[0] >= 1:
        raise ValueError("radius grid must lie in (0, 1)")
    return r_grid


def schwarz_profile(mapping, p: float, r_grid, **kw) -> SchwarzProfile:
    """l_f(r) / R_p(r) along a grid decreasing toward the origin.

    The liminf as r -> 0 is approximated by the minimum over the last quarter
    of the grid (the smallest radii).
    """
    ctx = _ctx(mapping, p, **kw)
    if not ctx.mapping.fixes_origin:
        raise HypothesisError("the Schwarz-type functional needs f(0) = 0")
    r_grid = _decreasing(r_grid)
    tails = ctx.tail_integrals(r_grid)
    lf = np.array([ctx.min_modulus(r) for r in r_grid])
    values = np.array([l * radial_factor(ctx.p, t) for l, t in zip(lf, tails)])
    proxy = float(np.min(values[len(values) - tail_count(len(values)):]))
    return SchwarzProfile(ctx.p, r_grid, values, proxy, lf, tails)


def check_theorem2(mapping, p: float, r_grid, **kw) -> BoundCheckResult:
    prof = schwarz_profile(mapping, p, r_grid, **kw)
    ctx = _ctx(mapping, p, **kw)
    ident = "theorem2_p2" if prof.p == 2.0 else "theorem2_pgt2"
    sl = prof.tail_slice
    return make_result(ident, prof.p, (float(prof.radii[sl][0]), float(prof.radii[-1])),
                       prof.proxy_liminf, 1.0, ctx.tol, note="liminf proxy over grid tail")


def corollary1_constants(p: float) -> tuple[float, float]:
    """(printed constant, constant re-derived from the Schwarz-type bound) for p > 2."""
    printed = TWO_PI ** (1.0 - p) * (p - 2.0) ** (1.0 / (2.0 - p))
    rederived = (TWO_PI ** (p - 1.0) * (p - 2.0)) ** (-1.0 / (p - 2.0))
    return printed, rederived


@dataclass
class CorollaryProxy:
    p: float
    radii: np.ndarray
    values: np.ndarray
    proxy_liminf: float


def corollary1_proxy(mapping, p: float, r_grid, **kw) -> CorollaryProxy:
    ctx = _ctx(mapping, p, **kw)
    if ctx.p <= 2.0:
        raise ValueError("corollary check needs p > 2")
    if not ctx.mapping.fixes_origin:
        raise HypothesisError("corollary check needs f(0) = 0")
    r_grid = _decreasing(r_grid)
    tails = ctx.tail_integrals(r_grid)
    values = np.array([ctx.min_modulus(r) * t ** (1.0 / (ctx.p - 2.0)) for r, t in zip(r_grid, tails)])
    proxy = float(np.min(values[len(values) - tail_count(len(values)):]))
    return CorollaryProxy(ctx.p, r_grid, values, proxy)


def corollary1_check(mapping, p: float, r_grid, **kw) -> tuple[BoundCheckResult, BoundCheckResult]:
    """Liminf proxy of |f| (int dt/delta_p)^(1/(p-2)) against both constant variants.

    The printed-constant result is informational (``asserted=False``); the
    re-derived constant is the one the suite asserts.
    """
    ctx = _ctx(mapping, p, **kw)
    prox = corollary1_proxy(ctx, p, r_grid)
    printed, rederived = corollary1_constants(ctx.p)
    sl = slice(len(prox.radii) - tail_count(len(prox.radii)), None)
    radii = (float(prox.radii[sl][0]), float(prox.radii[-1]))
    return (
        make_result("corollary1_printed", ctx.p, radii, prox.proxy_liminf, printed, ctx.tol,
                    asserted=False, note="printed constant; reported, not asserted"),
        make_result("corollary1_rederived", ctx.p, radii, prox.proxy_liminf, rederived, ctx.tol,
                    note="constant re-derived from the p>2 Schwarz-type bound"),
    )


# ---------------------------------------------------------------------------
# p -> 2 continuity

@dataclass
class ContinuityReport:
    r: float
    base_bound: float
    eps: list[float]
    bounds: list[float]
    gaps: list[float]

    @property
    def strictly_decreasing(self) -> bool:
        order = np.argsort(self.eps)[::-1]
        g = [self.gaps[i] for i in order]
        return all(b < a for a, b in zip(g[:-1], g[1:]))


def branch_continuity(mapping: Mapping, r: float, eps_list=(1e-2, 1e-3, 1e-4), **kw) -> ContinuityReport:
    """Relative gap between the p = 2 + eps area bound and the p = 2 bound at radius r."""
    base = theorem1_bound(mapping, 2.0, r, **kw).rhs
    bounds, gaps = [], []
    for eps in eps_list:
        if not 0.0 < eps <= 0.5:
            raise ValueError(f"eps must lie in (0, 0.5], got {eps!r}")
        b = theorem1_bound(mapping, 2.0 + eps, r, **kw).rhs
        bounds.append(b)
        gaps.append(abs(b - base) / base)
    return ContinuityReport(float(r), base, list(eps_list), bounds, gaps)


# ---------------------------------------------------------------------------
# suites

def stride_pairs(radii, max_pairs: int = 50) -> list[tuple[float, float]]:
    """All (r1, r2) with r1 < r2 from a grid, thinned by a fixed stride to at most ``max_pairs``."""
    radii = sorted(float(r) for r in radii)
    pairs = [(a, b) for i, a in enumerate(radii) for b in radii[i + 1:]]
    if len(pairs) <= max_pairs:
        return pairs
    idx = np.linspace(0, len(pairs) - 1, max_pairs).round().astype(int)
    return [pairs[i] for i in np.unique(idx)]


def pointwise_suite(ctx: BoundContext, radii, checks=None, max_pairs: int = 50) -> list[BoundCheckResult]:
    """Length-area, isoperimetric, differential area, two-radius pairs and the area bound over a radius grid."""
    wanted = set(checks) if checks is not None else {"lemma1", "isoperimetric", "lemma2", "lemma3",
                                                      "theorem1", "inclusion_lf"}
    radii = sorted(float(r) for r in radii)
    out: list[BoundCheckResult] = []
    for r in radii:
        if "lemma1" in wanted:
            out.append(check_lemma1(ctx, ctx.p, r))
        if "isoperimetric" in wanted:
            out.append(check_isoperimetric(ctx, r, ctx.p))
        if "lemma2" in wanted:
            out.append(check_lemma2(ctx, ctx.p, r))
        if "inclusion_lf" in wanted and ctx.mapping.fixes_origin:
            out.append(check_inclusion(ctx, r, ctx.p))
    need_tails = "theorem1" in wanted or "lemma3" in wanted
    if need_tails:
        tails = dict(zip(radii, ctx.tail_integrals(radii).tolist()))
    if "lemma3" in wanted:
        for r1, r2 in stride_pairs(radii, max_pairs):
            out.append(check_lemma3(ctx, ctx.p, r1, r2, integral=tails[r1] - tails[r2]))
    if "theorem1" in wanted:
        for r in radii:
            out.append(theorem1_bound(ctx, ctx.p, r, tail_integral=tails[r]))
    return out


def sort_results(results: list[BoundCheckResult]) -> list[BoundCheckResult]:
    return sorted(results, key=lambda x: (x.inequality_id, x.p, x.radii))
