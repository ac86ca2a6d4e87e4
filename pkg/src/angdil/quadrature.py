"""One-dimensional quadrature: periodic trapezoid on circles, adaptive Simpson on radii."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import EvaluationError

TWO_PI = 2.0 * math.pi


class QuadResult(NamedTuple):
    value: float
    error: float
    converged: bool = True


@dataclass(frozen=True)
class CircleRule:
    n_nodes: int = 256

    def __post_init__(self):
        if self.n_nodes < 8 or self.n_nodes % 2:
            raise ValueError(f"CircleRule needs an even n_nodes >= 8, got {self.n_nodes}")

    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n_nodes) / self.n_nodes


@dataclass(frozen=True)
class RadialRule:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_depth: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_depth >= 1):
            raise ValueError("RadialRule needs rel_tol > 0, abs_tol > 0, max_depth >= 1")


def _check_finite(values: np.ndarray, nodes: np.ndarray, what: str) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        raise EvaluationError(f"{what} integrand is {values[k]!r} at node {nodes[k]!r}")


def trapezoid_circle(values: np.ndarray) -> QuadResult:
    """Integrate equispaced samples over [0, 2pi); error from the half-resolution rule."""
    values = np.asarray(values, dtype=float)
    full = TWO_PI * values.mean(axis=-1)
    half = TWO_PI * values[..., ::2].mean(axis=-1)
    return QuadResult(full, np.abs(full - half))


def integrate_circle(integrand: Callable[[np.ndarray], np.ndarray],
                     rule: CircleRule = CircleRule()) -> QuadResult:
    """Integrate a 2pi-periodic function of theta.

    ``integrand`` receives the full node array and returns an array of the
    same shape.  The rule is spectrally accurate for smooth periodic
    integrands; the error estimate compares with the rule on every other node.
    """
    nodes = rule.nodes()
    values = np.broadcast_to(np.asarray(integrand(nodes), dtype=float), nodes.shape)
    _check_finite(values, nodes, "circle")
    full, err, _ = trapezoid_circle(values)
    return QuadResult(float(full), float(err))


def _simpson(fa, fm, fb, h):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def simpson_panels(integrand: Callable[[float], float], a: float, b: float, n_panels: int) -> float:
    """Composite Simpson with ``n_panels`` equal panels (fixed rule, for order checks)."""
    xs = np.linspace(a, b, 2 * n_panels + 1)
    fs = np.array([integrand(float(x)) for x in xs])
    h = (b - a) / n_panels
    return float(h / 6.0 * (fs[0:-1:2] + 4.0 * fs[1::2] + fs[2::2]).sum())


def integrate_radial(integrand: Callable[[float], float], a: float, b: float,
                     rule: RadialRule = RadialRule(), *, min_depth: int = 2) -> QuadResult:
    """Adaptive Simpson on [a, b].

    A panel is accepted when its two-half Simpson estimate differs from the
    whole-panel estimate by at most 15 times the local tolerance
    max(rel_tol * |panel|, abs_tol * width / (b - a)); the accepted value
    carries the Richardson correction.  Panels reaching ``max_depth`` are
    accepted as they are and the result is marked ``converged=False``.
    """
    if a > b:
        raise ValueError(f"integrate_radial needs a <= b, got a={a!r}, b={b!r}")
    if a == b:
        return QuadResult(0.0, 0.0)

    def f(x):
        y = float(integrand(x))
        if not math.isfinite(y):
            raise EvaluationError(f"radial integrand is {y!r} at t={x!r}")
        return y

    span = b - a
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    # depth-first, left panel first, so summation order is reproducible
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, span), 0)]
    pieces: list[float] = []
    errors: list[float] = []
    converged = True
    while stack:
        lo, hi, flo, fmid, fhi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = _simpson(flo, flm, fmid, mid - lo)
        right = _simpson(fmid, frm, fhi, hi - mid)
        diff = left + right - whole
        tol = max(rule.rel_tol * abs(left + right), rule.abs_tol * (hi - lo) / span)
        if depth + 1 >= min_depth and abs(diff) <= 15.0 * tol:
            pieces.append(left + right + diff / 15.0)
            errors.append(abs(diff) / 15.0)
        elif depth + 1 >= rule.max_depth:
            converged = False
            pieces.append(left + right + diff / 15.0)
            errors.append(abs(diff))
        else:
            stack.append((mid, hi, fmid, frm, fhi, right, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, depth + 1))
    return QuadResult(math.fsum(pieces), math.fsum(errors), converged)


def integrate_segments(integrand: Callable[[float], float], breakpoints, rule: RadialRule = RadialRule()):
    """Integrals over consecutive intervals [x_k, x_{k+1}] of an increasing breakpoint list.

    Returns (values, errors, converged) with one entry per interval.  Used for
    cumulative tail integrals over radius grids where the integrand varies by
    orders of magnitude across the whole range.
    """
    xs = [float(x) for x in breakpoints]
    values, errs, ok = [], [], True
    for lo, hi in zip(xs[:-1], xs[1:]):
        res = integrate_radial(integrand, lo, hi, rule)
        values.append(res.value)
        errs.append(res.error)
        ok = ok and res.converged
    return np.array(values), np.array(errs), ok
