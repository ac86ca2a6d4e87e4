"""p-angular dilatation, the circle functional delta_p(r) and the minimum modulus l_f(r)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RegularityError, SingularPointError
from .mapping import Mapping, PolarPoint, TWO_PI, polar_jacobian
from .quadrature import CircleRule, QuadResult, trapezoid_circle, _check_finite

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 2.0:
        raise ValueError(f"exponent p must be >= 2, got {p!r}")
    return p


def circle_jets(mapping: Mapping, r: float, thetas: np.ndarray):
    """Jets and Jacobian on a circle; raises RegularityError on the first J <= 0."""
    if r <= 0.0:
        raise SingularPointError("polar quantities are undefined at r = 0")
    value, d_r, d_theta = mapping.jets(r, thetas)
    value = np.broadcast_to(value, thetas.shape)
    d_r = np.broadcast_to(d_r, thetas.shape)
    d_theta = np.broadcast_to(d_theta, thetas.shape)
    with np.errstate(invalid="ignore"):
        J = polar_jacobian(d_r, d_theta, r)
    bad = ~(J > 0)
    if bad.any():
        k = int(np.argmax(bad))
        raise RegularityError(r, thetas[k], J[k])
    return value, d_r, d_theta, J


def dilatation_on_circle(mapping: Mapping, p: float, r: float, thetas: np.ndarray) -> np.ndarray:
    """D_p = |f_theta|^p / (r^p J) at each angle in ``thetas``."""
    p = _check_p(p)
    _, _, d_theta, J = circle_jets(mapping, r, thetas)
    return (np.abs(d_theta) / r) ** p / J


def angular_dilatation(mapping: Mapping, p: float, point: PolarPoint) -> float:
    return float(dilatation_on_circle(mapping, p, point.r, np.array([point.theta]))[0])


def delta_p(mapping: Mapping, p: float, r: float, rule: CircleRule = CircleRule()) -> QuadResult:
    """delta_p(r) = (integral over |z| = r of D_p^(1/(p-1)) |dz|)^(p-1)."""
    p = _check_p(p)
    thetas = rule.nodes()
    _, _, d_theta, J = circle_jets(mapping, r, thetas)
    q = 1.0 / (p - 1.0)
    # D_p^q = (|f_theta|/r)^(p q) J^(-q), written to avoid overflow of D_p itself
    integrand = (np.abs(d_theta) / r) ** (p * q) * J ** (-q) * r
    _check_finite(integrand, thetas, "delta_p")
    inner, inner_err, _ = trapezoid_circle(integrand)
    value = inner ** (p - 1.0)
    err = (p - 1.0) * inner ** (p - 2.0) * inner_err
    return QuadResult(float(value), float(err))


def min_modulus(mapping: Mapping, r: float, n_samples: int = 512, *, xtol: float = 1e-12) -> float:
    """l_f(r) = min over |z| = r of |f(z)|: equispaced sampling, then golden-section refinement."""
    if n_samples < 16:
        raise ValueError("min_modulus needs n_samples >= 16")
    if r <= 0.0:
        return float(abs(complex(mapping.values(0.0, 0.0))))
    thetas = TWO_PI * np.arange(n_samples) / n_samples
    mods = np.abs(mapping.values(r, thetas))
    mods = np.broadcast_to(mods, thetas.shape)
    k = int(np.argmin(mods))
    best = float(mods[k])
    step = TWO_PI / n_samples

    def g(t):
        return float(abs(complex(mapping.values(r, t))))

    a, b = thetas[k] - step, thetas[k] + step
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    while b - a > xtol:
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + GOLDEN * (b - a)
            gd = g(d)
    return min(best, gc, gd)


@dataclass
class DilatationProfile:
    p: float
    radii: np.ndarray
    delta_values: np.ndarray
    error_estimates: np.ndarray

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)
        self.delta_values = np.asarray(self.delta_values, dtype=float)
        self.error_estimates = np.asarray(self.error_estimates, dtype=float)
        if np.any(np.diff(self.radii) <= 0) or self.radii[0] <= 0 or self.radii[-1] > 1:
            raise ValueError("radii must be strictly increasing within (0, 1]")
        if not np.all(np.isfinite(self.delta_values) & (self.delta_values > 0)):
            raise ValueError("delta values must be finite and positive")


def dilatation_profile(mapping: Mapping, p: float, radii, rule: CircleRule = CircleRule()) -> DilatationProfile:
    results = [delta_p(mapping, p, float(r), rule) for r in radii]
    return DilatationProfile(p, radii, [v for v, _, _ in results], [e for _, e, _ in results])
