"""Curve length L(r), image area S(r) by two independent routes, and S'(r)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dilatation import circle_jets, min_modulus
from .mapping import Mapping, TWO_PI
from .quadrature import CircleRule, QuadResult, RadialRule, integrate_radial, trapezoid_circle

DEFAULT_R_MIN = 1e-3


def _circle_nodes_jets(mapping, r, rule):
    thetas = rule.nodes()
    return thetas, circle_jets(mapping, r, thetas)


def curve_length(mapping: Mapping, r: float, rule: CircleRule = CircleRule()) -> float:
    """L(r) = integral of |f_theta| over [0, 2pi)."""
    thetas = rule.nodes()
    _, _, d_theta = mapping.jets(r, thetas)
    return float(trapezoid_circle(np.broadcast_to(np.abs(d_theta), thetas.shape)).value)


def area_derivative(mapping: Mapping, r: float, rule: CircleRule = CircleRule()) -> float:
    """S'(r) = integral of J_f r over [0, 2pi); raises RegularityError if J <= 0 on the circle."""
    _, (_, _, _, J) = _circle_nodes_jets(mapping, r, rule)
    return float(trapezoid_circle(J * r).value)


def disk_area_green(mapping: Mapping, r: float, rule: CircleRule = CircleRule()) -> float:
    """S(r) as the area enclosed by f(|z| = r): half the circle integral of Im(conj(f) f_theta)."""
    thetas = rule.nodes()
    value, _, d_theta = mapping.jets(r, thetas)
    integrand = np.broadcast_to(np.imag(np.conj(value) * d_theta), thetas.shape)
    return float(0.5 * trapezoid_circle(integrand).value)


@dataclass
class JacobianArea:
    value: float
    quadrature_error: float
    core_estimate: float
    core_bound: float
    converged: bool

    def __float__(self):
        return self.value


def disk_area_jacobian(mapping: Mapping, r: float, circle_rule: CircleRule = CircleRule(),
                       radial_rule: RadialRule = RadialRule(), *, r_min: float = DEFAULT_R_MIN,
                       n_core_samples: int = 512) -> JacobianArea:
    """S(r) as the integral of S'(t) over [r_min, r] plus an estimate of the core B_{r_min}.

    The core is estimated as pi (l^2 + M^2) / 2 with l, M the minimum and
    maximum of |f| on |z| = r_min; ``core_bound`` = pi (M^2 - l^2) / 2 bounds
    the error of that estimate for images star-shaped about f(0) = 0.
    """
    if r <= r_min:
        raise ValueError(f"radius {r!r} must exceed r_min={r_min!r}")
    res = integrate_radial(lambda t: area_derivative(mapping, t, circle_rule), r_min, r, radial_rule)
    lo = min_modulus(mapping, r_min, n_core_samples)
    thetas = TWO_PI * np.arange(n_core_samples) / n_core_samples
    hi = float(np.max(np.abs(np.broadcast_to(mapping.values(r_min, thetas), thetas.shape))))
    core = math.pi * (lo * lo + hi * hi) / 2.0
    core_bound = math.pi * (hi * hi - lo * lo) / 2.0
    return JacobianArea(res.value + core, res.error, core, core_bound, res.converged)


@dataclass
class GeometryProfile:
    radii: np.ndarray
    length_values: np.ndarray
    area_jacobian: np.ndarray
    area_green: np.ndarray
    area_derivative: np.ndarray
    error_budget: np.ndarray = field(default=None)

    def __post_init__(self):
        for name in ("radii", "length_values", "area_jacobian", "area_green", "area_derivative"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.error_budget is None:
            self.error_budget = np.zeros_like(self.radii)
        self.error_budget = np.asarray(self.error_budget, dtype=float)

    def method_gap(self) -> np.ndarray:
        return np.abs(self.area_jacobian - self.area_green)


def geometry_profile(mapping: Mapping, radii, circle_rule: CircleRule = CircleRule(),
                     radial_rule: RadialRule = RadialRule(), *, r_min: float = DEFAULT_R_MIN) -> GeometryProfile:
    """L, S (both routes), S' on a radius grid.

    The Jacobian-route areas are accumulated panel by panel along the sorted
    grid so each radius reuses the integral up to its predecessor.
    """
    radii = np.asarray(radii, dtype=float)
    order = np.argsort(radii)
    L = np.empty_like(radii)
    S_green = np.empty_like(radii)
    dS = np.empty_like(radii)
    S_jac = np.empty_like(radii)
    budget = np.empty_like(radii)
    base = None
    prev = r_min
    acc = 0.0
    acc_err = 0.0
    for i in order:
        r = float(radii[i])
        L[i] = curve_length(mapping, r, circle_rule)
        S_green[i] = disk_area_green(mapping, r, circle_rule)
        dS[i] = area_derivative(mapping, r, circle_rule)
        if base is None:
            base = disk_area_jacobian(mapping, r, circle_rule, radial_rule, r_min=r_min)
            acc, acc_err = base.value, base.quadrature_error
        else:
            seg = integrate_radial(lambda t: area_derivative(mapping, t, circle_rule), prev, r, radial_rule)
            acc += seg.value
            acc_err += seg.error
        prev = r
        S_jac[i] = acc
        budget[i] = acc_err + base.core_bound
    return GeometryProfile(radii, L, S_jac, S_green, dS, budget)
