"""Maps of the closed unit disk and their first-order polar jets.

Every map exposes two vectorised primitives working on broadcastable arrays
of radii and angles:

* ``values(r, theta)``  -> f(r e^{i theta})
* ``jets(r, theta)``    -> (f, df/dr, df/dtheta)

The scalar operations :func:`evaluate`, :func:`polar_jet`, :func:`jacobian`
and :func:`wirtinger_from_polar` wrap them for single points.  Built-in
families carry hand-derived closed-form jets; :class:`Composition` uses the
Cartesian (Wirtinger) chain rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EvaluationError, OutOfDomainError, SingularPointError

TWO_PI = 2.0 * math.pi

# Slack for |z| <= 1 so that images of boundary points survive rounding.
DISK_SLACK = 1e-12


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float

    def __post_init__(self):
        r = float(self.r)
        if not (0.0 <= r <= 1.0 + DISK_SLACK) or not math.isfinite(r):
            raise OutOfDomainError(f"radius {self.r!r} outside [0, 1]")
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise OutOfDomainError(f"angle {self.theta!r} is not finite")
        theta = math.fmod(theta, TWO_PI)
        if theta < 0.0:
            theta += TWO_PI
        if theta >= TWO_PI:
            theta = 0.0
        object.__setattr__(self, "r", min(r, 1.0))
        object.__setattr__(self, "theta", theta)

    @property
    def z(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


@dataclass(frozen=True)
class PolarJet:
    value: complex
    d_r: complex
    d_theta: complex

    def __post_init__(self):
        for name in ("value", "d_r", "d_theta"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise EvaluationError(f"jet component {name} is not finite: {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class WirtingerDerivs:
    f_z: complex
    f_zbar: complex

    @property
    def jacobian(self) -> float:
        return abs(self.f_z) ** 2 - abs(self.f_zbar) ** 2


# ---------------------------------------------------------------------------
# array helpers

def polar_to_wirtinger(d_r, d_theta, r, theta):
    """Convert polar derivatives to (f_z, f_zbar); arrays broadcast."""
    e = np.exp(-1j * np.asarray(theta))
    tangential = 1j * np.asarray(d_theta) / np.asarray(r)
    f_z = 0.5 * e * (d_r - tangential)
    f_zbar = 0.5 * np.conj(e) * (d_r + tangential)
    return f_z, f_zbar


def wirtinger_to_polar(f_z, f_zbar, r, theta):
    e = np.exp(1j * np.asarray(theta))
    d_r = f_z * e + f_zbar * np.conj(e)
    d_theta = 1j * np.asarray(r) * (f_z * e - f_zbar * np.conj(e))
    return d_r, d_theta


def polar_jacobian(d_r, d_theta, r):
    """J_f = Im(conj(f_r) f_theta) / r."""
    return np.imag(np.conj(d_r) * d_theta) / np.asarray(r)


# ---------------------------------------------------------------------------
# families

class Mapping:
    """Base class.  Subclasses are immutable and implement ``jets``."""

    family = "abstract"

    #: True when f(0) = 0 is known to hold.
    fixes_origin = True

    def values(self, r, theta):
        return self.jets(r, theta)[0]

    def jets(self, r, theta):  # pragma: no cover - interface
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family}({inner})"


def _rt(r, theta):
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return r, theta


@dataclass(frozen=True)
class Identity(Mapping):
    family = "identity"

    def jets(self, r, theta):
        r, theta = _rt(r, theta)
        e = np.exp(1j * theta)
        value = r * e
        return value, e * np.ones_like(r), 1j * value


@dataclass(frozen=True)
class Rotation(Mapping):
    phi: float = 0.0
    family = "rotation"

    def jets(self, r, theta):
        r, theta = _rt(r, theta)
        e = np.exp(1j * (theta + self.phi))
        value = r * e
        return value, e * np.ones_like(r), 1j * value

    def params(self):
        return {"phi": self.phi}


@dataclass(frozen=True)
class RadialPower(Mapping):
    """f(z) = z |z|^(alpha - 1)."""

    alpha: float = 1.0
    family = "radial_power"

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"RadialPower needs alpha > 0, got {self.alpha!r}")

    def jets(self, r, theta):
        r, theta = _rt(r, theta)
        e = np.exp(1j * theta)
        ra = r ** self.alpha
        value = ra * e
        with np.errstate(divide="ignore", invalid="ignore"):
            d_r = self.alpha * r ** (self.alpha - 1.0) * e
        return value, d_r, 1j * value

    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True)
class Twist(Mapping):
    """f(r e^{it}) = r e^{i(t + g(r))} with g(r) = sum_k coeffs[k-1] r^k."""

    coeffs: tuple[float, ...] = ()
    family = "twist"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def _g(self, r):
        g = np.zeros_like(r)
        dg = np.zeros_like(r)
        for k, c in enumerate(self.coeffs, start=1):
            g = g + c * r ** k
            dg = dg + k * c * r ** (k - 1)
        return g, dg

    def jets(self, r, theta):
        r, theta = _rt(r, theta)
        g, dg = self._g(r)
        e = np.exp(1j * (theta + g))
        value = r * e
        d_r = e * (1.0 + 1j * r * dg)
        return value, d_r, 1j * value

    def params(self):
        return {"coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class AngularReparam(Mapping):
    """f(r e^{it}) = r e^{i h(t)}, h(t) = t + sum_k a_k sin(kt) + b_k cos(kt).

    ``sin_coeffs[k-1]`` is a_k and ``cos_coeffs[k-1]`` is b_k.  A circle
    diffeomorphism needs h' > 0; that is checked by :func:`validate_regular`,
    not here, so that folded test maps can be built.
    """

    sin_coeffs: tuple[float, ...] = ()
    cos_coeffs: tuple[float, ...] = ()
    family = "angular_reparam"

    def __post_init__(self):
        object.__setattr__(self, "sin_coeffs", tuple(float(c) for c in self.sin_coeffs))
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))

    def h(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = theta.copy()
        for k, a in enumerate(self.sin_coeffs, start=1):
            out = out + a * np.sin(k * theta)
        for k, b in enumerate(self.cos_coeffs, start=1):
            out = out + b * np.cos(k * theta)
        return out

    def dh(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.ones_like(theta)
        for k, a in enumerate(self.sin_coeffs, start=1):
            out = out + k * a * np.cos(k * theta)
        for k, b in enumerate(self.cos_coeffs, start=1):
            out = out - k * b * np.sin(k * theta)
        return out

    def jets(self, r, theta):
        r, theta = _rt(r, theta)
        e = np.exp(1j * self.h(theta))
        value = r * e
        return value, e * np.ones_like(r), 1j * value * self.dh(theta)

    def params(self):
        return {"sin": list(self.sin_coeffs), "cos": list(self.cos_coeffs)}


@dataclass(frozen=True)
class Composition(Mapping):
    """maps[-1] o ... o maps[0]: the first entry is applied first."""

    maps: tuple[Mapping, ...] = field(default_factory=tuple)
    family = "composition"

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("Composition needs at least one map")
        object.__setattr__(self, "maps", maps)

    @property
    def fixes_origin(self):
        return all(m.fixes_origin for m in self.maps)

    def values(self, r, theta):
        w = self.maps[0].values(r, theta)
        for m in self.maps[1:]:
            w = m.values(np.abs(w), np.angle(w))
        return w

    def jets(self, r, theta):
        if len(self.maps) == 1:
            return self.maps[0].jets(r, theta)
        r, theta = _rt(r, theta)
        w, d_r, d_theta = self.maps[0].jets(r, theta)
        f_z, f_zbar = polar_to_wirtinger(d_r, d_theta, r, theta)
        for m in self.maps[1:]:
            rho, phi = np.abs(w), np.angle(w)
            w, g_r, g_theta = m.jets(rho, phi)
            g_w, g_wbar = polar_to_wirtinger(g_r, g_theta, rho, phi)
            f_z, f_zbar = (g_w * f_z + g_wbar * np.conj(f_zbar),
                           g_w * f_zbar + g_wbar * np.conj(f_z))
        d_r, d_theta = wirtinger_to_polar(f_z, f_zbar, r, theta)
        return w, d_r, d_theta

    def params(self):
        return {"maps": [m.describe() for m in self.maps]}


# ---------------------------------------------------------------------------
# point operations

def evaluate(mapping: Mapping, point: PolarPoint) -> complex:
    return complex(mapping.values(point.r, point.theta))


def polar_jet(mapping: Mapping, point: PolarPoint) -> PolarJet:
    if point.r == 0.0:
        raise SingularPointError("polar jets are undefined at r = 0")
    value, d_r, d_theta = mapping.jets(point.r, point.theta)
    return PolarJet(complex(value), complex(d_r), complex(d_theta))


def wirtinger_from_polar(jet: PolarJet, point: PolarPoint) -> WirtingerDerivs:
    if point.r == 0.0:
        raise SingularPointError("polar frame is singular at r = 0")
    f_z, f_zbar = polar_to_wirtinger(jet.d_r, jet.d_theta, point.r, point.theta)
    return WirtingerDerivs(complex(f_z), complex(f_zbar))


def jacobian(mapping: Mapping, point: PolarPoint) -> float:
    jet = polar_jet(mapping, point)
    return float(polar_jacobian(jet.d_r, jet.d_theta, point.r))


# ---------------------------------------------------------------------------
# regularity

@dataclass
class RegularityReport:
    passed: bool
    min_jacobian: float
    min_location: tuple[float, float]
    max_modulus: float
    violations: list[tuple[float, float, float]]
    n_samples: int

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        r, t = self.min_location
        return (f"{status}: min J = {self.min_jacobian:.6g} at (r={r:.6g}, theta={t:.6g}), "
                f"max |f| = {self.max_modulus:.15g}, {len(self.violations)} non-positive samples "
                f"of {self.n_samples}")


def validate_regular(mapping: Mapping, n_r: int, n_theta: int, *, r_min: float = 1e-3,
                     r_max: float = 1.0, tolerance: float = DISK_SLACK,
                     max_violations: int = 100) -> RegularityReport:
    """Sample J and |f| on a polar grid (r = 0 excluded) and report.

    Passes iff every sampled Jacobian is strictly positive and
    max |f| <= 1 + tolerance.
    """
    if n_r < 2 or n_theta < 4:
        raise ValueError("validate_regular needs n_r >= 2 and n_theta >= 4")
    radii = np.linspace(r_min, r_max, n_r)
    thetas = TWO_PI * np.arange(n_theta) / n_theta
    R, T = np.meshgrid(radii, thetas, indexing="ij")
    value, d_r, d_theta = mapping.jets(R, T)
    with np.errstate(invalid="ignore"):
        J = polar_jacobian(d_r, d_theta, R)
    bad_mask = ~(J > 0)  # catches NaN as well
    idx = np.argwhere(bad_mask)
    violations = [(float(R[i, j]), float(T[i, j]), float(J[i, j]))
                  for i, j in idx[:max_violations]]
    finite_J = np.where(np.isfinite(J), J, -np.inf)
    k = np.unravel_index(int(np.argmin(finite_J)), J.shape)
    max_mod = float(np.max(np.abs(value)))
    passed = not bad_mask.any() and max_mod <= 1.0 + tolerance
    return RegularityReport(passed=passed, min_jacobian=float(J[k]),
                            min_location=(float(R[k]), float(T[k])),
                            max_modulus=max_mod, violations=violations,
                            n_samples=int(J.size))


# ---------------------------------------------------------------------------
# construction helpers

FAMILIES = ("identity", "rotation", "radial_power", "twist", "angular_reparam")


def build_mapping(family: str, *, alpha: float | None = None, phi: float | None = None,
                  coeffs: Sequence[float] | None = None,
                  cos_coeffs: Sequence[float] | None = None) -> Mapping:
    """Construct a built-in family from its name and parameters."""
    family = family.replace("-", "_").lower()
    if family == "identity":
        return Identity()
    if family == "rotation":
        return Rotation(0.0 if phi is None else float(phi))
    if family == "radial_power":
        if alpha is None:
            raise ValueError("radial_power requires alpha")
        return RadialPower(float(alpha))
    if family == "twist":
        return Twist(tuple(coeffs or ()))
    if family == "angular_reparam":
        return AngularReparam(tuple(coeffs or ()), tuple(cos_coeffs or ()))
    raise ValueError(f"unknown map family {family!r}; expected one of {FAMILIES}")


def builtin_suite() -> dict[str, Mapping]:
    """The six reference maps used by the universal inequality suite."""
    return {
        "identity": Identity(),
        "rotation(pi/3)": Rotation(math.pi / 3),
        "radial_power(0.5)": RadialPower(0.5),
        "radial_power(2)": RadialPower(2.0),
        "twist(g=r)": Twist((1.0,)),
        "angular_reparam(0.3 sin)": AngularReparam((0.3,)),
    }
