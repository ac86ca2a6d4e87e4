"""Built-in oracle suite: closed-form values every pipeline stage must reproduce."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import bounds
from .dilatation import angular_dilatation, delta_p, min_modulus
from .geometry import area_derivative, curve_length, disk_area_green, disk_area_jacobian
from .mapping import (AngularReparam, Identity, PolarPoint, RadialPower, Rotation, Twist,
                      evaluate, jacobian, polar_jet, wirtinger_from_polar)
from .quadrature import integrate_circle, integrate_radial

PI = math.pi


class Oracle(NamedTuple):
    name: str
    compute: Callable[[], float]
    expected: float
    rel_tol: float


def _oracles() -> list[Oracle]:
    I, R2 = Identity(), RadialPower(2.0)
    A = AngularReparam((0.3,))
    half = PolarPoint(0.5, 0.0)
    grid = bounds.geometric_grid(0.5, 1e-9, 40)
    return [
        Oracle("evaluate identity", lambda: evaluate(I, half).real, 0.5, 1e-15),
        Oracle("evaluate radial power", lambda: evaluate(R2, half).real, 0.25, 1e-15),
        Oracle("evaluate rotation", lambda: evaluate(Rotation(PI / 2), PolarPoint(1, 0)).imag, 1.0, 1e-15),
        Oracle("jet d_r radial power", lambda: polar_jet(R2, half).d_r.real, 1.0, 1e-14),
        Oracle("jacobian radial power", lambda: jacobian(R2, half), 0.5, 1e-14),
        Oracle("jacobian twist", lambda: jacobian(Twist((1.0,)), PolarPoint(0.7, 2.0)), 1.0, 1e-14),
        Oracle("wirtinger f_z", lambda: wirtinger_from_polar(polar_jet(R2, half), half).f_z.real, 0.75, 1e-14),
        Oracle("wirtinger f_zbar", lambda: wirtinger_from_polar(polar_jet(R2, half), half).f_zbar.real, 0.25, 1e-14),
        Oracle("circle rule cos^2", lambda: integrate_circle(lambda t: np.cos(t) ** 2).value, PI, 1e-14),
        Oracle("radial rule 1/t", lambda: integrate_radial(lambda t: 1 / t, 0.25, 1.0).value, math.log(4), 1e-9),
        Oracle("D_p radial power", lambda: angular_dilatation(R2, 2, half), 0.5, 1e-14),
        Oracle("D_3 angular reparam", lambda: angular_dilatation(A, 3, half), 1.69, 1e-14),
        Oracle("delta_2 radial power", lambda: delta_p(R2, 2, 0.5).value, PI / 2, 1e-13),
        Oracle("delta_3 angular reparam", lambda: delta_p(A, 3, 0.5).value, PI ** 2, 1e-12),
        Oracle("min modulus radial power", lambda: min_modulus(R2, 0.5), 0.25, 1e-13),
        Oracle("length radial power", lambda: curve_length(R2, 0.5), PI / 2, 1e-13),
        Oracle("S' radial power", lambda: area_derivative(R2, 0.5), PI / 2, 1e-13),
        Oracle("S green radial power", lambda: disk_area_green(R2, 0.5), PI / 16, 1e-13),
        Oracle("S jacobian radial power", lambda: disk_area_jacobian(R2, 0.5).value, PI / 16, 1e-8),
        Oracle("S jacobian angular reparam", lambda: disk_area_jacobian(A, 0.5).value, PI / 4, 1e-8),
        Oracle("theorem1 bound radial power p=2", lambda: bounds.theorem1_bound(R2, 2, 0.5).rhs, PI / 16, 1e-8),
        Oracle("theorem1 bound identity p=3", lambda: bounds.theorem1_bound(I, 3, 0.5).rhs, PI / 4, 1e-8),
        Oracle("lemma3 rhs identity p=2", lambda: bounds.check_lemma3(I, 2, 0.25, 0.5).rhs, PI / 16, 1e-8),
        Oracle("schwarz proxy radial power p=2", lambda: bounds.schwarz_profile(R2, 2, grid).proxy_liminf, 1.0, 1e-6),
        Oracle("schwarz proxy identity p=3", lambda: bounds.schwarz_profile(I, 3, grid).proxy_liminf, 1.0, 1e-6),
        Oracle("corollary proxy identity p=3", lambda: bounds.corollary1_proxy(I, 3, grid).proxy_liminf,
               (2 * PI) ** -2, 1e-6),
    ]


def run_selftest(echo=print) -> bool:
    ok = True
    for o in _oracles():
        try:
            got = float(o.compute())
            err = abs(got - o.expected) / max(abs(o.expected), 1e-300)
            passed = err <= o.rel_tol
            detail = f"got {got:.17g}, expected {o.expected:.17g}, rel err {err:.2e} (tol {o.rel_tol:.0e})"
        except Exception as exc:  # a crash is a failed oracle, keep going
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        ok = ok and passed
        echo(f"[{'PASS' if passed else 'FAIL'}] {o.name}: {detail}")
    return ok
