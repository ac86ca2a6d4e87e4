"""Distortion functionals of planar disk homeomorphisms and numerical checks of
area and Schwarz-type bounds expressed through the p-angular dilatation."""

from .mapping import (AngularReparam, Composition, Identity, Mapping, PolarJet, PolarPoint,
                      RadialPower, Rotation, Twist, WirtingerDerivs, build_mapping, builtin_suite,
                      evaluate, jacobian, polar_jet, validate_regular, wirtinger_from_polar)
from .quadrature import CircleRule, RadialRule, integrate_circle, integrate_radial
from .dilatation import angular_dilatation, delta_p, min_modulus
from .geometry import area_derivative, curve_length, disk_area_green, disk_area_jacobian
from .ingest import SampledMapping, parse_sampled_map

__version__ = "0.1.0"
