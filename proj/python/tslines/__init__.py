"""Oriented lines, Lagrangian sections and complex points.

Fields are dicts mapping exponent pairs (m, n) to the complex coefficient
of xi^m conj(xi)^n.
"""

import json

from ._tslines import (
    Error,
    boundary_index,
    c1_matching_constants,
    direction_vector,
    max_lagrangian_defect,
    point_from_line,
    reconstruct,
    section_from_support,
    tensor_probe,
    winding_number,
)
from . import _tslines

__all__ = [
    "Error",
    "boundary_index",
    "c1_matching_constants",
    "c2_constants",
    "certify_c1",
    "complex_points",
    "direction_vector",
    "max_lagrangian_defect",
    "point_from_line",
    "reconstruct",
    "reformulation_scenario",
    "section_from_support",
    "tensor_probe",
    "umbilics",
    "verify_paper",
    "winding_number",
]


def complex_points(support, center=0j, radius=0.5, grid_n=64):
    return json.loads(_tslines._complex_points(support, center, radius, grid_n))


def umbilics(support, C, center=0j, radius=0.9):
    return json.loads(_tslines._umbilics(support, C, center, radius))


def c2_constants(r0):
    return json.loads(_tslines._c2_constants(r0))


def certify_c1(c, r0_squared, eps=0.1, radial_n=256, angular_n=256, min_mag=1e-6):
    return json.loads(_tslines._certify_c1(c, r0_squared, eps, radial_n, angular_n, min_mag))


def reformulation_scenario(k, pairs=1):
    return json.loads(_tslines._reformulation_scenario(k, pairs))


def verify_paper(seed=1729):
    return json.loads(_tslines._verify_paper(seed))
