"""Exact combinatorics of iterated barycentric subdivision and its limit measures."""

__version__ = "0.1.0"

from .complex import (  # noqa: E402
    SimplicialComplex,
    boundary_simplex,
    build_from_facets,
    cross_polytope_boundary,
    euler_characteristic,
    face_vector,
    link,
    standard_simplex,
    suspension,
)
from .spectral import lambda_closed_form, lambda_recursive, q_partition, q_solve, transfer  # noqa: E402
from .subdivision import barycentric_subdivision, iter_faces, iterate_subdivision, stream_faces  # noqa: E402
