"""Exact lattice geometry of cones ``A x >= 0`` and polytopes ``A x <= b``.

Everything is computed over the integers and rationals; nothing is floating point.
"""

from .cones import Cone, extreme_rays, normalized_generators, transform_cone, triangulate
from .errors import CheckFailure
from .exact import delta, determinant, gcd_of_minors, hermite_normal_form, minor_stats, smith_normal_form
from .groups import AbelianGroup, diam_bfs, diam_formula, quotient_group, rhs_lattice
from .hilbert import height, hilbert_basis, is_hilbert_element
from .lp import Polytope, integer_points, is_lattice_free, optimize
from .pyramids import build_pyramid, generate_sg, pyramid_bound_report
from .widths import facet_width, lattice_width

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "CheckFailure", "Cone", "Polytope",
    "build_pyramid", "delta", "determinant", "diam_bfs", "diam_formula",
    "extreme_rays", "facet_width", "gcd_of_minors", "generate_sg", "height",
    "hermite_normal_form", "hilbert_basis", "integer_points", "is_hilbert_element",
    "is_lattice_free", "lattice_width", "minor_stats", "normalized_generators",
    "optimize", "pyramid_bound_report", "quotient_group", "rhs_lattice",
    "smith_normal_form", "transform_cone", "triangulate",
]
