"""Exact Chow-ring invariants of matroids and volumes of generalized
permutohedra."""

from .charpoly import char_poly, gamma, mu_vector, reduced_char_poly
from .chow import (
    ChainMonomial,
    ChainPolynomial,
    evaluate,
    intersection_number,
    shifted_rank_volume,
    volume_polynomial,
)
from .matroid import (
    Matroid,
    MatroidError,
    connected_components,
    direct_sum,
    flat_lattice,
    from_bases,
    graphic,
    minor_interval,
    simplify,
    uniform,
)

__version__ = "0.1.0"

__all__ = [
    "ChainMonomial",
    "ChainPolynomial",
    "Matroid",
    "MatroidError",
    "char_poly",
    "connected_components",
    "direct_sum",
    "evaluate",
    "flat_lattice",
    "from_bases",
    "gamma",
    "graphic",
    "intersection_number",
    "minor_interval",
    "mu_vector",
    "reduced_char_poly",
    "shifted_rank_volume",
    "simplify",
    "uniform",
    "volume_polynomial",
]
