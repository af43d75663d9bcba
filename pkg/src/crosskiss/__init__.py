"""Exact l1 lattice and kissing-configuration toolkit for the cross-polytope."""

from .exact import binary_entropy, l1_norm, linf_norm, support, vec
from .kernels import BACKEND
from .lattice import Lattice, closest_point_l1, minimal_vectors, named_lattice

__all__ = [
    "BACKEND",
    "Lattice",
    "binary_entropy",
    "closest_point_l1",
    "l1_norm",
    "linf_norm",
    "minimal_vectors",
    "named_lattice",
    "support",
    "vec",
]
__version__ = "0.1.0"
