"""Named constructions, each returning a cone spec together with its
declared embedded code so the cone machinery can verify the claim."""

from .base import (BuiltCone, ToricBase, cyclic_repetition,
                   dangling_repetition, repetition, string_defect, toric)
from .layer import layer_code, layer_distance_bound
from .square import SquareStructure, check_square_complex, l_subdivision
from .topo import (SimplicialComplex, barycentric_cone, honeycomb_cone,
                   simpl_chain, triangular_cone)
from .weight import (ConingGraph, WeightReduction, coning_graph,
                     hastings_cone, strip_fill, triangulate, weight_reduce,
                     weight_reduce_stages, x_reduce, z_thicken)

__all__ = [
    "BuiltCone", "ConingGraph", "SimplicialComplex", "SquareStructure",
    "ToricBase", "WeightReduction", "barycentric_cone",
    "check_square_complex", "coning_graph", "cyclic_repetition",
    "dangling_repetition", "hastings_cone", "honeycomb_cone",
    "l_subdivision", "layer_code", "layer_distance_bound", "repetition",
    "simpl_chain", "string_defect", "strip_fill", "toric",
    "triangular_cone", "triangulate", "weight_reduce",
    "weight_reduce_stages", "x_reduce", "z_thicken",
]
