"""Specialized sentence checkers and the sentence registry."""

from .boundary import (
    ExtVariant,
    boundary_edge_count,
    boundary_pair_sentence,
    ext_set,
    psi_prime,
)
from .pairs import phi3_exists, phi3_vertices, phi_pairs
from .partition import symmetric_partition
from .registry import KNOWN_SENTENCES, Sentence, resolve_sentence
from .structure import (
    every_edge_in_4cycle,
    has_isolated_vertex,
    isolated_path_exists,
    pendant_sentence,
    triangle_structure_ok,
)
from .triangles import candidates, chain_of_triangles

__all__ = [
    "ExtVariant",
    "KNOWN_SENTENCES",
    "Sentence",
    "boundary_edge_count",
    "boundary_pair_sentence",
    "candidates",
    "chain_of_triangles",
    "every_edge_in_4cycle",
    "ext_set",
    "has_isolated_vertex",
    "isolated_path_exists",
    "pendant_sentence",
    "phi3_exists",
    "phi3_vertices",
    "phi_pairs",
    "psi_prime",
    "resolve_sentence",
    "symmetric_partition",
    "triangle_structure_ok",
]
