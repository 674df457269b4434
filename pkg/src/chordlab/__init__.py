"""chordlab: fat graphs, Sullivan chord diagrams, move-graph search and an
exact positive-boundary two-dimensional TQFT."""

from .fatgraph import FatGraph, TopType, boundary_cycles, topological_type
from .chord import ChordDiagram, canonical_gamma0, glue
from .moves import explore, path_to_canonical
from .tqft import FrobeniusAlgebra, mu, verify_gluing

__all__ = [
    "FatGraph",
    "TopType",
    "boundary_cycles",
    "topological_type",
    "ChordDiagram",
    "canonical_gamma0",
    "glue",
    "explore",
    "path_to_canonical",
    "FrobeniusAlgebra",
    "mu",
    "verify_gluing",
]
__version__ = "0.1.0"
