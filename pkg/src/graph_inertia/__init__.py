"""
Graph Inertia - exact adjacency inertia, congruent-vertex reductions and censuses of graphs
with exactly two positive eigenvalues.
"""

__version__ = "1.0.0"
__author__ = "Graph Inertia Team"

from .census_store import CensusStore
from .graph import Graph, from_graph6, to_graph6
from .spectral import Inertia, inertia
from .transforms import reduction_chain

__all__ = [
    "CensusStore",
    "Graph",
    "Inertia",
    "from_graph6",
    "inertia",
    "reduction_chain",
    "to_graph6",
]
