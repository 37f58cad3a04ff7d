"""Sparse neighborhood covers from low-crossing orders, pattern graphs, flips and
the encode/decode interpretation machinery."""

from ._kernels import BACKEND
from .covers import Cover, CoverReport, compact_partition, cover_from_partition, distance_r_cover, verify_cover
from .graph_core import BipartiteGraph, Graph, are_isomorphic, build_graph, induced_subgraph, read_graph
from .interpret import decode_flip, decode_interpretation, encode_graph
from .patterns import FlipSpec, PatternDescriptor, apply_flip, generate_pattern
from .set_system import LinearOrder, SetSystem, crossing_number, neighborhood_system, welzl_order
from .stability import branching_index, reduce_neighborhoods, sample_unique_neighbor

__version__ = "0.1.0"
