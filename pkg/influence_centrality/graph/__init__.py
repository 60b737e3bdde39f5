"""Graph ingestion and traversal."""

from .parser import (
    EdgeFormat,
    EdgeList,
    EdgeListParseError,
    detect_edge_format,
    parse_edge_list,
    parse_explicit_model,
    parse_groups,
    parse_node_set,
)
from .traversal import bfs_distances, build_layered_graph, reverse_bfs_distances

__all__ = [
    'EdgeFormat',
    'EdgeList',
    'EdgeListParseError',
    'detect_edge_format',
    'parse_edge_list',
    'parse_explicit_model',
    'parse_groups',
    'parse_node_set',
    'bfs_distances',
    'build_layered_graph',
    'reverse_bfs_distances',
]
