"""Edge-list, explicit-model and group-file ingestion."""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import networkx as nx

from ..models.graph import DirectedGraph
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)

TextInput = Union[str, bytes]


class EdgeListParseError(ValidationError):
    """Malformed edge-list content."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


class EdgeFormat(Enum):
    """Edge-list flavours."""
    UNWEIGHTED = "unweighted"
    IC_WEIGHTED = "ic-weighted"
    LT_WEIGHTED = "lt-weighted"

    @property
    def weighted(self) -> bool:
        return self is not EdgeFormat.UNWEIGHTED


@dataclass(frozen=True)
class EdgeList:
    """Parsed graph plus the optional per-edge weight map."""

    graph: DirectedGraph
    weights: Optional[Dict[Tuple[int, int], float]] = None
    format: EdgeFormat = EdgeFormat.UNWEIGHTED


def _is_node_id(token: str) -> bool:
    return token.isascii() and token.isdigit()


def _decode(text: TextInput) -> str:
    if isinstance(text, bytes):
        return text.decode('utf-8')
    return text


def _data_lines(text: str):
    """Yield (line_number, tokens) for non-blank, non-comment lines."""
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield line_number, line.split()


def detect_edge_format(text: TextInput, weighted_format: EdgeFormat) -> EdgeFormat:
    """
    Guess whether an edge list carries weights from its first data line.

    Args:
        text: Edge-list content
        weighted_format: Format to report when a third column is present

    Returns:
        EdgeFormat.UNWEIGHTED or weighted_format
    """
    for _, tokens in _data_lines(_decode(text)):
        return weighted_format if len(tokens) >= 3 else EdgeFormat.UNWEIGHTED
    return EdgeFormat.UNWEIGHTED


def parse_edge_list(
    text: TextInput,
    format: EdgeFormat = EdgeFormat.UNWEIGHTED,
    remap: bool = False
) -> EdgeList:
    """
    Parse a whitespace-separated edge list.

    Lines are `u v` or `u v w`; `#` starts a comment.

    Args:
        text: Edge-list content (str or raw bytes)
        format: Expected flavour; weighted flavours require a third column
        remap: Remap arbitrary node labels to dense ids in order of first
            appearance (the label table is kept on the graph)

    Returns:
        EdgeList with graph and weights

    Raises:
        EdgeListParseError: Malformed line, weight outside [0,1],
            duplicate edge or self-loop
    """
    expected_columns = 3 if format.weighted else 2
    G = nx.DiGraph()

    def node_id(token: str, line_number: int) -> Union[str, int]:
        if remap:
            return token
        if not _is_node_id(token):
            raise EdgeListParseError(
                f"node id '{token}' is not a non-negative integer", line_number
            )
        return int(token)

    for line_number, tokens in _data_lines(_decode(text)):
        if len(tokens) != expected_columns:
            raise EdgeListParseError(
                f"expected {expected_columns} columns for {format.value}, got {len(tokens)}",
                line_number
            )
        u = node_id(tokens[0], line_number)
        v = node_id(tokens[1], line_number)
        if u == v:
            raise EdgeListParseError(f"self-loop on node {tokens[0]}", line_number)
        if G.has_edge(u, v):
            raise EdgeListParseError(f"duplicate edge ({tokens[0]},{tokens[1]})", line_number)

        attrs = {}
        if format.weighted:
            try:
                w = float(tokens[2])
            except ValueError:
                raise EdgeListParseError(f"weight '{tokens[2]}' is not a number", line_number)
            if not 0.0 <= w <= 1.0:
                raise EdgeListParseError(f"weight {w} outside [0,1]", line_number)
            attrs['weight'] = w
        G.add_edge(u, v, **attrs)

    labels = None
    if remap:
        # Dense ids in order of first appearance
        labels = [str(node) for node in G.nodes]
        G = nx.convert_node_labels_to_integers(G, ordering='default')
    else:
        G.add_nodes_from(range(max(G.nodes, default=-1) + 1))

    graph = DirectedGraph.from_networkx(G, labels=labels)
    logger.debug(f"Parsed edge list: n={graph.n}, m={graph.m}, format={format.value}")

    return EdgeList(
        graph=graph,
        weights={(u, v): w for u, v, w in G.edges(data='weight')} if format.weighted else None,
        format=format
    )


_EXPLICIT_LINE = re.compile(r'^(?P<node>[^:\s]+)\s*:\s*(?P<body>.*)$')
_EXPLICIT_ENTRY = re.compile(r'\{(?P<members>[^}]*)\}\s+(?P<prob>\S+)')


def _resolver(graph: DirectedGraph):
    """Token -> dense id, honouring the graph's label table."""
    table = {label: idx for idx, label in enumerate(graph.labels)} if graph.labels else None

    def resolve(token: str, line_number: int) -> int:
        token = token.strip()
        if table is not None:
            if token not in table:
                raise EdgeListParseError(f"unknown node label '{token}'", line_number)
            return table[token]
        if not _is_node_id(token) or int(token) >= graph.n:
            raise EdgeListParseError(f"invalid node id '{token}'", line_number)
        return int(token)

    return resolve


def parse_explicit_model(
    text: TextInput,
    graph: DirectedGraph
) -> Dict[int, List[Tuple[FrozenSet[int], float]]]:
    """
    Parse explicit triggering-set distributions.

    Each line is `v : {a,b} p {a} p {} p` listing subsets of N-(v) with
    their probabilities. Nodes without a line keep the empty triggering set.

    Args:
        text: File content
        graph: Graph the distributions refer to

    Returns:
        Mapping node -> list of (subset, probability)

    Raises:
        EdgeListParseError: On malformed lines or repeated nodes
    """
    resolve = _resolver(graph)
    distributions: Dict[int, List[Tuple[FrozenSet[int], float]]] = {}

    for line_number, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = _EXPLICIT_LINE.match(line)
        if not match:
            raise EdgeListParseError("expected 'v : {subset} p ...'", line_number)
        node = resolve(match.group('node'), line_number)
        if node in distributions:
            raise EdgeListParseError(f"node {match.group('node')} listed twice", line_number)

        body = match.group('body')
        entries = []
        consumed = 0
        for entry in _EXPLICIT_ENTRY.finditer(body):
            if body[consumed:entry.start()].strip():
                raise EdgeListParseError(f"unexpected text '{body[consumed:entry.start()].strip()}'", line_number)
            consumed = entry.end()
            members = frozenset(
                resolve(tok, line_number)
                for tok in entry.group('members').split(',') if tok.strip()
            )
            try:
                prob = float(entry.group('prob'))
            except ValueError:
                raise EdgeListParseError(f"probability '{entry.group('prob')}' is not a number", line_number)
            entries.append((members, prob))
        if body[consumed:].strip() or not entries:
            raise EdgeListParseError("malformed distribution", line_number)
        distributions[node] = entries

    return distributions


def parse_groups(text: TextInput, graph: DirectedGraph) -> List[Tuple[int, ...]]:
    """
    Parse a groups file: one group per line, comma-separated node ids.

    Returns:
        Groups as sorted, de-duplicated node tuples in file order
    """
    resolve = _resolver(graph)
    groups: List[Tuple[int, ...]] = []
    for line_number, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        members = sorted({resolve(tok, line_number) for tok in line.split(',') if tok.strip()})
        if not members:
            raise EdgeListParseError("empty group", line_number)
        groups.append(tuple(members))
    if not groups:
        raise ValidationError("Groups file lists no groups")
    return groups


def parse_node_set(text: str, graph: DirectedGraph) -> FrozenSet[int]:
    """Parse a comma-separated node list given on the command line."""
    resolve = _resolver(graph)
    nodes = frozenset(resolve(tok, 1) for tok in text.split(',') if tok.strip())
    if not nodes:
        raise ValidationError("Node set is empty")
    return nodes
