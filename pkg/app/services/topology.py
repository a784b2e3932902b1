"""
Device connectivity graphs and Steiner-tree routing costs

Graphs are immutable once built. All-pairs distances are computed lazily
on first use behind a lock and only read afterwards.
"""

from itertools import combinations, product as cartesian
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging
import threading

import networkx as nx
import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    DimensionError,
    DisconnectedGraphError,
    EmptySupportError,
    InvalidParameterError,
    RepeatedModeError,
)
from app.models.topology import GraphMetrics, SteinerEntry, SwapCost, TopologyKind
from app.services.pauli import product
from app.services.tree import MajoranaMapping, check_mode

logger = logging.getLogger(__name__)

Coordinate = Tuple[int, int]


class HardwareGraph:
    """Undirected, simple, connected qubit coupling graph"""

    def __init__(
        self,
        n_qubits: int,
        edges: Iterable[Sequence[int]],
        coordinates: Optional[List[Coordinate]] = None,
    ):
        if n_qubits < 1:
            raise InvalidParameterError(f"A graph needs at least one qubit, got {n_qubits}")
        normalised = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise InvalidParameterError(f"Self-loop on qubit {u}")
            if not (0 <= u < n_qubits and 0 <= v < n_qubits):
                raise InvalidParameterError(f"Edge ({u}, {v}) outside 0..{n_qubits - 1}")
            normalised.add((min(u, v), max(u, v)))

        self.n_qubits = n_qubits
        self.edges: Tuple[Tuple[int, int], ...] = tuple(sorted(normalised))
        self.coordinates = coordinates

        graph = nx.Graph()
        graph.add_nodes_from(range(n_qubits))
        graph.add_edges_from(self.edges)
        if not nx.is_connected(graph):
            raise DisconnectedGraphError(
                f"Graph with {n_qubits} qubits has {nx.number_connected_components(graph)} components"
            )
        self.graph = nx.freeze(graph)

        self._lock = threading.Lock()
        self._distances: Optional[np.ndarray] = None

    @property
    def distances(self) -> np.ndarray:
        """All-pairs hop distances as an integer matrix"""
        if self._distances is None:
            with self._lock:
                if self._distances is None:
                    matrix = np.zeros((self.n_qubits, self.n_qubits), dtype=np.int64)
                    for source, lengths in nx.all_pairs_shortest_path_length(self.graph):
                        for target, length in lengths.items():
                            matrix[source, target] = length
                    matrix.setflags(write=False)
                    self._distances = matrix
        return self._distances

    def neighbours(self, qubit: int) -> List[int]:
        return sorted(self.graph.neighbors(qubit))

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def shortest_path(self, u: int, v: int) -> List[int]:
        return nx.shortest_path(self.graph, u, v)

    def is_connected_subset(self, nodes: Iterable[int]) -> bool:
        nodes = list(nodes)
        return len(nodes) > 0 and nx.is_connected(self.graph.subgraph(nodes))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HardwareGraph)
            and self.n_qubits == other.n_qubits
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n_qubits, self.edges))

    def __repr__(self) -> str:
        return f"HardwareGraph(n_qubits={self.n_qubits}, edges={len(self.edges)})"


def _require(value: Optional[int], name: str, minimum: int = 1) -> int:
    if value is None or value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


def linear(n: int) -> HardwareGraph:
    _require(n, "n")
    return HardwareGraph(n, [(k, k + 1) for k in range(n - 1)])


def star(n: int) -> HardwareGraph:
    """Hub qubit 0 joined to spokes 1..n-1"""
    _require(n, "n")
    return HardwareGraph(n, [(0, k) for k in range(1, n)])


def grid(rows: int, cols: int) -> HardwareGraph:
    _require(rows, "rows")
    _require(cols, "cols")
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((i * cols + j, i * cols + j + 1))
            if i + 1 < rows:
                edges.append((i * cols + j, (i + 1) * cols + j))
    coordinates = [(i, j) for i in range(rows) for j in range(cols)]
    return HardwareGraph(rows * cols, edges, coordinates)


def complete(n: int) -> HardwareGraph:
    _require(n, "n")
    return HardwareGraph(n, list(combinations(range(n), 2)))


# Honeycomb in brick-wall coordinates: vertex (i, j) couples to (i, j +- 1)
# and vertically to (i + 1, j) when i + j is odd, (i - 1, j) otherwise. The
# hexagon H(i, j), i + j odd, spans rows i, i + 1 and columns j .. j + 2.

def _hexagon_edges(cell: Coordinate) -> List[Tuple[Coordinate, Coordinate]]:
    i, j = cell
    return [
        ((i, j), (i, j + 1)), ((i, j + 1), (i, j + 2)),
        ((i + 1, j), (i + 1, j + 1)), ((i + 1, j + 1), (i + 1, j + 2)),
        ((i, j), (i + 1, j)), ((i, j + 2), (i + 1, j + 2)),
    ]


def _hexagon_neighbours(cell: Coordinate) -> List[Coordinate]:
    i, j = cell
    return [(i, j - 2), (i, j + 2), (i - 1, j - 1), (i - 1, j + 1), (i + 1, j - 1), (i + 1, j + 1)]


def _honeycomb_neighbours(vertex: Coordinate) -> List[Coordinate]:
    i, j = vertex
    vertical = (i + 1, j) if (i + j) % 2 else (i - 1, j)
    return [(i, j - 1), (i, j + 1), vertical]


def heavy_hexagon(d: int) -> HardwareGraph:
    """
    Heavy-hexagon patch grown around a central hexagon vertex

    The patch holds the three hexagons sharing the central vertex plus d
    rings of neighbouring hexagons. Every coupling is subdivided by a bridge
    qubit and every hexagon vertex left with two couplings gets one pendant
    qubit. d = 0 gives the 37-qubit device.

    Args:
        d: Number of hexagon rings around the central three (d >= 0)

    Returns:
        HardwareGraph: Qubits numbered breadth-first from the central vertex
    """
    _require(d, "d", minimum=0)
    cells = {(0, 1), (0, -1), (-1, 0)}
    frontier = set(cells)
    for _ in range(d):
        frontier = {n for cell in frontier for n in _hexagon_neighbours(cell)} - cells
        cells |= frontier

    couplings = set()
    for cell in cells:
        for a, b in _hexagon_edges(cell):
            couplings.add((min(a, b), max(a, b)))

    # Positions on a doubled lattice: vertices at even coordinates, bridge
    # and pendant qubits at coupling midpoints
    edges: List[Tuple[Coordinate, Coordinate]] = []
    degree: Dict[Coordinate, int] = {}
    for a, b in couplings:
        va, vb = (2 * a[0], 2 * a[1]), (2 * b[0], 2 * b[1])
        bridge = (a[0] + b[0], a[1] + b[1])
        edges.extend([(va, bridge), (bridge, vb)])
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    for vertex, count in degree.items():
        if count == 2:
            missing = [
                w for w in _honeycomb_neighbours(vertex)
                if (min(vertex, w), max(vertex, w)) not in couplings
            ][0]
            pendant = (vertex[0] + missing[0], vertex[1] + missing[1])
            edges.append(((2 * vertex[0], 2 * vertex[1]), pendant))

    layout = nx.Graph()
    layout.add_edges_from(edges)
    centre = (0, 2)
    order = [centre]
    seen = {centre}
    for position in order:
        for neighbour in sorted(layout.neighbors(position)):
            if neighbour not in seen:
                seen.add(neighbour)
                order.append(neighbour)
    index = {position: k for k, position in enumerate(order)}
    logger.debug(f"heavy_hexagon(d={d}): {len(cells)} hexagons, {len(order)} qubits")
    return HardwareGraph(
        len(order),
        [(index[a], index[b]) for a, b in edges],
        coordinates=order,
    )


def generate(
    kind: TopologyKind,
    size: Optional[int] = None,
    rows: Optional[int] = None,
    cols: Optional[int] = None,
) -> HardwareGraph:
    """
    Build a device graph of the given family

    Args:
        kind: heavy_hexagon (size = d), linear, star, complete (size = n) or grid
        size: Family size parameter
        rows: Grid rows
        cols: Grid columns

    Raises:
        InvalidParameterError: On missing or out-of-range parameters
    """
    kind = TopologyKind(kind)
    if kind is TopologyKind.HEAVY_HEXAGON:
        return heavy_hexagon(0 if size is None else size)
    if kind is TopologyKind.LINEAR:
        return linear(size)
    if kind is TopologyKind.STAR:
        return star(size)
    if kind is TopologyKind.COMPLETE:
        return complete(size)
    return grid(rows, cols)


def graph_metrics(g: HardwareGraph) -> GraphMetrics:
    """
    Distances, eccentricities, center and one diameter path

    The diameter path joins the lexicographically smallest pair of qubits at
    maximal distance.
    """
    distances = g.distances
    eccentricity = distances.max(axis=1)
    radius = int(eccentricity.min())
    diameter = int(eccentricity.max())
    center = [int(u) for u in np.flatnonzero(eccentricity == radius)]
    pairs = np.argwhere(np.triu(distances == diameter))
    if diameter == 0:
        path = [0]
    else:
        u, v = (int(x) for x in pairs[0])
        path = g.shortest_path(u, v)
    return GraphMetrics(
        n=g.n_qubits,
        eccentricity=[int(e) for e in eccentricity],
        center=center,
        diameter=diameter,
        diameter_path=path,
        distances=distances.tolist(),
    )


def _dreyfus_wagner(g: HardwareGraph, terminals: List[int]) -> FrozenSet[int]:
    """
    Exact minimum Steiner tree node set for unit edge weights

    dp[S][v] is the size in edges of the smallest tree spanning the terminal
    subset S together with v.
    """
    distances = g.distances
    n = g.n_qubits
    root, rest = terminals[-1], terminals[:-1]
    m = len(rest)
    full = (1 << m) - 1
    infinity = np.iinfo(np.int64).max // 4

    dp = np.full((full + 1, n), infinity, dtype=np.int64)
    via = np.zeros((full + 1, n), dtype=np.int64)
    split = np.zeros((full + 1, n), dtype=np.int64)
    for i, terminal in enumerate(rest):
        dp[1 << i] = distances[terminal]

    for subset in range(1, full + 1):
        if subset & (subset - 1) == 0:
            continue
        lowest = subset & -subset
        best = np.full(n, infinity, dtype=np.int64)
        best_part = np.zeros(n, dtype=np.int64)
        part = (subset - 1) & subset
        while part:
            if part & lowest:
                candidate = dp[part] + dp[subset ^ part]
                better = candidate < best
                best = np.where(better, candidate, best)
                best_part = np.where(better, part, best_part)
            part = (part - 1) & subset
        joined = best[:, None] + distances
        hub = np.argmin(joined, axis=0)
        dp[subset] = joined[hub, np.arange(n)]
        via[subset] = hub
        split[subset] = best_part

    nodes = set()
    stack = [(full, root)]
    while stack:
        subset, v = stack.pop()
        if subset & (subset - 1) == 0:
            nodes.update(g.shortest_path(rest[subset.bit_length() - 1], v))
            continue
        hub = int(via[subset, v])
        nodes.update(g.shortest_path(hub, v))
        part = int(split[subset, hub])
        stack.extend([(part, hub), (subset ^ part, hub)])
    return frozenset(nodes)


def _metric_closure_tree(g: HardwareGraph, terminals: List[int]) -> FrozenSet[int]:
    """2-approximation: spanning tree of the terminal metric closure, expanded and pruned"""
    distances = g.distances
    closure = nx.Graph()
    for u, v in combinations(terminals, 2):
        closure.add_edge(u, v, weight=int(distances[u, v]))
    spanning = nx.minimum_spanning_tree(closure, weight="weight")

    expanded = nx.Graph()
    for u, v in sorted(tuple(sorted(edge)) for edge in spanning.edges()):
        nx.add_path(expanded, g.shortest_path(u, v))
    tree = nx.minimum_spanning_tree(expanded)

    terminal_set = set(terminals)
    pruned = True
    while pruned:
        pruned = False
        for node in sorted(tree.nodes()):
            if node not in terminal_set and tree.degree(node) <= 1:
                tree.remove_node(node)
                pruned = True
    return frozenset(tree.nodes())


def steiner_cost(
    g: HardwareGraph,
    support: Iterable[int],
    exact_limit: Optional[int] = None,
) -> SteinerEntry:
    """
    Steiner tree connecting the support of an operator on the device

    Up to exact_limit terminals the tree is minimal (dynamic programming over
    terminal subsets); above it the metric-closure 2-approximation is used.
    The overhead counts the bridging qubits outside the support.

    Raises:
        EmptySupportError: If support is empty
    """
    terminals = sorted(set(support))
    if not terminals:
        raise EmptySupportError("Cannot connect an empty support")
    for u in terminals:
        if not 0 <= u < g.n_qubits:
            raise InvalidParameterError(f"Qubit {u} not in a {g.n_qubits}-qubit graph")
    limit = settings.STEINER_EXACT_LIMIT if exact_limit is None else exact_limit

    exact = True
    if g.is_connected_subset(terminals):
        nodes = frozenset(terminals)
    elif len(terminals) <= limit:
        nodes = _dreyfus_wagner(g, terminals)
    else:
        nodes = _metric_closure_tree(g, terminals)
        exact = False

    overhead = len(nodes) - len(terminals)
    return SteinerEntry(
        support=terminals,
        steiner_nodes=sorted(nodes),
        overhead=overhead,
        swaps=2 * overhead,
        exact=exact,
    )


def excitation_cost(
    m: MajoranaMapping,
    g: HardwareGraph,
    modes: Sequence[int],
    cache: Optional[Dict[FrozenSet[int], SteinerEntry]] = None,
) -> SwapCost:
    """
    Routing cost of a single (i, j) or double (i, j, k, l) excitation

    Every product choosing one Majorana per mode (4 or 16 of them) is
    reduced to a single Pauli string and its support is connected with a
    Steiner tree.

    Args:
        m: MajoranaMapping whose qubit count matches the graph
        g: Device graph
        modes: Two or four distinct mode indices
        cache: Optional support -> SteinerEntry memo shared across calls

    Raises:
        RepeatedModeError: If a mode index repeats
        DimensionError: If the graph and mapping sizes differ
    """
    modes = list(modes)
    if len(modes) not in (2, 4):
        raise InvalidParameterError(f"Excitations take 2 or 4 modes, got {len(modes)}")
    if len(set(modes)) != len(modes):
        raise RepeatedModeError(f"Repeated mode in excitation {modes}")
    for mode in modes:
        check_mode(m, mode)
    if g.n_qubits != m.n_qubits:
        raise DimensionError(f"Graph has {g.n_qubits} qubits, mapping uses {m.n_qubits}")

    memo = {} if cache is None else cache

    def cost(support: FrozenSet[int]) -> SteinerEntry:
        if support not in memo:
            memo[support] = steiner_cost(g, support)
        return memo[support]

    entries = []
    union = set()
    for choice in cartesian((0, 1), repeat=len(modes)):
        factors = [m.odd[j] if pick else m.even[j] for j, pick in zip(modes, choice)]
        support = product(factors).support
        union |= support
        entries.append(cost(support))

    return SwapCost(
        modes=modes,
        per_string=entries,
        total_overhead=sum(entry.overhead for entry in entries),
        union=cost(frozenset(union)),
    )
