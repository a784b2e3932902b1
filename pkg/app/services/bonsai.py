"""
Hardware-tailored ternary trees

grow_tree builds a degree-constrained spanning tree of the device graph by
layered greedy growth from a root, label_tree assigns X/Y/Z labels so the
all-Z branch is as long as possible, and bonsai pairs the result into a
fermion-to-qubit mapping.
"""

from dataclasses import replace
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidParameterError, InvalidTreeError
from app.models.mapping import GrowthConfig, Labelling, RootPolicy
from app.services.topology import HardwareGraph, graph_metrics
from app.services.tree import LABELS, MajoranaMapping, QubitTree, pair_modes

logger = logging.getLogger(__name__)

MAX_CHILDREN = 3


def _pick(candidates: Sequence[int], count: int, rng: Optional[np.random.Generator]) -> List[int]:
    """count candidates, chosen by rng when given and by lowest index otherwise"""
    ordered = sorted(candidates)
    if len(ordered) <= count:
        return ordered
    if rng is None:
        return ordered[:count]
    return sorted(int(c) for c in rng.choice(ordered, size=count, replace=False))


def choose_root(g: HardwareGraph, cfg: GrowthConfig) -> int:
    """Explicit root, else a graph center or an end of a diameter"""
    if cfg.root is not None:
        if cfg.root >= g.n_qubits:
            raise InvalidParameterError(f"Root {cfg.root} outside 0..{g.n_qubits - 1}")
        return cfg.root
    metrics = graph_metrics(g)
    if RootPolicy(cfg.root_policy) is RootPolicy.DIAMETER_END:
        return metrics.diameter_path[0]
    return metrics.center[0]


def _effective_seed(cfg: GrowthConfig) -> Optional[int]:
    return cfg.seed if cfg.seed is not None else settings.BONSAI_SEED


def grow_tree(g: HardwareGraph, cfg: Optional[GrowthConfig] = None) -> Tuple[QubitTree, List[Tuple[int, int]]]:
    """
    Layered greedy spanning tree with at most three children per qubit

    Every qubit of the current layer adopts up to three unassigned
    neighbours. Qubits left over once the layers run out are attached to the
    closest tree qubit that still has fewer than three children; such
    attachments are virtual edges when the two qubits are not coupled.

    Args:
        g: Connected device graph
        cfg: Root and seed settings; labelling is not used here

    Returns:
        Tuple[QubitTree, List[Tuple[int, int]]]: The tree with provisional
        labels (X, Y, Z in adoption order) and its virtual (parent, child) edges
    """
    cfg = cfg or GrowthConfig()
    seed = _effective_seed(cfg)
    rng = np.random.default_rng(seed) if seed is not None else None
    root = choose_root(g, cfg)
    n = g.n_qubits

    parent: List[Optional[int]] = [None] * n
    children: List[List[int]] = [[] for _ in range(n)]
    in_tree = [False] * n
    in_tree[root] = True

    layer = [root]
    while layer:
        next_layer = []
        for v in layer:
            free = [w for w in g.neighbours(v) if not in_tree[w]]
            for w in _pick(free, MAX_CHILDREN, rng):
                in_tree[w] = True
                parent[w] = v
                children[v].append(w)
                next_layer.append(w)
        layer = next_layer
    logger.debug(f"Layered growth from root {root} covered {sum(in_tree)}/{n} qubits")

    virtual_edges: List[Tuple[int, int]] = []
    distances = g.distances
    for u in range(n):
        if in_tree[u]:
            continue
        available = [v for v in range(n) if in_tree[v] and len(children[v]) < MAX_CHILDREN]
        nearest = min(int(distances[u, v]) for v in available)
        closest = [v for v in available if distances[u, v] == nearest]
        v = _pick(closest, 1, rng)[0]
        in_tree[u] = True
        parent[u] = v
        children[v].append(u)
        if not g.has_edge(u, v):
            virtual_edges.append((v, u))

    links = [(v, w, LABELS[k]) for v in range(n) for k, w in enumerate(children[v])]
    tree = QubitTree.from_links(n, root, links)
    logger.info(
        f"Grew spanning tree on {n} qubits from root {root}: height {tree.height}, "
        f"{len(virtual_edges)} virtual edges"
    )
    return tree, virtual_edges


def _structure(t: QubitTree) -> Tuple[List[List[int]], List[int]]:
    """Child lists and breadth-first order read from the parent array alone"""
    n = t.n_qubits
    children: List[List[int]] = [[] for _ in range(n)]
    for u, up in enumerate(t.parent):
        if up is not None and u != t.root:
            if not 0 <= up < n:
                raise InvalidTreeError(f"Qubit {u} has invalid parent {up}", [u])
            children[up].append(u)
    order = [t.root]
    for u in order:
        order.extend(sorted(children[u]))
    bad = [u for u in range(n) if len(children[u]) > MAX_CHILDREN]
    if len(order) != n or bad:
        raise InvalidTreeError("Parent structure is not a ternary tree rooted at the given root", bad)
    return [sorted(c) for c in children], order


def label_tree(t: QubitTree, strategy: Labelling = Labelling.HOMOGENEOUS) -> QubitTree:
    """
    Relabel the links of a tree, ignoring any labels it already carries

    The root path to the deepest qubit (largest index among equally deep
    ones) is labelled all-Z. Homogeneous labelling then gives every other
    child X, Y, Z in ascending index. Heterogeneous labelling gives a free Z
    to the child with the tallest subtree first and X, Y to the rest.

    Returns:
        QubitTree: Same parent structure with new labels
    """
    strategy = Labelling(strategy)
    children, order = _structure(t)
    n = t.n_qubits

    depth = [0] * n
    for u in order[1:]:
        depth[u] = depth[t.parent[u]] + 1
    heights = [0] * n
    for u in reversed(order[1:]):
        heights[t.parent[u]] = max(heights[t.parent[u]], heights[u] + 1)

    deepest = max(range(n), key=lambda u: (depth[u], u))
    label: List[Optional[str]] = [None] * n
    u = deepest
    while u != t.root:
        label[u] = "Z"
        u = t.parent[u]

    for v in order:
        taken = {label[w] for w in children[v] if label[w] is not None}
        pending = [w for w in children[v] if label[w] is None]
        if strategy is Labelling.HETEROGENEOUS and pending and "Z" not in taken:
            tallest = max(pending, key=lambda w: (heights[w], w))
            label[tallest] = "Z"
            taken.add("Z")
            pending.remove(tallest)
        free = [x for x in LABELS if x not in taken]
        for w, link_label in zip(pending, free):
            label[w] = link_label

    labelled = QubitTree(n, t.root, t.parent, tuple(label))
    logger.debug(f"Labelled {n}-qubit tree ({strategy.value}); all-Z branch ends at qubit {deepest}")
    return labelled


def bonsai(g: HardwareGraph, cfg: Optional[GrowthConfig] = None) -> MajoranaMapping:
    """
    Grow, label and pair a tree tailored to a device graph

    Args:
        g: Connected device graph
        cfg: Growth configuration; the seed falls back to settings.BONSAI_SEED

    Returns:
        MajoranaMapping: Mapping with mode j on qubit j, carrying its source
        tree and the virtual edges the growth needed
    """
    cfg = cfg or GrowthConfig()
    tree, virtual_edges = grow_tree(g, cfg)
    labelled = label_tree(tree, cfg.labelling)
    mapping = pair_modes(labelled, real=cfg.real_pairing)
    logger.info(f"Bonsai mapping on {g.n_qubits} qubits built ({Labelling(cfg.labelling).value} labelling)")
    return replace(mapping, virtual_edges=tuple(virtual_edges))
