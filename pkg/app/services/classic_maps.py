"""
Paradigmatic tree mappings and constant fixtures

Jordan-Wigner and Parity are Z- and X-labelled chains, Bravyi-Kitaev is a
binary tree of X/Z links under an X-only root and JKMN is the breadth-filled
complete ternary tree.
"""

from collections import deque
from typing import Dict, List, Sequence, Tuple, Union
import logging

from app.core.exceptions import InvalidParameterError
from app.models.mapping import FixtureKind, MappingKind
from app.services.pauli import PauliString
from app.services.topology import HardwareGraph
from app.services.tree import LABELS, MajoranaMapping, QubitTree

logger = logging.getLogger(__name__)


def _chain(n: int, label: str) -> QubitTree:
    return QubitTree.from_links(n, 0, [(k - 1, k, label) for k in range(1, n)])


def _breadth_filled(n: int, root_labels: Sequence[str], child_labels: Sequence[str]) -> QubitTree:
    """Attach qubits 1..n-1 to the free link slots in breadth-first order"""
    slots = deque((0, label) for label in root_labels)
    links = []
    for child in range(1, n):
        up, label = slots.popleft()
        links.append((up, child, label))
        slots.extend((child, next_label) for next_label in child_labels)
    return QubitTree.from_links(n, 0, links)


def classic_tree(kind: MappingKind, n: int) -> QubitTree:
    """
    Tree generating one of the paradigmatic mappings

    Args:
        kind: Which mapping to build
        n: Number of qubits (= modes)

    Returns:
        QubitTree: JW/Parity chains, the binary BK tree or the ternary JKMN tree

    Raises:
        InvalidParameterError: If n < 1
    """
    if n < 1:
        raise InvalidParameterError(f"A tree needs at least one qubit, got n={n}")
    kind = MappingKind(kind)
    logger.debug(f"Building {kind.value} tree with {n} qubits")
    if kind is MappingKind.JORDAN_WIGNER:
        return _chain(n, "Z")
    if kind is MappingKind.PARITY:
        return _chain(n, "X")
    if kind is MappingKind.BRAVYI_KITAEV:
        return _breadth_filled(n, ("X",), ("X", "Z"))
    return _breadth_filled(n, LABELS, LABELS)


def inorder_qubits(t: QubitTree) -> List[int]:
    """Qubits visited X-subtree first, then Y-subtree, then the qubit, then its Z-subtree"""
    ordered: List[int] = []

    def visit(u: int) -> None:
        for label in ("X", "Y"):
            if label in t.children[u]:
                visit(t.children[u][label])
        ordered.append(u)
        if "Z" in t.children[u]:
            visit(t.children[u]["Z"])

    visit(t.root)
    return ordered


def _fenwick_parent(k: int) -> int:
    return k | (k + 1)


def reference_bravyi_kitaev(n: int) -> MajoranaMapping:
    """
    Bravyi-Kitaev mapping from Fenwick-tree update, parity and remainder sets

    Qubit k stores the parity of modes (k & (k+1)) .. k. The even Majorana
    of mode j is X_U(j) X_j Z_P(j) and the odd one X_U(j) Y_j Z_R(j).
    """
    if n < 1:
        raise InvalidParameterError(f"Bravyi-Kitaev needs n >= 1, got {n}")
    even: List[PauliString] = []
    odd: List[PauliString] = []
    for j in range(n):
        update = set()
        k = _fenwick_parent(j)
        while k < n:
            update.add(k)
            k = _fenwick_parent(k)
        parity = set()
        k = j - 1
        while k >= 0:
            parity.add(k)
            k = (k & (k + 1)) - 1
        flip = {k for k in range(j) if _fenwick_parent(k) == j}
        remainder = parity - flip

        factors_even: Dict[int, str] = {k: "X" for k in update}
        factors_odd: Dict[int, str] = dict(factors_even)
        factors_even.update({k: "Z" for k in parity})
        factors_odd.update({k: "Z" for k in remainder})
        factors_even[j] = "X"
        factors_odd[j] = "Y"
        even.append(PauliString.from_factors(n, factors_even))
        odd.append(PauliString.from_factors(n, factors_odd))
    return MajoranaMapping(n, n, tuple(even), tuple(odd), tuple(range(n)))


# Eleven-qubit example tree. Only S_0 = X0 Z1 and S_1 = Y0 Z2 Z8 Z10 are
# pinned down; the placement of qubits 3-7 and 9 is one consistent completion.
ELEVEN_QUBIT_LINKS: List[Tuple[int, int, str]] = [
    (0, 1, "X"), (0, 2, "Y"), (0, 3, "Z"),
    (1, 4, "X"), (1, 5, "Y"),
    (2, 6, "X"), (2, 8, "Z"),
    (3, 7, "X"),
    (8, 9, "X"), (8, 10, "Z"),
]

# 37-qubit heavy-hexagon spanning tree, labelled homogeneously. The all-Z
# branch is 0-3-6-12-18-30-33-36.
HEAVY_HEX_37_LINKS: List[Tuple[int, int, str]] = [
    (0, 1, "X"), (0, 2, "Y"), (0, 3, "Z"),
    (1, 4, "X"), (2, 5, "X"), (3, 6, "Z"),
    (4, 7, "X"), (4, 8, "Y"), (5, 9, "X"), (5, 10, "Y"), (6, 11, "X"), (6, 12, "Z"),
    (7, 13, "X"), (8, 14, "X"), (9, 15, "X"), (10, 16, "X"), (11, 17, "X"), (12, 18, "Z"),
    (13, 19, "X"), (13, 20, "Y"), (14, 21, "X"), (14, 22, "Y"),
    (15, 23, "X"), (15, 24, "Y"), (16, 25, "X"), (16, 26, "Y"),
    (17, 27, "X"), (17, 28, "Y"), (18, 29, "X"), (18, 30, "Z"),
    (22, 31, "X"), (26, 32, "X"), (30, 33, "Z"),
    (31, 34, "X"), (32, 35, "X"), (33, 36, "Z"),
]

# Couplings of the 37-qubit device that close its three hexagons
HEAVY_HEX_37_CLOSING_EDGES: List[Tuple[int, int]] = [(24, 31), (28, 32), (20, 33)]

EXOTIC_3NTO_STRINGS = [
    "X1 X2 X3", "Y1 Y2 Y3",
    "X0 Z1 Y2 Y3", "Y0 Z1 X2 X3",
    "Y0 Y1 X3", "X0 X1 Y3",
    "X0 X1 X2 Z3", "Y0 Y1 Y2 Z3",
]

# The last pair is printed as Z1 X2, Z1 Y2 in the source table, which
# commutes with X0 Z1; X1 Z2, Y1 Z2 is the completion satisfying A-C.
EXOTIC_1NTO_NON_TREE_STRINGS = [
    "X0 Z1", "Y0 Z1",
    "Z0 X2", "Z0 Y2",
    "X1 Z2", "Y1 Z2",
]


def heavy_hex_37_tree() -> QubitTree:
    return QubitTree.from_links(37, 0, HEAVY_HEX_37_LINKS)


def heavy_hex_37_graph() -> HardwareGraph:
    edges = [(up, down) for up, down, _ in HEAVY_HEX_37_LINKS] + HEAVY_HEX_37_CLOSING_EDGES
    return HardwareGraph(37, edges)


def _mapping_from_text(n_qubits: int, strings: Sequence[str]) -> MajoranaMapping:
    return MajoranaMapping.from_strings(n_qubits, [PauliString.parse(s, n_qubits) for s in strings])


def fixture(kind: FixtureKind) -> Union[QubitTree, MajoranaMapping, HardwareGraph]:
    """
    Constant trees, mappings and graphs shipped with the toolkit

    Args:
        kind: Fixture name

    Returns:
        QubitTree for tree fixtures, MajoranaMapping (without source tree)
        for the exotic mappings, HardwareGraph for the device graph
    """
    kind = FixtureKind(kind)
    if kind is FixtureKind.ELEVEN_QUBIT_TREE:
        return QubitTree.from_links(11, 0, ELEVEN_QUBIT_LINKS)
    if kind is FixtureKind.HEAVY_HEX_37_TREE:
        return heavy_hex_37_tree()
    if kind is FixtureKind.HEAVY_HEX_37_GRAPH:
        return heavy_hex_37_graph()
    if kind is FixtureKind.EXOTIC_3NTO:
        return _mapping_from_text(4, EXOTIC_3NTO_STRINGS)
    return _mapping_from_text(3, EXOTIC_1NTO_NON_TREE_STRINGS)
