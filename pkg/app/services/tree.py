"""
Labelled ternary trees over qubits and the mappings they generate

A tree assigns every non-root qubit a parent and the X/Y/Z label of the
link descending from that parent. Downward links without a child are legs;
every leg generates one Pauli string by following its root path, and the
pairing scheme groups those strings into the two Majorana images of each
fermionic mode.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from app.core.exceptions import (
    BijectionError,
    ForeignLegError,
    InvalidTreeError,
    MissingSourceTreeError,
    ModeRangeError,
)
from app.models.report import TreeValidationReport
from app.services.pauli import PauliString, multiply

logger = logging.getLogger(__name__)

LABELS = ("X", "Y", "Z")


@dataclass(frozen=True)
class Leg:
    """A labelled downward link of `owner` that has no child"""
    owner: int
    label: str


@dataclass(frozen=True)
class QubitTree:
    """
    Rooted labelled ternary tree over qubits 0..n_qubits-1

    parent[u] and label[u] describe the link entering u from above; both are
    None for the root.
    """
    n_qubits: int
    root: int
    parent: Tuple[Optional[int], ...]
    label: Tuple[Optional[str], ...]

    @classmethod
    def from_links(cls, n_qubits: int, root: int, links: Iterable[Tuple[int, int, str]]) -> "QubitTree":
        """
        Build a tree from (parent, child, label) triples

        Links naming a child twice keep the last occurrence; validate_tree
        reports any remaining structural problem.
        """
        parent: List[Optional[int]] = [None] * n_qubits
        label: List[Optional[str]] = [None] * n_qubits
        for up, down, link_label in links:
            if not 0 <= down < n_qubits:
                raise InvalidTreeError(f"Link child {down} outside 0..{n_qubits - 1}", [])
            parent[down] = up
            label[down] = link_label
        return cls(n_qubits, root, tuple(parent), tuple(label))

    @classmethod
    def single(cls) -> "QubitTree":
        return cls(1, 0, (None,), (None,))

    def links(self) -> List[Tuple[int, int, str]]:
        return [
            (self.parent[u], u, self.label[u])
            for u in range(self.n_qubits)
            if self.parent[u] is not None
        ]

    @cached_property
    def validation(self) -> TreeValidationReport:
        return validate_tree(self)

    @cached_property
    def children(self) -> Tuple[Dict[str, int], ...]:
        """Per qubit, the map from link label to child qubit"""
        require_valid(self)
        table: List[Dict[str, int]] = [{} for _ in range(self.n_qubits)]
        for up, down, link_label in self.links():
            table[up][link_label] = down
        return tuple(table)

    @cached_property
    def order(self) -> Tuple[int, ...]:
        """Qubits in breadth-first order from the root, children by label X<Y<Z"""
        ordered = [self.root]
        for u in ordered:
            for link_label in LABELS:
                child = self.children[u].get(link_label)
                if child is not None:
                    ordered.append(child)
        return tuple(ordered)

    @cached_property
    def depth(self) -> Tuple[int, ...]:
        depths = [0] * self.n_qubits
        for u in self.order[1:]:
            depths[u] = depths[self.parent[u]] + 1
        return tuple(depths)

    @cached_property
    def path_masks(self) -> Tuple[Tuple[int, int], ...]:
        """
        Per qubit u, the (x_mask, z_mask) of the links traversed from the
        root down to u, excluding any factor on u itself
        """
        masks = [(0, 0)] * self.n_qubits
        for u in self.order[1:]:
            up = self.parent[u]
            x_mask, z_mask = masks[up]
            bit = 1 << up
            if self.label[u] in ("X", "Y"):
                x_mask |= bit
            if self.label[u] in ("Z", "Y"):
                z_mask |= bit
            masks[u] = (x_mask, z_mask)
        return tuple(masks)

    @property
    def height(self) -> int:
        return max(self.depth)

    def path_to(self, qubit: int) -> List[int]:
        """Qubits from the root down to qubit, both included"""
        path = [qubit]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def subtree_heights(self) -> Tuple[int, ...]:
        heights = [0] * self.n_qubits
        for u in reversed(self.order[1:]):
            up = self.parent[u]
            heights[up] = max(heights[up], heights[u] + 1)
        return tuple(heights)


def validate_tree(t: QubitTree) -> TreeValidationReport:
    """
    Check connectivity, acyclicity, branching and label uniqueness

    Args:
        t: Tree to inspect

    Returns:
        TreeValidationReport: valid flag, messages and offending qubits
    """
    errors: List[str] = []
    offending = set()
    n = t.n_qubits

    if n < 1:
        return TreeValidationReport(valid=False, errors=["Tree has no qubits"], offending=[])
    if len(t.parent) != n or len(t.label) != n:
        return TreeValidationReport(
            valid=False,
            errors=[f"Parent/label arrays must both have length {n}"],
            offending=[],
        )
    if not 0 <= t.root < n:
        return TreeValidationReport(valid=False, errors=[f"Root {t.root} outside 0..{n - 1}"], offending=[])

    if t.parent[t.root] is not None:
        errors.append(f"Root {t.root} has a parent")
        offending.add(t.root)

    child_labels: Dict[int, List[str]] = {u: [] for u in range(n)}
    for u in range(n):
        if u == t.root:
            continue
        up = t.parent[u]
        if up is None:
            errors.append(f"Qubit {u} is disconnected (no parent)")
            offending.add(u)
            continue
        if not 0 <= up < n or up == u:
            errors.append(f"Qubit {u} has invalid parent {up}")
            offending.add(u)
            continue
        if t.label[u] not in LABELS:
            errors.append(f"Link {up}->{u} has invalid label {t.label[u]!r}")
            offending.add(u)
        child_labels[up].append(t.label[u])

    for u, labels in child_labels.items():
        if len(labels) > 3:
            errors.append(f"Qubit {u} has {len(labels)} children")
            offending.add(u)
        duplicates = sorted({x for x in labels if x is not None and labels.count(x) > 1})
        for duplicate in duplicates:
            errors.append(f"Qubit {u} has two {duplicate}-labelled children")
            offending.add(u)

    for u in range(n):
        if u in offending:
            continue
        seen = set()
        v = u
        while v is not None and v != t.root:
            if v in seen or not 0 <= v < n:
                errors.append(f"Qubit {u} does not reach the root (cycle)")
                offending.add(u)
                break
            seen.add(v)
            v = t.parent[v]
        else:
            if v is None:
                errors.append(f"Qubit {u} does not reach the root")
                offending.add(u)

    return TreeValidationReport(valid=not errors, errors=errors, offending=sorted(offending))


def require_valid(t: QubitTree) -> None:
    report = t.validation
    if not report.valid:
        raise InvalidTreeError("; ".join(report.errors), report.offending)


def enumerate_legs(t: QubitTree) -> List[Leg]:
    """All legs, ordered by owner qubit and then label X<Y<Z; always 2N+1 of them"""
    require_valid(t)
    return [
        Leg(u, link_label)
        for u in range(t.n_qubits)
        for link_label in LABELS
        if link_label not in t.children[u]
    ]


def leg_string(t: QubitTree, leg: Leg) -> PauliString:
    """
    Pauli string generated by following the root path of a leg

    Raises:
        ForeignLegError: If the leg does not exist in t
    """
    require_valid(t)
    if not 0 <= leg.owner < t.n_qubits or leg.label not in LABELS:
        raise ForeignLegError(f"Leg {leg} does not belong to a {t.n_qubits}-qubit tree")
    if leg.label in t.children[leg.owner]:
        raise ForeignLegError(f"Link {leg.label} of qubit {leg.owner} has a child; it is not a leg")
    x_mask, z_mask = t.path_masks[leg.owner]
    bit = 1 << leg.owner
    if leg.label in ("X", "Y"):
        x_mask |= bit
    if leg.label in ("Z", "Y"):
        z_mask |= bit
    return PauliString(t.n_qubits, x_mask, z_mask, 0)


def descend(t: QubitTree, qubit: int, first: str) -> Leg:
    """Follow the `first` link of qubit, then Z links, until a leg is reached"""
    link_label = first
    owner = qubit
    while link_label in t.children[owner]:
        owner = t.children[owner][link_label]
        link_label = "Z"
    return Leg(owner, link_label)


def all_strings(t: QubitTree) -> Tuple[List[PauliString], int]:
    """
    Strings of every leg in canonical leg order

    Returns:
        Tuple[List[PauliString], int]: The 2N+1 strings and the index of the
        one made only of Z factors
    """
    legs = enumerate_legs(t)
    strings = [leg_string(t, leg) for leg in legs]
    all_z = legs.index(descend(t, t.root, "Z"))
    return strings, all_z


def _check_bijection(assignment: Sequence[int], n: int, what: str) -> None:
    if len(assignment) != n or sorted(assignment) != list(range(n)):
        raise BijectionError(f"{what} must be a permutation of 0..{n - 1}, got {list(assignment)}")


@dataclass(frozen=True)
class MajoranaMapping:
    """
    Images of the 2N Majorana operators, paired into N modes

    Mode j has a_j = (even[j] + i odd[j]) / 2 and
    a_j^dagger = (even[j] - i odd[j]) / 2.
    """
    n_modes: int
    n_qubits: int
    even: Tuple[PauliString, ...]
    odd: Tuple[PauliString, ...]
    mode_to_qubit: Tuple[int, ...]
    source_tree: Optional[QubitTree] = None
    discarded: Optional[PauliString] = None
    virtual_edges: Tuple[Tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if len(self.even) != self.n_modes or len(self.odd) != self.n_modes:
            raise BijectionError(f"Expected {self.n_modes} even and odd strings")
        _check_bijection(self.mode_to_qubit, self.n_modes, "mode_to_qubit")

    @classmethod
    def from_strings(cls, n_qubits: int, strings: Sequence[PauliString]) -> "MajoranaMapping":
        """Pair consecutive strings (m_0, m_1), (m_2, m_3), ... into modes"""
        if len(strings) % 2:
            raise BijectionError(f"Odd number of Majorana strings: {len(strings)}")
        n_modes = len(strings) // 2
        return cls(
            n_modes=n_modes,
            n_qubits=n_qubits,
            even=tuple(strings[0::2]),
            odd=tuple(strings[1::2]),
            mode_to_qubit=tuple(range(n_modes)),
        )

    def majoranas(self) -> List[PauliString]:
        """Strings in the order e_0, o_0, e_1, o_1, ..."""
        strings = []
        for j in range(self.n_modes):
            strings.extend((self.even[j], self.odd[j]))
        return strings

    def qubit_of(self, mode: int) -> int:
        check_mode(self, mode)
        return self.mode_to_qubit[mode]

    def mode_of(self, qubit: int) -> int:
        return self.mode_to_qubit.index(qubit)


def check_mode(m: MajoranaMapping, mode: int) -> None:
    if not 0 <= mode < m.n_modes:
        raise ModeRangeError(f"Mode {mode} outside 0..{m.n_modes - 1}")


def pair_modes(
    t: QubitTree,
    qubit_to_mode: Optional[Sequence[int]] = None,
    real: bool = False,
) -> MajoranaMapping:
    """
    Pair the legs of a tree into fermionic modes

    Qubit u contributes the leg reached by its X link followed by Z links
    (even Majorana) and the one reached by its Y link followed by Z links
    (odd Majorana). The remaining all-Z leg of the root is discarded.

    Args:
        t: Valid labelled tree
        qubit_to_mode: Bijection f with mode f(u) living on qubit u; identity by default
        real: Make the even Majorana the string with an even number of Y
            factors, so that every a_j is a real matrix

    Returns:
        MajoranaMapping: The paired mapping with t as its source tree

    Raises:
        BijectionError: If qubit_to_mode is not a permutation
    """
    require_valid(t)
    n = t.n_qubits
    f = list(range(n)) if qubit_to_mode is None else list(qubit_to_mode)
    _check_bijection(f, n, "qubit_to_mode")

    even: List[Optional[PauliString]] = [None] * n
    odd: List[Optional[PauliString]] = [None] * n
    mode_to_qubit = [0] * n
    for u in range(n):
        s_x = leg_string(t, descend(t, u, "X"))
        s_y = leg_string(t, descend(t, u, "Y"))
        if real and s_x.y_count % 2:
            s_x, s_y = s_y, s_x
        even[f[u]] = s_x
        odd[f[u]] = s_y
        mode_to_qubit[f[u]] = u

    discarded = leg_string(t, descend(t, t.root, "Z"))
    logger.debug(f"Paired {n} modes (real={real}); discarded {discarded}")
    return MajoranaMapping(
        n_modes=n,
        n_qubits=n,
        even=tuple(even),
        odd=tuple(odd),
        mode_to_qubit=tuple(mode_to_qubit),
        source_tree=t,
        discarded=discarded,
    )


def z_set(m: MajoranaMapping, mode: int) -> FrozenSet[int]:
    """Qubits whose joint Z parity stores the occupation of mode"""
    check_mode(m, mode)
    return multiply(m.even[mode], m.odd[mode]).support


def delocalisation(m: MajoranaMapping, mode: int) -> int:
    return len(z_set(m, mode)) - 1


def number_operator(m: MajoranaMapping, mode: int) -> PauliString:
    """
    Parity string P with n_j = (I - P) / 2

    Since a^dagger a = (I + i e o) / 2, P = -i e o.
    """
    check_mode(m, mode)
    parity = multiply(m.even[mode], m.odd[mode])
    return parity.with_phase(parity.phase_exp + 3)


def z_branch(t: QubitTree) -> List[int]:
    """Qubits reached from the root through Z links only, root first"""
    require_valid(t)
    branch = [t.root]
    while "Z" in t.children[branch[-1]]:
        branch.append(t.children[branch[-1]]["Z"])
    return branch


def h_z(t: QubitTree) -> int:
    return len(z_branch(t))


def swapped_modes(m: MajoranaMapping) -> FrozenSet[int]:
    """Modes whose even Majorana carries the Y factor on the mode's own qubit"""
    if m.source_tree is None:
        return frozenset()
    return frozenset(
        j for j in range(m.n_modes) if m.even[j].factor(m.mode_to_qubit[j]) == "Y"
    )


def flip_mask(t: QubitTree, qubit: int) -> int:
    """Bits flipped by creating the mode on qubit: itself plus X/Y-linked ancestors"""
    return (1 << qubit) | t.path_masks[qubit][0]


def fock_to_bits(m: MajoranaMapping, occupied: Iterable[int]) -> str:
    """
    Computational basis state representing a Fock basis state

    Occupied modes are processed by ascending depth of their qubit (ties by
    qubit index); each flips its qubit and every ancestor whose downward link
    on the path is labelled X or Y.

    Args:
        m: Mapping built from a tree
        occupied: Occupied mode indices

    Returns:
        str: Bitstring with character u giving the state of qubit u

    Raises:
        MissingSourceTreeError: If m carries no source tree
    """
    t = m.source_tree
    if t is None:
        raise MissingSourceTreeError("fock_to_bits needs a mapping built from a tree")
    modes = set()
    for j in occupied:
        check_mode(m, j)
        modes.add(j)
    modes ^= swapped_modes(m)

    qubits = sorted((m.mode_to_qubit[j] for j in modes), key=lambda u: (t.depth[u], u))
    bits = 0
    for u in qubits:
        bits ^= flip_mask(t, u)
    return "".join(str((bits >> u) & 1) for u in range(t.n_qubits))
