"""
Exact symbolic algebra of N-qubit Pauli strings

A string is stored as an x-mask, a z-mask and a phase exponent k so that
the operator is i^k times a tensor product of I/X/Y/Z factors. Bit u of a
mask refers to qubit u. Factors: I = (0, 0), X = (1, 0), Z = (0, 1), Y = (1, 1).
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
import logging
import re

import numpy as np

from app.core.exceptions import DimensionError, SerializationError

logger = logging.getLogger(__name__)

PHASE_PREFIX = {0: "", 1: "+i", 2: "-", 3: "-i"}
PREFIX_PHASE = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}

_FACTOR_RE = re.compile(r"([IXYZ])(\d+)")
_PREFIX_RE = re.compile(r"^\s*([+-]?i?)\s*")


def popcount(value: int) -> int:
    """Number of set bits of a non-negative integer"""
    return bin(value).count("1")


def bits_of(mask: int) -> List[int]:
    """Indices of the set bits of mask in ascending order"""
    indices = []
    u = 0
    while mask:
        if mask & 1:
            indices.append(u)
        mask >>= 1
        u += 1
    return indices


def _mask_bits(mask: int, n_bits: int) -> np.ndarray:
    return np.array([(mask >> u) & 1 for u in range(n_bits)], dtype=np.uint8)


@dataclass(frozen=True)
class PauliString:
    """An N-qubit Pauli operator i^phase_exp * P_0 ... P_{N-1}"""
    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise DimensionError(f"Negative qubit count: {self.n_qubits}")
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise DimensionError(
                f"Masks exceed {self.n_qubits} qubits: x={self.x_mask:#x}, z={self.z_mask:#x}"
            )
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def from_factors(cls, n_qubits: int, factors: Dict[int, str], phase_exp: int = 0) -> "PauliString":
        """
        Build a string from a qubit -> 'X'|'Y'|'Z'|'I' dictionary

        Args:
            n_qubits: Register size
            factors: Single-qubit factors keyed by qubit index
            phase_exp: Exponent k of the global coefficient i^k

        Returns:
            PauliString: The assembled operator
        """
        x_mask = 0
        z_mask = 0
        for qubit, symbol in factors.items():
            if not 0 <= qubit < n_qubits:
                raise DimensionError(f"Qubit {qubit} outside register of {n_qubits}")
            if symbol in ("X", "Y"):
                x_mask |= 1 << qubit
            if symbol in ("Z", "Y"):
                z_mask |= 1 << qubit
            if symbol not in ("I", "X", "Y", "Z"):
                raise SerializationError(f"Unknown Pauli factor '{symbol}'")
        return cls(n_qubits, x_mask, z_mask, phase_exp)

    @classmethod
    def parse(cls, text: str, n_qubits: int) -> "PauliString":
        """
        Parse the canonical text form, e.g. "X0 Z1", "-i Y3" or "I"

        Raises:
            SerializationError: If the text is not a canonical Pauli string
        """
        match = _PREFIX_RE.match(text)
        prefix = match.group(1) if match else ""
        body = text[match.end():] if match else text
        if prefix not in PREFIX_PHASE:
            raise SerializationError(f"Bad phase prefix in '{text}'")
        body = body.replace(" ", "")
        factors: Dict[int, str] = {}
        if body not in ("", "I"):
            position = 0
            for token in _FACTOR_RE.finditer(body):
                if token.start() != position:
                    raise SerializationError(f"Cannot parse Pauli string '{text}'")
                qubit = int(token.group(2))
                if qubit in factors:
                    raise SerializationError(f"Qubit {qubit} repeated in '{text}'")
                factors[qubit] = token.group(1)
                position = token.end()
            if position != len(body):
                raise SerializationError(f"Cannot parse Pauli string '{text}'")
        return cls.from_factors(n_qubits, factors, PREFIX_PHASE[prefix])

    def factor(self, qubit: int) -> str:
        x = (self.x_mask >> qubit) & 1
        z = (self.z_mask >> qubit) & 1
        return "IXZY"[x + 2 * z]

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(bits_of(self.support_mask))

    @property
    def weight(self) -> int:
        return popcount(self.support_mask)

    @property
    def y_count(self) -> int:
        return popcount(self.x_mask & self.z_mask)

    @property
    def symplectic(self) -> np.ndarray:
        """Phase-free bit row [x_0 ... x_{N-1} | z_0 ... z_{N-1}]"""
        return np.concatenate([_mask_bits(self.x_mask, self.n_qubits), _mask_bits(self.z_mask, self.n_qubits)])

    def is_identity(self) -> bool:
        return self.support_mask == 0

    def without_phase(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, 0)

    def with_phase(self, phase_exp: int) -> "PauliString":
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, phase_exp)

    def factors(self) -> Dict[int, str]:
        return {u: self.factor(u) for u in bits_of(self.support_mask)}

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        body = " ".join(f"{symbol}{u}" for u, symbol in self.factors().items()) or "I"
        prefix = PHASE_PREFIX[self.phase_exp]
        return f"{prefix} {body}" if prefix in ("+i", "-i") else f"{prefix}{body}"


def _check_sizes(a: PauliString, b: PauliString) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"Pauli strings act on {a.n_qubits} and {b.n_qubits} qubits")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """
    Exact product a*b including the global phase

    Args:
        a: Left factor
        b: Right factor

    Returns:
        PauliString: The product, with masks equal to the XOR of the inputs

    Raises:
        DimensionError: If the operands act on different register sizes
    """
    _check_sizes(a, b)
    x1, z1, x2, z2 = a.x_mask, a.z_mask, b.x_mask, b.z_mask
    only_x1, only_z1, both1 = x1 & ~z1, z1 & ~x1, x1 & z1
    only_x2, only_z2, both2 = x2 & ~z2, z2 & ~x2, x2 & z2
    # XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
    plus = (only_x1 & both2) | (both1 & only_z2) | (only_z1 & only_x2)
    minus = (both1 & only_x2) | (only_z1 & both2) | (only_x1 & only_z2)
    phase = a.phase_exp + b.phase_exp + popcount(plus) - popcount(minus)
    return PauliString(a.n_qubits, x1 ^ x2, z1 ^ z2, phase)


def product(strings: Sequence[PauliString], n_qubits: Optional[int] = None) -> PauliString:
    """Ordered product of a sequence of strings; identity when empty"""
    if not strings:
        if n_qubits is None:
            raise DimensionError("Empty product needs an explicit register size")
        return PauliString.identity(n_qubits)
    result = strings[0]
    for string in strings[1:]:
        result = multiply(result, string)
    return result


def anticommutes(a: PauliString, b: PauliString) -> bool:
    """True iff {a, b} = 0, read off the parity of the symplectic form"""
    _check_sizes(a, b)
    return popcount((a.x_mask & b.z_mask) ^ (a.z_mask & b.x_mask)) % 2 == 1


def commutes(a: PauliString, b: PauliString) -> bool:
    return not anticommutes(a, b)


def nto_sites(a: PauliString, b: PauliString) -> FrozenSet[int]:
    """
    Qubits where both strings act non-trivially and differently

    Returns:
        FrozenSet[int]: The non-trivial overlap; odd-sized iff a and b anticommute
    """
    _check_sizes(a, b)
    differ = (a.x_mask ^ b.x_mask) | (a.z_mask ^ b.z_mask)
    return frozenset(bits_of(a.support_mask & b.support_mask & differ))


def to_gf2(matrix) -> np.ndarray:
    return np.asarray(matrix, dtype=np.uint8) % 2


@dataclass(frozen=True)
class RowReduction:
    """
    Reduced row echelon form of a bit matrix

    combinations[i] marks the input rows whose XOR is matrix[i];
    first_dependency lists the input rows of the earliest vanishing
    combination, or is None when the rows are independent.
    """
    matrix: np.ndarray
    pivots: Tuple[int, ...]
    combinations: np.ndarray
    first_dependency: Optional[Tuple[int, ...]]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gf2_row_reduce(matrix) -> RowReduction:
    """
    Row reduction over GF(2), one input row at a time

    Each incoming row is cleared against the current basis; a row that
    vanishes records which input rows it is the sum of.

    Args:
        matrix: 2-D array-like of bits

    Returns:
        RowReduction: Basis rows, pivot columns and combination tracking
    """
    mat = to_gf2(matrix)
    if mat.ndim != 2:
        raise DimensionError(f"Expected a 2-D bit matrix, got shape {mat.shape}")
    m, n = mat.shape
    basis = np.zeros((0, n), dtype=np.uint8)
    combinations = np.zeros((0, m), dtype=np.uint8)
    pivots: List[int] = []
    first_dependency = None
    for index in range(m):
        row = mat[index].copy()
        combination = np.zeros(m, dtype=np.uint8)
        combination[index] = 1
        if pivots:
            # basis is fully reduced, so one pass clears every pivot column
            hits = row[pivots]
            row ^= hits @ basis % 2
            combination ^= hits @ combinations % 2
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            if first_dependency is None:
                first_dependency = tuple(int(i) for i in np.flatnonzero(combination))
            continue
        pivot = int(nonzero[0])
        clear = basis[:, pivot] == 1
        basis[clear] ^= row
        combinations[clear] ^= combination
        basis = np.vstack([basis, row])
        combinations = np.vstack([combinations, combination])
        pivots.append(pivot)
    logger.debug(f"Row-reduced {m}x{n} bit matrix to rank {len(pivots)}")
    return RowReduction(basis, tuple(pivots), combinations, first_dependency)


def gf2_rank(matrix) -> int:
    """Rank over GF(2) of a bit matrix"""
    return gf2_row_reduce(matrix).rank


def symplectic_matrix(strings: Sequence[PauliString]) -> np.ndarray:
    """Stack the symplectic rows of equally sized strings"""
    for other in strings[1:]:
        _check_sizes(strings[0], other)
    return np.vstack([s.symplectic for s in strings])


def gf2_independent(strings: Sequence[PauliString]) -> bool:
    """
    True iff no nonempty subset multiplies to a multiple of the identity

    Args:
        strings: Pauli strings of equal size; empty input is vacuously independent

    Returns:
        bool: Whether the symplectic vectors are linearly independent over GF(2)
    """
    if not strings:
        return True
    return gf2_rank(symplectic_matrix(strings)) == len(strings)


def dependent_subset(strings: Sequence[PauliString]) -> Optional[List[int]]:
    """Indices of a subset whose product is proportional to I, or None"""
    if not strings:
        return None
    dependency = gf2_row_reduce(symplectic_matrix(strings)).first_dependency
    return list(dependency) if dependency is not None else None


def permute_qubits(s: PauliString, permutation: Sequence[int]) -> PauliString:
    """Move the factor on qubit u to qubit permutation[u]"""
    if len(permutation) != s.n_qubits:
        raise DimensionError(f"Permutation of length {len(permutation)} for {s.n_qubits} qubits")
    factors = {permutation[u]: symbol for u, symbol in s.factors().items()}
    return PauliString.from_factors(s.n_qubits, factors, s.phase_exp)
