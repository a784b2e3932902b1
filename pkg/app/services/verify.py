"""
Certification of Majorana string mappings

Criteria A-C are read off the symplectic representation, criterion D is a
symbolic phase-cancellation test on a single basis state. The dense oracle
rebuilds the operators as 2^N x 2^N matrices for small mappings and checks
the same facts numerically.
"""

from itertools import combinations
from typing import Iterable, List, Optional, Sequence
import logging

import numpy as np

from app.core.config import settings
from app.core.exceptions import DimensionError, InvalidParameterError, OracleSizeError, SerializationError
from app.models.report import CriteriaReport, OracleReport
from app.services.pauli import PauliString, anticommutes, dependent_subset, nto_sites, popcount
from app.services.tree import MajoranaMapping, fock_to_bits

logger = logging.getLogger(__name__)

_SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bits_to_int(bits: str, n_qubits: int) -> int:
    """Integer whose bit u is character u of a bitstring"""
    if len(bits) != n_qubits:
        raise DimensionError(f"Bitstring '{bits}' has length {len(bits)}, expected {n_qubits}")
    if set(bits) - {"0", "1"}:
        raise SerializationError(f"Bitstring '{bits}' may only contain 0 and 1")
    return sum(1 << u for u, char in enumerate(bits) if char == "1")


def vacuum_candidate(m: MajoranaMapping) -> str:
    """Image of the empty Fock state: from the source tree when known, else all zeros"""
    if m.source_tree is not None:
        return fock_to_bits(m, ())
    return "0" * m.n_qubits


def _phase_on(s: PauliString, state: int) -> int:
    # s|b> = i^(phase + #Y) (-1)^|z & b| |b xor x>
    return (s.phase_exp + s.y_count + 2 * popcount(s.z_mask & state)) % 4


def annihilates(even: PauliString, odd: PauliString, state: int) -> bool:
    """True iff (even + i odd)/2 maps the basis state to zero"""
    if even.x_mask != odd.x_mask:
        return False
    return (_phase_on(even, state) - _phase_on(odd, state)) % 4 == 3


def check_mapping(m: MajoranaMapping, vacuum: Optional[str] = None) -> CriteriaReport:
    """
    Evaluate criteria A-D on a mapping

    Args:
        m: Mapping under test
        vacuum: Candidate vacuum bitstring (character u = qubit u). Defaults
            to the image of the empty state for tree mappings, all zeros otherwise

    Returns:
        CriteriaReport: Flags per criterion, with the first witness found for
        every failing one
    """
    strings = m.majoranas()
    candidate = vacuum if vacuum is not None else vacuum_candidate(m)
    state = bits_to_int(candidate, m.n_qubits)

    a_witness = next(
        (k for k, s in enumerate(strings) if s.is_identity() or s.phase_exp % 2),
        None,
    )

    b_witness = None
    for k, l in combinations(range(len(strings)), 2):
        if not anticommutes(strings[k], strings[l]):
            b_witness = [k, l]
            break

    c_witness = dependent_subset(strings)

    d_witness = next(
        (j for j in range(m.n_modes) if not annihilates(m.even[j], m.odd[j], state)),
        None,
    )

    report = CriteriaReport(
        a_ok=a_witness is None,
        b_ok=b_witness is None,
        c_ok=c_witness is None,
        d_ok=d_witness is None,
        vacuum=candidate,
        a_witness=a_witness,
        b_witness=b_witness,
        c_witness=c_witness,
        d_witness=d_witness,
    )
    logger.debug(f"Criteria on {m.n_modes} modes: passed={report.passed}")
    return report


def classify_nto(m: MajoranaMapping) -> int:
    """
    NTO class k: the largest number of sites on which two strings act
    non-trivially and differently
    """
    strings = m.majoranas()
    if len(strings) < 2:
        raise InvalidParameterError("NTO class needs at least two strings")
    return max(len(nto_sites(a, b)) for a, b in combinations(strings, 2))


def pauli_matrix(s: PauliString) -> np.ndarray:
    """
    Dense matrix of a string; qubit 0 is the most significant tensor factor

    Raises:
        OracleSizeError: If the string acts on more than ORACLE_MAX_QUBITS qubits
    """
    if s.n_qubits > settings.ORACLE_MAX_QUBITS:
        raise OracleSizeError(f"{s.n_qubits} qubits exceed the dense limit of {settings.ORACLE_MAX_QUBITS}")
    matrix = np.ones((1, 1), dtype=complex)
    for u in range(s.n_qubits):
        matrix = np.kron(matrix, _SINGLE_QUBIT[s.factor(u)])
    return (1j ** s.phase_exp) * matrix


def basis_index(bits: str) -> int:
    """Row of a bitstring in the kron ordering used by pauli_matrix"""
    return int(bits, 2)


def _anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def _max_abs(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix))) if matrix.size else 0.0


def _apply_creators(creators: Sequence[np.ndarray], modes: Iterable[int], state: np.ndarray) -> np.ndarray:
    for j in reversed(sorted(modes)):
        state = creators[j] @ state
    return state


def oracle_check(m: MajoranaMapping, tolerance: Optional[float] = None) -> OracleReport:
    """
    Dense verification of a small mapping

    Checks the Majorana anticommutation relations, the canonical
    anticommutation relations of a_j and a_j^dagger, vacuum annihilation
    and that every Fock state is carried to a single computational basis
    state (the one fock_to_bits predicts when the mapping has a tree).

    Raises:
        OracleSizeError: If the mapping has more than ORACLE_MAX_MODES modes
    """
    if m.n_modes > settings.ORACLE_MAX_MODES:
        raise OracleSizeError(f"{m.n_modes} modes exceed the oracle limit of {settings.ORACLE_MAX_MODES}")
    tolerance = settings.RESIDUAL_TOLERANCE if tolerance is None else tolerance
    dim = 2 ** m.n_qubits
    identity = np.eye(dim, dtype=complex)

    majoranas = [pauli_matrix(s) for s in m.majoranas()]
    majorana_residual = 0.0
    for k, l in combinations(range(len(majoranas)), 2):
        majorana_residual = max(majorana_residual, _max_abs(_anticommutator(majoranas[k], majoranas[l])))
    for r in majoranas:
        majorana_residual = max(majorana_residual, _max_abs(r @ r - identity))

    annihilators = [(majoranas[2 * j] + 1j * majoranas[2 * j + 1]) / 2 for j in range(m.n_modes)]
    creators = [a.conj().T for a in annihilators]
    car_residual = 0.0
    for i in range(m.n_modes):
        for j in range(m.n_modes):
            expected = identity if i == j else 0
            car_residual = max(
                car_residual,
                _max_abs(_anticommutator(annihilators[i], creators[j]) - expected),
                _max_abs(_anticommutator(annihilators[i], annihilators[j])),
            )

    vacuum = np.zeros(dim, dtype=complex)
    vacuum[basis_index(vacuum_candidate(m))] = 1.0
    vacuum_residual = max((float(np.linalg.norm(a @ vacuum)) for a in annihilators), default=0.0)

    mismatches: List[List[int]] = []
    for size in range(m.n_modes + 1):
        for occupied in combinations(range(m.n_modes), size):
            image = _apply_creators(creators, occupied, vacuum)
            nonzero = np.flatnonzero(np.abs(image) > tolerance)
            single = len(nonzero) == 1 and abs(abs(image[nonzero[0]]) - 1) <= tolerance
            if single and m.source_tree is not None:
                single = nonzero[0] == basis_index(fock_to_bits(m, occupied))
            if not single:
                mismatches.append(list(occupied))

    max_residual = max(majorana_residual, car_residual, vacuum_residual)
    report = OracleReport(
        n_modes=m.n_modes,
        majorana_residual=majorana_residual,
        car_residual=car_residual,
        vacuum_residual=vacuum_residual,
        max_residual=max_residual,
        fock_ok=not mismatches,
        fock_mismatches=mismatches,
        passed=max_residual <= tolerance and not mismatches,
    )
    logger.info(f"Dense oracle on {m.n_modes} modes: max residual {max_residual:.3e}, passed={report.passed}")
    return report
