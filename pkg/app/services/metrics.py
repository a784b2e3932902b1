"""
Aggregate reporting on mappings
"""

from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
import logging

import numpy as np

from app.core.config import settings
from app.core.exceptions import DimensionError, InvalidParameterError
from app.models.report import DelocalisationStats, MappingReport, SwapSummary, WeightStats
from app.models.topology import SteinerEntry
from app.services.topology import HardwareGraph, excitation_cost
from app.services.tree import MajoranaMapping, delocalisation, h_z
from app.services.verify import classify_nto

logger = logging.getLogger(__name__)


def weight_stats(m: MajoranaMapping) -> WeightStats:
    weights = [s.weight for s in m.majoranas()]
    return WeightStats(
        weights=weights,
        min=min(weights),
        mean=float(np.mean(weights)),
        max=max(weights),
    )


def delocalisation_stats(m: MajoranaMapping) -> DelocalisationStats:
    per_mode = [delocalisation(m, j) for j in range(m.n_modes)]
    return DelocalisationStats(
        per_mode=per_mode,
        mean=float(np.mean(per_mode)),
        localised_modes=sum(1 for d in per_mode if d == 0),
    )


def double_excitations(
    n_modes: int,
    seed: Optional[int] = None,
    enumerate_all: bool = False,
) -> Tuple[List[Tuple[int, ...]], bool]:
    """
    Mode quadruples to cost, with a flag telling whether they are exhaustive

    Every quadruple is listed when enumerate_all is set or the mapping is
    small enough; otherwise DOUBLE_EXCITATION_SAMPLES quadruples are drawn
    with a seeded generator.

    Raises:
        InvalidParameterError: If full enumeration is requested above
            FULL_DOUBLE_ENUMERATION_LIMIT modes
    """
    if n_modes < 4:
        return [], True
    limit = settings.FULL_DOUBLE_ENUMERATION_LIMIT
    if enumerate_all and n_modes > limit:
        raise InvalidParameterError(f"Full double enumeration is limited to {limit} modes, got {n_modes}")
    if enumerate_all or n_modes <= limit:
        return list(combinations(range(n_modes), 4)), True

    rng = np.random.default_rng(seed if seed is not None else settings.BONSAI_SEED)
    samples = [
        tuple(sorted(int(j) for j in rng.choice(n_modes, size=4, replace=False)))
        for _ in range(settings.DOUBLE_EXCITATION_SAMPLES)
    ]
    return samples, False


def swap_summary(
    m: MajoranaMapping,
    g: HardwareGraph,
    seed: Optional[int] = None,
    enumerate_doubles: bool = False,
) -> SwapSummary:
    """
    Bridging overhead of every single excitation and of a set of doubles

    The overhead of an excitation is that of the Steiner tree connecting the
    union of the supports of its Majorana products.
    """
    cache: Dict[FrozenSet[int], SteinerEntry] = {}
    singles = [
        excitation_cost(m, g, pair, cache).union.overhead
        for pair in combinations(range(m.n_modes), 2)
    ]
    quadruples, exhaustive = double_excitations(m.n_modes, seed, enumerate_doubles)
    doubles = [excitation_cost(m, g, quad, cache).union.overhead for quad in quadruples]
    logger.debug(f"Costed {len(singles)} single and {len(doubles)} double excitations")
    return SwapSummary(
        single_max=max(singles, default=0),
        single_mean=float(np.mean(singles)) if singles else 0.0,
        double_max=max(doubles, default=0),
        double_mean=float(np.mean(doubles)) if doubles else 0.0,
        double_count=len(doubles),
        double_enumerated=exhaustive,
    )


def report(
    m: MajoranaMapping,
    g: Optional[HardwareGraph] = None,
    seed: Optional[int] = None,
    enumerate_doubles: bool = False,
) -> MappingReport:
    """
    Collect weight, delocalisation, NTO and routing statistics of a mapping

    Args:
        m: Mapping to describe
        g: Optional device graph; enables the SWAP summary
        seed: Seed for sampled double excitations
        enumerate_doubles: Cost every double excitation instead of a sample

    Returns:
        MappingReport: All metrics; tree fields are None without a source tree

    Raises:
        DimensionError: If the graph size differs from the mapping's qubit count
    """
    if g is not None and g.n_qubits != m.n_qubits:
        raise DimensionError(f"Graph has {g.n_qubits} qubits, mapping uses {m.n_qubits}")

    t = m.source_tree
    result = MappingReport(
        n_modes=m.n_modes,
        root=t.root if t is not None else None,
        tree_height=t.height if t is not None else None,
        weights=weight_stats(m),
        deloc=delocalisation_stats(m),
        h_z=h_z(t) if t is not None else None,
        nto_class=classify_nto(m),
        swap=swap_summary(m, g, seed, enumerate_doubles) if g is not None else None,
        virtual_edges=len(m.virtual_edges),
    )
    logger.info(
        f"Report on {m.n_modes} modes: max weight {result.weights.max}, "
        f"mean delocalisation {result.deloc.mean:.4f}"
    )
    return result
