"""
Unit Tests for Device Graphs and Steiner Routing Costs
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import (
    DimensionError,
    DisconnectedGraphError,
    EmptySupportError,
    InvalidParameterError,
    ModeRangeError,
    RepeatedModeError,
)
from app.models.mapping import MappingKind
from app.models.topology import TopologyKind
from app.services.topology import (
    HardwareGraph,
    complete,
    excitation_cost,
    generate,
    graph_metrics,
    grid,
    heavy_hexagon,
    linear,
    star,
    steiner_cost,
)
from tests.strategies import connected_graphs


def fewest_bridging_qubits(g, support):
    others = [u for u in range(g.n_qubits) if u not in support]
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            if g.is_connected_subset(list(support) + list(extra)):
                return size


@pytest.mark.unit
class TestGenerators:
    """Test suite for the graph families"""

    def test_linear(self):
        g = linear(4)
        assert g.edges == ((0, 1), (1, 2), (2, 3))

    def test_star(self):
        g = star(5)
        assert g.neighbours(0) == [1, 2, 3, 4]
        assert g.neighbours(3) == [0]

    def test_grid(self):
        g = grid(2, 3)
        assert g.n_qubits == 6
        assert len(g.edges) == 7
        assert g.coordinates[4] == (1, 1)

    def test_complete(self):
        assert len(complete(5).edges) == 10

    def test_single_qubit(self):
        g = linear(1)
        assert g.edges == ()
        assert graph_metrics(g).diameter == 0

    def test_heavy_hexagon_device(self):
        g = heavy_hexagon(0)
        assert g.n_qubits == 37
        assert len(g.edges) == 39

    def test_heavy_hexagon_grows_with_rings(self):
        sizes = [heavy_hexagon(d).n_qubits for d in range(3)]
        assert sizes == sorted(set(sizes))

    def test_heavy_hexagon_max_degree(self):
        g = heavy_hexagon(2)
        assert max(d for _, d in g.graph.degree()) == 3

    def test_heavy_hexagon_rejects_negative(self):
        with pytest.raises(InvalidParameterError):
            heavy_hexagon(-1)

    @pytest.mark.parametrize("kind,kwargs", [
        (TopologyKind.LINEAR, {}),
        (TopologyKind.STAR, {"size": 0}),
        (TopologyKind.GRID, {"rows": 2}),
    ])
    def test_generate_missing_parameters(self, kind, kwargs):
        with pytest.raises(InvalidParameterError):
            generate(kind, **kwargs)

    def test_generate_defaults_heavy_hexagon(self):
        assert generate(TopologyKind.HEAVY_HEXAGON).n_qubits == 37

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            HardwareGraph(3, [(0, 1)])

    def test_self_loop(self):
        with pytest.raises(InvalidParameterError):
            HardwareGraph(2, [(0, 1), (1, 1)])

    def test_edges_are_normalised(self):
        assert HardwareGraph(2, [(1, 0), (0, 1)]).edges == ((0, 1),)


@pytest.mark.unit
class TestGraphMetrics:
    """Test suite for graph_metrics"""

    def test_linear(self):
        metrics = graph_metrics(linear(5))
        assert metrics.center == [2]
        assert metrics.diameter == 4
        assert metrics.diameter_path == [0, 1, 2, 3, 4]
        assert metrics.eccentricity == [4, 3, 2, 3, 4]

    def test_star_center(self):
        metrics = graph_metrics(star(6))
        assert metrics.center == [0]
        assert metrics.diameter == 2

    def test_heavy_hexagon_center(self):
        assert 0 in graph_metrics(heavy_hexagon(0)).center


@pytest.mark.unit
class TestSteinerCost:
    """Test suite for steiner_cost"""

    def test_connected_support_is_free(self):
        entry = steiner_cost(linear(5), [1, 2, 3])
        assert entry.overhead == 0
        assert entry.swaps == 0
        assert entry.exact

    def test_path_between_ends(self):
        entry = steiner_cost(linear(5), [0, 4])
        assert entry.overhead == 3
        assert entry.swaps == 6
        assert entry.steiner_nodes == [0, 1, 2, 3, 4]

    def test_star_leaves_need_hub(self):
        entry = steiner_cost(star(5), [1, 2, 3])
        assert entry.overhead == 1
        assert entry.steiner_nodes == [0, 1, 2, 3]

    def test_grid_corners(self):
        entry = steiner_cost(grid(3, 3), [0, 2, 6, 8])
        assert entry.overhead == 3

    def test_empty_support(self):
        with pytest.raises(EmptySupportError):
            steiner_cost(linear(3), [])

    def test_qubit_outside_graph(self):
        with pytest.raises(InvalidParameterError):
            steiner_cost(linear(3), [0, 5])

    def test_approximation_is_flagged(self):
        entry = steiner_cost(grid(3, 3), [0, 2, 6, 8], exact_limit=2)
        assert not entry.exact
        assert entry.overhead >= 3

    @given(st.sets(st.integers(min_value=0, max_value=15), min_size=1, max_size=6))
    @settings(max_examples=60)
    def test_approximation_bounds(self, support):
        g = grid(4, 4)
        exact = steiner_cost(g, support)
        approximate = steiner_cost(g, support, exact_limit=0)
        assert exact.overhead <= approximate.overhead
        assert len(approximate.steiner_nodes) - 1 <= 2 * (len(exact.steiner_nodes) - 1)
        assert g.is_connected_subset(exact.steiner_nodes)
        assert g.is_connected_subset(approximate.steiner_nodes)
        assert set(support) <= set(exact.steiner_nodes)

    @given(connected_graphs(max_qubits=9), st.data())
    @settings(max_examples=80)
    def test_exact_matches_subset_enumeration(self, g, data):
        support = data.draw(st.sets(st.integers(min_value=0, max_value=g.n_qubits - 1), min_size=1))
        entry = steiner_cost(g, support)
        assert entry.exact
        assert entry.overhead == fewest_bridging_qubits(g, support)

    @given(connected_graphs(min_qubits=2, max_qubits=10), st.data())
    @settings(max_examples=80)
    def test_extra_coupling_never_raises_overhead(self, g, data):
        n = g.n_qubits
        support = data.draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
        u, v = data.draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=2, max_size=2, unique=True))
        richer = HardwareGraph(n, list(g.edges) + [(u, v)])
        assert steiner_cost(richer, support).overhead <= steiner_cost(g, support).overhead


@pytest.mark.unit
class TestExcitationCost:
    """Test suite for excitation_cost"""

    def test_single_excitation_on_chain(self, classic_mapping):
        cost = excitation_cost(classic_mapping(MappingKind.JORDAN_WIGNER, 5), linear(5), [0, 4])
        assert len(cost.per_string) == 4
        assert cost.union.overhead == 0
        assert cost.total_overhead == 0

    def test_double_excitation_has_sixteen_products(self, classic_mapping):
        cost = excitation_cost(classic_mapping(MappingKind.JORDAN_WIGNER, 5), linear(5), [0, 1, 2, 3])
        assert len(cost.per_string) == 16

    def test_jordan_wigner_on_star(self, classic_mapping):
        cost = excitation_cost(classic_mapping(MappingKind.JORDAN_WIGNER, 4), star(4), [2, 3])
        assert cost.union.support == [2, 3]
        assert cost.union.overhead == 1

    def test_shared_cache(self, classic_mapping):
        m = classic_mapping(MappingKind.PARITY, 4)
        cache = {}
        excitation_cost(m, linear(4), [0, 1], cache)
        size = len(cache)
        excitation_cost(m, linear(4), [0, 1], cache)
        assert size > 0
        assert len(cache) == size

    def test_heavy_hex_double_excitation_needs_two_swaps(self, homogeneous_mapping, heavy_hex_graph):
        """One bridging qubit; the two SWAPs are the round trip through it"""
        cost = excitation_cost(homogeneous_mapping, heavy_hex_graph, [27, 34, 35, 36])
        assert cost.union.overhead == 1
        assert cost.union.swaps == 2

    def test_repeated_mode(self, classic_mapping):
        with pytest.raises(RepeatedModeError):
            excitation_cost(classic_mapping(MappingKind.PARITY, 3), linear(3), [1, 1])

    def test_wrong_arity(self, classic_mapping):
        with pytest.raises(InvalidParameterError):
            excitation_cost(classic_mapping(MappingKind.PARITY, 3), linear(3), [0, 1, 2])

    def test_mode_out_of_range(self, classic_mapping):
        with pytest.raises(ModeRangeError):
            excitation_cost(classic_mapping(MappingKind.PARITY, 3), linear(3), [0, 3])

    def test_size_mismatch(self, classic_mapping):
        with pytest.raises(DimensionError):
            excitation_cost(classic_mapping(MappingKind.PARITY, 3), linear(4), [0, 1])
