"""
Unit Tests for Mapping Reports
"""

import pytest

from app.core.exceptions import DimensionError, InvalidParameterError
from app.models.mapping import FixtureKind, MappingKind
from app.services.bonsai import bonsai
from app.services.classic_maps import fixture
from app.services.metrics import double_excitations, report, swap_summary, weight_stats
from app.services.topology import heavy_hexagon, linear


@pytest.mark.unit
class TestWeightsAndDelocalisation:
    """Test suite for the per-mapping statistics"""

    def test_jordan_wigner(self, classic_mapping):
        result = report(classic_mapping(MappingKind.JORDAN_WIGNER, 8))
        assert result.h_z == 8
        assert result.deloc.mean == 0
        assert result.deloc.localised_modes == 8
        assert result.weights.max == 8
        assert result.weights.min == 1
        assert result.nto_class == 1

    def test_parity(self, classic_mapping):
        result = report(classic_mapping(MappingKind.PARITY, 6))
        assert result.h_z == 1
        assert result.deloc.per_mode == [1, 1, 1, 1, 1, 0]

    def test_weights_are_interleaved(self, classic_mapping):
        stats = weight_stats(classic_mapping(MappingKind.JORDAN_WIGNER, 2))
        assert stats.weights == [1, 1, 2, 2]
        assert stats.mean == 1.5

    @pytest.mark.parametrize("kind", list(MappingKind))
    def test_max_weight_is_height_plus_one(self, classic_mapping, kind):
        result = report(classic_mapping(kind, 11))
        assert result.weights.max == result.tree_height + 1

    @pytest.mark.parametrize("mapping", ["homogeneous_mapping", "heterogeneous_mapping"])
    def test_heavy_hex_fixture(self, request, mapping):
        result = report(request.getfixturevalue(mapping))
        assert result.h_z == 8
        assert result.deloc.mean == pytest.approx(29 / 37)
        assert result.weights.max == 8
        assert result.root == 0
        assert result.tree_height == 7

    def test_mapping_without_tree(self):
        result = report(fixture(FixtureKind.EXOTIC_3NTO))
        assert result.root is None
        assert result.h_z is None
        assert result.nto_class == 3
        assert result.swap is None


@pytest.mark.unit
class TestDoubleExcitations:
    """Test suite for choosing double excitations"""

    def test_small_mappings_have_none(self):
        assert double_excitations(3) == ([], True)

    def test_enumerated_up_to_limit(self):
        quadruples, exhaustive = double_excitations(6)
        assert exhaustive
        assert len(quadruples) == 15

    def test_sampled_above_limit(self):
        quadruples, exhaustive = double_excitations(20, seed=1)
        assert not exhaustive
        assert len(quadruples) == 200
        assert all(len(set(q)) == 4 for q in quadruples)
        assert quadruples == double_excitations(20, seed=1)[0]

    def test_full_enumeration_limit(self):
        with pytest.raises(InvalidParameterError):
            double_excitations(20, enumerate_all=True)


@pytest.mark.unit
class TestSwapSummary:
    """Test suite for routing statistics"""

    def test_jordan_wigner_on_chain(self, classic_mapping):
        summary = swap_summary(classic_mapping(MappingKind.JORDAN_WIGNER, 6), linear(6))
        assert summary.single_max == 0
        assert summary.double_count == 15
        assert summary.double_enumerated

    def test_report_includes_summary(self, classic_mapping):
        result = report(classic_mapping(MappingKind.JORDAN_WIGNER, 5), linear(5))
        assert result.swap is not None
        assert result.swap.double_count == 5

    def test_graph_size_mismatch(self, classic_mapping):
        with pytest.raises(DimensionError):
            report(classic_mapping(MappingKind.JORDAN_WIGNER, 5), linear(6))

    @pytest.mark.slow
    def test_heavy_hex_fixture_on_device(self, homogeneous_mapping, heavy_hex_graph):
        result = report(homogeneous_mapping, heavy_hex_graph, seed=7)
        assert result.swap.single_max == 0
        assert result.swap.double_count == 200
        assert not result.swap.double_enumerated

    @pytest.mark.slow
    def test_bonsai_beats_jordan_wigner_on_heavy_hexagon(self, classic_mapping):
        g = heavy_hexagon(0)
        tailored = report(bonsai(g), g, seed=7)
        chain = report(classic_mapping(MappingKind.JORDAN_WIGNER, 37), g, seed=7)
        assert tailored.swap.single_mean < chain.swap.single_mean
        assert tailored.weights.max < chain.weights.max
