"""
Unit Tests for Labelled Ternary Trees and Pairing

Tests for:
- Tree validation
- Legs and the strings they generate
- Pairing into modes, delocalisation and the Fock-state image
"""

from itertools import chain, combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import BijectionError, ForeignLegError, InvalidTreeError, MissingSourceTreeError, ModeRangeError
from app.models.mapping import FixtureKind, MappingKind
from app.services.classic_maps import classic_tree, fixture
from app.services.pauli import PauliString, anticommutes, gf2_independent
from app.services.tree import (
    Leg,
    MajoranaMapping,
    QubitTree,
    all_strings,
    delocalisation,
    enumerate_legs,
    fock_to_bits,
    h_z,
    leg_string,
    number_operator,
    pair_modes,
    swapped_modes,
    validate_tree,
    z_branch,
    z_set,
)
from tests.strategies import qubit_trees, random_tree


def s(text, n):
    return PauliString.parse(text, n)


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, size) for size in range(len(items) + 1))


@pytest.mark.unit
class TestValidateTree:
    """Test suite for structural validation"""

    def test_valid_tree(self):
        report = validate_tree(fixture(FixtureKind.ELEVEN_QUBIT_TREE))
        assert report.valid
        assert report.errors == []

    def test_duplicate_label(self):
        t = QubitTree.from_links(3, 0, [(0, 1, "X"), (0, 2, "X")])
        report = validate_tree(t)
        assert not report.valid
        assert 0 in report.offending

    def test_four_children(self):
        t = QubitTree.from_links(5, 0, [(0, 1, "X"), (0, 2, "Y"), (0, 3, "Z"), (0, 4, "Z")])
        assert not validate_tree(t).valid

    def test_disconnected_qubit(self):
        t = QubitTree.from_links(3, 0, [(0, 1, "X")])
        report = validate_tree(t)
        assert not report.valid
        assert report.offending == [2]

    def test_cycle(self):
        t = QubitTree.from_links(4, 0, [(0, 1, "X"), (3, 2, "X"), (2, 3, "X")])
        report = validate_tree(t)
        assert not report.valid
        assert {2, 3} <= set(report.offending)

    def test_invalid_label(self):
        t = QubitTree(2, 0, (None, 0), (None, "W"))
        assert not validate_tree(t).valid

    def test_invalid_tree_raises_on_use(self):
        t = QubitTree.from_links(3, 0, [(0, 1, "X"), (0, 2, "X")])
        with pytest.raises(InvalidTreeError) as e:
            enumerate_legs(t)
        assert 0 in e.value.offending


@pytest.mark.unit
class TestLegs:
    """Test suite for leg enumeration and leg strings"""

    def test_single_qubit(self):
        strings, all_z = all_strings(QubitTree.single())
        assert [str(x) for x in strings] == ["X0", "Y0", "Z0"]
        assert all_z == 2

    def test_eleven_qubit_strings(self):
        t = fixture(FixtureKind.ELEVEN_QUBIT_TREE)
        assert leg_string(t, Leg(1, "Z")) == s("X0 Z1", 11)
        assert leg_string(t, Leg(10, "Z")) == s("Y0 Z2 Z8 Z10", 11)

    def test_eleven_qubit_all_z_string(self):
        strings, all_z = all_strings(fixture(FixtureKind.ELEVEN_QUBIT_TREE))
        assert strings[all_z] == s("Z0 Z3", 11)

    def test_link_with_child_is_not_a_leg(self):
        with pytest.raises(ForeignLegError):
            leg_string(fixture(FixtureKind.ELEVEN_QUBIT_TREE), Leg(0, "X"))

    def test_owner_outside_tree(self):
        with pytest.raises(ForeignLegError):
            leg_string(fixture(FixtureKind.ELEVEN_QUBIT_TREE), Leg(42, "X"))

    @given(qubit_trees(max_qubits=40))
    @settings(max_examples=100)
    def test_leg_count(self, t):
        assert len(enumerate_legs(t)) == 2 * t.n_qubits + 1

    @given(qubit_trees(max_qubits=20))
    @settings(max_examples=60)
    def test_strings_anticommute_and_only_full_set_is_dependent(self, t):
        strings, all_z = all_strings(t)
        for k in range(len(strings)):
            for l in range(k + 1, len(strings)):
                assert anticommutes(strings[k], strings[l])
        assert not gf2_independent(strings)
        assert gf2_independent(strings[:all_z] + strings[all_z + 1:])

    @given(qubit_trees(max_qubits=15), st.data())
    @settings(max_examples=60)
    def test_any_2n_strings_are_independent(self, t, data):
        strings, _ = all_strings(t)
        dropped = data.draw(st.integers(min_value=0, max_value=len(strings) - 1))
        assert gf2_independent(strings[:dropped] + strings[dropped + 1:])

    @pytest.mark.slow
    def test_leg_count_sweep(self):
        rng = np.random.default_rng(2023)
        for _ in range(500):
            t = random_tree(rng, int(rng.integers(1, 201)))
            assert len(enumerate_legs(t)) == 2 * t.n_qubits + 1

    @pytest.mark.slow
    def test_anticommutation_sweep(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            t = random_tree(rng, int(rng.integers(1, 65)))
            strings, _ = all_strings(t)
            for k in range(len(strings)):
                for l in range(k + 1, len(strings)):
                    assert anticommutes(strings[k], strings[l])
            for dropped in range(len(strings)):
                assert gf2_independent(strings[:dropped] + strings[dropped + 1:])


@pytest.mark.unit
class TestPairing:
    """Test suite for pairing legs into modes"""

    def test_jordan_wigner_strings(self):
        m = pair_modes(classic_tree(MappingKind.JORDAN_WIGNER, 3))
        assert m.even == (s("X0", 3), s("Z0 X1", 3), s("Z0 Z1 X2", 3))
        assert m.odd == (s("Y0", 3), s("Z0 Y1", 3), s("Z0 Z1 Y2", 3))
        assert m.discarded == s("Z0 Z1 Z2", 3)

    def test_mode_assignment(self):
        m = pair_modes(classic_tree(MappingKind.JORDAN_WIGNER, 3), qubit_to_mode=[2, 0, 1])
        assert m.mode_to_qubit == (1, 2, 0)
        assert m.even[2] == s("X0", 3)
        assert m.qubit_of(2) == 0
        assert m.mode_of(0) == 2

    def test_bad_assignment(self):
        with pytest.raises(BijectionError):
            pair_modes(classic_tree(MappingKind.PARITY, 3), qubit_to_mode=[0, 0, 1])

    def test_mode_range(self):
        m = pair_modes(classic_tree(MappingKind.PARITY, 3))
        with pytest.raises(ModeRangeError):
            z_set(m, 3)

    def test_from_strings_needs_even_count(self):
        with pytest.raises(BijectionError):
            MajoranaMapping.from_strings(1, [s("X0", 1)])

    def test_number_operator_is_z_parity(self):
        m = pair_modes(classic_tree(MappingKind.PARITY, 3))
        assert number_operator(m, 0) == s("Z0 Z1", 3)
        assert number_operator(m, 2) == s("Z2", 3)

    @given(qubit_trees(max_qubits=25))
    @settings(max_examples=60)
    def test_number_operators_have_no_phase(self, t):
        m = pair_modes(t)
        for j in range(m.n_modes):
            assert number_operator(m, j).phase_exp == 0

    def test_parity_delocalisation(self):
        m = pair_modes(classic_tree(MappingKind.PARITY, 4))
        assert [delocalisation(m, j) for j in range(4)] == [1, 1, 1, 0]

    def test_z_branch(self):
        t = fixture(FixtureKind.HEAVY_HEX_37_TREE)
        assert z_branch(t) == [0, 3, 6, 12, 18, 30, 33, 36]
        assert h_z(t) == 8

    @given(qubit_trees(max_qubits=40))
    @settings(max_examples=100)
    def test_total_delocalisation_identity(self, t):
        m = pair_modes(t)
        total = sum(delocalisation(m, j) for j in range(m.n_modes))
        assert total == t.n_qubits - h_z(t)


@pytest.mark.unit
class TestFockImage:
    """Test suite for fock_to_bits and the real pairing"""

    def test_jordan_wigner(self):
        m = pair_modes(classic_tree(MappingKind.JORDAN_WIGNER, 3))
        assert fock_to_bits(m, []) == "000"
        assert fock_to_bits(m, [1]) == "010"

    def test_parity(self):
        m = pair_modes(classic_tree(MappingKind.PARITY, 3))
        assert fock_to_bits(m, [0]) == "100"
        assert fock_to_bits(m, [2]) == "111"
        assert fock_to_bits(m, [0, 2]) == "011"

    @pytest.mark.parametrize("kind", list(MappingKind))
    def test_every_occupation_has_its_own_bits(self, kind):
        m = pair_modes(classic_tree(kind, 6))
        images = {fock_to_bits(m, occupied) for occupied in powerset(range(6))}
        assert len(images) == 2 ** 6

    @given(qubit_trees(max_qubits=64), st.booleans(), st.data())
    @settings(max_examples=60)
    def test_distinct_occupations_give_distinct_bits(self, t, real, data):
        m = pair_modes(t, real=real)
        occupations = st.sets(st.integers(min_value=0, max_value=t.n_qubits - 1))
        for _ in range(20):
            first, second = data.draw(occupations), data.draw(occupations)
            if first != second:
                assert fock_to_bits(m, first) != fock_to_bits(m, second)

    def test_needs_source_tree(self):
        with pytest.raises(MissingSourceTreeError):
            fock_to_bits(fixture(FixtureKind.EXOTIC_3NTO), [])

    def test_real_pairing_swaps_odd_y_strings(self):
        t = QubitTree.from_links(2, 0, [(0, 1, "Y")])
        m = pair_modes(t, real=True)
        assert swapped_modes(m) == frozenset({1})
        assert m.even[1] == s("Y0 Y1", 2)
        assert fock_to_bits(m, []) == "11"

    def test_standard_pairing_never_swaps(self):
        t = QubitTree.from_links(2, 0, [(0, 1, "Y")])
        assert swapped_modes(pair_modes(t)) == frozenset()

    @given(qubit_trees(max_qubits=20))
    @settings(max_examples=60)
    def test_real_pairing_even_strings_have_even_y_count(self, t):
        m = pair_modes(t, real=True)
        assert all(e.y_count % 2 == 0 for e in m.even)
