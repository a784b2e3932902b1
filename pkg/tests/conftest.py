"""
Test Configuration and Fixtures

This module provides pytest fixtures for testing the mapping toolkit.
Fixtures include the API test client, the shipped heavy-hexagon fixtures
and small paradigmatic mappings.
"""

import pytest
from fastapi.testclient import TestClient
from hypothesis import settings as hypothesis_settings

from app.main import app
from app.models.mapping import Labelling, MappingKind
from app.services.bonsai import label_tree
from app.services.classic_maps import classic_tree, heavy_hex_37_graph, heavy_hex_37_tree
from app.services.export import mapping_to_schema
from app.services.tree import pair_modes

hypothesis_settings.register_profile("default", deadline=None)
hypothesis_settings.load_profile("default")


@pytest.fixture(scope="session")
def test_app():
    """Fixture providing the FastAPI test application"""
    return app


@pytest.fixture(scope="function")
def test_client(test_app):
    """Fixture providing a test client for making API requests"""
    with TestClient(test_app) as client:
        yield client


# Heavy-hexagon fixtures

@pytest.fixture(scope="session")
def heavy_hex_tree():
    """37-qubit heavy-hexagon spanning tree, homogeneously labelled"""
    return heavy_hex_37_tree()


@pytest.fixture(scope="session")
def heavy_hex_graph():
    """37-qubit heavy-hexagon device graph numbered like the tree"""
    return heavy_hex_37_graph()


@pytest.fixture(scope="session")
def homogeneous_mapping(heavy_hex_tree):
    return pair_modes(heavy_hex_tree)


@pytest.fixture(scope="session")
def heterogeneous_mapping(heavy_hex_tree):
    return pair_modes(label_tree(heavy_hex_tree, Labelling.HETEROGENEOUS))


# Paradigmatic mappings

@pytest.fixture
def classic_mapping():
    """Factory building a paradigmatic mapping by kind and size"""
    def build(kind: MappingKind, n: int):
        return pair_modes(classic_tree(kind, n))
    return build


@pytest.fixture
def jw_payload():
    """JSON payload of the 4-mode Jordan-Wigner mapping"""
    return mapping_to_schema(pair_modes(classic_tree(MappingKind.JORDAN_WIGNER, 4))).model_dump()
