"""
Mappings router - Build, verify, report on and export fermion-to-qubit mappings
"""

from fastapi import APIRouter, Body, HTTPException, Path, Query
from typing import Optional
from app.core.exceptions import BonsaiError
from app.models.mapping import (
    ExportRequest,
    FixtureKind,
    GrowRequest,
    MappingKind,
    MappingSchema,
    ReportRequest,
)
from app.models.report import CriteriaReport, MappingReport
from app.services.bonsai import bonsai
from app.services.classic_maps import classic_tree, fixture
from app.services.export import (
    export_mapping,
    graph_from_schema,
    graph_to_schema,
    mapping_from_schema,
    mapping_to_schema,
    tree_to_schema,
)
from app.services.metrics import report
from app.services.topology import HardwareGraph
from app.services.tree import MajoranaMapping, QubitTree, pair_modes
from app.services.verify import check_mapping
import logging

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/v1/mappings", tags=["mappings"])


@router.get("/classic/{kind}", response_model=MappingSchema)
def get_classic_mapping(
    kind: str = Path(..., description="jordan_wigner, parity, bravyi_kitaev or jkmn"),
    n: int = Query(..., ge=1, description="Number of modes")
):
    """Paradigmatic mapping generated by its ternary tree"""
    try:
        try:
            mapping_kind = MappingKind(kind)
        except ValueError:
            raise HTTPException(status_code=404, detail=f"Unknown mapping kind '{kind}'")

        m = pair_modes(classic_tree(mapping_kind, n))
        logger.info(f"Built {mapping_kind.value} mapping with {n} modes")
        return mapping_to_schema(m)

    except HTTPException:
        raise
    except BonsaiError as e:
        logger.error(f"Invalid classic mapping request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building classic mapping: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.get("/fixtures/{name}")
def get_fixture(name: str = Path(..., description="Fixture name, e.g. heavy_hex_37_tree")):
    """Shipped constant tree, mapping or device graph"""
    try:
        try:
            kind = FixtureKind(name)
        except ValueError:
            raise HTTPException(status_code=404, detail=f"Unknown fixture '{name}'")

        value = fixture(kind)
        if isinstance(value, QubitTree):
            return {"fixture": kind.value, "type": "tree", "data": tree_to_schema(value).model_dump()}
        if isinstance(value, HardwareGraph):
            return {"fixture": kind.value, "type": "graph", "data": graph_to_schema(value).model_dump()}
        return {"fixture": kind.value, "type": "mapping", "data": mapping_to_schema(value).model_dump()}

    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Error loading fixture: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.post("/grow", response_model=MappingSchema)
def grow_mapping(request: GrowRequest = Body(...)):
    """Run the tree-growing heuristic on a device graph and pair the result"""
    try:
        m = bonsai(graph_from_schema(request.graph), request.config)
        return mapping_to_schema(m)

    except BonsaiError as e:
        logger.error(f"Invalid grow request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error growing mapping: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.post("/verify", response_model=CriteriaReport)
def verify_mapping(
    mapping: MappingSchema = Body(...),
    vacuum: Optional[str] = Query(None, description="Vacuum candidate bitstring, qubit 0 first")
):
    """Evaluate the four mapping criteria"""
    try:
        return check_mapping(mapping_from_schema(mapping), vacuum)

    except BonsaiError as e:
        logger.error(f"Invalid mapping: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error verifying mapping: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.post("/report", response_model=MappingReport)
def report_mapping(request: ReportRequest = Body(...)):
    """Weight, delocalisation, NTO and optional routing statistics"""
    try:
        m: MajoranaMapping = mapping_from_schema(request.mapping)
        g = graph_from_schema(request.graph) if request.graph is not None else None
        return report(m, g, seed=request.seed, enumerate_doubles=request.enumerate_doubles)

    except BonsaiError as e:
        logger.error(f"Invalid report request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building report: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.post("/export")
def export(request: ExportRequest = Body(...)):
    """Render a mapping as JSON, DOT, an operator table or CSV"""
    try:
        content = export_mapping(mapping_from_schema(request.mapping), request.format, request.unicode)
        return {"format": request.format.value, "content": content}

    except BonsaiError as e:
        logger.error(f"Invalid export request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error exporting mapping: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")
