"""
Topology router - Device graph generation and graph metrics
"""

from fastapi import APIRouter, Body, HTTPException
from app.core.exceptions import BonsaiError
from app.models.topology import GraphMetrics, GraphSchema, TopologyRequest
from app.services.export import graph_from_schema, graph_to_schema
from app.services.topology import generate, graph_metrics
import logging

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/v1/topologies", tags=["topologies"])


@router.post("/generate", response_model=GraphSchema)
def generate_topology(request: TopologyRequest = Body(...)):
    """Generate a heavy-hexagon, linear, star, grid or complete device graph"""
    try:
        g = generate(request.kind, size=request.size, rows=request.rows, cols=request.cols)
        logger.info(f"Generated {request.kind.value} graph with {g.n_qubits} qubits")
        return graph_to_schema(g)

    except BonsaiError as e:
        logger.error(f"Invalid topology request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error generating topology: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")


@router.post("/metrics", response_model=GraphMetrics)
def topology_metrics(graph: GraphSchema = Body(...)):
    """Distances, eccentricities, center and a diameter path of a device graph"""
    try:
        return graph_metrics(graph_from_schema(graph))

    except BonsaiError as e:
        logger.error(f"Invalid graph: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing graph metrics: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")
