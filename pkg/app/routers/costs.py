"""
Costs router - Steiner-tree routing cost of excitation operators
"""

from fastapi import APIRouter, Body, HTTPException
from app.core.exceptions import BonsaiError
from app.models.mapping import ExcitationRequest
from app.models.topology import SwapCost
from app.services.export import graph_from_schema, mapping_from_schema
from app.services.topology import excitation_cost
import logging

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api/v1/costs", tags=["costs"])


@router.post("/excitation", response_model=SwapCost)
def excitation(request: ExcitationRequest = Body(...)):
    """
    Cost of a single (two modes) or double (four modes) excitation

    Every product of one Majorana per mode is connected on the device graph
    with a Steiner tree; bridging qubits are the SWAP proxy.
    """
    try:
        m = mapping_from_schema(request.mapping)
        g = graph_from_schema(request.graph)
        cost = excitation_cost(m, g, request.modes)
        logger.info(f"Excitation {request.modes}: union overhead {cost.union.overhead}")
        return cost

    except BonsaiError as e:
        logger.error(f"Invalid excitation request: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error costing excitation: {e}")
        raise HTTPException(status_code=500, detail=f"Error: {str(e)}")
