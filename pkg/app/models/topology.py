"""
Pydantic models for hardware graphs and routing costs
"""

from enum import Enum
from pydantic import BaseModel, Field
from typing import List, Optional


class TopologyKind(str, Enum):
    HEAVY_HEXAGON = "heavy_hexagon"
    LINEAR = "linear"
    STAR = "star"
    GRID = "grid"
    COMPLETE = "complete"


class GraphSchema(BaseModel):
    n: int = Field(..., ge=1, description="Number of qubits")
    edges: List[List[int]] = Field(default_factory=list, description="Undirected couplings [u, v]")


class TopologyRequest(BaseModel):
    kind: TopologyKind
    size: Optional[int] = Field(None, description="n for linear/star/complete, d for heavy_hexagon")
    rows: Optional[int] = Field(None, description="Rows of a grid")
    cols: Optional[int] = Field(None, description="Columns of a grid")


class GraphMetrics(BaseModel):
    n: int
    eccentricity: List[int]
    center: List[int]
    diameter: int
    diameter_path: List[int]
    distances: List[List[int]]


class SteinerEntry(BaseModel):
    support: List[int] = Field(..., description="Qubits the operator acts on")
    steiner_nodes: List[int] = Field(..., description="Nodes of the connecting Steiner tree")
    overhead: int = Field(..., description="Bridging qubits: Steiner nodes outside the support")
    swaps: int = Field(..., description="SWAP gates under the out-and-back convention")
    exact: bool = Field(..., description="False when the 2-approximation was used")


class SwapCost(BaseModel):
    modes: List[int]
    per_string: List[SteinerEntry]
    total_overhead: int
    union: SteinerEntry = Field(..., description="Cost of connecting the support of the whole term")
