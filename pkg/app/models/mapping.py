"""
Pydantic models for trees, mappings and mapping requests
"""

from enum import Enum
from pydantic import BaseModel, Field
from typing import List, Optional

from app.models.topology import GraphSchema


class MappingKind(str, Enum):
    JORDAN_WIGNER = "jordan_wigner"
    PARITY = "parity"
    BRAVYI_KITAEV = "bravyi_kitaev"
    JKMN = "jkmn"


class FixtureKind(str, Enum):
    ELEVEN_QUBIT_TREE = "eleven_qubit_tree"
    HEAVY_HEX_37_TREE = "heavy_hex_37_tree"
    HEAVY_HEX_37_GRAPH = "heavy_hex_37_graph"
    EXOTIC_3NTO = "exotic_3nto"
    EXOTIC_1NTO_NON_TREE = "exotic_1nto_non_tree"


class RootPolicy(str, Enum):
    CENTER = "center"
    DIAMETER_END = "diameter_end"


class Labelling(str, Enum):
    HOMOGENEOUS = "homogeneous"
    HETEROGENEOUS = "heterogeneous"


class ExportFormat(str, Enum):
    JSON = "json"
    DOT = "dot"
    TABLE = "table"
    CSV = "csv"


class LinkSchema(BaseModel):
    parent: int
    child: int
    label: str = Field(..., pattern="^[XYZ]$")


class TreeSchema(BaseModel):
    n: int = Field(..., ge=1)
    root: int = Field(..., ge=0)
    links: List[LinkSchema] = Field(default_factory=list)


class ModeSchema(BaseModel):
    qubit: int = Field(..., ge=0, description="Qubit the mode is identified with")
    even: str = Field(..., description="Canonical string of the even Majorana")
    odd: str = Field(..., description="Canonical string of the odd Majorana")


class MappingSchema(BaseModel):
    n: int = Field(..., ge=1)
    modes: List[ModeSchema] = Field(..., min_length=1)
    discarded: Optional[str] = Field(None, description="The unused all-Z string of a tree mapping")
    tree: Optional[TreeSchema] = Field(None, description="Source tree, when the mapping came from one")
    virtual_edges: List[List[int]] = Field(default_factory=list)


class GrowthConfig(BaseModel):
    """Configuration of the tree-growing heuristic"""
    root: Optional[int] = Field(None, ge=0, description="Explicit root qubit")
    root_policy: RootPolicy = Field(RootPolicy.CENTER, description="How to pick the root when none is given")
    seed: Optional[int] = Field(None, description="Seed for the random choices; None picks lowest indices")
    labelling: Labelling = Field(Labelling.HOMOGENEOUS, description="Labelling strategy")
    real_pairing: bool = Field(False, description="Pair legs so that every a_j is a real matrix")


class GrowRequest(BaseModel):
    graph: GraphSchema
    config: GrowthConfig = Field(default_factory=GrowthConfig)


class ReportRequest(BaseModel):
    mapping: MappingSchema
    graph: Optional[GraphSchema] = None
    seed: Optional[int] = None
    enumerate_doubles: bool = False


class ExportRequest(BaseModel):
    mapping: MappingSchema
    format: ExportFormat = ExportFormat.TABLE
    unicode: bool = False


class ExcitationRequest(BaseModel):
    mapping: MappingSchema
    graph: GraphSchema
    modes: List[int] = Field(..., min_length=2, max_length=4)
