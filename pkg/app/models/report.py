"""
Pydantic models for validation, verification and metric reports
"""

from pydantic import BaseModel, Field
from typing import List, Optional


class TreeValidationReport(BaseModel):
    valid: bool = Field(..., description="True when the tree is a valid labelled ternary tree")
    errors: List[str] = Field(default_factory=list, description="Human-readable problems found")
    offending: List[int] = Field(default_factory=list, description="Qubits involved in the problems")


class CriteriaReport(BaseModel):
    """Outcome of the four mapping criteria with witnesses for failures"""
    a_ok: bool = Field(..., description="Every Majorana maps to a Hermitian non-identity Pauli string")
    b_ok: bool = Field(..., description="All Majorana strings pairwise anticommute")
    c_ok: bool = Field(..., description="The strings are algebraically independent over GF(2)")
    d_ok: bool = Field(..., description="Every a_j annihilates the vacuum candidate")
    vacuum: str = Field(..., description="Vacuum candidate bitstring used for criterion D")
    a_witness: Optional[int] = Field(None, description="Index of an offending Majorana string")
    b_witness: Optional[List[int]] = Field(None, description="Indices of a commuting string pair")
    c_witness: Optional[List[int]] = Field(None, description="Indices of a subset multiplying to the identity")
    d_witness: Optional[int] = Field(None, description="Mode whose annihilator does not kill the vacuum")

    @property
    def passed(self) -> bool:
        return self.a_ok and self.b_ok and self.c_ok and self.d_ok


class OracleReport(BaseModel):
    """Dense-matrix verification of a small mapping"""
    n_modes: int
    majorana_residual: float = Field(..., description="max |{R_k, R_l} - 2 delta_kl I|")
    car_residual: float = Field(..., description="max residual of the canonical anticommutation relations")
    vacuum_residual: float = Field(..., description="max norm of a_j applied to the vacuum image")
    max_residual: float
    fock_ok: bool = Field(..., description="Every Fock image is the basis state fock_to_bits predicts")
    fock_mismatches: List[List[int]] = Field(default_factory=list, description="Occupation sets whose image disagrees")
    passed: bool


class WeightStats(BaseModel):
    weights: List[int] = Field(..., description="Pauli weight of e_0, o_0, e_1, o_1, ...")
    min: int
    mean: float
    max: int


class DelocalisationStats(BaseModel):
    per_mode: List[int] = Field(..., description="D_j = |Z_j| - 1 for every mode")
    mean: float
    localised_modes: int = Field(..., description="Modes with D_j = 0")


class SwapSummary(BaseModel):
    single_max: int
    single_mean: float
    double_max: int
    double_mean: float
    double_count: int = Field(..., description="Number of double excitations costed")
    double_enumerated: bool = Field(..., description="True when all double excitations were enumerated")


class MappingReport(BaseModel):
    """Aggregate metrics of a mapping, optionally on a hardware graph"""
    n_modes: int
    root: Optional[int] = None
    tree_height: Optional[int] = None
    weights: WeightStats
    deloc: DelocalisationStats
    h_z: Optional[int] = Field(None, description="Qubits reaching the root through Z links only")
    nto_class: int
    swap: Optional[SwapSummary] = None
    virtual_edges: int = 0
