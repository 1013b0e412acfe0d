from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Requirement(BaseModel):
    """A single requirement with its stakeholder-estimated value and cost"""

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0, description="0-based index; displayed as r_{id+1}")
    label: Optional[str] = None
    value: float = Field(..., ge=0)
    cost: int = Field(..., ge=0)

    @property
    def display_id(self) -> str:
        return f"r{self.id + 1}"


class Frig(BaseModel):
    """
    Fuzzy requirement interdependency graph.

    rho[i][j] is the strength of the explicit value-related dependency from
    requirement i to requirement j; 0 means no explicit dependency. Cell
    ranges are not enforced here so that validate_frig can report them.
    """

    model_config = ConfigDict(frozen=True)

    requirements: Tuple[Requirement, ...]
    rho: Tuple[Tuple[float, ...], ...]

    @model_validator(mode="after")
    def check_shape(self) -> "Frig":
        n = len(self.requirements)
        if len(self.rho) != n or any(len(row) != n for row in self.rho):
            raise ValueError(f"rho must be a {n}x{n} matrix")
        ids = [r.id for r in self.requirements]
        if ids != list(range(n)):
            raise ValueError("requirement ids must be unique and contiguous from 0")
        return self

    @classmethod
    def from_matrix(cls, requirements: List[Requirement], rho) -> "Frig":
        """Build a Frig from any n x n array-like of strengths"""
        matrix = np.asarray(rho, dtype=float)
        return cls(
            requirements=tuple(requirements),
            rho=tuple(tuple(float(v) for v in row) for row in matrix),
        )

    @property
    def n(self) -> int:
        return len(self.requirements)

    def matrix(self) -> np.ndarray:
        return np.array(self.rho, dtype=float).reshape(self.n, self.n)

    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.requirements], dtype=float)

    def costs(self) -> np.ndarray:
        return np.array([r.cost for r in self.requirements], dtype=np.int64)

    def edge_count(self) -> int:
        return int(np.count_nonzero(self.matrix() > 0))


class StrengthClosure(BaseModel):
    """Overall dependency strengths (max-min closure) of a Frig"""

    model_config = ConfigDict(frozen=True)

    rho_inf: Tuple[Tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rho_inf)

    def matrix(self) -> np.ndarray:
        return np.array(self.rho_inf, dtype=float).reshape(self.n, self.n)


class DependencyPath(BaseModel):
    """A sequence of distinct requirement ids (0-based)"""

    model_config = ConfigDict(frozen=True)

    nodes: Tuple[int, ...] = Field(..., min_length=2)

    @field_validator("nodes")
    @classmethod
    def distinct_nodes(cls, nodes: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(set(nodes)) != len(nodes):
            raise ValueError("a dependency path visits each requirement at most once")
        return nodes

    def edges(self) -> List[Tuple[int, int]]:
        return list(zip(self.nodes[:-1], self.nodes[1:]))

    def display(self) -> str:
        return "(" + ",".join(f"r{i + 1}" for i in self.nodes) + ")"


class CellViolation(BaseModel):
    """One matrix cell that breaks a Frig invariant"""

    row: int
    col: int
    value: float
    reason: str


class ValidationReport(BaseModel):
    """Result of validate_frig"""

    valid: bool
    violations: List[CellViolation] = Field(default_factory=list)

    def describe(self) -> List[str]:
        return [
            f"cell (r{v.row + 1},r{v.col + 1}) = {v.value}: {v.reason}"
            for v in self.violations
        ]


# File format models (FRIG JSON, ids 1-based)
class RequirementRecord(BaseModel):
    id: int = Field(..., ge=1)
    label: Optional[str] = None
    value: float = Field(..., ge=0)
    cost: int = Field(..., ge=0)


class DependencyRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(..., alias="from")
    target: int = Field(..., alias="to")
    strength: float


class FrigDocument(BaseModel):
    """Shared on-disk FRIG format"""

    requirements: List[RequirementRecord]
    dependencies: List[DependencyRecord] = Field(default_factory=list)
