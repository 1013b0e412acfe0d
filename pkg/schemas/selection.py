from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Selection(BaseModel):
    """Indicator vector over requirements (1 = selected)"""

    model_config = ConfigDict(frozen=True)

    x: Tuple[int, ...]

    @field_validator("x")
    @classmethod
    def binary_entries(cls, x: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(v not in (0, 1) for v in x):
            raise ValueError("selection entries must be 0 or 1")
        return x

    @classmethod
    def from_indices(cls, n: int, selected) -> "Selection":
        chosen = set(selected)
        return cls(x=tuple(1 if i in chosen else 0 for i in range(n)))

    @classmethod
    def from_mask(cls, mask) -> "Selection":
        return cls(x=tuple(int(bool(v)) for v in mask))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def selected(self) -> List[int]:
        return [i for i, v in enumerate(self.x) if v]

    @property
    def excluded(self) -> List[int]:
        return [i for i, v in enumerate(self.x) if not v]

    def mask(self) -> np.ndarray:
        return np.array(self.x, dtype=bool)

    def vector_string(self) -> str:
        """Solution-vector format used by the case-study tables, e.g. {0,1,1,0}"""
        return "{" + ",".join(str(v) for v in self.x) + "}"

    def set_string(self) -> str:
        return "{" + ",".join(f"r{i + 1}" for i in self.selected) + "}"


class ImpactVector(BaseModel):
    """Impact of the excluded requirements on each selected requirement"""

    model_config = ConfigDict(frozen=True)

    impacts: Tuple[float, ...]


class Evaluation(BaseModel):
    """Accumulated and overall value of one selection"""

    model_config = ConfigDict(frozen=True)

    selection: Selection
    accumulated_cost: int
    accumulated_value: float
    overall_value: float
    total_value: float
    impacts: ImpactVector
    customer_values: Tuple[float, ...]

    @property
    def av_pct(self) -> float:
        return 100.0 * self.accumulated_value / self.total_value if self.total_value > 0 else 100.0

    @property
    def ov_pct(self) -> float:
        return 100.0 * self.overall_value / self.total_value if self.total_value > 0 else 100.0


class SdpResult(BaseModel):
    """Outcome of the selection deficiency check"""

    model_config = ConfigDict(frozen=True)

    occurs: bool
    witness: Optional[Tuple[int, int]] = None


class ModelKind(str, Enum):
    BKP = "bkp"
    BKP_PC = "bkp-pc"
    GORS = "gors"


class SelectionModel(BaseModel):
    """Selection model plus its precedence threshold (BKP-PC only)"""

    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    threshold: float = Field(0.0, ge=0.0, le=1.0)

    @property
    def label(self) -> str:
        return self.kind.name.replace("_", "-")

    @classmethod
    def bkp(cls) -> "SelectionModel":
        return cls(kind=ModelKind.BKP)

    @classmethod
    def bkp_pc(cls, threshold: float = 0.0) -> "SelectionModel":
        return cls(kind=ModelKind.BKP_PC, threshold=threshold)

    @classmethod
    def gors(cls) -> "SelectionModel":
        return cls(kind=ModelKind.GORS)


class SolveResult(BaseModel):
    """
    Optimal selection returned by an exact solver.

    overall_value is None when the solver ran without a closure (plain BKP
    needs none); ov_pct is None then as well.
    """

    model_config = ConfigDict(frozen=True)

    selection: Selection
    objective: float
    model: SelectionModel
    budget: int
    optimal: bool = True
    accumulated_cost: int
    accumulated_value: float
    overall_value: Optional[float] = None
    total_value: float
    nodes: int = 0

    @property
    def av_pct(self) -> float:
        return 100.0 * self.accumulated_value / self.total_value if self.total_value > 0 else 100.0

    @property
    def ov_pct(self) -> Optional[float]:
        if self.overall_value is None:
            return None
        return 100.0 * self.overall_value / self.total_value if self.total_value > 0 else 100.0
