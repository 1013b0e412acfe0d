from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from schemas.selection import SelectionModel

DEFAULT_LOI_LEVELS = [round(0.1 * k, 1) for k in range(11)]
DEFAULT_BUDGETS = list(range(1, 121))


class SimulationConfig(BaseModel):
    """Parameters of a random-dependency sweep"""

    model_config = ConfigDict(frozen=True)

    dataset: str = Field(..., description="ran | pmr | path to a FRIG JSON catalog")
    loi_levels: List[float] = Field(default_factory=lambda: list(DEFAULT_LOI_LEVELS))
    budgets: List[int] = Field(default_factory=lambda: list(DEFAULT_BUDGETS))
    replications: int = Field(1, ge=1)
    master_seed: int = Field(0, ge=0, lt=2**64)
    threshold: float = Field(0.0, ge=0.0, le=1.0)

    @field_validator("loi_levels")
    @classmethod
    def loi_in_range(cls, levels: List[float]) -> List[float]:
        if not levels:
            raise ValueError("at least one LOI level is required")
        for level in levels:
            if not 0.0 <= level <= 1.0:
                raise ValueError(f"LOI level {level} is outside [0,1]")
        return levels

    @field_validator("budgets")
    @classmethod
    def budgets_positive(cls, budgets: List[int]) -> List[int]:
        if not budgets:
            raise ValueError("at least one budget is required")
        if any(b <= 0 for b in budgets):
            raise ValueError("budgets must be positive")
        return budgets


class SurfaceCell(BaseModel):
    """One (LOI, budget, model) result of a sweep"""

    model_config = ConfigDict(frozen=True)

    loi: float
    budget: int
    model: SelectionModel
    replication: int
    seed: int
    av_pct: float = Field(..., ge=0.0, le=100.0 + 1e-9)
    ov_pct: float = Field(..., ge=0.0, le=100.0 + 1e-9)


class SurfaceSummary(BaseModel):
    """Replication-averaged percentages for one (LOI, budget, model)"""

    loi: float
    budget: int
    model: SelectionModel
    replications: int
    mean_av_pct: float
    mean_ov_pct: float
