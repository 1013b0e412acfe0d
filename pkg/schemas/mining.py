from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class PreferenceMatrix(BaseModel):
    """Binary requirements x users table; entries[i][j] = 1 iff user j prefers requirement i"""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]
    users: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def check_entries(self) -> "PreferenceMatrix":
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("every requirement row needs one entry per user")
        if not widths or widths == {0}:
            raise ValueError("a preference matrix needs at least one user")
        if any(v not in (0, 1) for row in self.entries for v in row):
            raise ValueError("preference entries must be 0 or 1")
        if self.users is not None and len(self.users) != widths.pop():
            raise ValueError("user header does not match the number of columns")
        return self

    @classmethod
    def from_array(cls, entries) -> "PreferenceMatrix":
        array = np.asarray(entries, dtype=int)
        return cls(entries=tuple(tuple(int(v) for v in row) for row in array))

    @property
    def n_requirements(self) -> int:
        return len(self.entries)

    @property
    def n_users(self) -> int:
        return len(self.entries[0])

    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


class MappingKind(str, Enum):
    LINEAR = "linear"
    CLIPPED_LINEAR = "clipped"
    SMOOTHSTEP = "smooth"


class MembershipMapping(BaseModel):
    """Monotone map from a causal strength to a fuzzy dependency strength"""

    model_config = ConfigDict(frozen=True)

    kind: MappingKind = MappingKind.LINEAR
    lo: float = Field(0.0, ge=0.0, le=1.0)
    hi: float = Field(1.0, ge=0.0, le=1.0)

    @field_validator("hi")
    @classmethod
    def hi_above_lo(cls, hi: float, info) -> float:
        lo = info.data.get("lo", 0.0)
        if hi <= lo:
            raise ValueError("mapping bounds need lo < hi")
        return hi

    @classmethod
    def parse(cls, text: str) -> "MembershipMapping":
        """Parse 'linear', 'clipped:lo,hi' or 'smooth:lo,hi'"""
        name, _, params = text.partition(":")
        kind = MappingKind(name.strip().lower())
        if kind is MappingKind.LINEAR:
            return cls(kind=kind)
        lo, hi = (float(p) for p in params.split(","))
        return cls(kind=kind, lo=lo, hi=hi)


class PearlStrength(BaseModel):
    """Causal strengths eta[i][j] = p(r_i | r_j); NaN where p(r_j) = 0"""

    model_config = ConfigDict(frozen=True)

    eta: Tuple[Tuple[float, ...], ...]
    undefined_columns: List[int] = Field(default_factory=list)

    def matrix(self) -> np.ndarray:
        n = len(self.eta)
        return np.array(self.eta, dtype=float).reshape(n, n)
