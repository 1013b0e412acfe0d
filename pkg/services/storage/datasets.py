import json
import logging
from typing import List

from pydantic import BaseModel

from schemas.frig import Frig
from schemas.selection import Selection
from services.errors import FrigValidationError
from services.settings import settings
from services.storage.frig_store import load_frig
from services.valuation.value import parse_selection

logger = logging.getLogger(__name__)

DATASET_IDS = ("example3", "ran", "pmr", "pms")


class PublishedSolution(BaseModel):
    """One row of the published case-study solution table"""

    budget: int
    model: str
    ov_pct: float
    vector: str

    def selection(self, n: int) -> Selection:
        return parse_selection(self.vector, n)


def load_dataset(dataset_id: str) -> Frig:
    """
    Load one of the embedded datasets.

    Args:
        dataset_id: example3 | ran | pmr | pms

    Returns:
        Frig: The dataset; ran and pmr carry no dependencies
    """
    key = dataset_id.strip().lower()
    if key not in DATASET_IDS:
        raise FrigValidationError(f"unknown dataset '{dataset_id}' (expected one of {', '.join(DATASET_IDS)})")
    return load_frig(settings.data_dir / f"{key}.json")


def resolve_frig(reference: str) -> Frig:
    """Accept either an embedded dataset id or a path to a FRIG JSON file"""
    if reference.strip().lower() in DATASET_IDS:
        return load_dataset(reference)
    return load_frig(reference)


def published_solutions() -> List[PublishedSolution]:
    """Solution vectors published for the PMS case study"""
    path = settings.data_dir / "pms_published_solutions.json"
    with open(path, "r", encoding="utf-8") as f:
        payload = json.load(f)
    return [PublishedSolution.model_validate(row) for row in payload["solutions"]]
