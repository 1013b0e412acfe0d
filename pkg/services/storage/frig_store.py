import json
import logging
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from schemas.frig import DependencyRecord, Frig, FrigDocument, Requirement, RequirementRecord
from services.errors import FrigValidationError
from services.graph.frig import validate_frig

# Set up logging
logger = logging.getLogger(__name__)


def _pydantic_location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first.get("loc", ())) or "document"


def frig_from_document(document: FrigDocument, source: str = "document") -> Frig:
    """
    Convert the 1-based on-disk format into a validated Frig.

    Args:
        document: Parsed FRIG JSON
        source: Name used in error locations (usually the file path)

    Returns:
        Frig: Graph with 0-based ids
    """
    records = sorted(document.requirements, key=lambda r: r.id)
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        duplicate = next(i for i in ids if ids.count(i) > 1)
        raise FrigValidationError(f"duplicate requirement id {duplicate}", f"{source}: requirements")
    if ids != list(range(1, len(ids) + 1)):
        raise FrigValidationError("requirement ids must be 1..n without gaps", f"{source}: requirements")

    n = len(records)
    rho = [[0.0] * n for _ in range(n)]
    seen: Dict[tuple, int] = {}
    for index, dep in enumerate(document.dependencies):
        location = f"{source}: dependencies[{index}]"
        for end in (dep.source, dep.target):
            if not 1 <= end <= n:
                raise FrigValidationError(f"unknown requirement id {end}", location)
        key = (dep.source, dep.target)
        if key in seen:
            raise FrigValidationError(
                f"duplicate dependency r{dep.source}->r{dep.target} (first at dependencies[{seen[key]}])", location
            )
        seen[key] = index
        if dep.source == dep.target:
            raise FrigValidationError(f"self-dependency on r{dep.source}", location)
        if not 0.0 <= dep.strength <= 1.0:
            raise FrigValidationError(
                f"strength {dep.strength} of r{dep.source}->r{dep.target} is outside [0,1]", location
            )
        rho[dep.source - 1][dep.target - 1] = dep.strength

    requirements = [
        Requirement(id=r.id - 1, label=r.label, value=r.value, cost=r.cost) for r in records
    ]
    frig = Frig.from_matrix(requirements, rho)
    report = validate_frig(frig)
    if not report.valid:
        raise FrigValidationError("; ".join(report.describe()), source)
    return frig


def frig_to_document(frig: Frig) -> FrigDocument:
    """Convert a Frig to the 1-based on-disk format; zero strengths are omitted"""
    rho = frig.matrix()
    dependencies = [
        DependencyRecord(source=i + 1, target=j + 1, strength=float(rho[i, j]))
        for i in range(frig.n)
        for j in range(frig.n)
        if rho[i, j] > 0
    ]
    requirements = [
        RequirementRecord(id=r.id + 1, label=r.label, value=r.value, cost=r.cost) for r in frig.requirements
    ]
    return FrigDocument(requirements=requirements, dependencies=dependencies)


def parse_frig(text: str, source: str = "document") -> Frig:
    """Parse FRIG JSON text"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise FrigValidationError(f"malformed JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}")
    try:
        document = FrigDocument.model_validate(raw)
    except ValidationError as e:
        raise FrigValidationError(e.errors()[0]["msg"], f"{source}: {_pydantic_location(e)}")
    return frig_from_document(document, source)


def load_frig(path: Union[str, Path]) -> Frig:
    """Read a FRIG JSON file"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FrigValidationError(f"cannot read file: {e.strerror}", str(path))
    frig = parse_frig(text, str(path))
    logger.info(f"Loaded {frig.n} requirements and {frig.edge_count()} dependencies from {path}")
    return frig


def save_frig(frig: Frig, path: Union[str, Path]) -> Path:
    """Write a FRIG JSON file"""
    path = Path(path)
    report = validate_frig(frig)
    if not report.valid:
        raise FrigValidationError("; ".join(report.describe()), str(path))
    document = frig_to_document(frig)
    payload = document.model_dump(by_alias=True, exclude_none=True)

    # Create temp file first to avoid leaving a half-written graph behind
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_file = path.with_suffix(path.suffix + ".tmp")
    with open(temp_file, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    temp_file.replace(path)
    logger.info(f"Saved {frig.n} requirements to {path}")
    return path
