import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError

from schemas.mining import PreferenceMatrix
from schemas.simulation import SurfaceCell
from services.errors import FrigValidationError

logger = logging.getLogger(__name__)

SURFACE_HEADER = ["loi", "budget", "model", "replication", "seed", "av_pct", "ov_pct"]


def format_loi(loi: float) -> str:
    return format(loi, ".6g")


def surface_rows(cells: Iterable[SurfaceCell]) -> List[List[str]]:
    return [
        [
            format_loi(cell.loi),
            str(cell.budget),
            cell.model.label,
            str(cell.replication),
            str(cell.seed),
            f"{cell.av_pct:.4f}",
            f"{cell.ov_pct:.4f}",
        ]
        for cell in cells
    ]


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    """Write rows with LF line endings so output is identical across platforms"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(list(rows), columns=list(header), dtype=object)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.info(f"Wrote {path}")
    return path


def write_surface(cells: Iterable[SurfaceCell], path: Union[str, Path]) -> Path:
    return write_csv(path, SURFACE_HEADER, surface_rows(cells))


def _first_row(flags) -> Optional[int]:
    positions = np.flatnonzero(np.asarray(flags, dtype=bool))
    return int(positions[0]) if len(positions) else None


def load_preferences(path: Union[str, Path], n_requirements: Optional[int] = None) -> PreferenceMatrix:
    """
    Read a preference matrix CSV.

    The first row is a header whose cells after the first are user ids; each
    following row is a 1-based requirement id followed by one 0/1 per user.
    Errors point at the offending line, counting the header as line 1.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, index_col=0, dtype=str, skipinitialspace=True, keep_default_na=False)
    except OSError as e:
        raise FrigValidationError(f"cannot read file: {e.strerror}", str(path))
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise FrigValidationError(f"cannot parse preference matrix: {e}", str(path))
    if len(frame) == 0:
        raise FrigValidationError("expected a header row and at least one requirement row", str(path))

    def location(position: int) -> str:
        return f"{path}:{position + 2}"

    tokens = pd.Series(frame.index.astype(str), dtype=str).str.strip()
    ids = tokens.str.lstrip("rR")
    bad = _first_row(~ids.str.isdigit())
    if bad is not None:
        raise FrigValidationError(f"bad requirement id '{tokens.iloc[bad]}'", location(bad))
    numbers = ids.astype(int)
    bad = _first_row(numbers.duplicated())
    if bad is not None:
        raise FrigValidationError(f"duplicate requirement id {numbers.iloc[bad]}", location(bad))

    cells = frame.fillna("").apply(lambda column: column.astype(str).str.strip())
    bad = _first_row(~cells.isin(["0", "1"]).all(axis=1))
    if bad is not None:
        raise FrigValidationError("preference cells must be 0 or 1", location(bad))

    if sorted(numbers) != list(range(1, len(numbers) + 1)):
        raise FrigValidationError("requirement ids must be 1..n without gaps", str(path))
    if n_requirements is not None and len(numbers) != n_requirements:
        raise FrigValidationError(
            f"preference matrix has {len(numbers)} requirements but the catalog has {n_requirements}", str(path)
        )
    ordered = cells.astype(int).set_axis(numbers.to_list(), axis=0).sort_index()
    users = tuple(str(user).strip() for user in frame.columns)
    try:
        matrix = PreferenceMatrix(
            entries=tuple(tuple(row) for row in ordered.to_numpy().tolist()),
            users=users,
        )
    except ValidationError as e:
        raise FrigValidationError(e.errors()[0]["msg"], str(path))
    logger.info(f"Loaded preferences of {matrix.n_users} users over {matrix.n_requirements} requirements from {path}")
    return matrix
