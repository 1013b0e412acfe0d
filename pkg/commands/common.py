import re
from typing import List, Sequence

import numpy as np
from pydantic import ValidationError

from schemas.selection import ModelKind, SelectionModel
from services.errors import PreconditionError

_RANGE = re.compile(r"^\s*(-?[\d.]+)\s*\.\.\s*(-?[\d.]+)\s*(?::\s*([\d.]+))?\s*$")


def format_number(value: float) -> str:
    """Shortest fixed-point rendering with at most six decimals (18.0 -> 18)"""
    if value != value:
        return "nan"
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def format_pct(value: float) -> str:
    return f"{value:.2f}%"


def selection_model(kind: ModelKind, threshold: float = 0.0) -> SelectionModel:
    """Build a selection model from command-line values; an out-of-range threshold is a precondition failure"""
    try:
        return SelectionModel(kind=kind, threshold=threshold)
    except ValidationError as e:
        raise PreconditionError(f"--threshold {threshold}: {e.errors()[0]['msg']}")


def parse_int_list(text: str) -> List[int]:
    """
    Parse budgets given as a comma list (10,20,30), an inclusive range
    (1..120) or a stepped range (10..100:10), or any comma-mix of those.
    """
    result: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        match = _RANGE.match(part)
        try:
            if match:
                start, stop = int(match.group(1)), int(match.group(2))
                step = int(match.group(3) or 1)
                if step <= 0 or stop < start:
                    raise ValueError(part)
                result.extend(range(start, stop + 1, step))
            else:
                result.append(int(part))
        except ValueError:
            raise PreconditionError(f"cannot read integer list entry '{part}'")
    if not result:
        raise PreconditionError("empty integer list")
    return result


def parse_float_list(text: str, default_step: float = 0.1) -> List[float]:
    """Parse LOI levels: a comma list (0.05,0.2) or a range (0..1 or 0..1:0.05)"""
    result: List[float] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        match = _RANGE.match(part)
        try:
            if match:
                start, stop = float(match.group(1)), float(match.group(2))
                step = float(match.group(3) or default_step)
                if step <= 0 or stop < start:
                    raise ValueError(part)
                count = int(np.floor((stop - start) / step + 1e-9)) + 1
                result.extend(round(start + k * step, 10) for k in range(count))
            else:
                result.append(float(part))
        except ValueError:
            raise PreconditionError(f"cannot read number list entry '{part}'")
    if not result:
        raise PreconditionError("empty number list")
    return result


def parse_pair(text: str) -> List[int]:
    """Parse a comma list of 1-based requirement ids (r4,r3 or 4,3) into 0-based indices"""
    ids = []
    for token in text.split(","):
        match = re.fullmatch(r"\s*[rR]?(\d+)\s*", token)
        if not match or int(match.group(1)) < 1:
            raise PreconditionError(f"bad requirement id '{token.strip()}'")
        ids.append(int(match.group(1)) - 1)
    return ids


def render_matrix(matrix: np.ndarray, labels: Sequence[str]) -> List[str]:
    """Lines of a labelled square matrix, columns padded to a common width"""
    cells = [[format_number(float(v)) for v in row] for row in matrix]
    width = max([len(label) for label in labels] + [len(c) for row in cells for c in row] + [1])
    lines = [" " * width + " " + " ".join(label.rjust(width) for label in labels)]
    for label, row in zip(labels, cells):
        lines.append(label.rjust(width) + " " + " ".join(c.rjust(width) for c in row))
    return lines
