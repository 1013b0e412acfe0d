import itertools
import logging
from pathlib import Path
from typing import List, Union

from schemas.frig import Frig
from schemas.selection import ModelKind, Selection, SelectionModel
from services.graph.frig import closure
from services.solvers import solve
from services.storage.datasets import load_dataset, published_solutions
from services.storage.tables import write_csv
from services.valuation.value import evaluate

logger = logging.getLogger(__name__)

VALUATION_HEADER = ["subset", "requirements", "ac", "av", "ov"]
CASE_STUDY_HEADER = [
    "budget",
    "model",
    "objective",
    "vector",
    "av_pct",
    "ov_pct",
    "published_vector",
    "published_ov_pct",
    "evaluated_published_ov_pct",
]
DATA_HEADER = ["dataset", "requirement", "value", "cost"]


def _number(value: float) -> str:
    return f"{value:.6f}"


def closure_header(frig: Frig) -> List[str]:
    return ["requirement"] + [req.display_id for req in frig.requirements]


def closure_table(frig: Frig) -> List[List[str]]:
    """Rows of the overall-strength matrix, one per requirement"""
    rho_inf = closure(frig).matrix()
    return [[f"r{i + 1}"] + [_number(float(v)) for v in rho_inf[i]] for i in range(frig.n)]


def subsets_by_size(n: int) -> List[Selection]:
    """Every subset of n requirements, ordered by size and then lexicographically by members"""
    return [
        Selection.from_indices(n, members)
        for size in range(n + 1)
        for members in itertools.combinations(range(n), size)
    ]


def valuation_table(frig: Frig) -> List[List[str]]:
    """AC, AV and OV of every subset of a small catalog"""
    strengths = closure(frig)
    rows = []
    for index, selection in enumerate(subsets_by_size(frig.n)):
        result = evaluate(frig.requirements, strengths, selection)
        rows.append(
            [
                f"s{index}",
                selection.set_string(),
                str(result.accumulated_cost),
                _number(result.accumulated_value),
                _number(result.overall_value),
            ]
        )
    return rows


def case_study_table(frig: Frig) -> List[List[str]]:
    """
    Solve every published (budget, model) row of the case study and put the
    solver's answer next to the published vector and its evaluated OV%.
    """
    strengths = closure(frig)
    rows = []
    for published in published_solutions():
        model = SelectionModel(kind=ModelKind(published.model.lower()))
        result = solve(model, frig.requirements, frig, published.budget, strengths)
        printed = evaluate(frig.requirements, strengths, published.selection(frig.n))
        rows.append(
            [
                str(published.budget),
                model.label,
                _number(result.objective),
                result.selection.vector_string(),
                f"{result.av_pct:.2f}",
                f"{result.ov_pct:.2f}",
                published.vector,
                f"{published.ov_pct:.2f}",
                f"{printed.ov_pct:.2f}",
            ]
        )
        logger.info(f"Case study budget {published.budget} {model.label}: OV% {result.ov_pct:.2f}")
    return rows


def data_table() -> List[List[str]]:
    """Values and costs of the two simulation catalogs"""
    rows = []
    for dataset_id in ("ran", "pmr"):
        for req in load_dataset(dataset_id).requirements:
            rows.append([dataset_id, req.display_id, format(req.value, "g"), str(req.cost)])
    return rows


def reproduce_tables(out_dir: Union[str, Path]) -> List[Path]:
    """
    Regenerate the reference tables as CSV files.

    Args:
        out_dir: Directory to write into (created if missing)

    Returns:
        List[Path]: table1.csv, table2.csv, table4.csv and data_table.csv
    """
    out_dir = Path(out_dir)
    example = load_dataset("example3")
    pms = load_dataset("pms")
    return [
        write_csv(out_dir / "table1.csv", closure_header(example), closure_table(example)),
        write_csv(out_dir / "table2.csv", VALUATION_HEADER, valuation_table(example)),
        write_csv(out_dir / "table4.csv", CASE_STUDY_HEADER, case_study_table(pms)),
        write_csv(out_dir / "data_table.csv", DATA_HEADER, data_table()),
    ]
