import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from schemas.frig import Frig, Requirement
from schemas.selection import ModelKind, SelectionModel
from schemas.simulation import SimulationConfig, SurfaceCell, SurfaceSummary
from services.graph.frig import closure, loi
from services.settings import settings
from services.simulation.generator import cell_seed, generate_frig
from services.solvers import solve
from services.storage.datasets import resolve_frig

logger = logging.getLogger(__name__)


def selection_models(threshold: float = 0.0) -> List[SelectionModel]:
    """The three compared models, in output order"""
    return [SelectionModel.bkp(), SelectionModel.bkp_pc(threshold), SelectionModel.gors()]


def _budget_cells(
    frig: Frig,
    budgets: Sequence[int],
    models: Sequence[SelectionModel],
    level: float,
    replication: int,
    seed: int,
) -> List[SurfaceCell]:
    strengths = closure(frig)
    cells = []
    for budget in budgets:
        for model in models:
            result = solve(model, frig.requirements, frig, budget, strengths)
            cells.append(
                SurfaceCell(
                    loi=level,
                    budget=budget,
                    model=model,
                    replication=replication,
                    seed=seed,
                    av_pct=result.av_pct,
                    ov_pct=result.ov_pct,
                )
            )
    return cells


def _run_item(item: Tuple[Tuple[Requirement, ...], float, int, int, int, List[int], float]) -> List[SurfaceCell]:
    catalog, level, loi_index, replication, master_seed, budgets, threshold = item
    seed = cell_seed(master_seed, loi_index, replication)
    frig = generate_frig(catalog, level, seed)
    return _budget_cells(frig, budgets, selection_models(threshold), level, replication, seed)


def run_sweep(config: SimulationConfig, workers: Optional[int] = None) -> List[SurfaceCell]:
    """
    Run every model on random graphs over the configured LOI levels,
    replications and budgets.

    Args:
        config: Sweep parameters
        workers: Process count; defaults to the configured sweep_workers

    Returns:
        List[SurfaceCell]: ordered by (loi, replication, budget, model)
    """
    catalog = resolve_frig(config.dataset).requirements
    items = [
        (catalog, level, loi_index, replication, config.master_seed, list(config.budgets), config.threshold)
        for loi_index, level in enumerate(config.loi_levels)
        for replication in range(config.replications)
    ]
    workers = workers or settings.sweep_workers
    logger.info(
        f"Sweep over {config.dataset}: {len(config.loi_levels)} LOI levels x {config.replications} replications "
        f"x {len(config.budgets)} budgets, {workers} worker(s)"
    )
    if workers > 1:
        # map() yields in submission order, so the output order is unchanged
        with ProcessPoolExecutor(max_workers=workers) as executor:
            batches = list(executor.map(_run_item, items))
    else:
        batches = [_run_item(item) for item in items]
    cells = [cell for batch in batches for cell in batch]
    logger.info(f"Sweep produced {len(cells)} cells")
    return cells


def case_study_curve(frig: Frig, budgets: Sequence[int], threshold: float = 0.0) -> List[SurfaceCell]:
    """AV% and OV% of every model on one fixed graph across a budget range"""
    level = loi(frig) if frig.n >= 2 else 0.0
    return _budget_cells(frig, budgets, selection_models(threshold), level, 0, 0)


def summarize(cells: Sequence[SurfaceCell]) -> List[SurfaceSummary]:
    """Average the percentages over replications for each (loi, budget, model)"""
    groups: Dict[Tuple[float, int, SelectionModel], List[SurfaceCell]] = {}
    for cell in cells:
        groups.setdefault((cell.loi, cell.budget, cell.model), []).append(cell)
    return [
        SurfaceSummary(
            loi=level,
            budget=budget,
            model=model,
            replications=len(members),
            mean_av_pct=float(np.mean([c.av_pct for c in members])),
            mean_ov_pct=float(np.mean([c.ov_pct for c in members])),
        )
        for (level, budget, model), members in groups.items()
    ]


def gap_trend(cells: Sequence[SurfaceCell], budget: int, model: ModelKind = ModelKind.BKP) -> float:
    """
    Spearman correlation between LOI and the replication-averaged AV%-OV%
    gap of one model at one budget. NaN when fewer than two LOI levels or a
    constant gap leave the correlation undefined.
    """
    rows = [s for s in summarize(cells) if s.budget == budget and s.model.kind is model]
    if len(rows) < 2:
        return float("nan")
    levels = [s.loi for s in rows]
    gaps = [s.mean_av_pct - s.mean_ov_pct for s in rows]
    if len(set(gaps)) < 2:
        return float("nan")
    correlation, _ = spearmanr(levels, gaps)
    return float(correlation)
