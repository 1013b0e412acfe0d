import logging
from typing import Optional, Sequence

import numpy as np

from schemas.frig import Frig, Requirement, StrengthClosure
from schemas.selection import ModelKind, SelectionModel, SolveResult
from services.errors import PreconditionError
from services.graph.frig import closure as build_closure
from services.settings import settings
from services.solvers.common import build_result, check_budget, tolerance
from services.solvers.precedence import precedence_constraints

logger = logging.getLogger(__name__)

# Cells of the (rows x n x n) impact tensor evaluated at once
_CHUNK_CELLS = 1 << 22


def _subset_rows(n: int, rows: np.ndarray) -> np.ndarray:
    """Rows of the subset table; bit n-1-i of the row index is x_i"""
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((rows[:, None] >> shifts[None, :]) & 1).astype(bool)


def _subset_block(n: int, start: int, stop: int) -> np.ndarray:
    return _subset_rows(n, np.arange(start, stop, dtype=np.int64))


def _overall_values(subsets: np.ndarray, values: np.ndarray, rho_inf: np.ndarray) -> np.ndarray:
    if subsets.shape[1] == 0:
        return np.zeros(len(subsets))
    excluded_strength = np.where(~subsets[:, None, :], rho_inf[None, :, :], 0.0)
    impacts = excluded_strength.max(axis=2)
    return np.sum(subsets * values * (1.0 - impacts), axis=1)


def brute_force_solve(
    catalog: Sequence[Requirement],
    frig: Frig,
    budget: int,
    model: SelectionModel,
    closure: Optional[StrengthClosure] = None,
) -> SolveResult:
    """
    Enumerate every subset and keep the best feasible one.

    Ties are broken the way the exact solvers break them: for BKP and
    BKP-PC the higher overall value wins first, then the lexicographically
    smallest vector of (x_1, ..., x_n). Subsets are scanned in that
    lexicographic order, so the first survivor is returned.
    """
    budget = check_budget(budget)
    n = len(catalog)
    if n > settings.brute_force_limit:
        raise PreconditionError(
            f"exhaustive search is limited to {settings.brute_force_limit} requirements, got {n}"
        )
    closure = closure or build_closure(frig)
    values = np.array([r.value for r in catalog], dtype=float)
    costs = np.array([r.cost for r in catalog], dtype=np.int64)
    rho_inf = closure.matrix()
    constraints = precedence_constraints(frig, model.threshold) if model.kind is ModelKind.BKP_PC else []

    total = 1 << n
    objectives = np.full(total, -np.inf)
    step = max(1, _CHUNK_CELLS // max(1, n * n))
    for start in range(0, total, step):
        stop = min(total, start + step)
        subsets = _subset_block(n, start, stop)
        feasible = subsets @ costs <= budget
        for i, j in constraints:
            feasible &= ~(subsets[:, i] & ~subsets[:, j])
        if model.kind is ModelKind.GORS:
            objective = _overall_values(subsets, values, rho_inf)
        else:
            objective = subsets @ values
        objectives[start:stop] = np.where(feasible, objective, -np.inf)

    tol = tolerance()
    best = objectives.max()
    candidates = np.flatnonzero(objectives >= best - tol)
    if model.kind is not ModelKind.GORS and len(candidates) > 1:
        overall = np.concatenate(
            [
                _overall_values(_subset_rows(n, candidates[k : k + step]), values, rho_inf)
                for k in range(0, len(candidates), step)
            ]
        )
        candidates = candidates[overall >= overall.max() - tol]
    index = int(candidates[0])
    mask = _subset_block(n, index, index + 1)[0]
    logger.debug(f"brute force {model.label} budget={budget}: objective={best} at subset {index} of {total}")
    return build_result(catalog, mask, model, budget, float(objectives[index]), closure, nodes=total)
