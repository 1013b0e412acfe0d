import logging
from typing import Optional, Sequence

import numpy as np

from schemas.frig import Requirement, StrengthClosure
from schemas.selection import SelectionModel, SolveResult
from services.solvers.common import build_result, check_budget, tolerance, value_table
from services.solvers.gors import OverallValueSearch

logger = logging.getLogger(__name__)


def bkp_solve(
    catalog: Sequence[Requirement],
    budget: int,
    closure: Optional[StrengthClosure] = None,
) -> SolveResult:
    """
    Binary knapsack: maximize the accumulated value within the budget.

    Solved by dynamic programming over integer costs. Dependencies never
    enter the objective. With a closure, ties between AV optima go to the
    one with the higher overall value, so a zero-value requirement others
    depend on is kept whenever it fits. Remaining ties go to the
    lexicographically smallest vector (x_1 first, 0 before 1).

    Args:
        catalog: Requirements with integer costs
        budget: Available budget (AC <= budget)
        closure: Closure used to break ties and report the overall value;
            without it overall_value is None

    Returns:
        SolveResult: objective is the accumulated value
    """
    budget = check_budget(budget)
    n = len(catalog)
    values = np.array([r.value for r in catalog], dtype=float)
    costs = np.array([r.cost for r in catalog], dtype=np.int64)
    capacity = int(min(budget, costs.sum())) if n else 0
    best = value_table(values, costs, capacity)
    nodes = n * (capacity + 1)

    if closure is None:
        # Walk forward preferring x_k = 0 whenever it keeps the optimum reachable
        tol = tolerance()
        mask = np.zeros(n, dtype=bool)
        remaining = capacity
        for k in range(n):
            if best[k + 1, remaining] >= best[k, remaining] - tol:
                continue
            mask[k] = True
            remaining -= int(costs[k])
    else:
        optimum = float(best[0, capacity])
        search = OverallValueSearch(values, costs, closure.matrix(), budget, accumulated_floor=optimum)
        x = search.first_optimal(search.maximize())
        mask = np.array([v == 1 for v in x], dtype=bool)
        nodes += search.nodes

    objective = float(values[mask].sum())
    logger.debug(f"BKP budget={budget}: AV={objective} over {n} requirements")
    return build_result(catalog, mask, SelectionModel.bkp(), budget, objective, closure, nodes=nodes)
