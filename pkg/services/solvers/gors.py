import logging
from typing import List, Optional, Sequence

import numpy as np

from schemas.frig import Frig, Requirement, StrengthClosure
from schemas.selection import SelectionModel, SolveResult
from services.graph.frig import closure as build_closure
from services.solvers.common import build_result, check_budget, fractional_bound, tolerance, value_table

logger = logging.getLogger(__name__)


class OverallValueSearch:
    """
    Depth-first branch and bound over include/exclude decisions.

    Impacts can only grow as more requirements are excluded, so the impact
    floor of a partial assignment (strongest closure edge into the already
    excluded set) bounds every completion: selected requirements contribute
    at most v_i(1 - floor_i), and undecided ones enter a fractional knapsack
    with those discounted values.

    With accumulated_floor set, only vectors whose accumulated value reaches
    it are considered; a knapsack table over the undecided suffix prunes
    partial assignments that can no longer get there.
    """

    def __init__(
        self,
        values: Sequence[float],
        costs: Sequence[int],
        rho_inf: np.ndarray,
        budget: int,
        accumulated_floor: Optional[float] = None,
    ):
        self.n = len(values)
        self.values = [float(v) for v in values]
        self.costs = [int(c) for c in costs]
        self.columns = [[float(rho_inf[i, j]) for i in range(self.n)] for j in range(self.n)]
        self.budget = budget
        self.accumulated_floor = accumulated_floor
        self.tol = tolerance()
        self.nodes = 0

    def maximize(self) -> float:
        """Best overall value, searching dense requirements first"""
        order = sorted(
            range(self.n),
            key=lambda i: float("inf") if self.costs[i] == 0 else self.values[i] / self.costs[i],
            reverse=True,
        )
        self._start(order, include_first=True, floor=None)
        return self.best_value

    def first_optimal(self, optimum: float) -> List[int]:
        """Lexicographically smallest vector reaching the optimum"""
        self._start(list(range(self.n)), include_first=False, floor=optimum)
        return self.best_x

    def _start(self, order: List[int], include_first: bool, floor: Optional[float]) -> None:
        self.order = order
        self.include_first = include_first
        self.floor = floor
        self.best_value = -1.0
        self.best_x: List[int] = []
        self.stopped = False
        self.x = [-1] * self.n
        self.reachable = None
        if self.accumulated_floor is not None:
            capacity = min(self.budget, sum(self.costs))
            self.reachable = value_table(
                [self.values[i] for i in order], [self.costs[i] for i in order], capacity
            )
        self._visit(0, self.budget, [0.0] * self.n, 0.0)

    def _visit(self, pos: int, capacity: int, floor_impacts: List[float], accumulated: float) -> None:
        self.nodes += 1
        if self.reachable is not None:
            reach = self.reachable[pos, min(capacity, self.reachable.shape[1] - 1)]
            if accumulated + reach < self.accumulated_floor - self.tol:
                return
        selected_value = sum(
            self.values[i] * (1.0 - floor_impacts[i]) for i in range(self.n) if self.x[i] == 1
        )
        undecided = [
            (self.values[i] * (1.0 - floor_impacts[i]), self.costs[i]) for i in self.order[pos:]
        ]
        bound = selected_value + fractional_bound(undecided, capacity)
        if self.floor is None:
            if bound <= self.best_value + self.tol:
                return
        elif bound < self.floor - self.tol:
            return

        if pos == self.n:
            self.best_value = selected_value
            self.best_x = list(self.x)
            # The second pass walks vectors in lexicographic order, so its first hit wins
            self.stopped = self.floor is not None
            return

        i = self.order[pos]
        for choice in ((1, 0) if self.include_first else (0, 1)):
            if self.stopped:
                break
            if choice == 1:
                if self.costs[i] > capacity:
                    continue
                self.x[i] = 1
                self._visit(pos + 1, capacity - self.costs[i], floor_impacts, accumulated + self.values[i])
            else:
                self.x[i] = 0
                column = self.columns[i]
                raised = [a if a >= b else b for a, b in zip(floor_impacts, column)]
                self._visit(pos + 1, capacity, raised, accumulated)
        self.x[i] = -1


def gors_solve(
    catalog: Sequence[Requirement],
    frig: Frig,
    budget: int,
    closure: Optional[StrengthClosure] = None,
) -> SolveResult:
    """
    Graph-oriented selection: maximize the overall value within the budget.

    Args:
        catalog: Requirements with integer costs
        frig: Dependency graph whose closure drives the impacts
        budget: Available budget (AC <= budget)
        closure: Precomputed closure of frig, if the caller has one

    Returns:
        SolveResult: objective is the overall value
    """
    budget = check_budget(budget)
    closure = closure or build_closure(frig)
    search = OverallValueSearch(
        [r.value for r in catalog], [r.cost for r in catalog], closure.matrix(), budget
    )
    optimum = search.maximize()
    explored = search.nodes
    x = search.first_optimal(optimum)
    objective = search.best_value
    logger.debug(f"GORS budget={budget}: OV={objective:.6f} after {explored} + {search.nodes - explored} nodes")
    mask = np.array([v == 1 for v in x], dtype=bool)
    return build_result(catalog, mask, SelectionModel.gors(), budget, objective, closure, nodes=search.nodes)
