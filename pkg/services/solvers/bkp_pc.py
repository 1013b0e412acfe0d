import logging
from typing import List, Optional, Sequence

import numpy as np

from schemas.frig import Frig, Requirement, StrengthClosure
from schemas.selection import SelectionModel, SolveResult
from services.graph.frig import closure as build_closure
from services.solvers.common import build_result, check_budget, fractional_bound, tolerance
from services.solvers.precedence import PrecedenceGroups, precedence_groups

logger = logging.getLogger(__name__)


class _ClosedSetSearch:
    """
    Branch and bound over precedence groups.

    Taking a group forces every group it requires; dropping a group forces
    out every group that requires it. The bound is the value already taken
    plus a fractional knapsack over the groups still open. For the overall
    value each requirement is discounted by the strongest closure edge into
    the requirements dropped so far, which only grows further down.
    """

    def __init__(
        self,
        groups: PrecedenceGroups,
        values: Sequence[float],
        costs: Sequence[int],
        rho_inf: np.ndarray,
        budget: int,
    ):
        self.groups = groups
        self.n = len(values)
        self.item_values = [float(v) for v in values]
        self.values = [float(sum(values[i] for i in m)) for m in groups.members]
        self.costs = [int(sum(costs[i] for i in m)) for m in groups.members]
        self.columns = [[float(rho_inf[i, j]) for i in range(self.n)] for j in range(self.n)]
        self.budget = budget
        self.tol = tolerance()
        self.nodes = 0

    def maximize(self) -> float:
        """Best accumulated value over closed selections"""
        self._start(self._dense_order(), take_first=True)
        return self.best_value

    def maximize_overall(self, optimum: float) -> float:
        """Best overall value among closed selections that reach the accumulated optimum"""
        self._start(self._dense_order(), take_first=True, overall=True, accumulated_floor=optimum)
        return self.best_value

    def first_optimal(self, optimum: float, overall: float) -> List[int]:
        # Groups are numbered by smallest member, so group order is requirement order
        self._start(
            list(range(self.groups.count)),
            take_first=False,
            accumulated_floor=optimum,
            overall_floor=overall,
            stop_at_first=True,
        )
        return self.best_assignment

    def _dense_order(self) -> List[int]:
        return sorted(
            range(self.groups.count),
            key=lambda g: float("inf") if self.costs[g] == 0 else self.values[g] / self.costs[g],
            reverse=True,
        )

    def _start(
        self,
        order: List[int],
        take_first: bool,
        overall: bool = False,
        accumulated_floor: Optional[float] = None,
        overall_floor: Optional[float] = None,
        stop_at_first: bool = False,
    ) -> None:
        self.order = order
        self.take_first = take_first
        self.overall = overall
        self.accumulated_floor = accumulated_floor
        self.overall_floor = overall_floor
        self.stop_at_first = stop_at_first
        self.best_value = -1.0
        self.best_assignment: List[int] = []
        self.stopped = False
        self._visit(0, [-1] * self.groups.count, self.budget, 0.0, [0.0] * self.n)

    def _take(self, g: int, assignment: List[int], capacity: int):
        forced = [g] + [h for h in self.groups.requires[g] if assignment[h] != 1]
        if any(assignment[h] == 0 for h in forced):
            return None
        cost = sum(self.costs[h] for h in forced)
        if cost > capacity:
            return None
        taken = list(assignment)
        for h in forced:
            taken[h] = 1
        return taken, capacity - cost, sum(self.values[h] for h in forced)

    def _drop(self, g: int, assignment: List[int], floor_impacts: List[float]):
        forced = [g] + list(self.groups.required_by[g])
        if any(assignment[h] == 1 for h in forced):
            return None
        dropped = list(assignment)
        raised = floor_impacts
        for h in forced:
            dropped[h] = 0
            for i in self.groups.members[h]:
                raised = [a if a >= b else b for a, b in zip(raised, self.columns[i])]
        return dropped, raised

    def _overall_bound(self, assignment: List[int], open_groups: List[int], capacity: int, floor_impacts: List[float]) -> float:
        discounted = [v * (1.0 - f) for v, f in zip(self.item_values, floor_impacts)]
        members = self.groups.members
        selected = sum(discounted[i] for g, a in enumerate(assignment) if a == 1 for i in members[g])
        open_items = [(sum(discounted[i] for i in members[g]), self.costs[g]) for g in open_groups]
        return selected + fractional_bound(open_items, capacity)

    def _visit(self, pos: int, assignment: List[int], capacity: int, value: float, floor_impacts: List[float]) -> None:
        self.nodes += 1
        while pos < len(self.order) and assignment[self.order[pos]] != -1:
            pos += 1
        open_groups = [g for g in self.order[pos:] if assignment[g] == -1]
        bound = value + fractional_bound([(self.values[g], self.costs[g]) for g in open_groups], capacity)
        if self.accumulated_floor is not None and bound < self.accumulated_floor - self.tol:
            return
        if self.overall or self.overall_floor is not None:
            overall_bound = self._overall_bound(assignment, open_groups, capacity, floor_impacts)
            if self.overall_floor is not None and overall_bound < self.overall_floor - self.tol:
                return
            if self.overall:
                bound = overall_bound
        if not self.stop_at_first and bound <= self.best_value + self.tol:
            return

        if pos == len(self.order):
            # Nothing is open at a leaf, so the bound is the exact objective
            self.best_value = bound
            self.best_assignment = assignment
            self.stopped = self.stop_at_first
            return

        g = self.order[pos]
        for take in ((True, False) if self.take_first else (False, True)):
            if self.stopped:
                break
            if take:
                step = self._take(g, assignment, capacity)
                if step is not None:
                    taken, left, gained = step
                    self._visit(pos + 1, taken, left, value + gained, floor_impacts)
            else:
                step = self._drop(g, assignment, floor_impacts)
                if step is not None:
                    dropped, raised = step
                    self._visit(pos + 1, dropped, capacity, value, raised)


def bkppc_solve(
    catalog: Sequence[Requirement],
    frig: Frig,
    budget: int,
    threshold: float = 0.0,
    closure: Optional[StrengthClosure] = None,
) -> SolveResult:
    """
    Binary knapsack with precedence constraints x_i <= x_j for every explicit
    dependency (r_i, r_j) stronger than the threshold.

    Ties between AV optima go to the higher overall value, then to the
    lexicographically smallest vector, as in bkp_solve.

    Args:
        catalog: Requirements with integer costs
        frig: Dependency graph the constraints are read from
        budget: Available budget (AC <= budget)
        threshold: Dependencies at or below this strength are ignored
        closure: Precomputed closure of frig, used for ties and the overall value

    Returns:
        SolveResult: objective is the accumulated value
    """
    budget = check_budget(budget)
    model = SelectionModel.bkp_pc(threshold)
    groups = precedence_groups(frig, threshold)
    closure = closure or build_closure(frig)
    search = _ClosedSetSearch(
        groups, [r.value for r in catalog], [r.cost for r in catalog], closure.matrix(), budget
    )
    optimum = search.maximize()
    overall = search.maximize_overall(optimum)
    assignment = search.first_optimal(optimum, overall)

    mask = np.zeros(len(catalog), dtype=bool)
    for g, taken in enumerate(assignment):
        if taken == 1:
            mask[list(groups.members[g])] = True

    result = build_result(catalog, mask, model, budget, search.best_value, closure, nodes=search.nodes)
    if abs(result.accumulated_value - result.overall_value) > tolerance():
        if threshold == 0.0:
            logger.error(f"BKP-PC budget={budget}: AV {result.accumulated_value} differs from OV {result.overall_value}")
        else:
            logger.warning(
                f"BKP-PC budget={budget}, threshold={threshold}: dependencies below the threshold "
                f"leave OV={result.overall_value:.4f} under AV={result.accumulated_value:.4f}"
            )
    logger.debug(f"BKP-PC budget={budget}: AV={result.accumulated_value} over {groups.count} groups, {search.nodes} nodes")
    return result
