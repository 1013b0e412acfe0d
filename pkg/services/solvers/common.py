import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from schemas.frig import Requirement, StrengthClosure
from schemas.selection import Selection, SelectionModel, SolveResult
from services.errors import PreconditionError
from services.settings import settings
from services.valuation.value import overall_value_for_mask

logger = logging.getLogger(__name__)


def check_budget(budget: int) -> int:
    if budget < 0:
        raise PreconditionError(f"budget must be non-negative, got {budget}")
    return int(budget)


def tolerance() -> float:
    return settings.tolerance


def fractional_bound(items: Sequence[Tuple[float, int]], capacity: int) -> float:
    """
    Linear-relaxation bound of a 0/1 knapsack: take items by value density,
    splitting the first one that does not fit.

    Args:
        items: (value, cost) pairs
        capacity: Remaining budget

    Returns:
        float: Upper bound on the value that fits into capacity
    """
    bound = 0.0
    ranked: List[Tuple[float, int]] = []
    for value, cost in items:
        if value <= 0.0:
            continue
        if cost == 0:
            bound += value
        else:
            ranked.append((value, cost))
    ranked.sort(key=lambda item: item[0] / item[1], reverse=True)
    for value, cost in ranked:
        if cost <= capacity:
            capacity -= cost
            bound += value
        else:
            bound += value * capacity / cost
            break
    return bound


def value_table(values: Sequence[float], costs: Sequence[int], capacity: int) -> np.ndarray:
    """
    Knapsack table over suffixes: table[k, b] is the highest value reachable
    with items k..n-1 and budget b. Row n is all zeros.
    """
    n = len(values)
    table = np.zeros((n + 1, capacity + 1))
    for k in range(n - 1, -1, -1):
        table[k] = table[k + 1]
        c = int(costs[k])
        if c <= capacity:
            with_k = table[k + 1, : capacity + 1 - c] + float(values[k])
            table[k, c:] = np.maximum(table[k + 1, c:], with_k)
    return table


def build_result(
    catalog: Sequence[Requirement],
    mask: np.ndarray,
    model: SelectionModel,
    budget: int,
    objective: float,
    closure: Optional[StrengthClosure] = None,
    nodes: int = 0,
) -> SolveResult:
    """
    Package a solver's mask as a SolveResult with its AC, AV and OV.

    Without a closure the overall value is unknown and left as None.
    """
    values = np.array([r.value for r in catalog], dtype=float)
    costs = np.array([r.cost for r in catalog], dtype=np.int64)
    accumulated_value = float(values[mask].sum())
    overall = overall_value_for_mask(values, closure.matrix(), mask) if closure is not None else None
    return SolveResult(
        selection=Selection.from_mask(mask),
        objective=float(objective),
        model=model,
        budget=budget,
        accumulated_cost=int(costs[mask].sum()),
        accumulated_value=accumulated_value,
        overall_value=overall,
        total_value=float(values.sum()),
        nodes=nodes,
    )
