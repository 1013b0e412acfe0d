import logging
import re
from typing import Sequence, Tuple

import numpy as np

from schemas.frig import Frig, Requirement, StrengthClosure
from schemas.selection import Evaluation, ImpactVector, SdpResult, Selection
from services.errors import PreconditionError

logger = logging.getLogger(__name__)


def _check_length(n: int, selection: Selection, what: str) -> None:
    if selection.n != n:
        raise PreconditionError(f"selection has {selection.n} entries but the {what} has {n} requirements")


def impacts_for_mask(rho_inf: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """
    Impact of the excluded requirements on every requirement.

    For a selected i the impact is the strongest overall dependency from i
    to any excluded requirement; excluded requirements get 0.
    """
    excluded = ~mask
    if not excluded.any():
        return np.zeros(mask.shape[0])
    strongest = rho_inf[:, excluded].max(axis=1)
    return np.where(mask, strongest, 0.0)


def overall_value_for_mask(values: np.ndarray, rho_inf: np.ndarray, mask: np.ndarray) -> float:
    impacts = impacts_for_mask(rho_inf, mask)
    return float(np.sum(values[mask] * (1.0 - impacts[mask])))


def impact_vector(closure: StrengthClosure, selection: Selection) -> ImpactVector:
    """Impacts I_i computed on the full-graph closure"""
    _check_length(closure.n, selection, "closure")
    impacts = impacts_for_mask(closure.matrix(), selection.mask())
    return ImpactVector(impacts=tuple(float(v) for v in impacts))


def customer_value(value: float, impact: float) -> float:
    """Estimated value discounted by the impact of excluded requirements"""
    if not 0.0 <= impact <= 1.0:
        raise PreconditionError(f"impact {impact} is outside [0,1]")
    return value * (1.0 - impact)


def accumulated(catalog: Sequence[Requirement], selection: Selection) -> Tuple[int, float]:
    """Accumulated cost and accumulated value of the selected requirements"""
    _check_length(len(catalog), selection, "catalog")
    cost = sum(catalog[i].cost for i in selection.selected)
    value = float(sum(catalog[i].value for i in selection.selected))
    return cost, value


def overall_value(catalog: Sequence[Requirement], closure: StrengthClosure, selection: Selection) -> float:
    """Sum of customer values over the selected requirements"""
    _check_length(len(catalog), selection, "catalog")
    impacts = impact_vector(closure, selection).impacts
    return float(sum(customer_value(catalog[i].value, impacts[i]) for i in selection.selected))


def evaluate(catalog: Sequence[Requirement], closure: StrengthClosure, selection: Selection) -> Evaluation:
    """AC, AV, OV and the per-requirement breakdown of one selection"""
    cost, value = accumulated(catalog, selection)
    impacts = impact_vector(closure, selection)
    customer_values = tuple(
        customer_value(req.value, impacts.impacts[req.id]) if selection.x[req.id] else 0.0
        for req in catalog
    )
    return Evaluation(
        selection=selection,
        accumulated_cost=cost,
        accumulated_value=value,
        overall_value=float(sum(customer_values)),
        total_value=float(sum(req.value for req in catalog)),
        impacts=impacts,
        customer_values=customer_values,
    )


def sdp_check(catalog: Sequence[Requirement], frig: Frig, selection: Selection, budget: int) -> SdpResult:
    """
    Detect the selection deficiency problem.

    True when some excluded r_i with an explicit dependency on an excluded
    r_j still fits the remaining budget on its own but not together with r_j.
    The witness is the first such (i, j) in lexicographic order.
    """
    cost, _ = accumulated(catalog, selection)
    if cost > budget:
        raise PreconditionError(f"selection costs {cost}, which exceeds the budget {budget}")
    rho = frig.matrix()
    excluded = selection.excluded
    for i in excluded:
        if cost + catalog[i].cost > budget:
            continue
        for j in excluded:
            if i != j and rho[i, j] > 0 and cost + catalog[i].cost + catalog[j].cost > budget:
                logger.debug(f"SDP witness (r{i + 1}, r{j + 1}) at budget {budget}")
                return SdpResult(occurs=True, witness=(i, j))
    return SdpResult(occurs=False)


def parse_selection(text: str, n: int) -> Selection:
    """
    Parse a selection given as a vector ({0,1,1,0} or 0110) or as a list of
    1-based requirement ids (r2,r3 or 2,3).
    """
    cleaned = text.strip().strip("{}[]() ")
    if not cleaned:
        return Selection(x=(0,) * n)
    if re.fullmatch(r"[01]+", cleaned) and len(cleaned) == n:
        return Selection(x=tuple(int(c) for c in cleaned))
    tokens = [t.strip() for t in cleaned.split(",") if t.strip()]
    if len(tokens) == n and all(t in ("0", "1") for t in tokens):
        return Selection(x=tuple(int(t) for t in tokens))
    ids = []
    for token in tokens:
        match = re.fullmatch(r"[rR]?(\d+)", token)
        if not match or not 1 <= int(match.group(1)) <= n:
            raise PreconditionError(f"cannot read selection entry '{token}' for {n} requirements")
        ids.append(int(match.group(1)) - 1)
    return Selection.from_indices(n, ids)
