from typing import Optional, Sequence

from schemas.frig import Frig, Requirement, StrengthClosure
from schemas.selection import ModelKind, SelectionModel, SolveResult
from services.graph.frig import closure as build_closure
from services.solvers.bkp import bkp_solve
from services.solvers.bkp_pc import bkppc_solve
from services.solvers.brute_force import brute_force_solve
from services.solvers.gors import gors_solve
from services.solvers.precedence import precedence_constraints, precedence_groups


def solve(
    model: SelectionModel,
    catalog: Sequence[Requirement],
    frig: Frig,
    budget: int,
    closure: Optional[StrengthClosure] = None,
) -> SolveResult:
    """Run the exact solver for the given selection model"""
    closure = closure or build_closure(frig)
    if model.kind is ModelKind.BKP:
        return bkp_solve(catalog, budget, closure)
    if model.kind is ModelKind.BKP_PC:
        return bkppc_solve(catalog, frig, budget, model.threshold, closure)
    return gors_solve(catalog, frig, budget, closure)


__all__ = [
    "bkp_solve",
    "bkppc_solve",
    "brute_force_solve",
    "gors_solve",
    "precedence_constraints",
    "precedence_groups",
    "solve",
]
