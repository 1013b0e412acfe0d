import logging
from typing import List

import numpy as np

from schemas.frig import CellViolation, DependencyPath, Frig, StrengthClosure, ValidationReport
from services.errors import PreconditionError

logger = logging.getLogger(__name__)

# Exhaustive path enumeration is only attempted on small graphs
BRUTE_FORCE_CLOSURE_LIMIT = 8


def validate_frig(frig: Frig) -> ValidationReport:
    """
    Check every cell of the strength matrix against the graph invariants.

    Args:
        frig: The graph to check

    Returns:
        ValidationReport: valid flag plus one entry per violated cell
    """
    rho = frig.matrix()
    violations: List[CellViolation] = []
    for i in range(frig.n):
        for j in range(frig.n):
            value = float(rho[i, j])
            if not np.isfinite(value) or value < 0.0 or value > 1.0:
                violations.append(CellViolation(row=i, col=j, value=value, reason="strength outside [0,1]"))
            elif i == j and value != 0.0:
                violations.append(CellViolation(row=i, col=j, value=value, reason="self-dependency"))
    return ValidationReport(valid=not violations, violations=violations)


def path_strength(frig: Frig, path: DependencyPath) -> float:
    """Strength of the weakest explicit dependency along the path"""
    rho = frig.matrix()
    for node in path.nodes:
        if not 0 <= node < frig.n:
            raise PreconditionError(f"path node {node + 1} is not a requirement of this graph")
    strengths = []
    for a, b in path.edges():
        if rho[a, b] <= 0.0:
            raise PreconditionError(f"no explicit dependency from r{a + 1} to r{b + 1}")
        strengths.append(float(rho[a, b]))
    return min(strengths)


def compose(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Max-min composition: out[i, j] = max_k min(left[i, k], right[k, j])"""
    return np.max(np.minimum(left[:, :, None], right[None, :, :]), axis=1)


def closure_matrix(rho: np.ndarray) -> np.ndarray:
    """
    Max-min transitive closure of a strength matrix.

    Relaxes through every intermediate node in turn (Floyd-Warshall over the
    (max, min) semiring). The diagonal of the result is 1.
    """
    strengths = np.array(rho, dtype=float, copy=True)
    n = strengths.shape[0]
    np.fill_diagonal(strengths, 0.0)
    for k in range(n):
        through_k = np.minimum(strengths[:, k : k + 1], strengths[k : k + 1, :])
        np.maximum(strengths, through_k, out=strengths)
    np.fill_diagonal(strengths, 1.0)
    return strengths


def closure(frig: Frig) -> StrengthClosure:
    """Overall dependency strengths between every pair of requirements"""
    rho_inf = closure_matrix(frig.matrix())
    return StrengthClosure(rho_inf=tuple(tuple(float(v) for v in row) for row in rho_inf))


def loi(frig: Frig) -> float:
    """
    Level of interdependency: share of ordered requirement pairs with a
    positive explicit strength.
    """
    n = frig.n
    if n < 2:
        raise PreconditionError(f"level of interdependency needs at least 2 requirements, got {n}")
    rho = frig.matrix()
    off_diagonal = ~np.eye(n, dtype=bool)
    k = int(np.count_nonzero((rho > 0) & off_diagonal))
    return k / (n * (n - 1))


def implicit_paths(frig: Frig, source: int, target: int) -> List[DependencyPath]:
    """Enumerate every simple path of positive-strength edges from source to target"""
    if source == target:
        return []
    rho = frig.matrix()
    successors = [np.flatnonzero(rho[i] > 0).tolist() for i in range(frig.n)]
    paths: List[DependencyPath] = []
    stack = [(source, [source])]
    while stack:
        node, trail = stack.pop()
        for nxt in successors[node]:
            if nxt == target:
                paths.append(DependencyPath(nodes=tuple(trail + [nxt])))
            elif nxt not in trail:
                stack.append((nxt, trail + [nxt]))
    paths.sort(key=lambda p: (len(p.nodes), p.nodes))
    return paths


def brute_force_closure(frig: Frig) -> StrengthClosure:
    """Closure computed by enumerating all simple paths (small graphs only)"""
    if frig.n > BRUTE_FORCE_CLOSURE_LIMIT:
        raise PreconditionError(
            f"path enumeration is limited to {BRUTE_FORCE_CLOSURE_LIMIT} requirements, got {frig.n}"
        )
    rho_inf = np.eye(frig.n)
    for i in range(frig.n):
        for j in range(frig.n):
            if i != j:
                strengths = [path_strength(frig, p) for p in implicit_paths(frig, i, j)]
                rho_inf[i, j] = max(strengths, default=0.0)
    return StrengthClosure(rho_inf=tuple(tuple(float(v) for v in row) for row in rho_inf))
