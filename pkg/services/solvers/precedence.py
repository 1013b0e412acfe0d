import logging
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from schemas.frig import Frig

logger = logging.getLogger(__name__)


class PrecedenceGroups(BaseModel):
    """
    Requirements contracted into all-or-nothing groups (strongly connected
    components of the precedence digraph), with group-level reachability.
    """

    model_config = ConfigDict(frozen=True)

    members: Tuple[Tuple[int, ...], ...]
    requires: Tuple[Tuple[int, ...], ...]
    required_by: Tuple[Tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.members)


def precedence_constraints(frig: Frig, threshold: float = 0.0) -> List[Tuple[int, int]]:
    """
    Precedence pairs (i, j) meaning x_i <= x_j, one per explicit dependency
    stronger than the threshold.
    """
    rho = frig.matrix()
    pairs = np.argwhere(rho > threshold)
    return [(int(i), int(j)) for i, j in pairs if i != j]


def precedence_groups(frig: Frig, threshold: float = 0.0) -> PrecedenceGroups:
    """Contract the precedence digraph and record which groups each group needs"""
    n = frig.n
    if n == 0:
        return PrecedenceGroups(members=(), requires=(), required_by=())
    adjacency = np.zeros((n, n), dtype=np.int8)
    for i, j in precedence_constraints(frig, threshold):
        adjacency[i, j] = 1
    graph = csr_matrix(adjacency)
    _, labels = connected_components(graph, directed=True, connection="strong")

    # Number groups by their smallest member so group order follows requirement order
    first_member = {}
    for i in range(n):
        first_member.setdefault(int(labels[i]), i)
    order = sorted(first_member, key=first_member.get)
    renumber = {label: g for g, label in enumerate(order)}
    group_of = [renumber[int(labels[i])] for i in range(n)]
    members = [[] for _ in order]
    for i in range(n):
        members[group_of[i]].append(i)

    reachable = np.isfinite(shortest_path(graph, directed=True, unweighted=True))
    requires = [set() for _ in order]
    for i, j in np.argwhere(reachable):
        gi, gj = group_of[int(i)], group_of[int(j)]
        if gi != gj:
            requires[gi].add(gj)
    required_by = [set() for _ in order]
    for g, needed in enumerate(requires):
        for h in needed:
            required_by[h].add(g)

    logger.debug(f"precedence digraph: {n} requirements in {len(order)} groups")
    return PrecedenceGroups(
        members=tuple(tuple(m) for m in members),
        requires=tuple(tuple(sorted(r)) for r in requires),
        required_by=tuple(tuple(sorted(r)) for r in required_by),
    )
