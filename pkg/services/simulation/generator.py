import logging
import math
from typing import Sequence

import numpy as np

from schemas.frig import Frig, Requirement
from services.errors import PreconditionError

logger = logging.getLogger(__name__)


def cell_seed(master_seed: int, loi_index: int, replication: int) -> int:
    """
    Derive the seed of one (LOI level, replication) work item.

    The derivation is counter based (numpy SeedSequence keyed by the master
    seed and the item coordinates), so it does not depend on how many items
    ran before or on which worker runs them.
    """
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=(loi_index, replication))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def edge_count_for(n: int, target_loi: float) -> int:
    """Number of ordered pairs needed for the target LOI, rounded half up"""
    return int(math.floor(target_loi * n * (n - 1) + 0.5))


def generate_frig(catalog: Sequence[Requirement], target_loi: float, seed: int) -> Frig:
    """
    Random graph over the catalog with exactly round(target_loi * n(n-1))
    dependencies, placed on distinct ordered pairs, each with a strength drawn
    uniformly from (0, 1].

    Args:
        catalog: Requirements to connect
        target_loi: Desired level of interdependency in [0,1]
        seed: Seed of the PCG64 generator

    Returns:
        Frig: Generated graph
    """
    if not 0.0 <= target_loi <= 1.0:
        raise PreconditionError(f"target LOI {target_loi} is outside [0,1]")
    n = len(catalog)
    pairs = n * (n - 1)
    k = edge_count_for(n, target_loi)
    rng = np.random.Generator(np.random.PCG64(seed))

    # Partial Fisher-Yates shuffle: the first k slots end up a uniform k-subset
    slots = np.arange(pairs)
    for t in range(k):
        s = int(rng.integers(t, pairs))
        slots[t], slots[s] = slots[s], slots[t]
    chosen = slots[:k]
    strengths = 1.0 - rng.random(k)

    rho = np.zeros((n, n))
    for p, strength in zip(chosen, strengths):
        i, r = divmod(int(p), n - 1)
        j = r if r < i else r + 1
        rho[i, j] = strength
    return Frig.from_matrix(list(catalog), rho)
