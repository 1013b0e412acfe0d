import logging
from typing import Sequence

import numpy as np

from schemas.frig import Frig, Requirement
from schemas.mining import MappingKind, MembershipMapping, PearlStrength, PreferenceMatrix
from services.errors import PreconditionError

logger = logging.getLogger(__name__)


def pearl_strength(prefs: PreferenceMatrix) -> PearlStrength:
    """
    Pearl's causal strength eta[i][j] = p(r_i | r_j) = p(r_i, r_j) / p(r_j),
    with probabilities estimated as fractions of users.

    Columns of requirements nobody prefers are undefined (NaN) and listed in
    the result.
    """
    m = prefs.matrix()
    co_occurrence = m @ m.T
    support = np.diag(co_occurrence).astype(float)
    undefined = [int(j) for j in np.flatnonzero(support == 0)]
    with np.errstate(divide="ignore", invalid="ignore"):
        eta = np.where(support[None, :] > 0, co_occurrence / support[None, :], np.nan)
    if undefined:
        affected = ", ".join(f"r{j + 1}" for j in undefined)
        logger.warning(f"Causal strength undefined for requirements nobody prefers: {affected}")
    return PearlStrength(eta=tuple(tuple(float(v) for v in row) for row in eta), undefined_columns=undefined)


def map_strength(eta: float, mapping: MembershipMapping) -> float:
    """
    Map a causal strength to a fuzzy dependency strength.

    Args:
        eta: Causal strength in [0,1]
        mapping: linear (identity), clipped linear or smoothstep between lo and hi

    Returns:
        float: Dependency strength in [0,1]
    """
    if not 0.0 <= eta <= 1.0:
        raise PreconditionError(f"causal strength {eta} is outside [0,1]")
    if mapping.kind is MappingKind.LINEAR:
        return float(eta)
    if eta < mapping.lo:
        return 0.0
    if eta >= mapping.hi:
        return 1.0
    t = (eta - mapping.lo) / (mapping.hi - mapping.lo)
    if mapping.kind is MappingKind.CLIPPED_LINEAR:
        return float(t)
    return float(3.0 * t * t - 2.0 * t * t * t)


def frig_from_preferences(
    catalog: Sequence[Requirement],
    prefs: PreferenceMatrix,
    mapping: MembershipMapping = MembershipMapping(),
) -> Frig:
    """
    Build a Frig whose strength from r_i to r_j is the mapped p(r_i | r_j).

    Undefined strengths become 0; the diagonal is always 0.
    """
    if len(catalog) != prefs.n_requirements:
        raise PreconditionError(
            f"catalog has {len(catalog)} requirements but the preference matrix has {prefs.n_requirements}"
        )
    eta = pearl_strength(prefs).matrix()
    n = len(catalog)
    rho = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j and not np.isnan(eta[i, j]):
                rho[i, j] = map_strength(float(eta[i, j]), mapping)
    logger.info(f"Mined {int(np.count_nonzero(rho))} dependencies from {prefs.n_users} users ({mapping.kind.value} mapping)")
    return Frig.from_matrix(list(catalog), rho)
