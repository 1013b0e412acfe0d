from typing import List

import numpy as np
import pytest
from hypothesis import strategies as st

from schemas.frig import Frig, Requirement
from services.storage import load_dataset

# Overall strengths of the four-requirement example graph
EXAMPLE3_CLOSURE = [
    [1.0, 0.6, 0.8, 0.8],
    [0.2, 1.0, 0.2, 0.3],
    [0.8, 0.6, 1.0, 0.8],
    [0.2, 0.2, 0.2, 1.0],
]


def make_catalog(values, costs) -> List[Requirement]:
    return [Requirement(id=i, value=v, cost=c) for i, (v, c) in enumerate(zip(values, costs))]


def make_frig(values, costs, edges) -> Frig:
    """edges are (from, to, strength) with 1-based ids"""
    n = len(values)
    rho = np.zeros((n, n))
    for source, target, strength in edges:
        rho[source - 1, target - 1] = strength
    return Frig.from_matrix(make_catalog(values, costs), rho)


@pytest.fixture(scope="session")
def example3() -> Frig:
    return load_dataset("example3")


@pytest.fixture(scope="session")
def pms() -> Frig:
    return load_dataset("pms")


@pytest.fixture(scope="session")
def ran() -> Frig:
    return load_dataset("ran")


@pytest.fixture(scope="session")
def pmr() -> Frig:
    return load_dataset("pmr")


@pytest.fixture
def example1() -> Frig:
    return make_frig(
        [10, 10, 10, 10],
        [1, 1, 1, 1],
        [(1, 2, 0.6), (2, 3, 0.4), (3, 4, 0.8), (4, 2, 0.2)],
    )


@st.composite
def instances(draw, min_n: int = 2, max_n: int = 12) -> Frig:
    """Random catalogs with integer costs in [1,20], values in [0,20] and a random LOI"""
    n = draw(st.integers(min_n, max_n))
    values = draw(st.lists(st.integers(0, 20), min_size=n, max_size=n))
    costs = draw(st.lists(st.integers(1, 20), min_size=n, max_size=n))
    density = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    rho = np.where(rng.random((n, n)) < density, np.round(1.0 - rng.random((n, n)), 2), 0.0)
    rho = np.clip(rho, 0.0, 1.0)
    np.fill_diagonal(rho, 0.0)
    return Frig.from_matrix(make_catalog(values, costs), rho)
