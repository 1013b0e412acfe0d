import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from conftest import make_catalog
from schemas.mining import MappingKind, MembershipMapping, PreferenceMatrix
from services.errors import PreconditionError
from services.graph import validate_frig
from services.mining import frig_from_preferences, map_strength, pearl_strength
from services.settings import settings as app_settings
from services.storage import load_preferences

CLIPPED = MembershipMapping(kind=MappingKind.CLIPPED_LINEAR, lo=0.16, hi=0.83)


@pytest.fixture
def prefs() -> PreferenceMatrix:
    return load_preferences(app_settings.data_dir / "preferences_example.csv")


def test_fixture_shape(prefs):
    assert prefs.n_requirements == 4
    assert prefs.n_users == 10
    assert prefs.users[0] == "u1"


def test_pearl_strength_of_fixture(prefs):
    eta = pearl_strength(prefs).matrix()
    assert eta[0, 2] == pytest.approx(0.6667, abs=5e-5)
    np.testing.assert_allclose(np.diag(eta), 1.0)


def test_pearl_strength_marks_undefined_columns():
    prefs = PreferenceMatrix.from_array([[1, 1, 0], [0, 0, 0], [1, 0, 1]])
    result = pearl_strength(prefs)
    assert result.undefined_columns == [1]
    eta = result.matrix()
    assert np.all(np.isnan(eta[:, 1]))
    assert eta[0, 2] == pytest.approx(0.5)
    assert eta[2, 0] == pytest.approx(0.5)


def test_clipped_mapping():
    assert map_strength(0.10, CLIPPED) == 0.0
    assert map_strength(0.90, CLIPPED) == 1.0
    assert map_strength(0.83, CLIPPED) == 1.0
    assert map_strength(0.495, CLIPPED) == pytest.approx(0.5)


def test_linear_and_smooth_mappings():
    assert map_strength(0.5, MembershipMapping()) == 0.5
    smooth = MembershipMapping(kind=MappingKind.SMOOTHSTEP, lo=0.2, hi=0.8)
    assert map_strength(0.5, smooth) == pytest.approx(0.5)
    assert map_strength(0.1, smooth) == 0.0
    assert map_strength(0.8, smooth) == 1.0


def test_mapping_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        map_strength(1.2, MembershipMapping())


def test_mapping_parse():
    assert MembershipMapping.parse("clipped:0.16,0.83") == CLIPPED
    assert MembershipMapping.parse("linear").kind is MappingKind.LINEAR
    assert MembershipMapping.parse("smooth:0.1,0.9").hi == 0.9
    with pytest.raises(ValidationError):
        MembershipMapping.parse("clipped:0.8,0.2")
    with pytest.raises(ValueError):
        MembershipMapping.parse("cubic")


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(list(MappingKind)),
    st.floats(0.0, 0.45),
    st.floats(0.55, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
)
def test_mappings_are_monotone(kind, lo, hi, a, b):
    mapping = MembershipMapping(kind=kind, lo=lo, hi=hi)
    low, high = sorted((a, b))
    assert 0.0 <= map_strength(low, mapping) <= map_strength(high, mapping) <= 1.0


def test_frig_from_preferences(prefs):
    catalog = make_catalog([10, 20, 30, 40], [1, 2, 3, 4])
    frig = frig_from_preferences(catalog, prefs)
    assert validate_frig(frig).valid
    rho = frig.matrix()
    assert rho[0, 2] == pytest.approx(2 / 3)
    assert np.all(np.diag(rho) == 0)

    clipped = frig_from_preferences(catalog, prefs, CLIPPED).matrix()
    assert np.all((clipped >= 0) & (clipped <= 1))
    assert np.all(clipped[rho < 0.16] == 0)
    assert np.all(clipped[(rho >= 0.83) & ~np.eye(4, dtype=bool)] == 1)


def test_frig_from_preferences_size_mismatch(prefs):
    with pytest.raises(PreconditionError):
        frig_from_preferences(make_catalog([1, 2], [1, 1]), prefs)


def test_preference_matrix_validation():
    with pytest.raises(ValidationError):
        PreferenceMatrix(entries=((1, 0), (1,)))
    with pytest.raises(ValidationError):
        PreferenceMatrix(entries=((1, 2),))
    with pytest.raises(ValidationError):
        PreferenceMatrix(entries=((), ()))


preference_rows = st.integers(2, 6).flatmap(
    lambda n: st.integers(1, 8).flatmap(
        lambda users: st.lists(
            st.lists(st.integers(0, 1), min_size=users, max_size=users), min_size=n, max_size=n
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(preference_rows)
def test_duplicating_every_user_keeps_strengths(rows):
    once = pearl_strength(PreferenceMatrix.from_array(rows)).matrix()
    twice = pearl_strength(PreferenceMatrix.from_array([row + row for row in rows])).matrix()
    np.testing.assert_allclose(twice, once, equal_nan=True)


@settings(max_examples=60, deadline=None)
@given(preference_rows, st.sampled_from(list(MappingKind)), st.floats(0.0, 0.45), st.floats(0.55, 1.0))
def test_mined_graphs_are_always_valid(rows, kind, lo, hi):
    prefs = PreferenceMatrix.from_array(rows)
    catalog = make_catalog([1] * prefs.n_requirements, [1] * prefs.n_requirements)
    frig = frig_from_preferences(catalog, prefs, MembershipMapping(kind=kind, lo=lo, hi=hi))
    assert validate_frig(frig).valid
