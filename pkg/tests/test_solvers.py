import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instances, make_catalog, make_frig
from schemas.frig import Frig
from schemas.selection import SelectionModel
from services.errors import PreconditionError
from services.graph import closure
from services.solvers import (
    bkp_solve,
    bkppc_solve,
    brute_force_solve,
    gors_solve,
    precedence_constraints,
    precedence_groups,
    solve,
)
from services.storage import published_solutions
from services.valuation import evaluate

MODELS = [SelectionModel.bkp(), SelectionModel.bkp_pc(), SelectionModel.gors()]

# Optimal accumulated value of BKP on the case study per budget
CASE_STUDY_BKP_AV = {
    16: 56, 46: 121, 71: 164, 76: 172, 81: 177, 141: 247, 146: 254, 151: 262, 156: 262,
    161: 267, 166: 274, 171: 282, 176: 282, 181: 287, 186: 294, 191: 302, 196: 302, 246: 326,
}


def test_bkp_small_example(example3):
    result = bkp_solve(example3.requirements, 25, closure(example3))
    assert result.objective == pytest.approx(70)
    assert result.selection.selected == [0, 2]
    assert result.overall_value == pytest.approx(14)


def test_bkppc_small_example_selects_nothing(example3):
    result = bkppc_solve(example3.requirements, example3, 25)
    assert result.selection.selected == []
    assert result.accumulated_value == 0
    assert result.overall_value == 0


def test_gors_small_example(example3):
    result = gors_solve(example3.requirements, example3, 25)
    assert result.objective == pytest.approx(18)
    assert result.selection.set_string() == "{r3,r4}"
    assert result.accumulated_cost == 25


def test_brute_force_agrees_on_small_example(example3):
    assert brute_force_solve(example3.requirements, example3, 25, SelectionModel.gors()).objective == pytest.approx(18)
    assert brute_force_solve(example3.requirements, example3, 25, SelectionModel.bkp()).objective == pytest.approx(70)
    assert brute_force_solve(example3.requirements, example3, 25, SelectionModel.bkp_pc()).objective == 0


def test_solve_dispatches_on_model(example3):
    assert solve(SelectionModel.gors(), example3.requirements, example3, 25).model.label == "GORS"
    assert solve(SelectionModel.bkp_pc(), example3.requirements, example3, 25).model.label == "BKP-PC"
    assert solve(SelectionModel.bkp(), example3.requirements, example3, 25).objective == pytest.approx(70)


def test_negative_budget_is_rejected(example3):
    with pytest.raises(PreconditionError):
        bkp_solve(example3.requirements, -1)
    with pytest.raises(PreconditionError):
        gors_solve(example3.requirements, example3, -5)


def test_zero_budget_with_free_requirement():
    frig = make_frig([5, 3], [0, 2], [(1, 2, 0.5)])
    assert gors_solve(frig.requirements, frig, 0).objective == pytest.approx(2.5)
    assert bkp_solve(frig.requirements, 0).objective == pytest.approx(5)
    # r1 needs r2, which does not fit
    assert bkppc_solve(frig.requirements, frig, 0).objective == 0


def test_budget_covering_everything(pms):
    strengths = closure(pms)
    for model in MODELS:
        result = solve(model, pms.requirements, pms, 246, strengths)
        assert result.selection.x == (1,) * pms.n
        assert f"{result.ov_pct:.2f}" == "100.00"
        assert f"{result.av_pct:.2f}" == "100.00"


def test_ties_go_to_the_higher_overall_value():
    # r2 depends on r1, which is worth nothing on its own
    frig = make_frig([0, 10], [5, 5], [(2, 1, 0.9)])
    strengths = closure(frig)
    bkp = bkp_solve(frig.requirements, 10, strengths)
    assert bkp.selection.x == (1, 1)
    assert bkp.overall_value == pytest.approx(10)
    bkppc = bkppc_solve(frig.requirements, frig, 10, threshold=0.95, closure=strengths)
    assert bkppc.selection.x == (1, 1)
    for model in (SelectionModel.bkp(), SelectionModel.bkp_pc(0.95)):
        assert brute_force_solve(frig.requirements, frig, 10, model, strengths).selection.x == (1, 1)


def test_bkp_without_closure_leaves_overall_value_unknown():
    frig = make_frig([0, 10], [5, 5], [(2, 1, 0.9)])
    result = bkp_solve(frig.requirements, 10)
    assert result.selection.x == (0, 1)
    assert result.overall_value is None
    assert result.ov_pct is None


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.label)
def test_brute_force_single_requirement(model):
    frig = make_frig([7], [3], [])
    assert brute_force_solve(frig.requirements, frig, 3, model).selection.x == (1,)
    result = brute_force_solve(frig.requirements, frig, 2, model)
    assert result.selection.x == (0,)
    assert result.objective == 0


def test_brute_force_size_guard(pms):
    with pytest.raises(PreconditionError):
        brute_force_solve(pms.requirements, pms, 100, SelectionModel.gors())


def test_precedence_constraints(example3):
    assert precedence_constraints(example3) == [(0, 1), (0, 2), (1, 3), (2, 0), (2, 1), (2, 3), (3, 2)]
    assert precedence_constraints(example3, 0.5) == [(0, 2), (2, 0), (2, 1), (2, 3)]


def test_precedence_groups_contract_cycles(example3):
    assert precedence_groups(example3).members == ((0, 1, 2, 3),)
    groups = precedence_groups(example3, 0.5)
    assert groups.members == ((0, 2), (1,), (3,))
    assert groups.requires == ((1, 2), (), ())
    assert groups.required_by == ((), (0,), (0,))


def test_bkppc_threshold_relaxes_constraints(example3):
    result = bkppc_solve(example3.requirements, example3, 25, threshold=0.8)
    # No dependency is stronger than 0.8, so nothing constrains the knapsack
    assert result.selection.selected == [0, 2]
    assert result.objective == pytest.approx(70)


def test_case_study_budget_16(pms):
    strengths = closure(pms)
    bkp = bkp_solve(pms.requirements, 16, strengths)
    assert bkp.objective == pytest.approx(56)
    assert bkp.selection.set_string() in ("{r2,r3,r11,r16}", "{r2,r3,r11,r18}")

    bkppc = bkppc_solve(pms.requirements, pms, 16, closure=strengths)
    assert bkppc.selection.set_string() == "{r7,r23}"
    assert f"{bkppc.ov_pct:.2f}" == "10.74"

    gors = gors_solve(pms.requirements, pms, 16, strengths)
    assert gors.selection.set_string() == "{r7,r11,r16,r18}"
    assert gors.ov_pct == pytest.approx(12.88, abs=0.02)


@pytest.mark.slow
@pytest.mark.parametrize("budget", sorted(CASE_STUDY_BKP_AV))
def test_case_study_table(pms, budget):
    strengths = closure(pms)
    rows = {row.model: row for row in published_solutions() if row.budget == budget}
    assert set(rows) == {"BKP", "BKP-PC", "GORS"}

    gors = gors_solve(pms.requirements, pms, budget, strengths)
    assert gors.ov_pct == pytest.approx(rows["GORS"].ov_pct, abs=0.02)

    bkppc = bkppc_solve(pms.requirements, pms, budget, closure=strengths)
    assert bkppc.ov_pct == pytest.approx(rows["BKP-PC"].ov_pct, abs=0.02)
    assert bkppc.accumulated_value == pytest.approx(bkppc.overall_value)

    bkp = bkp_solve(pms.requirements, budget, strengths)
    assert bkp.objective == pytest.approx(CASE_STUDY_BKP_AV[budget])
    for model, row in rows.items():
        printed = evaluate(pms.requirements, strengths, row.selection(pms.n))
        assert printed.ov_pct == pytest.approx(row.ov_pct, abs=0.02)
        if model == "BKP":
            assert bkp.objective >= printed.accumulated_value - 1e-9
    assert gors.overall_value >= bkp.overall_value - 1e-9
    assert gors.overall_value >= bkppc.overall_value - 1e-9


@settings(max_examples=200, deadline=None)
@given(instances(min_n=1), st.integers(0, 120))
def test_solvers_match_exhaustive_search(frig, budget):
    strengths = closure(frig)
    for model in MODELS:
        exact = solve(model, frig.requirements, frig, budget, strengths)
        oracle = brute_force_solve(frig.requirements, frig, budget, model, strengths)
        assert exact.objective == pytest.approx(oracle.objective, abs=1e-9)
        assert exact.selection == oracle.selection
        assert exact.accumulated_cost <= budget


@settings(max_examples=60, deadline=None)
@given(instances(max_n=10), st.integers(0, 100))
def test_dominance(frig, budget):
    strengths = closure(frig)
    bkp = bkp_solve(frig.requirements, budget, strengths)
    bkppc = bkppc_solve(frig.requirements, frig, budget, closure=strengths)
    gors = gors_solve(frig.requirements, frig, budget, strengths)
    assert gors.overall_value >= bkp.overall_value - 1e-9
    assert gors.overall_value >= bkppc.overall_value - 1e-9
    assert bkppc.accumulated_value == pytest.approx(bkppc.overall_value, abs=1e-9)
    assert bkp.accumulated_value >= bkppc.accumulated_value - 1e-9


@settings(max_examples=40, deadline=None)
@given(instances(max_n=10))
def test_objectives_monotone_in_budget(frig):
    strengths = closure(frig)
    total = int(frig.costs().sum())
    budgets = np.linspace(0, total, 10).astype(int)
    for model in MODELS:
        objectives = [solve(model, frig.requirements, frig, int(b), strengths).objective for b in budgets]
        assert all(a <= b + 1e-9 for a, b in zip(objectives, objectives[1:]))
        assert objectives[-1] == pytest.approx(float(frig.values().sum()))


@settings(max_examples=30, deadline=None)
@given(instances(max_n=8), st.integers(0, 80))
def test_gors_invariant_under_relabelling(frig, budget):
    perm = np.random.default_rng(frig.n + budget).permutation(frig.n)
    catalog = make_catalog([frig.requirements[p].value for p in perm], [frig.requirements[p].cost for p in perm])
    permuted = Frig.from_matrix(catalog, frig.matrix()[np.ix_(perm, perm)])
    original = gors_solve(frig.requirements, frig, budget).objective
    assert gors_solve(permuted.requirements, permuted, budget).objective == pytest.approx(original, abs=1e-9)
