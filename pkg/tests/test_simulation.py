import numpy as np
import pytest
from pydantic import ValidationError

from schemas.selection import ModelKind, SelectionModel
from schemas.simulation import SimulationConfig, SurfaceCell
from services.errors import PreconditionError
from services.graph import closure, loi, validate_frig
from services.simulation import (
    case_study_curve,
    cell_seed,
    edge_count_for,
    gap_trend,
    generate_frig,
    run_sweep,
    summarize,
)
from services.solvers import bkp_solve
from services.storage import write_surface


def test_edge_count_rounds_half_up():
    assert edge_count_for(14, 0.0) == 0
    assert edge_count_for(14, 1.0) == 182
    assert edge_count_for(14, 0.05) == 9
    assert edge_count_for(4, 0.125) == 2


@pytest.mark.parametrize("target", [0.0, 0.05, 0.3, 1.0])
def test_generated_graph_hits_target_loi(ran, target):
    frig = generate_frig(ran.requirements, target, seed=11)
    assert validate_frig(frig).valid
    assert frig.edge_count() == edge_count_for(ran.n, target)
    assert loi(frig) == pytest.approx(edge_count_for(ran.n, target) / (ran.n * (ran.n - 1)))
    rho = frig.matrix()
    assert np.all(rho[rho > 0] <= 1.0)
    assert np.all(np.diag(rho) == 0)


def test_generation_is_seeded(ran):
    first = generate_frig(ran.requirements, 0.3, seed=5)
    assert generate_frig(ran.requirements, 0.3, seed=5) == first
    assert generate_frig(ran.requirements, 0.3, seed=6) != first


def test_generation_rejects_bad_loi(ran):
    with pytest.raises(PreconditionError):
        generate_frig(ran.requirements, 1.5, seed=0)


def test_cell_seeds_are_stable_and_distinct():
    seeds = {cell_seed(7, i, r) for i in range(5) for r in range(5)}
    assert len(seeds) == 25
    assert cell_seed(7, 2, 3) == cell_seed(7, 2, 3)
    assert cell_seed(7, 2, 3) != cell_seed(8, 2, 3)


def test_config_validation():
    with pytest.raises(ValidationError):
        SimulationConfig(dataset="ran", loi_levels=[1.2])
    with pytest.raises(ValidationError):
        SimulationConfig(dataset="ran", budgets=[0, 10])
    with pytest.raises(ValidationError):
        SimulationConfig(dataset="ran", replications=0)


def test_sweep_structure():
    config = SimulationConfig(dataset="ran", loi_levels=[0.0, 0.5], budgets=[10, 50], replications=2, master_seed=3)
    cells = run_sweep(config)
    assert len(cells) == 2 * 2 * 2 * 3
    assert [c.model.label for c in cells[:3]] == ["BKP", "BKP-PC", "GORS"]
    assert [(c.loi, c.replication, c.budget) for c in cells[::3]] == [
        (level, rep, budget) for level in (0.0, 0.5) for rep in range(2) for budget in (10, 50)
    ]
    assert all(0.0 <= c.ov_pct <= c.av_pct + 1e-9 for c in cells)


def test_sweep_without_dependencies_models_agree():
    config = SimulationConfig(dataset="ran", loi_levels=[0.0], budgets=list(range(5, 100, 7)), master_seed=1)
    cells = run_sweep(config)
    for i in range(0, len(cells), 3):
        group = cells[i : i + 3]
        assert len({round(c.av_pct, 9) for c in group}) == 1
        assert len({round(c.ov_pct, 9) for c in group}) == 1
        assert all(c.av_pct == pytest.approx(c.ov_pct) for c in group)


def test_sweep_full_budget_reads_full_value():
    config = SimulationConfig(dataset="ran", loi_levels=[0.0, 0.4, 1.0], budgets=[99, 120], master_seed=2)
    for cell in run_sweep(config):
        assert cell.av_pct == pytest.approx(100.0)
        assert cell.ov_pct == pytest.approx(100.0)


def test_pmr_full_budget_reads_full_value():
    # r1 carries no value of its own but others depend on it
    config = SimulationConfig(dataset="pmr", loi_levels=[0.1, 0.3, 0.5, 1.0], budgets=[101, 120], master_seed=1)
    cells = run_sweep(config)
    assert {c.model.kind for c in cells} == set(ModelKind)
    for cell in cells:
        assert cell.av_pct == pytest.approx(100.0)
        assert cell.ov_pct == pytest.approx(100.0)


def test_bkp_keeps_zero_value_requirement_at_full_budget(pmr):
    frig = generate_frig(pmr.requirements, 0.5, seed=1)
    result = bkp_solve(frig.requirements, 101, closure(frig))
    assert result.selection.x == (1,) * frig.n
    assert result.ov_pct == pytest.approx(100.0)


def test_sweep_output_is_reproducible(tmp_path):
    config = SimulationConfig(dataset="pmr", loi_levels=[0.1, 0.6], budgets=[20, 40, 60], replications=2, master_seed=9)
    first = write_surface(run_sweep(config), tmp_path / "a.csv").read_bytes()
    second = write_surface(run_sweep(config), tmp_path / "b.csv").read_bytes()
    assert first == second


def test_sweep_workers_do_not_change_results():
    config = SimulationConfig(dataset="ran", loi_levels=[0.2, 0.7], budgets=[30], replications=2, master_seed=4)
    assert run_sweep(config, workers=2) == run_sweep(config, workers=1)


def test_case_study_curve(example3):
    cells = case_study_curve(example3, [25, 45])
    assert [(c.budget, c.model.label) for c in cells] == [
        (25, "BKP"), (25, "BKP-PC"), (25, "GORS"), (45, "BKP"), (45, "BKP-PC"), (45, "GORS"),
    ]
    assert cells[2].ov_pct == pytest.approx(20.0)
    assert cells[0].av_pct == pytest.approx(100 * 70 / 90)
    assert all(c.ov_pct == pytest.approx(100.0) for c in cells[3:])


def _cell(level, rep, av, ov, model=SelectionModel.bkp(), budget=50):
    return SurfaceCell(loi=level, budget=budget, model=model, replication=rep, seed=0, av_pct=av, ov_pct=ov)


def test_summarize_averages_replications():
    rows = summarize([_cell(0.2, 0, 60, 40), _cell(0.2, 1, 80, 50), _cell(0.4, 0, 70, 30)])
    assert [(r.loi, r.replications) for r in rows] == [(0.2, 2), (0.4, 1)]
    assert rows[0].mean_av_pct == pytest.approx(70)
    assert rows[0].mean_ov_pct == pytest.approx(45)


def test_gap_trend_on_synthetic_cells():
    cells = [_cell(level, 0, 80, 80 - 40 * level) for level in (0.1, 0.3, 0.5)]
    assert gap_trend(cells, 50) == pytest.approx(1.0)
    assert np.isnan(gap_trend(cells[:1], 50))
    assert np.isnan(gap_trend(cells, 50, model=ModelKind.GORS))


@pytest.mark.slow
def test_gap_grows_with_interdependency():
    config = SimulationConfig(
        dataset="ran", loi_levels=[0.05, 0.2, 0.4, 0.8], budgets=[50], replications=30, master_seed=2024
    )
    assert gap_trend(run_sweep(config), 50) > 0
