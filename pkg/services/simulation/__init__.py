from services.simulation.generator import cell_seed, edge_count_for, generate_frig
from services.simulation.sweep import case_study_curve, gap_trend, run_sweep, selection_models, summarize

__all__ = [
    "case_study_curve",
    "cell_seed",
    "edge_count_for",
    "gap_trend",
    "generate_frig",
    "run_sweep",
    "selection_models",
    "summarize",
]
