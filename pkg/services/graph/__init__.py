from services.graph.frig import (
    brute_force_closure,
    closure,
    closure_matrix,
    compose,
    implicit_paths,
    loi,
    path_strength,
    validate_frig,
)

__all__ = [
    "brute_force_closure",
    "closure",
    "closure_matrix",
    "compose",
    "implicit_paths",
    "loi",
    "path_strength",
    "validate_frig",
]
