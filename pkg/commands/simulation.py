import argparse
import logging

from pydantic import ValidationError

from schemas.selection import ModelKind
from schemas.simulation import DEFAULT_BUDGETS, DEFAULT_LOI_LEVELS, SimulationConfig
from services.errors import PreconditionError
from services.simulation import case_study_curve, gap_trend, run_sweep
from services.storage import resolve_frig, write_surface

from commands.common import parse_float_list, parse_int_list, selection_model

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Run all models over random graphs and write an AV%%/OV%% surface")
    parser.add_argument("--dataset", required=True, help="ran | pmr | FRIG JSON catalog")
    parser.add_argument("--seed", type=int, default=0, help="Master seed")
    parser.add_argument("--loi-levels", help="LOI levels, e.g. 0..1:0.1 or 0.05,0.2,0.4")
    parser.add_argument("--budgets", help="Budgets, e.g. 1..120 or 10,50,90")
    parser.add_argument("--replications", type=int, default=1)
    parser.add_argument("--threshold", type=float, default=0.0, help="Precedence threshold for bkp-pc")
    parser.add_argument("--workers", type=int, help="Worker processes (default from FRIG_SWEEP_WORKERS)")
    parser.add_argument("--out", required=True, help="Output CSV path")
    parser.set_defaults(handler=sweep_command)

    parser = subparsers.add_parser("curve", help="Run all models on one graph across a budget range")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--budgets", required=True, help="Budgets, e.g. 1..260")
    parser.add_argument("--threshold", type=float, default=0.0, help="Precedence threshold for bkp-pc")
    parser.add_argument("--out", required=True, help="Output CSV path")
    parser.set_defaults(handler=curve_command)


def sweep_command(args: argparse.Namespace) -> int:
    try:
        config = SimulationConfig(
            dataset=args.dataset,
            loi_levels=parse_float_list(args.loi_levels) if args.loi_levels else list(DEFAULT_LOI_LEVELS),
            budgets=parse_int_list(args.budgets) if args.budgets else list(DEFAULT_BUDGETS),
            replications=args.replications,
            master_seed=args.seed,
            threshold=args.threshold,
        )
    except ValidationError as e:
        error = e.errors()[0]
        raise PreconditionError(f"{'.'.join(str(p) for p in error['loc'])}: {error['msg']}")
    if args.workers is not None and args.workers < 1:
        raise PreconditionError("--workers must be at least 1")

    cells = run_sweep(config, workers=args.workers)
    path = write_surface(cells, args.out)
    budget = config.budgets[len(config.budgets) // 2]
    trend = gap_trend(cells, budget)
    logger.info(f"Spearman correlation of LOI with the BKP AV%-OV% gap at budget {budget}: {trend:.3f}")
    print(f"wrote {len(cells)} cells to {path}")
    return 0


def curve_command(args: argparse.Namespace) -> int:
    threshold = selection_model(ModelKind.BKP_PC, args.threshold).threshold
    frig = resolve_frig(args.frig)
    cells = case_study_curve(frig, parse_int_list(args.budgets), threshold)
    path = write_surface(cells, args.out)
    print(f"wrote {len(cells)} cells to {path}")
    return 0
