import argparse
import logging

from schemas.selection import ModelKind, SolveResult
from services.graph import closure
from services.solvers import precedence_constraints, solve
from services.storage import resolve_frig
from services.valuation import evaluate, parse_selection, sdp_check

from commands.common import format_number, format_pct, selection_model

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("evaluate", help="Print AC, AV, OV and impacts of a selection")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--select", required=True, help="Selection vector ({0,1,1,0} or 0110) or ids (r2,r3)")
    parser.set_defaults(handler=evaluate_command)

    parser = subparsers.add_parser("select", help="Solve requirement selection exactly")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--model", required=True, choices=[kind.value for kind in ModelKind])
    parser.add_argument("--budget", required=True, type=int)
    parser.add_argument("--threshold", type=float, default=0.0, help="Precedence threshold for bkp-pc")
    parser.add_argument("--constraints", action="store_true", help="Also list the bkp-pc precedence constraints")
    parser.set_defaults(handler=select_command)

    parser = subparsers.add_parser("sdp", help="Check a selection for the selection deficiency problem")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--select", required=True, help="Selection vector or ids")
    parser.add_argument("--budget", required=True, type=int)
    parser.set_defaults(handler=sdp_command)


def print_result(result: SolveResult) -> None:
    print(f"model: {result.model.label}")
    if result.model.kind is ModelKind.BKP_PC:
        print(f"threshold: {format_number(result.model.threshold)}")
    print(f"budget: {result.budget}")
    print(f"vector: {result.selection.vector_string()}")
    print(f"selection: {result.selection.set_string()}")
    print(f"objective: {format_number(result.objective)}")
    print(f"AC: {result.accumulated_cost}")
    print(f"AV: {format_number(result.accumulated_value)} ({format_pct(result.av_pct)})")
    print(f"OV: {format_number(result.overall_value)} ({format_pct(result.ov_pct)})")


def evaluate_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    selection = parse_selection(args.select, frig.n)
    result = evaluate(frig.requirements, closure(frig), selection)
    print(f"selection: {selection.set_string()}")
    print(f"AC: {result.accumulated_cost}")
    print(f"AV: {format_number(result.accumulated_value)} ({format_pct(result.av_pct)})")
    print(f"OV: {format_number(result.overall_value)} ({format_pct(result.ov_pct)})")
    for req in frig.requirements:
        if selection.x[req.id]:
            print(
                f"  {req.display_id}: value {format_number(req.value)} "
                f"impact {format_number(result.impacts.impacts[req.id])} "
                f"customer value {format_number(result.customer_values[req.id])}"
            )
    return 0


def select_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    model = selection_model(ModelKind(args.model), args.threshold)
    result = solve(model, frig.requirements, frig, args.budget)
    logger.info(f"{model.label} explored {result.nodes} nodes")
    print_result(result)
    if args.constraints and model.kind is ModelKind.BKP_PC:
        for i, j in precedence_constraints(frig, model.threshold):
            print(f"  x_r{i + 1} <= x_r{j + 1}")
    return 0


def sdp_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    selection = parse_selection(args.select, frig.n)
    result = sdp_check(frig.requirements, frig, selection, args.budget)
    if result.occurs:
        i, j = result.witness
        print(f"sdp: yes (r{i + 1} depends on r{j + 1}; either fits alone, not both)")
    else:
        print("sdp: no")
    return 0
