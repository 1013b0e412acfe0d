import argparse
import logging

from pydantic import ValidationError

from schemas.frig import DependencyPath
from services.errors import FrigValidationError, PreconditionError
from services.graph import closure, implicit_paths, loi, path_strength, validate_frig
from services.storage import DATASET_IDS, load_dataset, resolve_frig, save_frig

from commands.common import format_number, parse_pair, render_matrix

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("closure", help="Print the overall dependency strengths of a graph")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--explain", metavar="I,J", help="List the paths from r_i to r_j and their strengths")
    parser.set_defaults(handler=closure_command)

    parser = subparsers.add_parser("loi", help="Print the level of interdependency of a graph")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.set_defaults(handler=loi_command)

    parser = subparsers.add_parser("validate", help="Check every strength cell of a graph")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.set_defaults(handler=validate_command)

    parser = subparsers.add_parser("path", help="Print the strength of an explicit dependency path")
    parser.add_argument("frig", help="FRIG JSON file or embedded dataset id")
    parser.add_argument("--nodes", required=True, help="1-based requirement ids along the path, e.g. 4,3,1,2")
    parser.set_defaults(handler=path_command)

    parser = subparsers.add_parser("dataset", help="Export an embedded dataset as FRIG JSON")
    parser.add_argument("dataset_id", choices=DATASET_IDS)
    parser.add_argument("--out", required=True, help="Output FRIG JSON path")
    parser.set_defaults(handler=dataset_command)


def closure_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    strengths = closure(frig).matrix()
    if args.explain:
        pair = parse_pair(args.explain)
        if len(pair) != 2:
            raise PreconditionError("--explain takes exactly two requirement ids")
        source, target = pair
        if not (0 <= source < frig.n and 0 <= target < frig.n):
            raise PreconditionError(f"requirement ids must lie in 1..{frig.n}")
        paths = implicit_paths(frig, source, target)
        print(f"rho_inf(r{source + 1},r{target + 1}) = {format_number(float(strengths[source, target]))}")
        for path in paths:
            print(f"  {path.display()} strength {format_number(path_strength(frig, path))}")
        if not paths:
            print("  no dependency path")
        return 0
    for line in render_matrix(strengths, [req.display_id for req in frig.requirements]):
        print(line)
    return 0


def loi_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    print(f"edges: {frig.edge_count()}")
    print(f"loi: {loi(frig):.6f}")
    return 0


def validate_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    report = validate_frig(frig)
    if report.valid:
        print(f"valid: {frig.n} requirements, {frig.edge_count()} dependencies")
        return 0
    for line in report.describe():
        print(line)
    raise FrigValidationError(f"{len(report.violations)} invalid cell(s)", args.frig)


def path_command(args: argparse.Namespace) -> int:
    frig = resolve_frig(args.frig)
    try:
        path = DependencyPath(nodes=tuple(parse_pair(args.nodes)))
    except ValidationError as e:
        raise PreconditionError(e.errors()[0]["msg"])
    print(f"{path.display()} strength {format_number(path_strength(frig, path))}")
    return 0


def dataset_command(args: argparse.Namespace) -> int:
    frig = load_dataset(args.dataset_id)
    path = save_frig(frig, args.out)
    logger.info(f"Exported {args.dataset_id} to {path}")
    print(f"wrote {path}")
    return 0
