import argparse
import logging

from pydantic import ValidationError

from schemas.mining import MembershipMapping
from services.errors import PreconditionError
from services.mining import frig_from_preferences, pearl_strength
from services.storage import load_preferences, resolve_frig, save_frig

from commands.common import render_matrix

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("mine", help="Build a graph from a user preference matrix")
    parser.add_argument("--prefs", required=True, help="Preference CSV (requirement rows, user columns)")
    parser.add_argument("--catalog", required=True, help="FRIG JSON or dataset id supplying values and costs")
    parser.add_argument("--mapping", default="linear", help="linear | clipped:lo,hi | smooth:lo,hi")
    parser.add_argument("--print-eta", action="store_true", help="Print the causal strength matrix")
    parser.add_argument("--out", required=True, help="Output FRIG JSON path")
    parser.set_defaults(handler=mine_command)


def parse_mapping(text: str) -> MembershipMapping:
    try:
        return MembershipMapping.parse(text)
    except ValidationError as e:
        raise PreconditionError(f"bad mapping '{text}': {e.errors()[0]['msg']}")
    except ValueError:
        raise PreconditionError(f"bad mapping '{text}' (expected linear, clipped:lo,hi or smooth:lo,hi)")


def mine_command(args: argparse.Namespace) -> int:
    mapping = parse_mapping(args.mapping)
    catalog = resolve_frig(args.catalog).requirements
    prefs = load_preferences(args.prefs, n_requirements=len(catalog))
    if args.print_eta:
        eta = pearl_strength(prefs).matrix()
        for line in render_matrix(eta, [req.display_id for req in catalog]):
            print(line)
    frig = frig_from_preferences(catalog, prefs, mapping)
    path = save_frig(frig, args.out)
    print(f"wrote {frig.edge_count()} dependencies to {path}")
    return 0
