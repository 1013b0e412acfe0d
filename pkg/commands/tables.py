import argparse

from services.storage import reproduce_tables


def register(subparsers) -> None:
    parser = subparsers.add_parser("reproduce-tables", help="Regenerate the reference tables as CSV")
    parser.add_argument("--out", required=True, help="Output directory")
    parser.set_defaults(handler=reproduce_tables_command)


def reproduce_tables_command(args: argparse.Namespace) -> int:
    for path in reproduce_tables(args.out):
        print(f"wrote {path}")
    return 0
