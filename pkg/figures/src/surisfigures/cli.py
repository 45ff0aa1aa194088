"""suris-figures render --kind ... --in ... --out ..."""

import argparse
import sys

from .render import KINDS, FigureDataError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suris-figures", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    p = subs.add_parser("render", help="render one figure from a sweep CSV")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--in", dest="in_path", required=True, help="input CSV from the suris tool")
    p.add_argument("--out", dest="out_path", required=True, help="output image (svg or png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(FigureSpec(kind=args.kind, in_path=args.in_path, out_path=args.out_path))
    except (FigureDataError, OSError) as exc:
        print(f"suris-figures: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
