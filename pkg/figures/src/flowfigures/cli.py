"""Figure rendering front door.

    flowfigures render --in <run_dir> --kind <kind> --out <image>

Exit codes: 0 rendered, 2 missing or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .io import FigureInputError
from .render import KINDS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="flowfigures")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("render", help="render one figure from a run directory")
    p.add_argument("--in", dest="input_dir", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--title", default="")
    args = parser.parse_args(argv)

    spec = FigureSpec(input_dir=args.input_dir, kind=args.kind,
                      output=args.output, title=args.title)
    try:
        path = render(spec)
    except FigureInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
