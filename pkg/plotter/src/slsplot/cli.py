"""``plot`` command: render a results CSV to an image.

Exit codes: 0 success, 1 usage/validation error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .plot import PlotError, PlotSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PlotError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="plot", description=__doc__)
    parser.add_argument("--csv", required=True, help="results CSV from the harness")
    parser.add_argument("--x", required=True, help="x-axis column, e.g. sweep_value")
    parser.add_argument("--series", required=True, help="one line per value, e.g. algorithm")
    parser.add_argument("--y", default="mean_iterations")
    parser.add_argument("--yerr", help="optional error-bar column, e.g. stderr")
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    parser.add_argument("--linear-y", action="store_true", help="disable the log y-axis")
    parser.add_argument("--title")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        spec = PlotSpec(
            input_csv=args.csv,
            x_column=args.x,
            series_column=args.series,
            y_column=args.y,
            y_err_column=args.yerr,
            log_y=not args.linear_y,
            title=args.title,
            output=args.out,
        )
        path = render(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
