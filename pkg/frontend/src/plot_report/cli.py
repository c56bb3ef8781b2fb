"""Command line interface: plot --kind ... --in ... --out ..."""

from __future__ import annotations

import argparse
import sys

from .figures import plot
from .parsing import ParseError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render simulation artifacts (series CSV, snapshots, "
                    "calibration tables) into figures.",
    )
    parser.add_argument("--kind", required=True,
                        choices=["series", "snapshot-overlay", "calibration"])
    parser.add_argument("--in", dest="inputs", required=True, action="append",
                        help="input artifact path; repeat for several inputs "
                             "(snapshot overlays, calibration experiment points)")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        plot(args.kind, args.inputs, args.out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
