"""Write the CSV and SVG data behind the three spectrum figures.

    python3 scripts/make_figures.py [outdir]
"""

import sys
from pathlib import Path

from sl2dirac.cli import main

FIGURES = {
    "spectrum_circles": ["spectrum", "--kmax", "6"],
    "line_sweep": ["line-sweep", "--operator", "D"],
    "helix": ["helix", "--kmax", "3"],
}


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, args in FIGURES.items():
        for fmt in ("csv", "svg"):
            path = outdir / f"{name}.{fmt}"
            code = main(args + ["--format", fmt, "--out", str(path)])
            if code:
                raise SystemExit(code)
            print(path)


if __name__ == "__main__":
    run(Path(sys.argv[1] if len(sys.argv) > 1 else "figures"))
