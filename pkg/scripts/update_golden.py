"""Regenerate tests/golden/ from the current CLI.  Review the diff before committing."""

from pathlib import Path

from sl2dirac.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "spectrum_circles.csv": ["spectrum", "--q", "0.25", "--q", "0.5", "--q", "2", "--kmax", "6"],
    "line_sweep.csv": ["line-sweep", "--q-min", "-2", "--q-max", "3", "--samples", "501", "--kmax", "3"],
}

if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, args in CASES.items():
        main(args + ["--out", str(GOLDEN / name)])
        print(GOLDEN / name)
