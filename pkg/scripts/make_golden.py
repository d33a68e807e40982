"""Rewrite tests/golden/ with the `invariants --format json` output of every
fixture. Only rerun after an intentional change to the output format."""

from pathlib import Path

from walklab.cli import run
from walklab.families import fixture_names

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name in fixture_names(include_auxiliary=True):
        out = GOLDEN / f"invariants_{name}.json"
        rc = run(["invariants", "--fixture", name, "--format", "json", "--out", str(out)])
        print(name, rc)


if __name__ == "__main__":
    main()
