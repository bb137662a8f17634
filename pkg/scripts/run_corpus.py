"""Run every .ukb file in a directory and print the table output.

    python3 scripts/run_corpus.py [corpus_dir] [--json]
"""

import argparse
import sys
from pathlib import Path

from usualvalues.cli import main

ROOT = Path(__file__).resolve().parent.parent


def run(directory: Path, as_json: bool) -> int:
    files = sorted(directory.glob("*.ukb"))
    if not files:
        print(f"no .ukb files under {directory}", file=sys.stderr)
        return 1
    argv = ["run", *map(str, files)]
    if as_json:
        argv += ["--format", "json"]
    return main(argv)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", nargs="?", type=Path, default=ROOT / "corpus")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    sys.exit(run(args.directory, args.json))
