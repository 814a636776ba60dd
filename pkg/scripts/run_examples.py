"""Print the defining data, jump table and semigroup generators for each built-in example."""
import argparse
from fractions import Fraction

from valseq.cli import main
from valseq.presets import EXAMPLES

RUNS = {"7.1": ["--index-bound", "9"], "8.1": ["--index-bound", "7"], "8.2": ["--value-bound", "9"]}


def run(name, bound):
    print(f"== example {name}")
    main(["define", "--example", name, "--depth", "8"])
    print()
    main(["jump", "--example", name] + RUNS[name])
    print()
    main(["semigroup", "--example", name, "--value-bound", str(bound)])
    print()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=sorted(EXAMPLES))
    ap.add_argument("--bound", type=Fraction, default=Fraction(9))
    args = ap.parse_args()
    for name in args.names:
        run(name, args.bound)
