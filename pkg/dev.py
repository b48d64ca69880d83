"""
Development script for trying the constructions end to end.

Usage:
    Simply run: python dev.py

This runs each construction at a small stage budget and prints its report.
Traces are written to the output folder.
"""

import sys
import os

# Add the project root to path for imports
sys.path.insert(0, os.path.dirname(__file__))

from ceerlab.cli import main as ceerlab_main


def run_constructions():
    output_dir = os.path.join(os.path.dirname(__file__), "output")

    # Create output directory if it doesn't exist
    os.makedirs(output_dir, exist_ok=True)

    runs = [
        ["construct", "allhigh", "--stages", "200", "--horizon", "200", "--rows", "8"],
        ["construct", "weakarray", "--spec", "(intervals 2 3 1 4)", "--stages", "40"],
        ["construct", "postsimple", "--stages", "600", "--census", "12"],
    ]

    for argv in runs:
        name = argv[1]
        print(f"\n{'=' * 60}")
        print(f"Construction: {name}")
        print(f"{'=' * 60}")
        code = ceerlab_main(argv + ["--trace-dir", output_dir])
        if code != 0:
            print(f"\n✗ {name} exited with code {code}")


def run_kk():
    output_dir = os.path.join(os.path.dirname(__file__), "output")
    algebra_path = os.path.join(output_dir, "successor.alg")

    # successor on omega; the word problem is identity, so no level stalls
    with open(algebra_path, "w", encoding="utf-8") as f:
        f.write("generators: 0\nop arity=1 program=2\nwp: (id)\n")

    print(f"\n{'=' * 60}")
    print("Construction: kk")
    print(f"{'=' * 60}")
    ceerlab_main(["construct", "kk", "--algebra", algebra_path, "--stages", "200", "--depth", "20", "--trace-dir", output_dir])


def run_semigroup():
    print(f"\n{'=' * 60}")
    print("Semigroup S(R) for R = (mod 2)")
    print(f"{'=' * 60}")
    ceerlab_main(["semigroup", "classify", "aba", "abba", "aaba", "bbab"])
    ceerlab_main(["semigroup", "decide", "--spec", "(mod 2)", "--stage", "10", "aba", "abbba"])
    ceerlab_main(["semigroup", "closure", "--spec", "(mod 2)", "--stage", "10", "--max-length", "7", "abbba"])


def main():
    run_constructions()
    run_kk()
    run_semigroup()


if __name__ == "__main__":
    main()
