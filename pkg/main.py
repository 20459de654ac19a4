"""
Rescaling Toolkit - command-line entry point

Exact computations around rescaled graded algebras:

- Hilbert series and k-rescaling of presented algebras
- Holonomy Lie algebras, Quillen models and Koszulness tests
- Lower central series and homotopy ranks, loop-space series
- Campbell-Hausdorff calculus, link derivations, loop-sphere brackets
- Link complements and hyperplane arrangements

Usage:
    python main.py --input problem.json [--truncate N] [--k K] [--format table]
    python main.py --example torus-n2-k1
"""
import sys

from rescaling.cli import run

if __name__ == "__main__":
    sys.exit(run())
