"""Exact enumeration of pattern-avoiding ascent sequences.

Four independent pipelines — definition-level brute force, generating-tree
simulation, label-count recurrences, and exact generating-function
expansion — all counting the same avoidance classes, with a verification
harness that cross-checks them against the binomial convolution of the
Catalan numbers (OEIS A007317).
"""

__version__ = "0.1.0"

from . import core, gentree_pair, gentree_0021, series, verify  # noqa: F401
