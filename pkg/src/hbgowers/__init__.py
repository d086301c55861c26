"""Workbench for Heath-Brown prime-weight models, Gowers uniformity norms,
combinatorial cube counts, and weighted ergodic averages.

Each optimized computation ships with a brute-force oracle next to it; the
test suite holds the two paths together at stated tolerances.
"""

from hbgowers import arith, averages, cli, cube, gowers, hb_model  # noqa: F401

__all__ = ["arith", "hb_model", "gowers", "cube", "averages", "cli"]
__version__ = "0.1.0"
