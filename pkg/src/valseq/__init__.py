"""Exact computations with rational-rank-one valuations on k(x, y, z)."""
