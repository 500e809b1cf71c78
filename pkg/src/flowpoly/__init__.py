"""Exact computations on flow polytopes of spinal graphs."""
