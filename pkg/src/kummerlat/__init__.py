"""Exact lattice and quadratic-form algorithms for Kummer-type lattice classifiers."""

__version__ = "0.1.0"
