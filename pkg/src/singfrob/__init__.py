"""Exact computations for F-manifold structures on miniversal deformations of
functions on the node, on space curves and on complete intersections."""

__version__ = "0.1.0"
