"""Schemes of gradient-like flows on 4-manifolds: knots, spheres and their invariants."""

__version__ = "0.1.0"
