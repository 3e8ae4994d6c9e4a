"""Planar and cut-sphere knot diagrams."""

from .annular import AnnularDiagram, SliceDiagram, SphereCutDiagram, random_isotopy, simplify_ops
from .planar import UNKNOT, DiagramError, PlanarDiagram, diagram_from_pd, parse_gauss

__all__ = [
    "AnnularDiagram",
    "DiagramError",
    "PlanarDiagram",
    "SliceDiagram",
    "SphereCutDiagram",
    "UNKNOT",
    "diagram_from_pd",
    "parse_gauss",
    "random_isotopy",
    "simplify_ops",
]
