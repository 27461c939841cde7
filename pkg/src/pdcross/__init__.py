"""Exact partially-predrawn crossing numbers at desk scale."""
from .model import (Crossing, CrossingRecord, DrawingWitness, Edge, GraphError, Multigraph, Placement,
                    PlaneDrawing, PredrawnGraph, ValidationReport, drawings_equivalent, is_conforming,
                    make_graph, planarise, restrict, surgery_identify, surgery_subdivide,
                    validate_drawing, validate_witness)

__all__ = [
    "Crossing", "CrossingRecord", "DrawingWitness", "Edge", "GraphError", "Multigraph", "Placement",
    "PlaneDrawing", "PredrawnGraph", "ValidationReport", "drawings_equivalent", "is_conforming",
    "make_graph", "planarise", "restrict", "surgery_identify", "surgery_subdivide",
    "validate_drawing", "validate_witness",
]
