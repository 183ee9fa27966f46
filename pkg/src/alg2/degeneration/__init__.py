"""Degenerations between canonical structures: certificates, the graph and separating sets."""
from .certificates import CertificateReport, DegenerateBasis, verify_degeneration
from .data import DataError, UnknownId, load
from .graph import (
    AnyOf,
    DegenerationGraph,
    UnknownSeries,
    UnknownSet,
    closure_dimension,
    default_graph,
    degenerates,
    lattice_intersection,
    level,
    series_closure_contains,
)
from .separating import (
    EvidenceReport,
    MissingPreChange,
    SeparatingSet,
    check_nondegeneration_evidence,
    evaluate_row,
    g_set,
    orbit_avoids,
    scaling_transform,
    shear_transform,
)

__all__ = [
    "AnyOf",
    "CertificateReport",
    "DataError",
    "DegenerateBasis",
    "DegenerationGraph",
    "EvidenceReport",
    "MissingPreChange",
    "SeparatingSet",
    "UnknownId",
    "UnknownSeries",
    "UnknownSet",
    "check_nondegeneration_evidence",
    "closure_dimension",
    "default_graph",
    "degenerates",
    "evaluate_row",
    "g_set",
    "lattice_intersection",
    "level",
    "load",
    "orbit_avoids",
    "scaling_transform",
    "shear_transform",
    "series_closure_contains",
    "verify_degeneration",
]
