"""Exact-arithmetic checks on weighted dual graphs of surface singularity resolutions."""

__version__ = "0.1.0"

from nashgate.errors import NashgateError, ParseError
from nashgate.graph_core import (
    Component,
    DualGraph,
    IntersectionMatrix,
    SignReport,
    intersection_matrix,
    inverse_sign_report,
    is_negative_definite,
    minimality_audit,
    parse_graph,
    serialize_graph,
)
from nashgate.catalog import catalog_lookup, catalog_names

__all__ = [
    "Component",
    "DualGraph",
    "IntersectionMatrix",
    "NashgateError",
    "ParseError",
    "SignReport",
    "catalog_lookup",
    "catalog_names",
    "intersection_matrix",
    "inverse_sign_report",
    "is_negative_definite",
    "minimality_audit",
    "parse_graph",
    "serialize_graph",
]
