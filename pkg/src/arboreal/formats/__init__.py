"""Readers and writers for trees, networks, matrices and DOT."""

from .anet import parse_anet, write_anet
from .diagnostics import ParseDiagnostic, ParseError
from .dot import export_dot
from .matrix_csv import parse_matrix, write_matrix
from .newick import parse_newick, write_newick

__all__ = [
    "ParseDiagnostic",
    "ParseError",
    "parse_newick",
    "write_newick",
    "parse_anet",
    "write_anet",
    "parse_matrix",
    "write_matrix",
    "export_dot",
]
