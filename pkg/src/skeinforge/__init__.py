"""Knot Floer homology from grid diagrams, link determinants, quasi-alternating
certificates and the rank arithmetic of unoriented skein exact triangles."""

from .determinant import determinant, kauffman_det
from .diagram import PlanarDiagram, Resolution, parse_pd, resolve
from .grid import GridDiagram, hfk_hat_rank, tilde_homology
from .quasialt import QACertificate, certify, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "GridDiagram",
    "PlanarDiagram",
    "QACertificate",
    "Resolution",
    "certify",
    "determinant",
    "hfk_hat_rank",
    "kauffman_det",
    "parse_pd",
    "resolve",
    "tilde_homology",
    "verify_certificate",
]
