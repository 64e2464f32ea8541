"""Exact analysis of planar polynomial jacobian maps."""
from jacmap.analyzer import Certificate, Verdict, certify, classify_jacobian, normalize
from jacmap.inverter import formal_inverse, verify_inverse
from jacmap.parse_io import emit_certificate, format_map, format_poly, parse_map, parse_poly
from jacmap.poly import Poly2, PolyMap

__all__ = [
    "Certificate", "Poly2", "PolyMap", "Verdict", "certify", "classify_jacobian",
    "emit_certificate", "format_map", "format_poly", "formal_inverse", "normalize",
    "parse_map", "parse_poly", "verify_inverse",
]
__version__ = "0.1.0"
