"""Exact computation of rational Khovanov homology and Jones polynomials
of link diagrams, with degree-growth scans under iterated half-twists."""

from .diagram import (Crossing, LinkDiagram, TwistRegion, braid_closure,
                      crossing_counts, insert_half_twists, mirror, parse_pd,
                      serialize_pd)
from .homology import (KhovanovTable, euler_polynomial, i_max, jones_from_kh,
                       khovanov_table, max_degree, normalize, parse_table,
                       serialize_table)
from .jones import jones_polynomial, kauffman_bracket, skein_check
from .laurent import LaurentPoly, exact_divide, substitute
from .scan import (ScanReport, TwistScanRow, bounds_report, report_to_csv,
                   report_to_text, torus_scan, twist_scan)

__version__ = "0.1.0"

__all__ = [
    "Crossing", "LinkDiagram", "TwistRegion", "braid_closure",
    "crossing_counts", "insert_half_twists", "mirror", "parse_pd",
    "serialize_pd", "KhovanovTable", "euler_polynomial", "i_max",
    "jones_from_kh", "khovanov_table", "max_degree", "normalize",
    "parse_table", "serialize_table", "jones_polynomial", "kauffman_bracket",
    "skein_check", "LaurentPoly", "exact_divide", "substitute", "ScanReport",
    "TwistScanRow", "bounds_report", "report_to_csv", "report_to_text",
    "torus_scan", "twist_scan", "__version__",
]
