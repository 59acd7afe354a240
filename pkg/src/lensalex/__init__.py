"""Alexander and twisted Alexander polynomials of links in lens spaces,
computed from mixed link diagrams."""
from .alexander import (AlexPoly, alexander, alexander_direct, alexander_formula, both_routes,
                        check_orientation, check_skein, twisted_alexander, twisted_formula)
from .diagram import MixedDiagram, SurgeryChain, kbar, load, loads, validate
from .errors import LensAlexError, ParseError
from .homology import h1_complement
from .presentation import lens_presentation

__version__ = "0.1.0"

__all__ = [
    "AlexPoly", "alexander", "alexander_direct", "alexander_formula", "both_routes",
    "check_orientation", "check_skein", "twisted_alexander", "twisted_formula",
    "MixedDiagram", "SurgeryChain", "kbar", "load", "loads", "validate",
    "LensAlexError", "ParseError", "h1_complement", "lens_presentation",
]
