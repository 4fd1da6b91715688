"""Combinatorial transport, monodromy and K0 calculus for schobers on ribbon graphs."""
from .errors import SchoberError
from .ribbon_graph import RibbonGraph
from .words import FunctorWord, RelationSet, parse_word, format_word
from .curves import Curve, LineField
from .schober import SchoberDatum

__all__ = ["SchoberError", "RibbonGraph", "FunctorWord", "RelationSet", "parse_word",
           "format_word", "Curve", "LineField", "SchoberDatum"]
