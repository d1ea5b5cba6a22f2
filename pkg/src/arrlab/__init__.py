"""Exact tools for line arrangements: lattices, moduli and the nine-line classification."""

from .exact import QuadExt, Poly, RatFun
from .geometry import Arrangement, ProjLine, ProjPoint, ProjTransform, incidence_of
from .lattice import IncidenceStructure, LatticeIso, find_isomorphism, profile_of
from .moduli import ModuliReport, plan_construction, realizations_equivalent, solve_moduli
from .classify import NineLineClass, OutsideTheorem, classify_nine

__all__ = [
    "QuadExt", "Poly", "RatFun",
    "Arrangement", "ProjLine", "ProjPoint", "ProjTransform", "incidence_of",
    "IncidenceStructure", "LatticeIso", "find_isomorphism", "profile_of",
    "ModuliReport", "plan_construction", "realizations_equivalent", "solve_moduli",
    "NineLineClass", "OutsideTheorem", "classify_nine",
]
