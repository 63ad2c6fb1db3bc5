"""Braid groups, orbifold invariants, surface braids and Jones-representation gate compilation."""

from .braids import BraidWord, GarsideForm, Permutation, garside_normal_form, words_equal
from .compiler import CompilationResult, SearchConfig, TargetGate, compile_gate, density_probe, projective_distance
from .errors import BraidforgeError, DomainError, InvalidInputError, NotUnitarizableError, UnsupportedGroupError
from .invariants import OrbifoldGeometry, invariant_report
from .jones import RepMatrices, jones_representation, rep_of_word
from .presentations import AbelianizationResult, GroupPresentation, abelianization
from .surface_braids import BandGenerator, BraidSystem, hurwitz_act, hurwitz_orbit, monodromy_report
from .temperley_lieb import TLParams

__version__ = "0.1.0"

__all__ = [
    "AbelianizationResult", "BandGenerator", "BraidSystem", "BraidWord", "BraidforgeError",
    "CompilationResult", "DomainError", "GarsideForm", "GroupPresentation", "InvalidInputError",
    "NotUnitarizableError", "OrbifoldGeometry", "Permutation", "RepMatrices", "SearchConfig",
    "TLParams", "TargetGate", "UnsupportedGroupError", "abelianization", "compile_gate",
    "density_probe", "garside_normal_form", "hurwitz_act", "hurwitz_orbit", "invariant_report",
    "jones_representation", "monodromy_report", "projective_distance", "rep_of_word", "words_equal",
]
