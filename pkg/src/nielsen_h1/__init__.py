"""Twisted first cohomology of Aut F_n with coefficients in H^* (x) Lambda^2 H."""

from .automorphisms import Automorphism, GenWord, evaluate_genword, relator_catalog
from .cocycles import Cocycle, named_cocycle
from .coefficients import RingSpec, VElement
from .cohomology import (coboundary_space, cocycle_space, generation_check, h1,
                         johnson_extension_feasible, restriction_to_inner)
from .factorization import factorize
from .snf import smith_normal_form
from .words import FreeWord

__all__ = [
    "Automorphism", "GenWord", "evaluate_genword", "relator_catalog", "Cocycle", "named_cocycle",
    "RingSpec", "VElement", "coboundary_space", "cocycle_space", "generation_check", "h1",
    "johnson_extension_feasible", "restriction_to_inner", "factorize", "smith_normal_form", "FreeWord",
]
