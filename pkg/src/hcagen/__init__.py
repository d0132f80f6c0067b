"""Hybrid 90/150 cellular automata, LFSRs and pseudo-random sequence tools."""
from .ca import Configuration, Rule, conjugate, conjugate_reflect, reflect
from .gf2 import FieldElement, Gf2Poly, berlekamp_massey, is_irreducible, is_primitive
from .lfsr import LfsrMachine, cycle_structure
from .lhca import LhcaMachine, RuleVector, char_poly, compose, synthesize

__all__ = [
    "Configuration", "Rule", "conjugate", "conjugate_reflect", "reflect",
    "FieldElement", "Gf2Poly", "berlekamp_massey", "is_irreducible", "is_primitive",
    "LfsrMachine", "cycle_structure",
    "LhcaMachine", "RuleVector", "char_poly", "compose", "synthesize",
]

__version__ = "0.1.0"
