"""Two-dimensional algebras: classification, isomorphism, degenerations and subvarieties."""
from .algebra import Structure, act, derivation_dimension, in_basis, multiply
from .classifier import classify, is_isomorphic, label_of
from .families import FAMILIES, Label, constants, in_domain, make_label, parse_label
from .identities import Identity, satisfies_identity
from .scalars import EXACT, NUMERIC, NotRepresentable, field_for

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FAMILIES",
    "NUMERIC",
    "Identity",
    "Label",
    "NotRepresentable",
    "Structure",
    "act",
    "classify",
    "constants",
    "derivation_dimension",
    "field_for",
    "in_basis",
    "in_domain",
    "is_isomorphic",
    "label_of",
    "make_label",
    "multiply",
    "parse_label",
    "satisfies_identity",
]
