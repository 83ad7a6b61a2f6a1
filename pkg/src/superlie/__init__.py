"""Exact arithmetic engine for n-Lie superalgebras given by structure constants."""

from .classify import fingerprint, generate_constraints, grid_search
from .nlie import (
    AxiomReport,
    BracketTable,
    LinearFunctional,
    bracket,
    bracket_basis,
    change_of_basis,
    induce,
    is_ideal,
    is_subalgebra,
    is_supertrace,
    series,
    supertrace_space,
    verify_axioms,
)
from .scalar import GaussScalar
from .superspace import BasisSignature

__version__ = "0.1.0"
