"""Exact (co)homology, products and manifold checks for real moment-angle complexes."""

from .catalog import CATALOG
from .cells import (
    CellChain,
    CellWord,
    boundary,
    cellular_cohomology,
    cellular_homology,
    chain_word,
    coboundary,
    cochain_word,
    eta_iso,
    mu_iso,
)
from .complex import (
    SimplicialComplex,
    basic_construction_triangulation,
    derived_complex,
    kj_by_wedges,
    kj_construction,
    parse_complex,
    simplicial_wedge,
)
from .dga import DgaAlgebra, DgaElement, DgaMonomial, dga_cohomology, dga_differential, dga_multiply, eta_J
from .errors import InputError, InvariantViolation, MacKitError, NotOrientableError, ParseError, ResourceLimitError
from .homology import HomologyGroup, IntegerChainComplex, reduced_homology, reduced_homology_all_subsets
from .manifold import ManifoldVerdict, is_generalized_homology_sphere, manifold_verdict
from .products import fundamental_class, poincare_duality_check, word_cap, word_cup
from .snf import smith_normal_form

__all__ = [name for name in dir() if not name.startswith("_")]
