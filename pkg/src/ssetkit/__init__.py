"""Finite presentations of simplicial sets: identities, constructions,
horn filling, invariants and the homotopy coherent nerve."""

from .constructions import (
    FiniteCategory,
    FiniteGroup,
    ProductSSet,
    bg,
    boundary,
    cyclic_group,
    discrete_category,
    group_as_category,
    horn,
    nerve,
    ordinal_category,
    point,
    poset_category,
    product,
    sphere,
    standard_simplex,
    symmetric_group,
    validate_category,
    validate_group,
)
from .core import (
    SimplexExpr,
    SimplicialMap,
    SSet,
    ValidationReport,
    apply_map,
    compose_maps,
    degenerate,
    enumerate_maps,
    enumerate_simplices,
    face,
    identity_map,
    normalize_word,
    validate,
)
from .delta import MonotoneMap, OperatorWord, epi_mono_factorize, verify_cosimplicial_identities
from .errors import NotKanError, ParseError, RejectedInput, ResourceError, SSetError, TruncationError
from .hcnerve import SimplicialCategory, c_bracket, c_theta, discrete_enrichment, hc_nerve, validate_scat
from .invariants import (
    AbelianDecomposition,
    GroupPresentation,
    HomotopyCertificate,
    abelianize,
    euler_characteristic,
    homology,
    pi0,
    pi1_presentation,
    pi_n_classes,
    verify_homotopy,
)
from .kan import FillerCertificate, HornMap, compose_edges, edge_inverse, find_fillers, kan_report, make_horn
from .snf import IntMatrix, smith_normal_form
from .textio import Document, parse, parse_file, render

__version__ = "0.1.0"
