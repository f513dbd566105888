"""toriso: exact-arithmetic toolkit for isospectral flat tori.

Lattices with exact rational bases, quadratic-form spectra, certified
isospectrality and non-isometry checks, orthogonal decomposition, and the
mod-q code lift used to search for isospectral families.

Everything user-facing is re-exported here; ``toriso.triplet`` holds the
bundled six-dimensional triplet and ``toriso.formats`` the text and JSON
serializers used by the command line interface.
"""

from .codes import (
    CodeError,
    LinearCode,
    canonical_monomial_form,
    enumerate_codes,
    equal_weight_distribution,
    lift,
    monomial_images,
    project,
    weight_distribution,
    weight_signature,
)
from .decomposition import (
    Component,
    Decomposition,
    DecompositionError,
    component_determinants,
    decompose,
    decompose_form,
    is_decomposable_vector,
    is_irreducible,
)
from .enumeration import (
    RepSpectrum,
    VectorList,
    enumerate_up_to,
    independent_ladder,
    rep_spectrum,
    shortest_vectors,
)
from .formats import FormatError
from .isometry import (
    EquivalenceWitness,
    SearchBudgetExceeded,
    SearchStats,
    congruent_lattices,
    integral_equivalence,
    norm_caps,
)
from .lattices import (
    FormClassTags,
    GramForm,
    Lattice,
    LatticeError,
    MembershipError,
    choir_family,
    classify,
    direct_sum,
    double_form,
    dual,
    form_direct_sum,
    gram,
    is_even,
    laplace_spectrum_prefix,
    level,
    scale,
)
from .linalg import (
    DimensionError,
    LdlFactor,
    LinalgError,
    Mat,
    NotPositiveDefiniteError,
    RankError,
    Rat,
    ShapeError,
    char_poly,
    det,
    eigenvalue_lower_bound,
    hnf,
    is_positive_definite,
    lattices_equal,
    ldl,
    lll_reduce,
)
from .search import (
    CollisionTuple,
    SearchReport,
    TupleVerificationError,
    collide_codes,
    run_search,
    verify_tuple,
)
from .spectra import IsoCertificate, Verdict, certify, hecke_threshold, mu0

__version__ = "0.1.0"

__all__ = [
    "CodeError",
    "CollisionTuple",
    "Component",
    "Decomposition",
    "DecompositionError",
    "DimensionError",
    "EquivalenceWitness",
    "FormClassTags",
    "FormatError",
    "GramForm",
    "IsoCertificate",
    "Lattice",
    "LatticeError",
    "LdlFactor",
    "LinalgError",
    "LinearCode",
    "Mat",
    "MembershipError",
    "NotPositiveDefiniteError",
    "RankError",
    "Rat",
    "RepSpectrum",
    "SearchBudgetExceeded",
    "SearchReport",
    "SearchStats",
    "ShapeError",
    "TupleVerificationError",
    "Verdict",
    "VectorList",
    "canonical_monomial_form",
    "certify",
    "char_poly",
    "choir_family",
    "classify",
    "collide_codes",
    "component_determinants",
    "congruent_lattices",
    "decompose",
    "decompose_form",
    "det",
    "direct_sum",
    "double_form",
    "dual",
    "eigenvalue_lower_bound",
    "enumerate_codes",
    "enumerate_up_to",
    "equal_weight_distribution",
    "form_direct_sum",
    "gram",
    "hecke_threshold",
    "hnf",
    "independent_ladder",
    "integral_equivalence",
    "is_decomposable_vector",
    "is_even",
    "is_irreducible",
    "is_positive_definite",
    "laplace_spectrum_prefix",
    "lattices_equal",
    "ldl",
    "level",
    "lift",
    "lll_reduce",
    "monomial_images",
    "mu0",
    "norm_caps",
    "project",
    "rep_spectrum",
    "run_search",
    "scale",
    "shortest_vectors",
    "verify_tuple",
    "weight_distribution",
    "weight_signature",
]
