"""Combinatorial local models, label codecs, branched manifolds and universal builds."""
from .complex import (
    ManifoldStatus,
    SimplicialComplex,
    SimplicialMap,
    automorphism_count,
    boundary_complex,
    find_isomorphism,
    is_ball,
    is_combinatorial_manifold,
    is_sphere,
    iter_isomorphisms,
    link,
    neighborhood,
    simplicial_distance,
    star,
)
from .labeling import (
    Coloring,
    Geography,
    Labeling,
    compute_d_coloring,
    compute_geography,
    geographize,
    geography_transport,
    is_d_coloring,
)
from .subdivision import (
    DecodeError,
    build_family,
    chain_subdivide,
    decode,
    encode,
    standard_subdivide,
    stellar_subdivide,
)
from .model import (
    LocalModel,
    ModelSet,
    enumerate_modeled,
    find_model_neighborhood,
    is_modeled_on,
    validate_local_model,
)
from .branched import (
    BranchedManifold,
    Immersion,
    LocalProjection,
    branch_set,
    branched_boundary,
    find_immersion,
    is_immersion,
    is_nice,
    validate_branched,
)
from .universal import (
    UniversalBuild,
    build_universal,
    canonical_immersion,
    models_from_branched,
    verify_equivalence,
)
from .bundles import Matrix2Z, bundle_certificate, circle_immersion, eval_word, factor_matrix

__version__ = "0.1.0"

__all__ = [
    "ManifoldStatus", "SimplicialComplex", "SimplicialMap", "automorphism_count",
    "boundary_complex", "find_isomorphism", "is_ball", "is_combinatorial_manifold",
    "is_sphere", "iter_isomorphisms", "link", "neighborhood", "simplicial_distance",
    "star", "Coloring", "Geography", "Labeling", "compute_d_coloring",
    "compute_geography", "geographize", "geography_transport", "is_d_coloring",
    "DecodeError", "build_family", "chain_subdivide", "decode", "encode",
    "standard_subdivide", "stellar_subdivide", "LocalModel", "ModelSet",
    "enumerate_modeled", "find_model_neighborhood", "is_modeled_on",
    "validate_local_model", "BranchedManifold", "Immersion", "LocalProjection",
    "branch_set", "branched_boundary", "find_immersion", "is_immersion", "is_nice",
    "validate_branched", "UniversalBuild", "build_universal", "canonical_immersion",
    "models_from_branched", "verify_equivalence", "Matrix2Z", "bundle_certificate",
    "circle_immersion", "eval_word", "factor_matrix",
]
