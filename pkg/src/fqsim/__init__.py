"""Exact group-action intersection bounds and similar point
configurations over prime fields.

The library enumerates explicit finite groups acting on explicit
spaces, verifies the transitive-action intersection bound
max_g |H ∩ gE| >= |H||E|/|X| with exact rational arithmetic, and
constructs independently re-verifiable witnesses of r-similar and
determinant-similar (k+1)-point configurations in subsets of F_q^d.
"""

from .harness import __version__

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    EnumerationCapExceeded,
    EvenFieldUnsupported,
    FieldMismatch,
    FqsimError,
    HeaderMismatch,
    InsufficientIntersection,
    NoRoot,
    NotADthPower,
    NotASquare,
    NotInSpace,
    NotOnSphere,
    NotPrime,
    NotTransitive,
    OriginInSet,
    ParseError,
    ScanCapExceeded,
    SpaceMismatch,
    TooLarge,
    TooMany,
    VerificationFailed,
    ZeroDilation,
)
from .field import FieldElement, PrimeField, arith, as_field, make_field
from .geometry import (
    ENUMERATION_CAP,
    Matrix,
    PointSet,
    Vector,
    all_vectors,
    det_of_columns,
    det_of_columns_cofactor,
    pair_norms,
    sphere,
    zero_vector,
)
from .groups import (
    FiniteGroup,
    GroupElement,
    Orthogonal,
    Space,
    SpecialLinear,
    Translation,
    orthogonal_group,
    special_linear_group,
    translations,
)
from .intersection import (
    BoundAudit,
    DoubleCountCheck,
    IntersectionReport,
    double_count_check,
    exhaustive_pairs_audit,
    intersect_count,
    max_intersection,
    max_translation_intersection_fast,
    random_pairs_audit,
    translation_count_map,
)
from .configurations import (
    DetSimilarityWitness,
    EdgeSet,
    SimilarityThreshold,
    SimilarityWitness,
    SphereExperimentReport,
    Verification,
    edge_preset,
    find_det_similar,
    find_similar_config,
    similarity_threshold,
    sphere_experiment,
    verify_det_similarity,
    verify_similarity,
)
from .harness import (
    Report,
    SweepConfig,
    canonical_json,
    file_digest,
    format_pointset,
    load_pointset,
    parse_pointset,
    random_pointset,
    random_subset,
    run_cell,
    run_sweep,
    save_pointset,
    sweep_summary,
    write_sweep,
)
from .prng import SplitMix64, derive_seed
