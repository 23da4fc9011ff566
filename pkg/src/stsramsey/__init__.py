"""Steiner triple systems: constructions, exact Ramsey-type parameters with
certificates, explicit colorings, and seeded random processes."""

from .core import (
    BadK,
    BadM,
    BadOrder,
    ComponentSet,
    DuplicateTriple,
    EdgeColoring,
    EmptyClass,
    EvenOrder,
    HoleCertificate,
    InvalidHole,
    MalformedCertificate,
    MissingLabels,
    MonochromaticTriple,
    NonHalfIdempotentQuasigroup,
    NonIdempotentQuasigroup,
    OddOrder,
    PairMulticovered,
    PairUncovered,
    RainbowTriple,
    RestartsExhausted,
    SteinerSystem,
    StsError,
    Triple,
    TripleSystem,
    VertexOutOfRange,
    build_system,
    is_steiner,
    largest_mono_component,
    mono_components,
    pair_degree_min,
    validate_steiner,
    verify_hole,
)
from .constructions import (
    Quasigroup,
    bose,
    fano,
    half_idempotent_quasigroup,
    idempotent_quasigroup,
    infer_labels,
    random_idempotent_quasigroup,
    s9,
    skolem,
)
from .search import (
    BudgetSpent,
    ParamResult,
    SearchBudget,
    alpha_star,
    independence_number,
    mc_exact,
    mc_upper_from_coloring,
)
from .colorings import (
    Bicoloring,
    BoundsRecord,
    CdrTerm,
    CheckResult,
    DecompositionResult,
    T2Partition,
    bicoloring_search,
    bicoloring_to_bound,
    bose_coloring,
    cdr_sequence,
    closed_form_bounds,
    decompose_3coloring,
    hole_coloring,
    skolem_coloring,
    verify_bicoloring,
    verify_decomposition,
    verify_z2_range,
)
from .randomized import (
    ExperimentRow,
    OrderedPartialSystem,
    ProcessOutcome,
    binomial_3graph,
    derive_seed,
    experiment_discrepancy,
    linearize,
    random_sts,
    triangle_removal,
)

__version__ = "0.1.0"
