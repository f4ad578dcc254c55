"""Exact combinatorics of flag association schemes of finite generalized quadrangles.

Build a quadrangle, take the 7-class scheme on its flags, verify the
intersection numbers against closed-form polynomial tables, enumerate and
classify all fusions, and rebuild the quadrangle from anonymized scheme
data (7-class and the 4-class symmetric fusion at s = t).
"""

from .errors import (
    CompositeParameterError,
    CoverViolationError,
    GqAxiomFailureError,
    Gq1Violation,
    Gq2Violation,
    Gq3Violation,
    GqflagsError,
    GqViolation,
    IdentityFailureError,
    LevelMismatchError,
    MissingClassError,
    NoIsomorphismError,
    NotAFusionError,
    NotASchemeError,
    NotBipartiteError,
    NotParabolicError,
    NotThinError,
    OrbitMismatchError,
    ParameterMismatchError,
    ParseError,
    QuotientIllDefinedError,
    ReconstructionError,
    ScalingMismatchError,
)
from .flags import (
    DualityReport,
    Flag,
    FlagSchemeData,
    build_flag_scheme,
    check_duality_map,
    classify_pair,
    enumerate_flags,
    load_scheme_file,
    save_scheme_file,
)
from .fusions import (
    FeasibilityCondition,
    FeasibilityTag,
    IndexPartition,
    check_fusion,
    classify_partition,
    dual_partition,
    enumerate_fusions,
    fuse,
    set_partitions,
)
from .geometry import (
    GqOrder,
    IncidenceStructure,
    build_grid,
    build_symplectic,
    dualize,
    load_structure,
    point_graph,
    save_structure,
    verify_gq,
)
from .polynomials import BivariatePoly
from .reconstruct import (
    CliqueCover,
    FourClassReconstruction,
    LevelDecomposition,
    QmReport,
    canonicalize_4class,
    check_unique_qm,
    compute_clique_cover_4class,
    reconstruct_from_4class,
    reconstruct_from_7class,
    relabel_to_canonical,
)
from .schemes import (
    IntersectionTensor,
    Parabolic,
    ScrambledScheme,
    dihedral8_witness,
    element_orders,
    find_algebraic_isomorphisms,
    find_parabolics,
    quotient_scheme,
    scramble_scheme,
    srg_parameters,
    thin_group_table,
    verify_scheme,
)
from .tables import (
    DELTA,
    FUSION_BLOCKS,
    GROUP_ELEMENTS,
    REPRESENTATIVE_TRIPLETS,
    STAR,
    eta_poly,
    fused_eta_poly,
    fused_p_poly,
    fused_tensor_from_polys,
    p_poly,
    tensor_from_polys,
    triplet_apply,
    verify_identities,
    verify_triplet_orbits,
)

__version__ = "0.1.0"
