"""Exact arithmetic for split tropical Jacobians of genus-2 curves.

The package follows one pipeline: a splitting datum (d, k, lp, l) determines
a principally polarized real torus with pairing, its Selling-reduced form,
the tropical genus-2 curve with those periods, and the degree-d harmonic
covers of the two source circles.  A second, symbolic pass reduces the
period form with the lengths kept as variables, producing the fan of the
d-split locus in the length orthant.

All computation is over ``fractions.Fraction``; nothing is floating point.
"""

from .errors import (
    ConeCapExceeded,
    DegenerateSample,
    ImageConditionViolated,
    IncompatibleMorphism,
    InternalInconsistency,
    IterationCapExceeded,
    NonIntegralAdjoint,
    NonIntegralSlope,
    NonPositiveLength,
    NotInSigma,
    NotIsogeny,
    NotPositiveDefinite,
    NotPrincipal,
    PositiveQ12,
    SingularMatrix,
    SplitJacError,
    UnsupportedRank,
    ValidationError,
    WrongK,
)
from .locus import (
    FanCone,
    FanDelta,
    LinForm,
    boundary_rays,
    build_fan,
    compare_images,
    image_cones,
    qpp_symbolic,
)
from .matrices import Mat, congruence_act, inv2, parse_rat, rat, rat_str, snf2
from .reconstruct import (
    Cover,
    CoverPair,
    EdgeMap,
    PipelineTrace,
    boundary_test_k1,
    boundary_test_kd1,
    build_covers,
    period_matrix,
    torelli_preimage,
)
from .selling import (
    DumbbellFamily,
    ReductionWord,
    ThetaCurve,
    classify_curve,
    fd_representative,
    in_fundamental_domain,
    in_sigma,
    selling_params,
    selling_reduce,
    sigma_coords,
    stab_sigma,
)
from .splitting import SplitDiagram, SplittingData, build_diagram, build_jpp, qpp
from .tav import (
    InduceResult,
    MorphismClass,
    Tav,
    TavMorphism,
    adjoint,
    circle,
    classify,
    compose,
    direct_sum,
    dual_morphism,
    induce_polarization,
    multiplication,
    polarization_type,
    pullback_polarization,
)

__version__ = "0.1.0"

__all__ = [
    "ConeCapExceeded",
    "Cover",
    "CoverPair",
    "DegenerateSample",
    "DumbbellFamily",
    "EdgeMap",
    "FanCone",
    "FanDelta",
    "ImageConditionViolated",
    "IncompatibleMorphism",
    "InduceResult",
    "InternalInconsistency",
    "IterationCapExceeded",
    "LinForm",
    "Mat",
    "MorphismClass",
    "NonIntegralAdjoint",
    "NonIntegralSlope",
    "NonPositiveLength",
    "NotInSigma",
    "NotIsogeny",
    "NotPositiveDefinite",
    "NotPrincipal",
    "PipelineTrace",
    "PositiveQ12",
    "ReductionWord",
    "SingularMatrix",
    "SplitDiagram",
    "SplitJacError",
    "SplittingData",
    "Tav",
    "TavMorphism",
    "ThetaCurve",
    "UnsupportedRank",
    "ValidationError",
    "WrongK",
    "adjoint",
    "boundary_rays",
    "boundary_test_k1",
    "boundary_test_kd1",
    "build_covers",
    "build_diagram",
    "build_fan",
    "build_jpp",
    "circle",
    "classify",
    "classify_curve",
    "compare_images",
    "compose",
    "congruence_act",
    "direct_sum",
    "dual_morphism",
    "fd_representative",
    "image_cones",
    "in_fundamental_domain",
    "in_sigma",
    "induce_polarization",
    "inv2",
    "multiplication",
    "parse_rat",
    "period_matrix",
    "polarization_type",
    "pullback_polarization",
    "qpp",
    "qpp_symbolic",
    "rat",
    "rat_str",
    "selling_params",
    "selling_reduce",
    "sigma_coords",
    "snf2",
    "stab_sigma",
    "torelli_preimage",
]
