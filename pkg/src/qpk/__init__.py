"""Exact finite-space toolkit for quasi-probability kernels.

Kernels, partitions and measures use :class:`fractions.Fraction` throughout;
every property is decided exactly.  The vertex enumerator runs on a compiled
extension when available (see :data:`BACKEND`).
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .classify import ClassificationReport, NormalityReport, classify, normality_report
from .errors import (
    ChainOrderError,
    CoverageError,
    DimensionTooLarge,
    MeasurabilityError,
    NegativeEntry,
    NotFull,
    NotMeasurableSet,
    NotMember,
    NotProbability,
    NotRestriction,
    NotStabilized,
    OverlapError,
    ParseError,
    PreconditionError,
    QPKError,
    RowMassError,
    SpaceMismatch,
    ValidationError,
    WindowTooLarge,
)
from .kernel import (
    Kernel,
    Witness,
    apply,
    compose,
    delta_class,
    delta_classes,
    delta_set,
    e_pi,
    identity_kernel,
    in_JE,
    in_Jstar,
    is_adapted,
    is_measurable,
    is_normal,
    is_proper,
    n_pi,
    push,
    sigma_pi,
    support,
    validate_kernel,
    zero_kernel,
)
from .modelio import Model, dumps, load_fixture, loads, parse_model
from .polytope import (
    HPolytope,
    contained_in,
    enum_vertices,
    extreme_members,
    intersect,
    je_hrep,
    je_vertices,
    jstar_hrep,
    jstar_vertices,
    reweight_check,
    same_polytope,
    split_nontrivial,
)
from .refine import (
    Certificate,
    RefinementResult,
    certify,
    is_full,
    is_refinement,
    normal_refinement,
    proper_refinement,
    proper_refinement_on_full,
    restriction,
    restriction_set,
)
from .space import (
    FiniteSpace,
    Partition,
    build_partition,
    compare,
    discrete,
    in_sigma,
    is_trivial,
    join,
    meet,
    probability,
    rational,
    refines,
    trace,
    trivial,
)
from .towers import (
    ChainSpec,
    LimitResult,
    TowerResult,
    build_chain,
    compatible_chain,
    compatible_step,
    conditional_kernel,
    limit_kernel,
    tail_kernel_pipeline,
    tower_refine,
)
