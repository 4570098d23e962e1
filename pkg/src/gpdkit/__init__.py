"""Exact Morita calculus for finite groupoids.

Finite groupoids, functors, and natural transformations as explicit tables;
weak-equivalence reports and pullbacks; spans with a decidable 2-cell
calculus; group-action properties and the equivariant decomposition of weak
equivalences; plus an instance workbench that turns the algebraic laws into
an executable suite.
"""

from .catalog import (
    cyclic_group,
    dihedral_group_8,
    group_catalog,
    klein_four_group,
    quaternion_group,
    symmetric_group_3,
)
from .core import (
    ActionAxiomError,
    ActionGroupoid,
    DanglingIdError,
    FiniteGroup,
    FiniteGroupoid,
    GroupoidFunctor,
    InternalCheckError,
    IsoSearchResult,
    MismatchError,
    NaturalTransformation,
    PreconditionError,
    ValidationReport,
    Violation,
    action_groupoid,
    all_subgroups,
    compose_functors,
    direct_product,
    empty_groupoid,
    group_isomorphic,
    groupoid_iso_search,
    identity_functor,
    identity_transformation,
    inverse_transformation,
    is_normal,
    is_subgroup_of,
    orbit,
    orbits,
    stabilizer,
    subgroup,
    terminal_groupoid,
    trivial_group,
    validate_functor,
    validate_group,
    validate_groupoid,
    validate_nat_trans,
    vertical_compose_nat,
    whisker,
)
from .equivariant import (
    PROPERTY_NAMES,
    DecompositionResult,
    EquivariantFunctor,
    PropertyReport,
    PropertyVerdict,
    as_equivariant,
    balanced_product,
    compose_equivariant,
    decompose,
    equivariant_anafunctorify,
    equivariant_functor,
    equivariant_strict_pullback,
    equivariant_weak_pullback,
    identity_equivariant,
    property_report,
    quotient_action,
    quotient_factorization,
)
from .localization import (
    AnaTwoCell,
    Anafunctor,
    GeneralizedMorphism,
    TwoCellDiagram,
    anafunctorify,
    as_anafunctor,
    as_diagram,
    compose_anafunctors,
    compose_generalized,
    identity_anafunctor,
    identity_two_cell,
    inverse_two_cell,
    normalize_two_cell,
    strictify_composition,
    two_cells_equal,
    validate_two_cell,
    vertical_compose_ana,
)
from .morita import (
    FiberDisagreementError,
    LocallySplitWitness,
    SkeletonInvariant,
    StrictPullback,
    WeakEquivalenceReport,
    WeakPullback,
    coff_factorize,
    connected_components,
    ff_factorize,
    isotropy_group,
    locally_split_witness,
    morita_oracle,
    skeleton_invariant,
    strict_pullback,
    weak_equivalence_report,
    weak_pullback,
)
from .workbench import (
    GeneratedWeakEquivalence,
    InstanceBudget,
    LawResult,
    SuiteReport,
    actions_of_group,
    build_instances,
    enumerate_actions,
    generate_weak_equivalences,
    run_law_suite,
)

__version__ = "0.1.0"
