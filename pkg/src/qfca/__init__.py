"""Exact calculus of quantaloid-enriched categories and concept lattices.

The package computes, on finite data and without any floating point:

* quantaloids (finite hom-lattices with join-preserving composition),
  their residuations and cyclic dualizing families;
* categories, functors and distributors enriched in a quantaloid;
* presheaves, Yoneda embeddings, weighted (co)limits, pointwise Kan
  extensions and density predicates;
* the FCA and RST concept lattices of a distributor-valued context, the
  residual context that turns one into the other, and Girard complements;
* executable verifiers for the representation theorems relating all of the
  above, down to the order-theoretic join/meet-dense forms.

Everything is immutable and deterministic; see the ``qfca`` command line for
the file-driven interface.
"""

from .errors import (
    BaseMismatch,
    BudgetExceeded,
    ClosureBudgetExceeded,
    ColimitMissing,
    ConditionFailed,
    HypothesesNotMet,
    InvalidChu,
    InvalidParams,
    NotAdjoint,
    NotAQuantale,
    NotGirard,
    QfcaError,
    Report,
    SearchBudgetExceeded,
    TypeMismatch,
    ValidationReport,
)
from .quantaloid import (
    Arrow,
    CyclicDualizingFamily,
    HomLattice,
    Quantaloid,
    build_preset,
    complement_arrow,
    find_cyclic_dualizing_family,
    validate_quantaloid,
)
from .qcat import (
    Preorder,
    QCategory,
    QFunctor,
    QTypedSet,
    discrete_category,
    dualize_category,
    dualize_functor,
    find_equivalence,
    functor_leq,
    identity_functor,
    is_essentially_surjective,
    is_fully_faithful,
    is_separated,
    singleton_category,
    skeletal_quotient,
    underlying_order,
    validate_category,
    validate_functor,
)
from .qdist import (
    ChuTransform,
    QDistributor,
    adjoint_arrow_identities_suite,
    cograph,
    dist_adjoint_pair,
    dist_compose,
    dist_left_imp,
    dist_right_imp,
    dualize_distributor,
    graph,
    identity_dist,
    is_adjoint_functor_pair,
    restrict_distributor,
    validate_chu,
    validate_distributor,
)
from .presheaf import (
    Copresheaf,
    Presheaf,
    PresheafSpace,
    copresheaf_hom,
    coyoneda,
    enumerate_copresheaves,
    enumerate_presheaves,
    find_left_adjoint,
    find_right_adjoint,
    inf,
    is_codense,
    is_complete,
    is_dense,
    is_join_dense,
    is_meet_dense,
    lan,
    materialize_copresheaves,
    materialize_presheaves,
    presheaf_hom,
    pushforward,
    copushforward,
    ran,
    sup,
    weighted_colimit,
    weighted_limit,
    yoneda,
)
from .concept import (
    ConceptLattice,
    IsbellPair,
    KanPair,
    ResidualCategory,
    brute_force_fixed,
    codense_probe,
    complement_context,
    fca_lattice,
    fca_lattice_map,
    isbell_down,
    isbell_up,
    kan_dag,
    kan_lower,
    kan_lower_dag,
    kan_star,
    lattice_to_dot,
    lattice_to_json,
    macneille_completion,
    residual_category,
    residual_chu,
    residual_context,
    rst_lattice,
    rst_lattice_map,
    verify_functoriality_square,
    verify_rst_as_fca,
    verify_rst_as_fca_complement,
)
from .represent import (
    GeneratorMaps,
    build_generator_maps,
    construct_fix_equivalence,
    fix_points,
    quantale_corollary_check,
    verify_dense_representation,
    verify_elementary_identities,
    verify_elementary_representation,
    verify_fca_representation,
    verify_general_representation,
    verify_rst_representation,
    verify_type_preserving_representation,
)

__version__ = "0.1.0"
