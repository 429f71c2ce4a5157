"""Branch-cycle computations: permutation groups, Nielsen classes, Hurwitz
braid orbits, cyclic difference sets, and finite-field value censuses."""

from .errors import (
    BudgetExceeded,
    DegreeMismatchError,
    DomainError,
    GroupOrderCapExceeded,
    OrbitCapExceeded,
    SearchCapExceeded,
)
from .permcore import (
    ConjClass,
    CycleType,
    PermGroup,
    Permutation,
    centralizer_in_sym,
    compose,
    fixed_point_free_element,
    generate_group,
    normalizer_condition,
    normalizer_in_sym,
    normalizer_preserving_classes,
)
from .nielsen import (
    ABSOLUTE,
    INNER,
    RAW,
    REDUCED_ABSOLUTE,
    REDUCED_INNER,
    ClassVector,
    EquivalencePolicy,
    NielsenTuple,
    PermutationRepresentation,
    are_equivalent,
    canonical_form,
    enumerate_nielsen,
    induced_tuple,
    perm_rep_on_pairs,
    perm_rep_on_translates,
    straighten_polynomial_tuple,
)
from .braid import (
    BraidOrbit,
    CyclotomicSubfield,
    FineModuli,
    ReducedOrbitData,
    braid_orbit,
    braidable,
    class_power,
    fine_moduli,
    inner_multiplier,
    is_rational_union,
    multiplier_group_MC,
    q_action,
    q_inverse,
    reduced_data,
    sh_action,
    verify_qq_normality,
    verify_relations,
)
from .genus import (
    BranchData,
    FiberComponent,
    RepPair,
    davenport_trace_equiv,
    exceptionality_group_test,
    factor_count,
    fiber_product_genus,
    group_rep_equiv,
    perm_rep_equiv,
    poly_decomposition_blocks,
    quadratic_wreath_lift,
    rh_genus,
    rh_genus_over_base,
)
from .diffsets import (
    DifferenceSet,
    MultiplierGroup,
    brc_feasible,
    canonical_translate,
    enumerate_difference_sets,
    feasible_triples,
    incidence_identity_check,
    is_difference_set,
    multipliers,
    singer_cycle,
    singer_difference_set,
    storer_check,
    translation_equivalent,
)
from .finfield import (
    DavenportReport,
    FieldCensus,
    FieldPolynomial,
    FiniteField,
    davenport_pair_check,
    dickson,
    dickson_component_fields,
    dickson_exceptional,
    exceptional_census,
    exponent_support_gcd,
    frobenius_progression_fit,
    is_permutation_poly,
    parse_poly,
    root_everywhere_locally,
    value_census,
)

__version__ = "0.1.0"
