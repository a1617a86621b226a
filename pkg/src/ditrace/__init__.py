"""Absorption monoids, modules in pointed sets and pointed monoids, scalar
functors with checked adjunctions, and first dihomotopy modules of
combinatorial directed spaces."""

from .monoid import (
    ONE,
    ZERO,
    AbsMonoid,
    AxiomReport,
    CoproductMonoid,
    FiniteAbsMonoid,
    FreeMonoid,
    MonElement,
    MonoidMorphism,
    OppositeMonoid,
    ProductMonoid,
    QuotientMonoid,
    SubMonoid,
    TableMonoid,
    check_axioms,
    check_axioms_sampled,
    check_morphism,
    compose_morphisms,
    coproduct,
    free_absorption_monoid,
    identity_morphism,
    is_absorption_abelian_group,
    is_absorption_group,
    multiply,
    product,
    quotient,
    table_monoid,
    word_element,
)
from .pointed import STAR, PointedSet, pointed
from .modules import (
    Bimodule,
    LeftModuleMon,
    LeftModuleSet,
    ModuleMorphism,
    MonoidAlgebraElement,
    RightModuleSet,
    TransitionSystem,
    algebra_add,
    algebra_multiply,
    algebra_scale,
    annihilator_module,
    check_module_axioms,
    check_module_morphism,
    endomorphism_module,
    module_coproduct,
    module_from_transition_system,
    module_product,
    module_quotient,
    regular_set_module,
    sub_module,
    transition_system_from_module,
    trivial_module,
)
from .scalars import (
    AdjunctionReport,
    CoextensionElement,
    ExtensionClass,
    ScalarChange,
    adjunction_left_check,
    adjunction_right_check,
    coextend,
    coextend_mon,
    coextend_set,
    extend_mon,
    extend_set,
    group_preservation_check,
    restrict,
    set_module_homs,
)
from .simplex import SimplexPoint, degeneracy_map, face_map, random_simplex_point
from .spaces import (
    DihomotopyClass,
    DirectedGraph,
    DPath,
    GridEmbedding,
    GraphMap,
    GridSpace,
    class_of_path,
    compose_space_maps,
    concat_action,
    concat_action_right,
    dihomotopy_classes,
    enumerate_dipaths,
    identity_space_map,
    pi1_map,
    pi1_module,
    trace_bimodule,
    trace_monoid,
    trace_monoid_map,
)

__version__ = "0.1.0"
