from .core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    build_category,
    category_to_spec,
    check_functor,
    check_laws,
    check_naturality,
    compose_functors,
    constant_functor,
    functor_to_spec,
    horizontal_compose,
    identity_2cell,
    identity_functor,
    inverse_functor,
    is_identity_2cell,
    is_invertible_2cell,
    is_invertible_functor,
    make_functor,
    make_nat_trans,
    op_dual,
    validate_category,
    validate_functor,
    vertical_chain,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from .search import (
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    find_pseudo_inverse,
    is_equivalence,
    isomorphic_objects,
    iter_functors,
    iter_nat_trans,
)
from .adjunction import (
    Adjunction,
    brute_force_left_adjoints,
    check_adjunction,
    find_left_adjoint,
    identity_adjunction,
    mate,
    mate_inverse,
)
from .small import (
    arrow_category,
    d0_functor,
    d1_functor,
    discrete,
    empty_category,
    poset,
    s0_functor,
    terminal,
    terminal_functor,
)
