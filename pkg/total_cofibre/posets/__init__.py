from .generators import (
    barycentric_subdivision,
    boundary,
    cone,
    cube,
    generate,
    parse_generator_spec,
    prism,
    simplex,
)
from .poset import (
    Chain,
    ChainBasis,
    Poset,
    PosetPair,
    complement_star,
    ideal_violation,
    is_order_ideal,
    poset_from_relations,
    strict_chains,
)
