from .complexes import ChainComplex, ChainMap
from .homology import (
    HomologySummary,
    cohomology,
    homology,
    homology_group,
    induced_map_on_homology,
    is_homologically_trivial,
    is_quasi_isomorphism,
    mapping_cone,
)
from .nerve import (
    chain_complex_on,
    inclusion_chain_map,
    order_complex_chains,
    quotient_map_beta,
    relative_chains,
)
