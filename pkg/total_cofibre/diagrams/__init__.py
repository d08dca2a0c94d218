from .diagram import (
    DiagramMap,
    DiagramOfComplexes,
    constant_diagram,
    cyclic_complex,
    point_complex,
    random_chain_map,
    random_diagram,
    representable,
    supported_on_upset,
    zero_diagram,
)
from .equivalence import DegreeComparison, EquivalenceReport, GroupRecord, verify_ball_equivalence
from .totals import (
    TotalComplex,
    diagram_map_gamma,
    gamma_total_complex,
    hocolim_inclusion,
    hocolim_total,
    holim_total,
)
