"""Exact chain-level total cofibres, homotopy limits and derived inverse limits on finite poset pairs."""

from .chains import ChainComplex, ChainMap, homology, mapping_cone, order_complex_chains, relative_chains
from .conditions import ConditionReport, classify_pair
from .config import Settings, get_settings
from .derived_limits import AbelianDiagram, derived_limits, homotopy_groups_diagram, limp
from .diagrams import (
    DiagramOfComplexes,
    gamma_total_complex,
    hocolim_total,
    holim_total,
    random_diagram,
    verify_ball_equivalence,
)
from .posets import Poset, PosetPair, generate, parse_generator_spec
from .spectral import Field, abutment_check, e2_check, ss_pages

__version__ = "0.1.0"
