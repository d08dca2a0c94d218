from .jobs import JobSpec, load_diagram, load_pair, run
from .main import build_parser, main
from .serialize import (
    parse_diagram_json,
    parse_poset_json,
    serialize_complex,
    serialize_diagram,
    serialize_poset,
)
