"""Randomized detection of k-vertex simple paths via group-algebra evaluation.

The main entry points are ``detect`` and ``find`` for graphs and
``detect_multilinear`` for general scalar-free arithmetic circuits.
"""

from .circuit import Circuit, CircuitBuilder, detect_multilinear, parse_circuit
from .errors import ExtractionError, FormatError, ParameterError, UnsupportedError
from .graph import Graph, generate_instance, is_simple_path, parse_graph, read_graph
from .paths import Decision, detect, detect_trial, find, held_karp_path
from .rng import DEFAULT_SEED, RngStream

__all__ = [
    "Circuit",
    "CircuitBuilder",
    "DEFAULT_SEED",
    "Decision",
    "ExtractionError",
    "FormatError",
    "Graph",
    "ParameterError",
    "RngStream",
    "UnsupportedError",
    "detect",
    "detect_multilinear",
    "detect_trial",
    "find",
    "generate_instance",
    "held_karp_path",
    "is_simple_path",
    "parse_circuit",
    "parse_graph",
    "read_graph",
]
__version__ = "0.1.0"
