"""
Toolkit Modules
Digraph core and text format, conditions, insertion engine, oracle,
cycle grower, families and verification scans
"""

from .conditions import check_a0, check_meyniel_set, is_2_strong, is_s_strong, is_strong
from .cycle_grower import CycleGrower, grow, initial_cycle
from .digraph import Cycle, Digraph, DigraphBuilder, Path
from .digraph_format import format_digraph, parse_digraph
from .oracle import is_cyclable, is_hamiltonian, max_y_cycle
from .verifier import conjecture_scan, exhaustive_scan, random_scan

__all__ = [
    "Cycle",
    "CycleGrower",
    "Digraph",
    "DigraphBuilder",
    "Path",
    "check_a0",
    "check_meyniel_set",
    "conjecture_scan",
    "exhaustive_scan",
    "format_digraph",
    "grow",
    "initial_cycle",
    "is_2_strong",
    "is_cyclable",
    "is_hamiltonian",
    "is_s_strong",
    "is_strong",
    "max_y_cycle",
    "parse_digraph",
    "random_scan",
]
