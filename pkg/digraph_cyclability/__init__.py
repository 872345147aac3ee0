"""
Digraph Cyclability Toolkit
Cycles through vertex sets of digraphs under degree conditions: condition
checkers, a constructive cycle grower, an exact oracle and verification scans
"""

__version__ = "1.0.0"
__author__ = "Digraph Cyclability Team"

from .modules.cycle_grower import Certificate, CycleGrower
from .modules.digraph import Cycle, Digraph, DigraphBuilder, Path

__all__ = [
    "Certificate",
    "Cycle",
    "CycleGrower",
    "Digraph",
    "DigraphBuilder",
    "Path",
]
