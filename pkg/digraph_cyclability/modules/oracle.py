"""
Exact Cycle Oracle
Subset dynamic programming over anchored cycles: maximum Y-length cycle,
hamiltonicity and cyclability for digraphs up to the configured order cap
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

try:
    import networkx as nx
except ImportError:
    nx = None
    logging.warning("NetworkX not installed. Install with: pip install networkx")

from ..config import OracleConfig
from ..exceptions import CapExceeded, PreconditionError
from .digraph import Cycle, Digraph, bit, iter_bits, popcount

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    """Best cycle found by the oracle and its Y-length"""
    best_cycle: Optional[Cycle]
    max_y_length: int
    exhausted: bool = True

    def to_text(self) -> str:
        cycle = str(self.best_cycle) if self.best_cycle is not None else "none"
        return (f"max_Y_length {self.max_y_length}\n"
                f"cycle {cycle}\n"
                f"exhausted {'true' if self.exhausted else 'false'}\n")


def _check_cap(digraph: Digraph, cap: Optional[int]) -> None:
    cap = OracleConfig.ORACLE_CAP if cap is None else cap
    if digraph.n > cap:
        raise CapExceeded(f"Oracle refuses n={digraph.n} (cap {cap})")


class AnchoredCycleTable:
    """
    Subset DP for cycles whose smallest vertex is a fixed anchor s

    tails[r] is the set of vertices w in R (R = r shifted above s) such that
    some path starting at w covers exactly R and ends with an arc into s.
    The cycle s + R exists iff s has an arc into tails[r].
    """

    def __init__(self, digraph: Digraph, anchor: int):
        self.digraph = digraph
        self.anchor = anchor
        self.shift = anchor + 1
        self.width = digraph.n - self.shift
        self.tails = self._build()

    def _build(self) -> List[int]:
        out = self.digraph.out_masks
        into_anchor = self.digraph.in_mask(self.anchor)
        shift = self.shift
        tails = [0] * (1 << self.width)

        for r in range(1, len(tails)):
            real = r << shift
            if r & (r - 1) == 0:
                tails[r] = real & into_anchor
                continue
            acc = 0
            rest = real
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                if out[w] & tails[r ^ (low >> shift)]:
                    acc |= low
                rest ^= low
            tails[r] = acc
        return tails

    def closes(self, r: int) -> bool:
        """True iff anchor + R is the vertex set of a cycle"""
        return bool(self.digraph.out_mask(self.anchor) & self.tails[r])

    def vertex_mask(self, r: int) -> int:
        return bit(self.anchor) | (r << self.shift)

    def closing_subsets(self) -> Iterator[int]:
        for r in range(1, len(self.tails)):
            if self.closes(r):
                yield r

    def cycle(self, r: int) -> Cycle:
        """Lexicographically smallest cycle on anchor + R"""
        out = self.digraph.out_masks
        seq = [self.anchor]
        current = self.anchor
        rest = r
        while rest:
            choice = out[current] & self.tails[rest]
            w = (choice & -choice).bit_length() - 1
            seq.append(w)
            rest ^= 1 << (w - self.shift)
            current = w
        return Cycle.of(self.digraph, seq)


def cycle_vertex_sets(digraph: Digraph, cap: Optional[int] = None) -> List[int]:
    """
    Vertex sets (as bitsets) of all cycles of D, each set listed once

    Raises:
        CapExceeded: n above the oracle cap
    """
    _check_cap(digraph, cap)
    sets = []
    for anchor in range(digraph.n - 1):
        table = AnchoredCycleTable(digraph, anchor)
        sets.extend(table.vertex_mask(r) for r in table.closing_subsets())
    return sets


def max_y_cycle(digraph: Digraph, y: Iterable[int], cap: Optional[int] = None) -> OracleResult:
    """
    Cycle with the most Y-vertices

    Ties go to the shortest cycle, then to the lexicographically smallest
    rotation-normalized vertex sequence.

    Args:
        digraph: The digraph
        y: Vertex set Y (may be empty)
        cap: Order cap (defaults to ORACLE_CAP)

    Returns:
        OracleResult; best_cycle is None only for acyclic digraphs
    """
    _check_cap(digraph, cap)
    y_mask = digraph.mask(y)

    best_key: Optional[Tuple[int, int]] = None
    best: List[Tuple[AnchoredCycleTable, int]] = []

    for anchor in range(digraph.n - 1):
        table = AnchoredCycleTable(digraph, anchor)
        for r in table.closing_subsets():
            vertices = table.vertex_mask(r)
            key = (-popcount(vertices & y_mask), popcount(vertices))
            if best_key is None or key < best_key:
                best_key = key
                best = [(table, r)]
            elif key == best_key and best[0][0] is table:
                best.append((table, r))

    if best_key is None:
        logger.debug("Oracle: digraph is acyclic")
        return OracleResult(best_cycle=None, max_y_length=0)

    # every tied candidate shares the smallest anchor, so the winner is
    # the smallest reconstructed sequence among them
    cycle = min((table.cycle(r) for table, r in best), key=lambda c: c.vertices)
    logger.debug(f"Oracle: max Y-length {-best_key[0]} via cycle {cycle}")
    return OracleResult(best_cycle=cycle, max_y_length=-best_key[0])


def is_hamiltonian(digraph: Digraph, cap: Optional[int] = None) -> bool:
    """True iff D has a cycle through all n vertices (n = 1 is never Hamiltonian)"""
    _check_cap(digraph, cap)
    if digraph.n < 2:
        return False
    table = AnchoredCycleTable(digraph, 0)
    return table.closes((1 << (digraph.n - 1)) - 1)


def hamiltonian_cycle(digraph: Digraph, cap: Optional[int] = None) -> Optional[Cycle]:
    """Lexicographically smallest Hamiltonian cycle, or None"""
    _check_cap(digraph, cap)
    if digraph.n < 2:
        return None
    table = AnchoredCycleTable(digraph, 0)
    full = (1 << (digraph.n - 1)) - 1
    return table.cycle(full) if table.closes(full) else None


def is_cyclable(digraph: Digraph, s: Iterable[int], cap: Optional[int] = None) -> bool:
    """
    Some cycle contains every vertex of S

    Raises:
        PreconditionError: S is empty
        CapExceeded: n above the oracle cap
    """
    s_mask = digraph.mask(s)
    if not s_mask:
        raise PreconditionError("Cyclability needs a nonempty S")
    return any(vertices & s_mask == s_mask for vertices in cycle_vertex_sets(digraph, cap))


def max_y_length_from_sets(cycle_sets: Iterable[int], y_mask: int) -> int:
    """Max Y-length given precomputed cycle vertex sets"""
    return max((popcount(vertices & y_mask) for vertices in cycle_sets), default=0)


# ============================================================================
# INDEPENDENT ORACLES
# ============================================================================

def iter_cycles(digraph: Digraph) -> Iterator[Cycle]:
    """
    Every cycle of D exactly once, by DFS anchored at its smallest vertex

    Exponential; for small digraphs and cross-checks only.
    """
    out = digraph.out_masks

    for anchor in range(digraph.n):
        above = digraph.vertex_mask & ~((bit(anchor) << 1) - 1)
        path = [anchor]

        def extend(current: int, used: int) -> Iterator[Cycle]:
            if len(path) > 1 and digraph.has_arc(current, anchor):
                yield Cycle(tuple(path))
            for w in iter_bits(out[current] & above & ~used):
                path.append(w)
                yield from extend(w, used | bit(w))
                path.pop()

        yield from extend(anchor, bit(anchor))


def naive_max_y_length(digraph: Digraph, y: Iterable[int]) -> int:
    """Max Y-length via networkx simple-cycle enumeration"""
    if nx is None:
        raise ImportError("NetworkX is required. Install with: pip install networkx")

    y_set = set(y)
    best = 0
    for cycle in nx.simple_cycles(digraph.to_networkx()):
        best = max(best, len(y_set.intersection(cycle)))
    return best


def cycle_length_spectrum(digraph: Digraph, cap: Optional[int] = None) -> Dict[int, int]:
    """Number of distinct cycle vertex sets per cycle length"""
    spectrum: Dict[int, int] = {}
    for vertices in cycle_vertex_sets(digraph, cap):
        length = popcount(vertices)
        spectrum[length] = spectrum.get(length, 0) + 1
    return spectrum
