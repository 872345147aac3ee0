"""
Degree and Connectivity Conditions
Checkers for condition A0, Meyniel sets, S-strong, strong and 2-strong
connectivity, and the nonadjacent-partner degree bound that follows from A0
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Optional

from ..config import ScanConfig
from ..exceptions import HypothesisNotMet, InvalidVertexError, PreconditionError
from .digraph import Digraph, bit, iter_bits, members, popcount

logger = logging.getLogger(__name__)


# ============================================================================
# CONNECTIVITY
# ============================================================================

def is_strong(digraph: Digraph) -> bool:
    """True iff D has a single strong component covering V(D)"""
    full = digraph.vertex_mask
    return digraph.reachable_from(0) == full and digraph.reaching(0) == full


def _strong_within(digraph: Digraph, allowed: int) -> bool:
    start = (allowed & -allowed).bit_length() - 1
    return (
        digraph.reachable_from(start, allowed) == allowed
        and digraph.reaching(start, allowed) == allowed
    )


def is_2_strong(digraph: Digraph) -> bool:
    """
    Strong, and still strong after deleting any single vertex

    Raises:
        PreconditionError: n < 3
    """
    if digraph.n < 3:
        raise PreconditionError(f"2-strong connectivity needs n >= 3, got n={digraph.n}")
    if not is_strong(digraph):
        return False

    full = digraph.vertex_mask
    for v in digraph.vertices():
        if not _strong_within(digraph, full & ~bit(v)):
            logger.debug(f"Deleting vertex {v} disconnects the digraph")
            return False
    return True


def is_s_strong_mask(digraph: Digraph, s_mask: int) -> bool:
    """Bitset form of is_s_strong (no validation)"""
    anchor = (s_mask & -s_mask).bit_length() - 1
    both_ways = digraph.reachable_from(anchor) & digraph.reaching(anchor)
    return s_mask & ~both_ways == 0


def is_s_strong(digraph: Digraph, s: Iterable[int]) -> bool:
    """
    Every ordered pair of distinct S-vertices is joined by a path of D

    Raises:
        PreconditionError: S is empty
    """
    s_mask = digraph.mask(s)
    if not s_mask:
        raise PreconditionError("S-strong connectivity needs a nonempty S")
    return is_s_strong_mask(digraph, s_mask)


def has_two_disjoint_paths(digraph: Digraph, x: int, y: int) -> bool:
    """
    Two internally disjoint (x, y)-paths exist

    The arc xy, when present, counts as one of the two paths. Otherwise no
    single vertex other than x and y may separate y from x.
    """
    digraph.check_vertex(x)
    digraph.check_vertex(y)
    if x == y:
        raise InvalidVertexError(f"Disjoint paths need distinct end-vertices, got {x} twice")

    full = digraph.vertex_mask
    if digraph.has_arc(x, y):
        # some path of length >= 2: leave x for a vertex other than y
        interior = full & ~bit(x)
        for w in iter_bits(digraph.out_mask(x) & ~bit(y)):
            if digraph.reachable_from(w, interior) & bit(y):
                return True
        return False

    if not digraph.reachable_from(x) & bit(y):
        return False
    for v in digraph.vertices():
        if v in (x, y):
            continue
        if not digraph.reachable_from(x, full & ~bit(v)) & bit(y):
            return False
    return True


# ============================================================================
# CONDITION A0
# ============================================================================

class A0Branch(Enum):
    """Which missing arc triggered the inequality"""
    NO_ARC_X_TO_Z = 'no-arc-x->z'
    NO_ARC_Z_TO_X = 'no-arc-z->x'


@dataclass(frozen=True)
class A0Violation:
    x: int
    y: int
    z: int
    branch: A0Branch
    lhs: int
    rhs: int

    def __str__(self) -> str:
        return (f"a0-violation x={self.x} y={self.y} z={self.z} "
                f"branch={self.branch.value} lhs={self.lhs} rhs={self.rhs}")


@dataclass
class A0Report:
    """Result of check_a0; holds iff no violation was found"""
    holds: bool
    violations: List[A0Violation] = field(default_factory=list)
    truncated: bool = False


def _iter_a0_violations(digraph: Digraph, y_mask: int) -> Iterator[A0Violation]:
    n = digraph.n
    rhs = 3 * n - 2
    d_out = [digraph.out_degree(v) for v in range(n)]
    d_in = [digraph.in_degree(v) for v in range(n)]
    ys = members(y_mask)

    for x in ys:
        nonadjacent = y_mask & ~digraph.adjacency_mask(x) & ~bit(x)
        for y in iter_bits(nonadjacent):
            base = d_out[x] + d_in[x] + d_out[y] + d_in[y]
            for z in ys:
                if z == x or z == y:
                    continue
                if not digraph.has_arc(x, z):
                    lhs = base + d_out[x] + d_in[z]
                    if lhs < rhs:
                        yield A0Violation(x, y, z, A0Branch.NO_ARC_X_TO_Z, lhs, rhs)
                if not digraph.has_arc(z, x):
                    lhs = base + d_in[x] + d_out[z]
                    if lhs < rhs:
                        yield A0Violation(x, y, z, A0Branch.NO_ARC_Z_TO_X, lhs, rhs)


def satisfies_a0_mask(digraph: Digraph, y_mask: int) -> bool:
    """Early-exit A0 test on a bitset Y"""
    for _ in _iter_a0_violations(digraph, y_mask):
        return False
    return True


def satisfies_a0(digraph: Digraph, y: Iterable[int]) -> bool:
    return satisfies_a0_mask(digraph, digraph.mask(y))


def check_a0(digraph: Digraph, y: Iterable[int], cap: Optional[int] = None) -> A0Report:
    """
    Evaluate condition A0 on Y and list every failing instance

    For every ordered triple of distinct x, y, z in Y with x, y nonadjacent:
    a missing arc xz requires d(x)+d(y)+d+(x)+d-(z) >= 3n-2, a missing arc
    zx requires d(x)+d(y)+d-(x)+d+(z) >= 3n-2.

    Args:
        digraph: The digraph
        y: Vertex set Y (nonempty)
        cap: Maximum violations kept (defaults to REPORT_VIOLATION_CAP)

    Returns:
        A0Report; `truncated` is set when more violations existed than kept
    """
    y_mask = digraph.mask(y)
    if not y_mask:
        raise PreconditionError("Condition A0 needs a nonempty Y")
    cap = ScanConfig.REPORT_VIOLATION_CAP if cap is None else cap

    violations: List[A0Violation] = []
    truncated = False
    for violation in _iter_a0_violations(digraph, y_mask):
        if len(violations) >= cap:
            truncated = True
            break
        violations.append(violation)

    if truncated:
        logger.warning(f"A0 report truncated at {cap} violations")
    return A0Report(holds=not violations, violations=violations, truncated=truncated)


# ============================================================================
# MEYNIEL SETS
# ============================================================================

@dataclass(frozen=True)
class MeynielViolation:
    x: int
    y: int
    degree_sum: int

    def __str__(self) -> str:
        return f"meyniel-violation x={self.x} y={self.y} sum={self.degree_sum}"


@dataclass
class MeynielReport:
    holds: bool
    violations: List[MeynielViolation] = field(default_factory=list)
    truncated: bool = False


def _iter_meyniel_violations(digraph: Digraph, m_mask: int) -> Iterator[MeynielViolation]:
    bound = 2 * digraph.n - 1
    degrees = [digraph.total_degree(v) for v in range(digraph.n)]
    for x in iter_bits(m_mask):
        later = m_mask & ~((bit(x) << 1) - 1)
        for y in iter_bits(later & ~digraph.adjacency_mask(x)):
            total = degrees[x] + degrees[y]
            if total < bound:
                yield MeynielViolation(x, y, total)


def is_meyniel_set_mask(digraph: Digraph, m_mask: int) -> bool:
    for _ in _iter_meyniel_violations(digraph, m_mask):
        return False
    return True


def check_meyniel_set(digraph: Digraph, m: Iterable[int], cap: Optional[int] = None) -> MeynielReport:
    """
    Every nonadjacent pair of distinct M-vertices has d(x)+d(y) >= 2n-1

    Returns:
        MeynielReport listing failing pairs (x < y)
    """
    m_mask = digraph.mask(m)
    cap = ScanConfig.REPORT_VIOLATION_CAP if cap is None else cap

    violations: List[MeynielViolation] = []
    truncated = False
    for violation in _iter_meyniel_violations(digraph, m_mask):
        if len(violations) >= cap:
            truncated = True
            break
        violations.append(violation)

    if truncated:
        logger.warning(f"Meyniel report truncated at {cap} violations")
    return MeynielReport(holds=not violations, violations=violations, truncated=truncated)


def is_meyniel_digraph(digraph: Digraph) -> bool:
    """Meyniel's condition on the whole vertex set"""
    return is_meyniel_set_mask(digraph, digraph.vertex_mask)


# ============================================================================
# CONSEQUENCE OF A0
# ============================================================================

def nonadjacent_partner_bound_holds_mask(digraph: Digraph, y_mask: int) -> bool:
    """Bitset form of nonadjacent_partner_bound_holds; A0 is not re-checked"""
    bound = 2 * digraph.n - 1
    degrees = [digraph.total_degree(v) for v in range(digraph.n)]
    for x in iter_bits(y_mask):
        partners = y_mask & ~digraph.adjacency_mask(x) & ~bit(x)
        if popcount(partners) < 2:
            continue
        low = [y for y in iter_bits(partners) if degrees[x] + degrees[y] < bound]
        if len(low) >= 2:
            logger.error(f"Vertex {x} has nonadjacent partners {low[0]} and {low[1]} "
                         f"both below {bound}")
            return False
    return True


def nonadjacent_partner_bound_holds(digraph: Digraph, y: Iterable[int]) -> bool:
    """
    For Y satisfying A0: whenever x in Y has two distinct nonadjacent
    partners y, z in Y, d(x)+d(y) >= 2n-1 or d(x)+d(z) >= 2n-1

    Raises:
        HypothesisNotMet: Y does not satisfy A0
    """
    y_mask = digraph.mask(y)
    if not satisfies_a0_mask(digraph, y_mask):
        raise HypothesisNotMet("Y does not satisfy condition A0")
    return nonadjacent_partner_bound_holds_mask(digraph, y_mask)
