"""
Checkable Properties
Universally quantified statements about small digraphs, each evaluated on
one (digraph, Y) instance: applicable or not, and whether the conclusion holds
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, partial
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

try:
    import networkx as nx
except ImportError:
    nx = None
    logging.warning("NetworkX not installed. Install with: pip install networkx")

from ..exceptions import LemmaViolation, SearchBudgetExceeded
from .conditions import (
    has_two_disjoint_paths,
    is_2_strong,
    is_meyniel_set_mask,
    is_s_strong_mask,
    is_strong,
    nonadjacent_partner_bound_holds_mask,
    satisfies_a0_mask,
)
from .cycle_grower import CertificateStatus, CycleGrower
from .digraph import Cycle, Digraph, Path, bit, iter_bits, members, popcount
from .insertion import (
    ThroughPathSearch,
    close_pair_cycle,
    cycle_absorb,
    find_bypass,
    insertion_guaranteed,
    length2_paths,
    multi_insert,
    pair_distance,
    path_insert,
)
from .oracle import cycle_vertex_sets, iter_cycles, max_y_length_from_sets

logger = logging.getLogger(__name__)


class Outcome(Enum):
    NOT_APPLICABLE = 'not-applicable'
    HOLDS = 'holds'
    VIOLATED = 'violated'


class PropertyName(Enum):
    CYCLE_EXCEPT_ONE = 'cycle-except-one'
    MANOUSSAKIS = 'manoussakis'
    MEYNIEL_SET = 'meyniel-set'
    MEYNIEL_HAMILTONIAN = 'meyniel-hamiltonian'
    NONADJACENT_PARTNER_DEGREE = 'nonadjacent-partner-degree'
    LENGTH_TWO_PATHS = 'length-two-paths'
    CLOSE_PAIR_CYCLE = 'close-pair-cycle'
    BYPASS_EXISTS = 'bypass-exists'
    NO_BYPASS_DEGREE_BOUND = 'no-bypass-degree-bound'
    CYCLE_ABSORPTION = 'cycle-absorption'
    PATH_INSERTION = 'path-insertion'
    MULTI_INSERTION = 'multi-insertion'
    GROWER_AGREEMENT = 'grower-agreement'
    ORACLE_CONSISTENCY = 'oracle-consistency'


class ConjectureVariant(Enum):
    """Extra connectivity clause paired with A0"""
    TWO_STRONG = 'i'
    Y_STRONG_LARGE = 'ii'
    DISJOINT_PATHS = 'iii'


# ============================================================================
# INSTANCE CONTEXT
# ============================================================================

class InstanceContext:
    """Per-digraph facts shared by every Y checked against the same digraph"""

    def __init__(self, digraph: Digraph):
        self.digraph = digraph

    @cached_property
    def degrees(self) -> List[int]:
        return [self.digraph.total_degree(v) for v in self.digraph.vertices()]

    @cached_property
    def strong(self) -> bool:
        return is_strong(self.digraph)

    @cached_property
    def two_strong(self) -> bool:
        return self.digraph.n >= 3 and is_2_strong(self.digraph)

    @cached_property
    def cycle_sets(self) -> List[int]:
        return cycle_vertex_sets(self.digraph, cap=max(self.digraph.n, 1))

    @cached_property
    def cycles(self) -> List[Cycle]:
        return list(iter_cycles(self.digraph))

    @cached_property
    def non_hamiltonian_cycles(self) -> List[Cycle]:
        return [c for c in self.cycles if c.length < self.digraph.n]

    @cached_property
    def naive_cycle_sets(self) -> Set[int]:
        if nx is None:
            raise ImportError("NetworkX is required. Install with: pip install networkx")
        return {self.digraph.mask(c) for c in nx.simple_cycles(self.digraph.to_networkx())}

    @cached_property
    def hamiltonian(self) -> bool:
        return self.digraph.vertex_mask in self.cycle_sets

    def max_y_length(self, y_mask: int) -> int:
        return max_y_length_from_sets(self.cycle_sets, y_mask)

    def cyclable(self, y_mask: int) -> bool:
        return any(vertices & y_mask == y_mask for vertices in self.cycle_sets)

    def paths(self, min_vertices: int, max_vertices: int) -> Iterator[Tuple[int, ...]]:
        """Every simple path with a vertex count in the given range"""
        out = self.digraph.out_masks
        for start in self.digraph.vertices():
            stack = [(start,)]
            while stack:
                path = stack.pop()
                if len(path) >= min_vertices:
                    yield path
                if len(path) >= max_vertices:
                    continue
                used = 0
                for v in path:
                    used |= bit(v)
                for w in sorted(iter_bits(out[path[-1]] & ~used), reverse=True):
                    stack.append(path + (w,))


def _verdict(applicable: bool, holds: bool) -> Outcome:
    if not applicable:
        return Outcome.NOT_APPLICABLE
    return Outcome.HOLDS if holds else Outcome.VIOLATED


def _merge(outcomes: Iterator[Outcome]) -> Outcome:
    result = Outcome.NOT_APPLICABLE
    for outcome in outcomes:
        if outcome is Outcome.VIOLATED:
            return outcome
        if outcome is Outcome.HOLDS:
            result = outcome
    return result


# ============================================================================
# THEOREM-LEVEL PROPERTIES
# ============================================================================

def check_cycle_except_one(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Y-strong + A0 (n >= 4, |Y| >= 2) gives a cycle missing at most one Y-vertex"""
    size = popcount(y_mask)
    applicable = (
        ctx.digraph.n >= 4 and size >= 2
        and is_s_strong_mask(ctx.digraph, y_mask)
        and satisfies_a0_mask(ctx.digraph, y_mask)
    )
    if not applicable:
        return Outcome.NOT_APPLICABLE
    return _verdict(True, ctx.max_y_length(y_mask) >= size - 1)


def check_manoussakis(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Strong + A0 on V (n >= 4) gives a Hamiltonian cycle"""
    digraph = ctx.digraph
    applicable = (
        digraph.n >= 4 and ctx.strong
        and satisfies_a0_mask(digraph, digraph.vertex_mask)
    )
    return _verdict(applicable, applicable and ctx.hamiltonian)


def check_meyniel_set(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Meyniel set M (|M| >= 2) with D M-strong lies on one cycle"""
    applicable = (
        popcount(y_mask) >= 2
        and is_meyniel_set_mask(ctx.digraph, y_mask)
        and is_s_strong_mask(ctx.digraph, y_mask)
    )
    return _verdict(applicable, applicable and ctx.cyclable(y_mask))


def check_meyniel_hamiltonian(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Strong (n >= 2) with Meyniel's condition on V gives a Hamiltonian cycle"""
    digraph = ctx.digraph
    applicable = (
        digraph.n >= 2 and ctx.strong
        and is_meyniel_set_mask(digraph, digraph.vertex_mask)
    )
    return _verdict(applicable, applicable and ctx.hamiltonian)


# ============================================================================
# DEGREE LEMMAS
# ============================================================================

def check_nonadjacent_partner_degree(ctx: InstanceContext, y_mask: int) -> Outcome:
    if popcount(y_mask) < 3 or not satisfies_a0_mask(ctx.digraph, y_mask):
        return Outcome.NOT_APPLICABLE
    return _verdict(True, nonadjacent_partner_bound_holds_mask(ctx.digraph, y_mask))


def check_length_two_paths(ctx: InstanceContext, y_mask: int) -> Outcome:
    digraph = ctx.digraph

    def one(x: int, y: int) -> Outcome:
        forced = digraph.out_degree(x) + digraph.in_degree(y) - (digraph.n - 2)
        if forced < 1:
            return Outcome.NOT_APPLICABLE
        try:
            length2_paths(digraph, x, y)
        except LemmaViolation as e:
            logger.error(f"Length-two paths: {e}")
            return Outcome.VIOLATED
        return Outcome.HOLDS

    return _merge(
        one(x, y)
        for x in digraph.vertices() for y in digraph.vertices()
        if x != y and not digraph.has_arc(x, y)
    )


def check_close_pair_cycle(ctx: InstanceContext, y_mask: int) -> Outcome:
    """d(x)+d(y) >= 2n-1 and {x,y}-strong puts x, y at distance <= 2 on a cycle"""
    digraph = ctx.digraph
    bound = 2 * digraph.n - 1

    def one(x: int, y: int) -> Outcome:
        if ctx.degrees[x] + ctx.degrees[y] < bound:
            return Outcome.NOT_APPLICABLE
        if not is_s_strong_mask(digraph, bit(x) | bit(y)):
            return Outcome.NOT_APPLICABLE
        cycle = close_pair_cycle(digraph, x, y)
        return _verdict(True, cycle is not None and pair_distance(cycle, x, y) <= 2)

    return _merge(
        one(x, y)
        for x in digraph.vertices() for y in digraph.vertices() if x < y
    )


# ============================================================================
# BYPASS LEMMAS
# ============================================================================

def check_bypass_exists(ctx: InstanceContext, y_mask: int) -> Outcome:
    """
    |Y| >= 4, Y-strong, A0: every non-Hamiltonian cycle with two Y-vertices
    has a bypass through each Y-vertex off it
    """
    digraph = ctx.digraph
    applicable = (
        popcount(y_mask) >= 4
        and is_s_strong_mask(digraph, y_mask)
        and satisfies_a0_mask(digraph, y_mask)
    )
    if not applicable:
        return Outcome.NOT_APPLICABLE

    result = Outcome.NOT_APPLICABLE
    for cycle in ctx.non_hamiltonian_cycles:
        if cycle.y_length(y_mask) < 2:
            continue
        for y in iter_bits(y_mask & ~cycle.mask):
            try:
                bypass = find_bypass(digraph, cycle, y)
            except SearchBudgetExceeded as e:
                logger.warning(f"Bypass check skipped for cycle {cycle} and {y}: {e}")
                continue
            if bypass is None:
                logger.error(f"No bypass through {y} for cycle {cycle}")
                return Outcome.VIOLATED
            result = Outcome.HOLDS
    return result


def _entry_distances(digraph: Digraph, cycle: Cycle, x: int, forward: bool) -> Dict[int, int]:
    """
    Length of a shortest (C, x)-path from each cycle vertex (forward=True),
    or of a shortest (x, C)-path to each cycle vertex (forward=False)
    """
    off_cycle = digraph.vertex_mask & ~cycle.mask
    if forward:
        to_x = ThroughPathSearch(digraph, off_cycle).distances_to(x)
        rows = digraph.out_masks
    else:
        to_x = ThroughPathSearch(digraph.converse(), off_cycle).distances_to(x)
        rows = digraph.in_masks

    result = {}
    for c in cycle:
        steps = [to_x[w] for w in iter_bits(rows[c] & off_cycle) if w in to_x]
        if steps:
            result[c] = 1 + min(steps)
    return result


def _closest(distances: Dict[int, int]) -> List[int]:
    best = min(distances.values())
    return sorted(c for c, d in distances.items() if d == best)


def check_no_bypass_degree_bound(ctx: InstanceContext, y_mask: int) -> Outcome:
    """
    With no C-bypass through x (x off a non-Hamiltonian C, joined to C both
    ways), x is adjacent to at most one cycle vertex and its degree sums
    with the cycle vertices stay at most 2n-2, with the stated exceptions
    """
    digraph = ctx.digraph
    limit = 2 * digraph.n - 2
    result = Outcome.NOT_APPLICABLE

    for cycle in ctx.non_hamiltonian_cycles:
        for x in iter_bits(digraph.vertex_mask & ~cycle.mask):
            from_cycle = _entry_distances(digraph, cycle, x, forward=True)
            to_cycle = _entry_distances(digraph, cycle, x, forward=False)
            if not from_cycle or not to_cycle:
                continue
            try:
                if find_bypass(digraph, cycle, x) is not None:
                    continue
            except SearchBudgetExceeded as e:
                logger.warning(f"Degree-bound check skipped for cycle {cycle} and {x}: {e}")
                continue

            heavy = {z for z in cycle if ctx.degrees[x] + ctx.degrees[z] > limit}
            touching = digraph.adjacency_mask(x) & cycle.mask

            if touching:
                if popcount(touching) != 1 or ctx.two_strong:
                    holds = False
                else:
                    holds = heavy <= set(members(touching))
            else:
                holds = False
                for u in _closest(from_cycle):
                    for v in _closest(to_cycle):
                        allowed = {u, v}
                        if heavy <= allowed and (u == v or len(heavy) <= 1):
                            holds = True
            if not holds:
                logger.error(f"Degree bound fails for x={x} off cycle {cycle}")
                return Outcome.VIOLATED
            result = Outcome.HOLDS
    return result


# ============================================================================
# INSERTION LEMMAS
# ============================================================================

def _short_paths_off(ctx: InstanceContext, avoid: int, max_vertices: int) -> Iterator[Path]:
    for vertices in ctx.paths(1, max_vertices):
        mask = 0
        for v in vertices:
            mask |= bit(v)
        if not mask & avoid:
            yield Path(vertices)


def check_cycle_absorption(ctx: InstanceContext, y_mask: int) -> Outcome:
    """d-(y1,C) + d+(yr,C) >= k+1 gives cycles of every length r+1..k+r"""
    digraph = ctx.digraph
    result = Outcome.NOT_APPLICABLE

    for cycle in ctx.non_hamiltonian_cycles:
        k = cycle.length
        for inserted in _short_paths_off(ctx, cycle.mask, 2):
            total = (digraph.in_degree(inserted.head, cycle.mask)
                     + digraph.out_degree(inserted.tail, cycle.mask))
            if total < k + 1:
                continue
            try:
                cycles = cycle_absorb(digraph, cycle, inserted)
            except LemmaViolation as e:
                logger.error(f"Cycle absorption: {e}")
                return Outcome.VIOLATED
            r = len(inserted)
            if sorted(cycles) != list(range(r + 1, k + r + 1)):
                return Outcome.VIOLATED
            result = Outcome.HOLDS
    return result


def check_path_insertion(ctx: InstanceContext, y_mask: int) -> Outcome:
    """The insertion inequality forces an insertion point"""
    digraph = ctx.digraph
    result = Outcome.NOT_APPLICABLE

    for vertices in ctx.paths(2, digraph.n - 1):
        host = Path(vertices)
        for inserted in _short_paths_off(ctx, host.mask, 2):
            if not insertion_guaranteed(digraph, host, inserted):
                continue
            try:
                path_insert(digraph, host, inserted)
            except LemmaViolation as e:
                logger.error(f"Path insertion: {e}")
                return Outcome.VIOLATED
            result = Outcome.HOLDS
    return result


def check_multi_insertion(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Individually insertable vertices of Q can all be inserted together"""
    digraph = ctx.digraph
    result = Outcome.NOT_APPLICABLE

    for vertices in ctx.paths(2, digraph.n - 1):
        host = Path(vertices)
        for donor in _short_paths_off(ctx, host.mask, 3):
            fitting = [v for v in donor
                       if path_insert(digraph, host, Path((v,))) is not None]
            if not fitting:
                continue
            try:
                rebuilt = multi_insert(digraph, host, donor, fitting)
            except LemmaViolation as e:
                logger.error(f"Multi-insertion: {e}")
                return Outcome.VIOLATED
            if rebuilt.mask & ~(host.mask | donor.mask):
                return Outcome.VIOLATED
            result = Outcome.HOLDS
    return result


# ============================================================================
# CROSS-CHECKS
# ============================================================================

def check_grower_agreement(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Grower output against the oracle on instances meeting the hypotheses"""
    digraph = ctx.digraph
    size = popcount(y_mask)
    applicable = (
        size >= 2
        and is_s_strong_mask(digraph, y_mask)
        and satisfies_a0_mask(digraph, y_mask)
    )
    if not applicable:
        return Outcome.NOT_APPLICABLE

    best = ctx.max_y_length(y_mask)
    certificate = CycleGrower(digraph, oracle_cap=max(digraph.n, 1)).grow(members(y_mask))
    covered = certificate.y_length

    holds = covered <= best and (best < size - 1 or covered >= size - 1)
    if best >= size - 1:
        holds = holds and certificate.status is CertificateStatus.OK
    return _verdict(True, holds)


def check_oracle_consistency(ctx: InstanceContext, y_mask: int) -> Outcome:
    """Subset DP and networkx enumeration see the same cycle vertex sets"""
    dp_sets = ctx.cycle_sets
    holds = len(dp_sets) == len(set(dp_sets)) and set(dp_sets) == ctx.naive_cycle_sets
    return _verdict(True, holds)


# ============================================================================
# CONJECTURE
# ============================================================================

def check_conjecture(variant: ConjectureVariant, ctx: InstanceContext, y_mask: int) -> Outcome:
    """
    A0 plus the variant's connectivity clause; VIOLATED marks a candidate
    counterexample (Y not cyclable), never an error
    """
    digraph = ctx.digraph
    size = popcount(y_mask)
    if digraph.n < 4 or not y_mask or not satisfies_a0_mask(digraph, y_mask):
        return Outcome.NOT_APPLICABLE

    if variant is ConjectureVariant.TWO_STRONG:
        clause = ctx.two_strong
    elif variant is ConjectureVariant.Y_STRONG_LARGE:
        clause = size >= 4 and is_s_strong_mask(digraph, y_mask)
    else:
        ys = members(y_mask)
        clause = size >= 2 and all(
            has_two_disjoint_paths(digraph, a, b) for a in ys for b in ys if a != b
        )
    return _verdict(clause, clause and ctx.cyclable(y_mask))


# ============================================================================
# REGISTRY
# ============================================================================

@dataclass(frozen=True)
class PropertyCheck:
    """A registered property and how it consumes Y"""
    name: str
    check: Callable[[InstanceContext, int], Outcome]
    per_digraph: bool
    min_y: int = 1
    proved: bool = True


PROPERTIES: Dict[PropertyName, PropertyCheck] = {
    PropertyName.CYCLE_EXCEPT_ONE: PropertyCheck(
        'cycle-except-one', check_cycle_except_one, per_digraph=False, min_y=2),
    PropertyName.MANOUSSAKIS: PropertyCheck(
        'manoussakis', check_manoussakis, per_digraph=True),
    PropertyName.MEYNIEL_SET: PropertyCheck(
        'meyniel-set', check_meyniel_set, per_digraph=False, min_y=2),
    PropertyName.MEYNIEL_HAMILTONIAN: PropertyCheck(
        'meyniel-hamiltonian', check_meyniel_hamiltonian, per_digraph=True),
    PropertyName.NONADJACENT_PARTNER_DEGREE: PropertyCheck(
        'nonadjacent-partner-degree', check_nonadjacent_partner_degree,
        per_digraph=False, min_y=3),
    PropertyName.LENGTH_TWO_PATHS: PropertyCheck(
        'length-two-paths', check_length_two_paths, per_digraph=True),
    PropertyName.CLOSE_PAIR_CYCLE: PropertyCheck(
        'close-pair-cycle', check_close_pair_cycle, per_digraph=True),
    PropertyName.BYPASS_EXISTS: PropertyCheck(
        'bypass-exists', check_bypass_exists, per_digraph=False, min_y=4),
    PropertyName.NO_BYPASS_DEGREE_BOUND: PropertyCheck(
        'no-bypass-degree-bound', check_no_bypass_degree_bound, per_digraph=True),
    PropertyName.CYCLE_ABSORPTION: PropertyCheck(
        'cycle-absorption', check_cycle_absorption, per_digraph=True),
    PropertyName.PATH_INSERTION: PropertyCheck(
        'path-insertion', check_path_insertion, per_digraph=True),
    PropertyName.MULTI_INSERTION: PropertyCheck(
        'multi-insertion', check_multi_insertion, per_digraph=True),
    PropertyName.GROWER_AGREEMENT: PropertyCheck(
        'grower-agreement', check_grower_agreement, per_digraph=False, min_y=2),
    PropertyName.ORACLE_CONSISTENCY: PropertyCheck(
        'oracle-consistency', check_oracle_consistency, per_digraph=True),
}


def conjecture_property(variant: ConjectureVariant) -> PropertyCheck:
    """Registry-shaped record for one conjecture variant"""
    variant = ConjectureVariant(variant)
    min_y = 4 if variant is ConjectureVariant.Y_STRONG_LARGE else 1
    return PropertyCheck(f"conjecture-{variant.value}", partial(check_conjecture, variant),
                         per_digraph=False, min_y=min_y, proved=False)


def resolve_property(name: str, variant: Optional[str] = None) -> PropertyCheck:
    """Look up a property by CLI name ('conjecture' needs a variant)"""
    if name == 'conjecture':
        if variant is None:
            raise ValueError("conjecture scans need a variant (i, ii or iii)")
        return conjecture_property(ConjectureVariant(variant))
    return PROPERTIES[PropertyName(name)]
