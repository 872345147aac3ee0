"""
Insertion Engine
Constructive path insertion, cycle absorption, multi-insertion, length-two
paths and C-bypass search used to grow cycles through a vertex set
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import GrowerConfig
from ..exceptions import (
    ConditionNotMet,
    InvalidVertexError,
    LemmaViolation,
    PreconditionError,
    SearchBudgetExceeded,
)
from .digraph import Cycle, Digraph, Path, bit, iter_bits, members, popcount

logger = logging.getLogger(__name__)


# ============================================================================
# PATH INSERTION
# ============================================================================

@dataclass(frozen=True)
class InsertionPoint:
    """
    Position i (0-based) in host path P with P[i] -> head(Q) and tail(Q) -> P[i+1]

    `guaranteed` records whether the degree inequality alone forced the point.
    """
    index: int
    guaranteed: bool

    def apply(self, digraph: Digraph, host: Path, inserted: Path) -> Path:
        return host.insert(digraph, self.index, inserted)


def insertion_guaranteed(digraph: Digraph, host: Path, inserted: Path) -> bool:
    """
    d-(y1, P) + d+(yr, P) >= k + d-(y1, {xk}) + d+(yr, {x1})

    With P = x1..xk and Q = y1..yr this forces an insertion point.
    """
    y1, yr = inserted.head, inserted.tail
    lhs = digraph.in_degree(y1, host.mask) + digraph.out_degree(yr, host.mask)
    rhs = (len(host)
           + int(digraph.has_arc(host.tail, y1))
           + int(digraph.has_arc(yr, host.head)))
    return lhs >= rhs


def _check_disjoint(first: int, second: int, what: str) -> None:
    if first & second:
        raise PreconditionError(f"{what} share vertices {members(first & second)}")


def path_insert(digraph: Digraph, host: Path, inserted: Path) -> Optional[InsertionPoint]:
    """
    Find where Q can be inserted into P

    Args:
        digraph: The digraph
        host: Path P with at least two vertices
        inserted: Path Q disjoint from P

    Returns:
        Smallest insertion point, or None if Q cannot be inserted

    Raises:
        PreconditionError: P shorter than two vertices, or P and Q overlap
        LemmaViolation: the degree inequality holds yet no point exists
    """
    if len(host) < 2:
        raise PreconditionError("Host path needs at least two vertices")
    _check_disjoint(host.mask, inserted.mask, "Host and inserted paths")

    guaranteed = insertion_guaranteed(digraph, host, inserted)
    y1, yr = inserted.head, inserted.tail

    for i in range(len(host) - 1):
        if digraph.has_arc(host[i], y1) and digraph.has_arc(yr, host[i + 1]):
            return InsertionPoint(i, guaranteed)

    if guaranteed:
        raise LemmaViolation(
            f"Degree inequality holds but {inserted.vertices} does not fit into {host.vertices}"
        )
    return None


def insert_into_cycle(digraph: Digraph, cycle: Cycle, inserted: Path) -> Optional[Cycle]:
    """Replace the first cycle arc (in normalized order) that Q fits into"""
    _check_disjoint(cycle.mask, inserted.mask, "Cycle and inserted path")
    y1, yr = inserted.head, inserted.tail
    seq = cycle.vertices
    for i, (a, b) in enumerate(cycle.arcs()):
        if digraph.has_arc(a, y1) and digraph.has_arc(yr, b):
            return Cycle.of(digraph, seq[:i + 1] + inserted.vertices + seq[i + 1:])
    return None


# ============================================================================
# CYCLE ABSORPTION
# ============================================================================

def cycle_absorb(digraph: Digraph, cycle: Cycle, inserted: Path) -> Dict[int, Cycle]:
    """
    Cycles of every length r+1..k+r on V(C) plus V(Q)

    With d-(y1, C) + d+(yr, C) >= k+1, for each j in 1..k some cycle
    position b has yr -> x_b and x_(b+j-1) -> y1 (pigeonhole on Z_k), giving
    the cycle x_b .. x_(b+j-1) y1 .. yr.

    Args:
        digraph: The digraph
        cycle: Cycle C of length k
        inserted: Path Q = y1..yr disjoint from C

    Returns:
        Mapping length -> cycle for every length in r+1..k+r

    Raises:
        ConditionNotMet: degree sum below k+1
    """
    _check_disjoint(cycle.mask, inserted.mask, "Cycle and absorbed path")
    k, r = cycle.length, len(inserted)
    y1, yr = inserted.head, inserted.tail

    degree_sum = digraph.in_degree(y1, cycle.mask) + digraph.out_degree(yr, cycle.mask)
    if degree_sum < k + 1:
        raise ConditionNotMet(f"d-(y1,C) + d+(yr,C) = {degree_sum} < k+1 = {k + 1}")

    seq = cycle.vertices
    entries = [b for b, x in enumerate(seq) if digraph.has_arc(yr, x)]
    result: Dict[int, Cycle] = {}

    for j in range(1, k + 1):
        for b in entries:
            if digraph.has_arc(seq[(b + j - 1) % k], y1):
                kept = [seq[(b + t) % k] for t in range(j)]
                result[j + r] = Cycle.of(digraph, kept + list(inserted.vertices))
                break
        else:
            raise LemmaViolation(f"No cycle of length {j + r} absorbing {inserted.vertices}")

    return result


# ============================================================================
# MULTI-INSERTION
# ============================================================================

def multi_insert(
    digraph: Digraph,
    host: Path,
    donor: Path,
    required: Iterable[int]
) -> Path:
    """
    (a, b)-path R with V(P) + S inside V(R) inside V(P) + V(Q)

    Repeatedly takes the first remaining S-vertex q_i of Q and the longest
    run Q[q_i .. q_l] that fits into the current host, inserts it, and
    continues on the part of Q after q_l. Choosing the longest run keeps
    every remaining S-vertex insertable.

    Args:
        digraph: The digraph
        host: (a, b)-path P with at least two vertices
        donor: Path Q disjoint from P
        required: S, a subset of V(Q) whose vertices are each insertable into P

    Raises:
        PreconditionError: S not inside Q, or some S-vertex not insertable
        LemmaViolation: construction failed although the precondition held
    """
    if len(host) < 2:
        raise PreconditionError("Host path needs at least two vertices")
    _check_disjoint(host.mask, donor.mask, "Host and donor paths")

    s_mask = digraph.mask(required)
    if s_mask & ~donor.mask:
        raise PreconditionError(f"S-vertices {members(s_mask & ~donor.mask)} are not on Q")
    for s in iter_bits(s_mask):
        if path_insert(digraph, host, Path((s,))) is None:
            raise PreconditionError(f"Vertex {s} cannot be inserted into the host path")

    current = list(host.vertices)
    rest = list(donor.vertices)
    pending = s_mask

    while pending:
        start = next(i for i, v in enumerate(rest) if pending & bit(v))
        placed: Optional[Tuple[int, int]] = None

        for end in range(len(rest) - 1, start - 1, -1):
            first, last = rest[start], rest[end]
            for t in range(len(current) - 1):
                if digraph.has_arc(current[t], first) and digraph.has_arc(last, current[t + 1]):
                    placed = (end, t)
                    break
            if placed:
                break

        if placed is None:
            raise LemmaViolation(f"Vertex {rest[start]} no longer fits into {current}")

        end, t = placed
        run = rest[start:end + 1]
        current[t + 1:t + 1] = run
        for v in run:
            pending &= ~bit(v)
        rest = rest[end + 1:]

    result = Path.of(digraph, current)
    if result.head != host.head or result.tail != host.tail or s_mask & ~result.mask:
        raise LemmaViolation(f"Multi-insertion produced an invalid path {result.vertices}")
    return result


# ============================================================================
# LENGTH-TWO PATHS
# ============================================================================

def length2_paths(digraph: Digraph, x: int, y: int) -> List[int]:
    """
    Midpoints v with xv and vy arcs

    If d+(x) + d-(y) >= n-2+k for some k >= 1 there are at least k of them.

    Raises:
        PreconditionError: xy is an arc
        LemmaViolation: fewer midpoints than the degree count forces
    """
    digraph.check_vertex(x)
    digraph.check_vertex(y)
    if x == y:
        raise InvalidVertexError(f"Length-two paths need distinct end-vertices, got {x} twice")
    if digraph.has_arc(x, y):
        raise PreconditionError(f"Arc {x}->{y} present")

    midpoints = members(digraph.out_mask(x) & digraph.in_mask(y))
    forced = digraph.out_degree(x) + digraph.in_degree(y) - (digraph.n - 2)
    if len(midpoints) < forced:
        raise LemmaViolation(
            f"Only {len(midpoints)} midpoints from {x} to {y}, degree count forces {forced}"
        )
    return midpoints


# ============================================================================
# BOUNDED PATH SEARCH
# ============================================================================

class ThroughPathSearch:
    """
    Exact-length simple path search from `start` through `via` to `end`

    Interior vertices come from `within` (which must contain `via` but
    neither end). Branches are cut with breadth-first distance bounds, and
    the number of expanded nodes is capped for the whole search object.
    """

    def __init__(self, digraph: Digraph, within: int, budget: Optional[int] = None):
        self.digraph = digraph
        self.within = within
        self.budget = GrowerConfig.BYPASS_SEARCH_BUDGET if budget is None else budget
        self.expanded = 0
        self._distances: Dict[int, Dict[int, int]] = {}

    def distances_to(self, target: int) -> Dict[int, int]:
        """Arc distance from each `within` vertex to target through `within`"""
        if target in self._distances:
            return self._distances[target]

        in_masks = self.digraph.in_masks
        dist = {target: 0}
        seen = bit(target)
        frontier = [target]
        level = 0
        while frontier:
            level += 1
            step = 0
            for v in frontier:
                step |= in_masks[v]
            step &= self.within & ~seen
            seen |= step
            frontier = members(step)
            for v in frontier:
                dist[v] = level

        self._distances[target] = dist
        return dist

    def _tick(self) -> None:
        self.expanded += 1
        if self.expanded > self.budget:
            raise SearchBudgetExceeded(f"Path search exceeded {self.budget} node expansions")

    def lower_bound(self, start: int, via: int, end: int) -> Optional[int]:
        """Fewest arcs any start -> via -> end path can have, or None if none exists"""
        to_via = self.distances_to(via)
        to_end = self.distances_to(end)
        if via not in to_end:
            return None
        first = [to_via[w] for w in iter_bits(self.digraph.out_mask(start) & self.within)
                 if w in to_via]
        if not first:
            return None
        return 1 + min(first) + to_end[via]

    def find(self, start: int, via: int, end: int, length: int) -> Optional[List[int]]:
        """Lexicographically smallest such path with exactly `length` arcs"""
        to_via = self.distances_to(via)
        to_end = self.distances_to(end)
        if via not in to_end:
            return None
        via_to_end = to_end[via]
        out = self.digraph.out_masks
        within = self.within
        path = [start]

        def extend(current: int, used: int, passed: bool, steps: int) -> bool:
            self._tick()
            if steps == length - 1:
                if passed and self.digraph.has_arc(current, end):
                    path.append(end)
                    return True
                return False

            for w in iter_bits(out[current] & within & ~used):
                now_passed = passed or w == via
                if now_passed:
                    remaining = to_end.get(w)
                else:
                    remaining = to_via.get(w)
                    if remaining is not None:
                        remaining += via_to_end
                if remaining is None or steps + 1 + remaining > length:
                    continue
                path.append(w)
                if extend(w, used | bit(w), now_passed, steps + 1):
                    return True
                path.pop()
            return False

        if extend(start, bit(start), False, 0):
            return path
        return None


# ============================================================================
# C-BYPASSES
# ============================================================================

@dataclass(frozen=True)
class Bypass:
    """Path of length >= 2 meeting cycle C only at its end-vertices"""
    path: Path
    entry: int
    exit: int
    gap: int

    @property
    def length(self) -> int:
        return self.path.length

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.gap, self.length, self.path.vertices)


def _bypass_pairs(cycle: Cycle, gap: int) -> List[Tuple[int, int]]:
    seq = cycle.vertices
    k = len(seq)
    return [(seq[i], seq[(i + gap) % k]) for i in range(k)]


def find_bypass(
    digraph: Digraph,
    cycle: Cycle,
    y: int,
    limit: Optional[int] = None,
    budget: Optional[int] = None
) -> Optional[Bypass]:
    """
    C-bypass through y of minimum gap, then minimum length

    Remaining ties go to the lexicographically smallest vertex sequence.

    Args:
        digraph: The digraph
        cycle: Cycle C
        y: Vertex off C the bypass must pass through
        limit: Longest bypass considered (defaults to |V - V(C)| + 1)
        budget: Node expansions allowed (defaults to BYPASS_SEARCH_BUDGET)

    Returns:
        Bypass, or None when no C-bypass passes through y

    Raises:
        PreconditionError: y lies on C
        SearchBudgetExceeded: search budget ran out
    """
    digraph.check_vertex(y)
    if cycle.mask & bit(y):
        raise PreconditionError(f"Vertex {y} lies on the cycle")

    off_cycle = digraph.vertex_mask & ~cycle.mask
    limit = popcount(off_cycle) + 1 if limit is None else limit
    search = ThroughPathSearch(digraph, off_cycle, budget)

    # both ends need a route through y at all
    into_y = digraph.reaching(y, off_cycle)
    from_y = digraph.reachable_from(y, off_cycle)
    entries = {u for u in cycle if digraph.out_mask(u) & into_y}
    exits = {w for w in cycle if digraph.in_mask(w) & from_y}
    if not entries or not exits:
        return None

    for gap in range(1, cycle.length):
        pairs = []
        for u, w in _bypass_pairs(cycle, gap):
            if u in entries and w in exits:
                bound = search.lower_bound(u, y, w)
                if bound is not None and bound <= limit:
                    pairs.append((u, w, bound))
        if not pairs:
            continue

        for length in range(max(2, min(b for _, _, b in pairs)), limit + 1):
            found = []
            for u, w, bound in pairs:
                if bound > length:
                    continue
                vertices = search.find(u, y, w, length)
                if vertices is not None:
                    found.append(vertices)
            if found:
                best = min(found)
                logger.debug(f"Bypass through {y}: {best} (gap {gap}, "
                             f"{search.expanded} nodes expanded)")
                return Bypass(Path.of(digraph, best), best[0], best[-1], gap)

    return None


def enumerate_bypasses(digraph: Digraph, cycle: Cycle, y: int) -> List[Bypass]:
    """
    Every C-bypass through y, sorted by (gap, length, sequence)

    Exponential; used as the minimality reference for find_bypass.
    """
    digraph.check_vertex(y)
    if cycle.mask & bit(y):
        raise PreconditionError(f"Vertex {y} lies on the cycle")

    off_cycle = digraph.vertex_mask & ~cycle.mask
    out = digraph.out_masks
    found: List[Bypass] = []

    for u in cycle:
        path = [u]

        def extend(current: int, used: int) -> None:
            if y in path:
                for w in iter_bits(out[current] & cycle.mask & ~bit(u)):
                    found.append(Bypass(Path.of(digraph, path + [w]), u, w, cycle.gap(u, w)))
            for v in iter_bits(out[current] & off_cycle & ~used):
                path.append(v)
                extend(v, used | bit(v))
                path.pop()

        extend(u, bit(u))

    found.sort(key=Bypass.sort_key)
    return found


# ============================================================================
# PAIR CYCLES
# ============================================================================

def close_pair_cycle(digraph: Digraph, x: int, y: int) -> Optional[Cycle]:
    """
    Cycle through x and y where one follows the other at distance one or two

    Tries x before y first, a direct arc before a midpoint, midpoints in
    ascending order; the return leg is a shortest path avoiding the
    midpoint.
    """
    digraph.check_vertex(x)
    digraph.check_vertex(y)
    if x == y:
        raise InvalidVertexError(f"Pair cycle needs two distinct vertices, got {x} twice")

    full = digraph.vertex_mask
    for a, b in ((x, y), (y, x)):
        if digraph.has_arc(a, b):
            back = digraph.shortest_path(b, a)
            if back is not None:
                return Cycle.of(digraph, [a] + back[:-1])
        for v in iter_bits(digraph.out_mask(a) & digraph.in_mask(b)):
            back = digraph.shortest_path(b, a, within=full & ~bit(v))
            if back is not None:
                return Cycle.of(digraph, [a, v] + back[:-1])
    return None


def pair_distance(cycle: Cycle, x: int, y: int) -> int:
    """Smaller of the two oriented distances between x and y on C"""
    return min(cycle.gap(x, y), cycle.gap(y, x))


def shortest_pair_cycle(
    digraph: Digraph,
    pairs: Sequence[Tuple[int, int]],
    max_length: Optional[int] = None,
    budget: Optional[int] = None
) -> Optional[Cycle]:
    """
    Shortest cycle through both vertices of some pair

    Lengths are tried in increasing order across all pairs; ties go to the
    smallest rotation-normalized sequence.

    Raises:
        SearchBudgetExceeded: search budget ran out
    """
    max_length = digraph.n if max_length is None else max_length
    searches = {}
    bounds = {}

    for a, b in pairs:
        if a not in searches:
            searches[a] = ThroughPathSearch(digraph, digraph.vertex_mask & ~bit(a), budget)
        bound = searches[a].lower_bound(a, b, a)
        if bound is not None:
            bounds[(a, b)] = bound

    if not bounds:
        return None

    for length in range(max(2, min(bounds.values())), max_length + 1):
        found = []
        for (a, b), bound in bounds.items():
            if bound > length:
                continue
            vertices = searches[a].find(a, b, a, length)
            if vertices is not None:
                found.append(Cycle.of(digraph, vertices[:-1]))
        if found:
            return min(found, key=lambda c: c.vertices)
    return None
