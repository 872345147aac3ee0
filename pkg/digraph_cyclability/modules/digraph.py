"""
Digraph Core
Loop-free simple digraphs on vertices 0..n-1 stored as per-vertex bitsets,
plus the Path and Cycle value types every other module builds on
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..exceptions import (
    DuplicateArcError,
    InvalidDigraphError,
    InvalidPathError,
    InvalidVertexError,
)

logger = logging.getLogger(__name__)


class DegreeMode(Enum):
    """Which arcs a degree query counts"""
    OUT = 'out'
    IN = 'in'
    TOTAL = 'total'


# ============================================================================
# BITSET HELPERS
# ============================================================================

def bit(v: int) -> int:
    """Singleton bitset for vertex v"""
    return 1 << v


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitset in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> List[int]:
    """Members of a bitset as a sorted list"""
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ============================================================================
# DIGRAPH
# ============================================================================

class Digraph:
    """
    Immutable loop-free digraph without multiple arcs

    Adjacency is kept as two tuples of bitsets (out-neighbours and
    in-neighbours per vertex), so degree-in-set queries are a mask and a
    popcount. Instances are frozen: share them freely across workers.
    """

    __slots__ = ('_n', '_out', '_in', '_arc_count')

    def __init__(self, n: int, out_masks: Sequence[int]):
        """
        Build a digraph from its out-neighbour bitsets

        Args:
            n: Order (number of vertices), at least 1
            out_masks: out_masks[u] has bit v set iff uv is an arc

        Raises:
            InvalidDigraphError: bad order, loop, or arc leaving 0..n-1
        """
        if n < 1:
            raise InvalidDigraphError(f"Digraph order must be >= 1, got {n}")
        if len(out_masks) != n:
            raise InvalidDigraphError(
                f"Expected {n} adjacency rows, got {len(out_masks)}"
            )

        full = (1 << n) - 1
        in_masks = [0] * n
        arc_count = 0

        for u, row in enumerate(out_masks):
            if row & ~full:
                raise InvalidDigraphError(f"Vertex {u} has an arc leaving 0..{n - 1}")
            if row & bit(u):
                raise InvalidDigraphError(f"Loop at vertex {u}")
            for v in iter_bits(row):
                in_masks[v] |= bit(u)
                arc_count += 1

        self._n = n
        self._out = tuple(out_masks)
        self._in = tuple(in_masks)
        self._arc_count = arc_count

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> 'Digraph':
        """Build from an arc list; duplicates and loops are errors"""
        builder = DigraphBuilder(n)
        builder.add_arcs(arcs)
        return builder.freeze()

    @classmethod
    def empty(cls, n: int) -> 'Digraph':
        return cls(n, [0] * n)

    @classmethod
    def from_arc_code(cls, n: int, code: int) -> 'Digraph':
        """
        Decode the arc-bitmask encoding used by scans

        Ordered pair (u, v), u != v, occupies bit u*(n-1) + (v if v < u else v-1).
        """
        width = n - 1
        if code < 0 or code >> (n * width):
            raise InvalidDigraphError(f"Arc code {code:#x} out of range for n={n}")

        rows = []
        for u in range(n):
            chunk = (code >> (u * width)) & ((1 << width) - 1)
            low = chunk & (bit(u) - 1)
            high = (chunk >> u) << (u + 1)
            rows.append(low | high)
        return cls(n, rows)

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def arc_count(self) -> int:
        return self._arc_count

    @property
    def vertex_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def out_masks(self) -> Tuple[int, ...]:
        return self._out

    @property
    def in_masks(self) -> Tuple[int, ...]:
        return self._in

    def vertices(self) -> range:
        return range(self._n)

    def check_vertex(self, v: int) -> int:
        """Return v if it is a vertex of this digraph"""
        if not isinstance(v, int) or not 0 <= v < self._n:
            raise InvalidVertexError(f"Vertex {v!r} not in 0..{self._n - 1}")
        return v

    def mask(self, vertices: Iterable[int]) -> int:
        """Validated bitset of a vertex collection"""
        result = 0
        for v in vertices:
            result |= bit(self.check_vertex(v))
        return result

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def adjacency_mask(self, v: int) -> int:
        """Vertices joined to v by an arc in either direction"""
        return self._out[v] | self._in[v]

    def out_degree(self, v: int, within: Optional[int] = None) -> int:
        row = self._out[v]
        return popcount(row if within is None else row & within)

    def in_degree(self, v: int, within: Optional[int] = None) -> int:
        row = self._in[v]
        return popcount(row if within is None else row & within)

    def total_degree(self, v: int, within: Optional[int] = None) -> int:
        return self.out_degree(v, within) + self.in_degree(v, within)

    def arcs(self) -> Iterator[Tuple[int, int]]:
        """All arcs in lexicographic order"""
        for u in range(self._n):
            for v in iter_bits(self._out[u]):
                yield (u, v)

    def arc_code(self) -> int:
        """Inverse of from_arc_code"""
        width = self._n - 1
        code = 0
        for u, row in enumerate(self._out):
            low = row & (bit(u) - 1)
            high = row >> (u + 1)
            code |= (low | (high << u)) << (u * width)
        return code

    # ------------------------------------------------------------------
    # Reachability
    # ------------------------------------------------------------------

    def _closure(self, start: int, within: Optional[int], rows: Tuple[int, ...]) -> int:
        allowed = self.vertex_mask if within is None else within
        seen = bit(start)
        frontier = seen
        while frontier:
            step = 0
            for u in iter_bits(frontier):
                step |= rows[u]
            frontier = step & allowed & ~seen
            seen |= frontier
        return seen

    def reachable_from(self, v: int, within: Optional[int] = None) -> int:
        """Bitset of vertices reachable from v using only vertices in `within`"""
        return self._closure(v, within, self._out)

    def reaching(self, v: int, within: Optional[int] = None) -> int:
        """Bitset of vertices that reach v using only vertices in `within`"""
        return self._closure(v, within, self._in)

    def shortest_path(
        self,
        source: int,
        target: int,
        within: Optional[int] = None
    ) -> Optional[List[int]]:
        """
        Breadth-first shortest (source, target)-path

        Interior vertices are restricted to `within`; the end-vertices are
        always allowed. Ties go to the smallest vertex ids.
        """
        if source == target:
            return [source]

        allowed = (self.vertex_mask if within is None else within) | bit(target)
        parent: Dict[int, int] = {source: source}
        frontier = [source]
        seen = bit(source)

        while frontier:
            nxt = []
            for u in frontier:
                for v in iter_bits(self._out[u] & allowed & ~seen):
                    seen |= bit(v)
                    parent[v] = u
                    if v == target:
                        path = [v]
                        while path[-1] != source:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    nxt.append(v)
            frontier = nxt
        return None

    def shortest_cycle_through(self, v: int) -> Optional['Cycle']:
        """Shortest cycle containing v, or None"""
        best: Optional[List[int]] = None
        for w in iter_bits(self._out[v]):
            back = self.shortest_path(w, v, within=self.vertex_mask & ~bit(v))
            if back is not None and (best is None or len(back) < len(best)):
                best = back
        if best is None:
            return None
        return Cycle.of(self, [v] + best[:-1])

    # ------------------------------------------------------------------
    # Derived digraphs
    # ------------------------------------------------------------------

    def converse(self) -> 'Digraph':
        """Digraph with every arc reversed"""
        return Digraph(self._n, list(self._in))

    def induced(self, vertices: Iterable[int]) -> Tuple['Digraph', Dict[int, int]]:
        """
        Subdigraph induced by a vertex set, relabelled 0..|A|-1

        Returns:
            (digraph, index_map) where index_map sends old ids to new ids
        """
        keep = sorted(set(self.check_vertex(v) for v in vertices))
        if not keep:
            raise InvalidDigraphError("Induced subdigraph needs a nonempty vertex set")

        index_map = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            row = 0
            for v in iter_bits(self._out[old]):
                if v in index_map:
                    row |= bit(index_map[v])
            rows.append(row)
        return Digraph(len(keep), rows), index_map

    def to_networkx(self):
        """networkx.DiGraph copy (used by cross-check oracles)"""
        import networkx as nx

        graph = nx.DiGraph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.arcs())
        return graph

    # ------------------------------------------------------------------
    # Dunder
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._out == other._out

    def __hash__(self) -> int:
        return hash((self._n, self._out))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={self._arc_count})"


class DigraphBuilder:
    """
    Single-owner mutable arc collector; freeze() yields a Digraph

    Adding an arc twice is an error so generator bugs surface early.
    """

    def __init__(self, n: int):
        if n < 1:
            raise InvalidDigraphError(f"Digraph order must be >= 1, got {n}")
        self.n = n
        self._rows = [0] * n
        self._frozen = False

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidVertexError(f"Vertex {v!r} not in 0..{self.n - 1}")

    def add_arc(self, u: int, v: int) -> 'DigraphBuilder':
        if self._frozen:
            raise InvalidDigraphError("Builder already frozen")
        self._check(u)
        self._check(v)
        if u == v:
            raise InvalidDigraphError(f"Loop at vertex {u}")
        if self._rows[u] & bit(v):
            raise DuplicateArcError(f"Duplicate arc {u}->{v}")
        self._rows[u] |= bit(v)
        return self

    def add_arcs(self, arcs: Iterable[Tuple[int, int]]) -> 'DigraphBuilder':
        for u, v in arcs:
            self.add_arc(u, v)
        return self

    def add_symmetric(self, u: int, v: int) -> 'DigraphBuilder':
        """Add both uv and vu"""
        return self.add_arc(u, v).add_arc(v, u)

    def add_complete(self, vertices: Sequence[int]) -> 'DigraphBuilder':
        """Make the given vertices induce a complete symmetric digraph"""
        for i, u in enumerate(vertices):
            for v in vertices[i + 1:]:
                self.add_symmetric(u, v)
        return self

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._rows[u] & bit(v))

    def freeze(self) -> Digraph:
        self._frozen = True
        return Digraph(self.n, self._rows)


# ============================================================================
# MODULE-LEVEL QUERIES
# ============================================================================

def degree(
    digraph: Digraph,
    x: int,
    among: Optional[Iterable[int]] = None,
    mode: DegreeMode = DegreeMode.TOTAL
) -> int:
    """
    d+(x, A), d-(x, A) or d(x, A)

    Args:
        digraph: The digraph
        x: Vertex whose arcs are counted
        among: Vertex set A (defaults to all of V)
        mode: OUT, IN or TOTAL

    Returns:
        Number of arcs between x and A in the requested direction(s)
    """
    digraph.check_vertex(x)
    within = None if among is None else digraph.mask(among)

    if mode is DegreeMode.OUT:
        return digraph.out_degree(x, within)
    if mode is DegreeMode.IN:
        return digraph.in_degree(x, within)
    return digraph.total_degree(x, within)


def are_adjacent(digraph: Digraph, x: int, y: int) -> bool:
    """True iff xy or yx is an arc"""
    digraph.check_vertex(x)
    digraph.check_vertex(y)
    if x == y:
        raise InvalidVertexError(f"Adjacency needs two distinct vertices, got {x} twice")
    return bool(digraph.adjacency_mask(x) & bit(y))


# ============================================================================
# PATHS AND CYCLES
# ============================================================================

def _check_sequence(digraph: Digraph, vertices: Sequence[int], kind: str) -> Tuple[int, ...]:
    seq = tuple(vertices)
    for v in seq:
        try:
            digraph.check_vertex(v)
        except InvalidVertexError as e:
            raise InvalidPathError(f"{kind} {seq}: {e}") from e
    if len(set(seq)) != len(seq):
        raise InvalidPathError(f"{kind} {seq} repeats a vertex")
    for u, v in zip(seq, seq[1:]):
        if not digraph.has_arc(u, v):
            raise InvalidPathError(f"{kind} {seq} uses missing arc {u}->{v}")
    return seq


@dataclass(frozen=True)
class Path:
    """Sequence of distinct vertices joined by consecutive arcs"""
    vertices: Tuple[int, ...]

    @classmethod
    def of(cls, digraph: Digraph, vertices: Sequence[int]) -> 'Path':
        seq = _check_sequence(digraph, vertices, "Path")
        if not seq:
            raise InvalidPathError("Path needs at least one vertex")
        return cls(seq)

    @property
    def head(self) -> int:
        return self.vertices[0]

    @property
    def tail(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        """Number of arcs"""
        return len(self.vertices) - 1

    @property
    def mask(self) -> int:
        result = 0
        for v in self.vertices:
            result |= bit(v)
        return result

    def insert(self, digraph: Digraph, index: int, other: 'Path') -> 'Path':
        """Path with `other` placed between vertices[index] and vertices[index + 1]"""
        seq = self.vertices[:index + 1] + other.vertices + self.vertices[index + 1:]
        return Path.of(digraph, seq)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __getitem__(self, i):
        return self.vertices[i]


@dataclass(frozen=True)
class Cycle:
    """
    Directed cycle x1 x2 ... xk x1 with k >= 2

    Stored rotation-normalized (smallest vertex first), so two sequences
    describing the same cyclic order compare equal.
    """
    vertices: Tuple[int, ...]

    @classmethod
    def of(cls, digraph: Digraph, vertices: Sequence[int]) -> 'Cycle':
        seq = _check_sequence(digraph, vertices, "Cycle")
        if len(seq) < 2:
            raise InvalidPathError(f"Cycle {seq} needs at least two vertices")
        if not digraph.has_arc(seq[-1], seq[0]):
            raise InvalidPathError(f"Cycle {seq} misses closing arc {seq[-1]}->{seq[0]}")
        start = seq.index(min(seq))
        return cls(seq[start:] + seq[:start])

    @property
    def length(self) -> int:
        """Number of arcs (= number of vertices)"""
        return len(self.vertices)

    @property
    def mask(self) -> int:
        result = 0
        for v in self.vertices:
            result |= bit(v)
        return result

    def y_length(self, y_mask: int) -> int:
        """Number of vertices of the set (given as bitset) on this cycle"""
        return popcount(self.mask & y_mask)

    def index_of(self, v: int) -> int:
        return self.vertices.index(v)

    def successor(self, v: int) -> int:
        return self.vertices[(self.index_of(v) + 1) % len(self.vertices)]

    def predecessor(self, v: int) -> int:
        return self.vertices[self.index_of(v) - 1]

    def gap(self, a: int, b: int) -> int:
        """Length of the segment C[a, b] along the orientation"""
        return (self.index_of(b) - self.index_of(a)) % len(self.vertices)

    def segment(self, a: int, b: int) -> Tuple[int, ...]:
        """Vertices of C[a, b], both ends included"""
        k = len(self.vertices)
        start = self.index_of(a)
        return tuple(self.vertices[(start + t) % k] for t in range(self.gap(a, b) + 1))

    def rotation_from(self, v: int) -> Tuple[int, ...]:
        """All vertices starting at v"""
        i = self.index_of(v)
        return self.vertices[i:] + self.vertices[:i]

    def arcs(self) -> Iterator[Tuple[int, int]]:
        k = len(self.vertices)
        for i in range(k):
            yield self.vertices[i], self.vertices[(i + 1) % k]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.vertices)
