"""
Unit tests for the digraph core: bitsets, Digraph, builder, Path, Cycle
"""

import pytest
from hypothesis import given, settings

from digraph_cyclability.exceptions import (
    DuplicateArcError,
    InvalidDigraphError,
    InvalidPathError,
    InvalidVertexError,
)
from digraph_cyclability.modules.digraph import (
    Cycle,
    DegreeMode,
    Digraph,
    DigraphBuilder,
    Path,
    are_adjacent,
    degree,
    iter_bits,
    members,
    popcount,
)
from tests.conftest import digraphs


# ============================================================================
# BITSET HELPERS
# ============================================================================

@pytest.mark.unit
def test_bitset_helpers():
    """Test iter_bits, members and popcount agree"""
    mask = 0b101101
    assert list(iter_bits(mask)) == [0, 2, 3, 5]
    assert members(mask) == [0, 2, 3, 5]
    assert popcount(mask) == 4
    assert members(0) == []


# ============================================================================
# CONSTRUCTION
# ============================================================================

@pytest.mark.unit
class TestConstruction:
    """Test Digraph validation and constructors"""

    def test_from_arcs(self, c4):
        """Test arcs are stored and counted"""
        assert c4.n == 4
        assert c4.arc_count == 4
        assert list(c4.arcs()) == [(0, 1), (1, 2), (2, 3), (3, 0)]
        assert c4.has_arc(0, 1)
        assert not c4.has_arc(1, 0)

    def test_loop_rejected(self):
        """Test a loop is an invalid digraph"""
        with pytest.raises(InvalidDigraphError):
            Digraph.from_arcs(3, [(1, 1)])
        with pytest.raises(InvalidDigraphError):
            Digraph(2, [0b01, 0])

    def test_duplicate_arc_rejected(self):
        """Test the same arc twice raises DuplicateArcError"""
        with pytest.raises(DuplicateArcError):
            Digraph.from_arcs(3, [(0, 1), (0, 1)])

    def test_order_must_be_positive(self):
        """Test n=0 is refused"""
        with pytest.raises(InvalidDigraphError):
            Digraph.empty(0)

    def test_arc_out_of_range(self):
        """Test arcs leaving 0..n-1 are refused"""
        with pytest.raises(InvalidVertexError):
            Digraph.from_arcs(3, [(0, 3)])
        with pytest.raises(InvalidDigraphError):
            Digraph(2, [0b100, 0])

    def test_row_count_must_match(self):
        """Test the adjacency row count must equal n"""
        with pytest.raises(InvalidDigraphError):
            Digraph(3, [0, 0])

    def test_builder_freezes(self):
        """Test a frozen builder refuses new arcs"""
        builder = DigraphBuilder(3).add_symmetric(0, 1)
        digraph = builder.freeze()
        assert digraph.arc_count == 2
        with pytest.raises(InvalidDigraphError):
            builder.add_arc(1, 2)

    def test_builder_add_complete(self):
        """Test add_complete makes a complete symmetric digraph"""
        digraph = DigraphBuilder(4).add_complete([0, 1, 2, 3]).freeze()
        assert digraph.arc_count == 12


# ============================================================================
# ARC CODE
# ============================================================================

@pytest.mark.unit
def test_arc_code_layout(c3):
    """Test the ordered-pair bit layout of the arc code"""
    # (0,1) -> bit 0, (1,2) -> bit 3, (2,0) -> bit 4
    assert c3.arc_code() == 0b11001
    assert Digraph.from_arc_code(3, 0b11001) == c3


@pytest.mark.unit
def test_arc_code_out_of_range():
    """Test codes wider than n(n-1) bits are refused"""
    with pytest.raises(InvalidDigraphError):
        Digraph.from_arc_code(2, 0b100)


@pytest.mark.unit
@pytest.mark.property
@settings(max_examples=200)
@given(digraphs(max_order=6))
def test_arc_code_inverts(digraph):
    """Test from_arc_code and arc_code are mutually inverse"""
    assert Digraph.from_arc_code(digraph.n, digraph.arc_code()) == digraph


# ============================================================================
# DEGREES AND ADJACENCY
# ============================================================================

@pytest.mark.unit
class TestDegrees:
    """Test degree queries restricted to vertex sets"""

    def test_degree_modes(self, k_star3):
        """Test K*3 has out-, in- and total degree 2, 2, 4"""
        assert degree(k_star3, 0, mode=DegreeMode.OUT) == 2
        assert degree(k_star3, 0, mode=DegreeMode.IN) == 2
        assert degree(k_star3, 0) == 4

    def test_degree_among(self, c4):
        """Test degree counted into a subset"""
        assert degree(c4, 0, among=[1]) == 1
        assert degree(c4, 0, among=[1, 3]) == 2
        assert degree(c4, 0, among=[2]) == 0

    def test_degree_invalid_vertex(self, c4):
        """Test unknown vertices raise InvalidVertexError"""
        with pytest.raises(InvalidVertexError):
            degree(c4, 4)
        with pytest.raises(InvalidVertexError):
            degree(c4, 0, among=[7])

    def test_are_adjacent(self, c4):
        """Test adjacency ignores direction"""
        assert are_adjacent(c4, 0, 1)
        assert are_adjacent(c4, 1, 0)
        assert not are_adjacent(c4, 0, 2)

    def test_are_adjacent_same_vertex(self, c4):
        """Test adjacency needs two distinct vertices"""
        with pytest.raises(InvalidVertexError):
            are_adjacent(c4, 2, 2)


@pytest.mark.unit
@pytest.mark.property
@given(digraphs(max_order=6))
def test_degree_sum_is_twice_arc_count(digraph):
    """Test the handshake identity for digraphs"""
    assert sum(degree(digraph, v) for v in digraph.vertices()) == 2 * digraph.arc_count


# ============================================================================
# REACHABILITY
# ============================================================================

@pytest.mark.unit
class TestReachability:
    """Test restricted reachability and shortest paths"""

    def test_reachable_from(self, c4):
        """Test reachability on a cycle and within a subset"""
        assert c4.reachable_from(0) == 0b1111
        assert c4.reachable_from(0, within=0b0011) == 0b0011
        assert c4.reaching(0, within=0b1001) == 0b1001

    def test_shortest_path(self, c4):
        """Test BFS path follows the orientation"""
        assert c4.shortest_path(0, 2) == [0, 1, 2]
        assert c4.shortest_path(2, 1) == [2, 3, 0, 1]
        assert c4.shortest_path(0, 2, within=0b1001) is None

    def test_shortest_cycle_through(self, two_disjoint_2cycles):
        """Test the shortest cycle through a vertex"""
        cycle = two_disjoint_2cycles.shortest_cycle_through(3)
        assert cycle.vertices == (2, 3)

    def test_no_cycle_through(self, empty3):
        """Test acyclic digraphs have no cycle through any vertex"""
        assert empty3.shortest_cycle_through(0) is None


@pytest.mark.unit
def test_converse_and_induced(c4):
    """Test converse reverses arcs and induced relabels"""
    converse = c4.converse()
    assert converse.has_arc(1, 0)
    assert not converse.has_arc(0, 1)
    assert converse.converse() == c4

    sub, index_map = c4.induced([1, 2, 3])
    assert index_map == {1: 0, 2: 1, 3: 2}
    assert list(sub.arcs()) == [(0, 1), (1, 2)]


@pytest.mark.unit
def test_to_networkx(c4):
    """Test the networkx copy has the same arcs"""
    graph = c4.to_networkx()
    assert sorted(graph.edges()) == sorted(c4.arcs())
    assert graph.number_of_nodes() == 4


# ============================================================================
# PATHS AND CYCLES
# ============================================================================

@pytest.mark.unit
class TestPath:
    """Test Path validation and insertion"""

    def test_valid_path(self, c4):
        """Test head, tail and length"""
        path = Path.of(c4, [1, 2, 3])
        assert path.head == 1
        assert path.tail == 3
        assert path.length == 2
        assert 2 in path

    def test_missing_arc(self, c4):
        """Test a path must follow arcs"""
        with pytest.raises(InvalidPathError):
            Path.of(c4, [0, 2])

    def test_repeated_vertex(self, k_star3):
        """Test a path may not repeat a vertex"""
        with pytest.raises(InvalidPathError):
            Path.of(k_star3, [0, 1, 0])

    def test_empty_path(self, c4):
        """Test the empty sequence is not a path"""
        with pytest.raises(InvalidPathError):
            Path.of(c4, [])

    def test_insert(self, k_star4):
        """Test inserting a path between two consecutive vertices"""
        host = Path.of(k_star4, [0, 1])
        inserted = host.insert(k_star4, 0, Path.of(k_star4, [2, 3]))
        assert inserted.vertices == (0, 2, 3, 1)


@pytest.mark.unit
class TestCycle:
    """Test Cycle normalization and navigation"""

    def test_rotation_normalized(self, c4):
        """Test rotations of the same cycle compare equal"""
        assert Cycle.of(c4, [2, 3, 0, 1]) == Cycle.of(c4, [0, 1, 2, 3])
        assert Cycle.of(c4, [2, 3, 0, 1]).vertices == (0, 1, 2, 3)

    def test_missing_closing_arc(self, c4):
        """Test the closing arc is required"""
        with pytest.raises(InvalidPathError):
            Cycle.of(c4, [0, 1, 2])

    def test_too_short(self, c4):
        """Test one vertex is not a cycle"""
        with pytest.raises(InvalidPathError):
            Cycle.of(c4, [0])

    def test_navigation(self, c4):
        """Test successor, predecessor, gap and segment"""
        cycle = Cycle.of(c4, [0, 1, 2, 3])
        assert cycle.successor(3) == 0
        assert cycle.predecessor(0) == 3
        assert cycle.gap(3, 1) == 2
        assert cycle.segment(3, 1) == (3, 0, 1)
        assert cycle.rotation_from(2) == (2, 3, 0, 1)
        assert list(cycle.arcs()) == [(0, 1), (1, 2), (2, 3), (3, 0)]

    def test_y_length(self, c4):
        """Test Y-length counts the set's vertices on the cycle"""
        cycle = Cycle.of(c4, [0, 1, 2, 3])
        assert cycle.y_length(0b0101) == 2
        assert cycle.length == 4
        assert str(cycle) == "0 1 2 3"
