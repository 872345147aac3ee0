"""
Pytest configuration and fixtures for digraph cyclability tests

Provides small named digraphs, family instances and a hypothesis strategy
for random loop-free digraphs.
"""

import pytest
from hypothesis import strategies as st

from digraph_cyclability.modules.digraph import Digraph
from digraph_cyclability.modules.families import (
    gen_d6,
    gen_d6_prime,
    gen_k_star,
    gen_remark1,
)


# ============================================================================
# PYTEST CONFIGURATION
# ============================================================================

def pytest_configure(config):
    """Configure pytest markers"""
    config.addinivalue_line(
        "markers", "unit: Unit tests (fast, pure in-process)"
    )
    config.addinivalue_line(
        "markers", "integration: Integration tests (exhaustive scans, CLI pipelines)"
    )
    config.addinivalue_line(
        "markers", "slow: Slow tests (full enumeration of an order)"
    )
    config.addinivalue_line(
        "markers", "property: Property-based tests (hypothesis)"
    )
    config.addinivalue_line(
        "markers", "cli: Command-line surface tests"
    )


# ============================================================================
# HYPOTHESIS STRATEGIES
# ============================================================================

@st.composite
def digraphs(draw, min_order: int = 1, max_order: int = 6):
    """Random loop-free digraph drawn through its arc code"""
    n = draw(st.integers(min_value=min_order, max_value=max_order))
    code = draw(st.integers(min_value=0, max_value=(1 << (n * (n - 1))) - 1))
    return Digraph.from_arc_code(n, code)


@st.composite
def digraphs_with_subset(draw, min_order: int = 1, max_order: int = 6, min_size: int = 1):
    """Random digraph plus a vertex subset of at least min_size vertices"""
    digraph = draw(digraphs(min_order=max(min_order, min_size), max_order=max_order))
    subset = draw(st.sets(st.integers(min_value=0, max_value=digraph.n - 1),
                          min_size=min_size, max_size=digraph.n))
    return digraph, frozenset(subset)


# ============================================================================
# SMALL DIGRAPH FIXTURES
# ============================================================================

@pytest.fixture
def c4():
    """Directed 4-cycle 0 -> 1 -> 2 -> 3 -> 0"""
    return Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def c3():
    return Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def two_disjoint_2cycles():
    """0 <-> 1 and 2 <-> 3, nothing between them"""
    return Digraph.from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)])


@pytest.fixture
def empty3():
    return Digraph.empty(3)


@pytest.fixture
def k_star3():
    return gen_k_star(3)


@pytest.fixture
def k_star4():
    return gen_k_star(4)


# ============================================================================
# FAMILY FIXTURES
# ============================================================================

@pytest.fixture
def d6():
    return gen_d6()


@pytest.fixture
def d6_prime():
    return gen_d6_prime()


@pytest.fixture
def remark1():
    """Sharpness witness for n=10, m=4 (x=0, z=1, y=4)"""
    return gen_remark1(10, 4)


# ============================================================================
# CONFIGURATION FIXTURES
# ============================================================================

@pytest.fixture
def small_scan_chunks(mocker):
    """Force several chunks even for n=3 scans"""
    from digraph_cyclability.config import ScanConfig

    mocker.patch.object(ScanConfig, "SCAN_CHUNK_SIZE", 7)
    return ScanConfig
