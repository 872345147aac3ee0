"""
Unit tests for verification campaigns
"""

import numpy as np
import pytest

from digraph_cyclability.exceptions import CapExceeded, PreconditionError, ScanTooLarge
from digraph_cyclability.modules.properties import ConjectureVariant
from digraph_cyclability.modules.verifier import (
    ChunkTask,
    ScanMode,
    ScanReport,
    ScanViolation,
    YPolicy,
    conjecture_scan,
    exhaustive_scan,
    random_digraph,
    random_scan,
    scan_chunk,
    y_masks,
)


# ============================================================================
# Y POLICIES
# ============================================================================

@pytest.mark.unit
class TestYMasks:
    """Test which Y sets a scan checks per digraph"""

    def test_full(self):
        """Test the full policy checks Y = V only"""
        assert y_masks(3, YPolicy.FULL, 1, None, 0) == [0b111]
        assert y_masks(3, YPolicy.FULL, 4, None, 0) == []

    def test_all_subsets(self):
        """Test every subset above the minimum size"""
        assert y_masks(3, YPolicy.ALL_SUBSETS, 2, None, 0) == [0b011, 0b101, 0b110, 0b111]
        assert len(y_masks(4, YPolicy.ALL_SUBSETS, 1, None, 0)) == 15

    def test_sampled(self):
        """Test sampled sets always include V and respect the minimum size"""
        masks = y_masks(5, YPolicy.SAMPLED, 3, np.random.default_rng(11), 6)
        assert 0b11111 in masks
        assert all(bin(m).count("1") >= 3 for m in masks)
        assert masks == sorted(set(masks))


@pytest.mark.unit
def test_random_digraph_is_reproducible():
    """Test digraph i of a seeded stream does not depend on anything else"""
    first = random_digraph(6, 42, 17, 0.5)
    assert random_digraph(6, 42, 17, 0.5) == first
    assert random_digraph(6, 42, 18, 0.5) != first


@pytest.mark.unit
def test_scan_chunk_counts():
    """Test a chunk over every digraph of order 2"""
    task = ChunkTask(
        mode=ScanMode.EXHAUSTIVE, n=2, start=0, stop=4,
        property_name='meyniel-hamiltonian', variant=None, policy=YPolicy.FULL,
        seed=None, sampled_k=0, arc_probability=0.5,
    )
    result = scan_chunk(task)
    assert result.examined == 4
    # only the 2-cycle is strong
    assert result.hits == 1
    assert result.violations == []


# ============================================================================
# CAMPAIGNS
# ============================================================================

@pytest.mark.unit
class TestCampaigns:
    """Test exhaustive, random and conjecture scans"""

    def test_exhaustive_n3(self):
        """Test every digraph of order 3 is examined"""
        report = exhaustive_scan(3, 'oracle-consistency')
        assert report.instances_examined == 64
        assert report.hypothesis_hits == 64
        assert report.violations == []
        assert not report.failed

    def test_exhaustive_chunked(self, small_scan_chunks):
        """Test chunking does not change the totals"""
        report = exhaustive_scan(3, 'meyniel-set', policy=YPolicy.ALL_SUBSETS)
        assert report.instances_examined == 64
        assert not report.failed

    def test_exhaustive_too_large(self):
        """Test full enumeration is refused above the maximum order"""
        with pytest.raises(ScanTooLarge):
            exhaustive_scan(6, 'manoussakis')

    def test_random_reproducible(self, small_scan_chunks):
        """Test the same seed gives the same report whatever the chunking"""
        first = random_scan(5, 30, 3, 'cycle-except-one', policy=YPolicy.SAMPLED)
        second = random_scan(5, 30, 3, 'cycle-except-one', policy=YPolicy.SAMPLED)
        assert first.instances_examined == 30
        assert first.hypothesis_hits == second.hypothesis_hits
        assert first.violations == second.violations == []

    def test_random_limits(self):
        """Test order cap and trial count"""
        with pytest.raises(CapExceeded):
            random_scan(15, 1, 0, 'manoussakis')
        with pytest.raises(PreconditionError):
            random_scan(5, 0, 0, 'manoussakis')

    def test_conjecture_never_fails(self):
        """Test conjecture entries are candidates, not failures"""
        report = conjecture_scan(5, ConjectureVariant.TWO_STRONG, 20, 1)
        assert report.property_name == 'conjecture-i'
        assert not report.proved
        assert not report.failed
        assert report.instances_examined == 20


# ============================================================================
# REPORT TEXT
# ============================================================================

@pytest.mark.unit
def test_report_text():
    """Test the scan report header and violation lines"""
    report = ScanReport(
        property_name='manoussakis', n=3, policy=YPolicy.FULL, seed=None,
        instances_examined=64, hypothesis_hits=5,
        violations=[ScanViolation(0x19, (0, 1, 2))],
    )
    assert report.failed
    assert report.to_text() == (
        "scan manoussakis n=3 policy=full seed=none\n"
        "examined 64\n"
        "hits 5\n"
        "violations 1\n"
        "violation 0x19 0 1 2\n"
    )
