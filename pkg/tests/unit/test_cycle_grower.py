"""
Unit tests for the cycle grower and its certificates
"""

import pytest

from digraph_cyclability.exceptions import PreconditionError
from digraph_cyclability.modules.cycle_grower import (
    Certificate,
    CertificateStatus,
    CycleGrower,
    StepKind,
    TraceStep,
    grow,
    initial_cycle,
)
from digraph_cyclability.modules.digraph import Cycle, Digraph
from digraph_cyclability.modules.insertion import find_bypass
from digraph_cyclability.modules.oracle import OracleResult


# ============================================================================
# INITIAL CYCLE
# ============================================================================

@pytest.mark.unit
def test_initial_cycle(c4, k_star4):
    """Test the shortest cycle through two Y-vertices"""
    assert initial_cycle(k_star4, [1, 3]).vertices == (1, 3)
    assert initial_cycle(c4, [0, 2]).vertices == (0, 1, 2, 3)


@pytest.mark.unit
def test_initial_cycle_needs_two_vertices(c4):
    """Test |Y| >= 2"""
    with pytest.raises(PreconditionError):
        initial_cycle(c4, [0])


# ============================================================================
# GROWING
# ============================================================================

@pytest.mark.unit
class TestGrow:
    """Test certificates produced by grow"""

    def test_complete_digraph(self, k_star4):
        """Test K*4 grows to a Hamiltonian cycle by insertions"""
        certificate = grow(k_star4, range(4))
        assert certificate.status is CertificateStatus.OK
        assert certificate.y_length == 4
        assert certificate.omitted is None
        assert certificate.trace[0].kind is StepKind.INITIAL_CYCLE
        assert all(step.kind is StepKind.INSERTION for step in certificate.trace[1:])

    def test_sharpness_witness(self, remark1):
        """Test the witness gets a cycle missing exactly y"""
        certificate = grow(remark1.digraph, remark1.y_set)
        assert certificate.status is CertificateStatus.OK
        assert certificate.covered == frozenset({0, 1})
        assert certificate.omitted == 4

    def test_hypothesis_unmet(self, d6):
        """Test D6 fails A0 and gets the oracle's best cycle"""
        certificate = grow(d6, range(6))
        assert certificate.status is CertificateStatus.HYPOTHESIS_UNMET
        assert certificate.y_length == 5
        assert certificate.trace[-1].kind is StepKind.FALLBACK

    def test_not_y_strong(self, two_disjoint_2cycles):
        """Test Y split across two strong components"""
        certificate = grow(two_disjoint_2cycles, [0, 2])
        assert certificate.status is CertificateStatus.HYPOTHESIS_UNMET
        assert certificate.y_length == 1
        assert certificate.omitted == 2

    def test_single_vertex(self, k_star3, empty3):
        """Test |Y| = 1 uses the shortest cycle through it"""
        certificate = grow(k_star3, [2])
        assert certificate.status is CertificateStatus.OK
        assert certificate.cycle.vertices == (0, 2)

        lonely = grow(empty3, [0])
        assert lonely.status is CertificateStatus.OK
        assert lonely.cycle is None
        assert lonely.omitted == 0

    def test_empty_y(self, c4):
        """Test an empty Y is rejected"""
        with pytest.raises(PreconditionError):
            grow(c4, [])


@pytest.mark.unit
def test_bypass_merge():
    """Test a bypass step when no vertex fits straight into the cycle"""
    # cycle 0 1 2 3; 4 is reached only through the detour 0 -> 4 -> 5 -> 1
    digraph = Digraph.from_arcs(6, [
        (0, 1), (1, 2), (2, 3), (3, 0),
        (0, 4), (4, 5), (5, 1),
    ])
    grower = CycleGrower(digraph)
    cycle = Cycle.of(digraph, [0, 1, 2, 3])
    y_mask = digraph.mask([0, 2, 4])

    bypass = find_bypass(digraph, cycle, 4)
    merged = grower.merge_bypass(cycle, bypass, y_mask)
    assert merged.vertices == (0, 4, 5, 1, 2, 3)
    assert merged.y_length(y_mask) == 3


@pytest.mark.unit
def test_stuck_above_cap_is_inconclusive(k_star4, mocker):
    """Test a stalled grower above the oracle cap reports inconclusive"""
    mocker.patch.object(CycleGrower, "_direct_insertion", return_value=None)
    mocker.patch.object(CycleGrower, "_bypass_step", return_value=None)

    certificate = CycleGrower(k_star4, oracle_cap=2).grow(range(4))
    assert certificate.status is CertificateStatus.INCONCLUSIVE
    assert certificate.trace[-1].kind is StepKind.INCONCLUSIVE


@pytest.mark.unit
def test_stuck_below_cap_uses_oracle(k_star4, mocker):
    """Test a stalled grower falls back to the exact oracle"""
    mocker.patch.object(CycleGrower, "_direct_insertion", return_value=None)
    mocker.patch.object(CycleGrower, "_bypass_step", return_value=None)

    certificate = CycleGrower(k_star4).grow(range(4))
    assert certificate.status is CertificateStatus.OK
    assert certificate.y_length == 4
    assert certificate.trace[-1].kind is StepKind.FALLBACK


@pytest.mark.unit
def test_theorem_violation_reported(k_star4, mocker):
    """Test an oracle result below |Y|-1 is reported, not raised"""
    mocker.patch.object(CycleGrower, "_direct_insertion", return_value=None)
    mocker.patch.object(CycleGrower, "_bypass_step", return_value=None)
    mocker.patch(
        "digraph_cyclability.modules.cycle_grower.max_y_cycle",
        return_value=OracleResult(Cycle.of(k_star4, [0, 1]), 2),
    )

    certificate = CycleGrower(k_star4).grow(range(4))
    assert certificate.status is CertificateStatus.THEOREM_VIOLATION
    assert certificate.y_length == 2
    assert certificate.trace[-1].kind is StepKind.NOTE


@pytest.mark.unit
def test_trace_y_lengths_increase(k_star4, mocker):
    """Test an oracle run that finds nothing longer adds no cycle step"""
    mocker.patch.object(CycleGrower, "_direct_insertion", return_value=None)
    mocker.patch.object(CycleGrower, "_bypass_step", return_value=None)
    mocker.patch(
        "digraph_cyclability.modules.cycle_grower.max_y_cycle",
        return_value=OracleResult(Cycle.of(k_star4, [0, 1]), 2),
    )

    certificate = CycleGrower(k_star4).grow(range(4))
    lengths = [step.y_length for step in certificate.trace if step.kind is not StepKind.NOTE]
    assert lengths == sorted(set(lengths))
    assert all(step.kind is not StepKind.FALLBACK for step in certificate.trace)


# ============================================================================
# CERTIFICATE TEXT
# ============================================================================

@pytest.mark.unit
def test_certificate_text(c3):
    """Test the line-oriented certificate rendering"""
    cycle = Cycle.of(c3, [0, 1, 2])
    certificate = Certificate(
        cycle=cycle,
        covered=frozenset({0, 2}),
        omitted=None,
        status=CertificateStatus.OK,
        trace=[TraceStep(StepKind.INITIAL_CYCLE, 2, cycle)],
    )
    assert certificate.to_text() == (
        "status ok\n"
        "cycle 0 1 2\n"
        "covered 0 2\n"
        "omitted none\n"
        "trace initial-cycle y_length=2 cycle=0,1,2\n"
    )


@pytest.mark.unit
def test_empty_certificate_text():
    """Test 'none' placeholders"""
    certificate = Certificate(None, frozenset(), 3, CertificateStatus.INCONCLUSIVE)
    assert certificate.to_text() == (
        "status inconclusive\ncycle none\ncovered none\nomitted 3\n"
    )
