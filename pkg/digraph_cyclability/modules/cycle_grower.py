"""
Cycle Grower
Builds a cycle through all vertices of Y except at most one by repeated
insertion and bypass merging, with the exact oracle as bounded completion
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

from ..config import GrowerConfig, OracleConfig
from ..exceptions import PreconditionError, SearchBudgetExceeded
from .conditions import is_s_strong_mask, satisfies_a0_mask
from .digraph import Cycle, Digraph, Path, bit, iter_bits, members, popcount
from .insertion import (
    Bypass,
    find_bypass,
    insert_into_cycle,
    multi_insert,
    path_insert,
    shortest_pair_cycle,
)
from .oracle import max_y_cycle

logger = logging.getLogger(__name__)


class StepKind(Enum):
    INITIAL_CYCLE = 'initial-cycle'
    INSERTION = 'insertion'
    BYPASS_MERGE = 'bypass-merge'
    FALLBACK = 'fallback'
    INCONCLUSIVE = 'inconclusive'
    NOTE = 'note'


class CertificateStatus(Enum):
    OK = 'ok'
    HYPOTHESIS_UNMET = 'hypothesis-unmet'
    THEOREM_VIOLATION = 'theorem-violation'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    y_length: int
    cycle: Optional[Cycle] = None
    detail: str = ''

    def to_text(self) -> str:
        parts = [f"trace {self.kind.value} y_length={self.y_length}"]
        if self.cycle is not None:
            parts.append("cycle=" + ",".join(str(v) for v in self.cycle))
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass
class Certificate:
    """Grower output: the cycle, which Y-vertices it covers, and how it was built"""
    cycle: Optional[Cycle]
    covered: FrozenSet[int]
    omitted: Optional[int]
    status: CertificateStatus
    trace: List[TraceStep] = field(default_factory=list)

    @property
    def y_length(self) -> int:
        return len(self.covered)

    def to_text(self) -> str:
        """
        Line format:
            status <ok|hypothesis-unmet|theorem-violation|inconclusive>
            cycle <v...> | cycle none
            covered <v...> | covered none
            omitted <v> | omitted none
            trace <kind> y_length=<k> [cycle=<v,...>] [detail]
        """
        lines = [f"status {self.status.value}"]
        lines.append("cycle " + (str(self.cycle) if self.cycle is not None else "none"))
        lines.append("covered " + (" ".join(str(v) for v in sorted(self.covered)) or "none"))
        lines.append("omitted " + ("none" if self.omitted is None else str(self.omitted)))
        lines.extend(step.to_text() for step in self.trace)
        return "\n".join(lines) + "\n"


def initial_cycle(
    digraph: Digraph,
    y: Iterable[int],
    budget: Optional[int] = None
) -> Optional[Cycle]:
    """
    Shortest cycle through at least two Y-vertices

    Raises:
        PreconditionError: |Y| < 2
        SearchBudgetExceeded: pair search ran out of budget
    """
    ys = members(digraph.mask(y))
    if len(ys) < 2:
        raise PreconditionError(f"Initial cycle needs |Y| >= 2, got {len(ys)}")

    pairs = [(a, b) for i, a in enumerate(ys) for b in ys[i + 1:]]
    return shortest_pair_cycle(digraph, pairs, budget=budget)


class CycleGrower:
    """
    Grows a cycle of increasing Y-length

    Each step either inserts an uncovered Y-vertex straight into a cycle
    arc, or merges the best C-bypass (minimum gap, then length) and
    re-inserts the displaced Y-vertices. A step is taken only if it raises
    the Y-length.
    """

    def __init__(
        self,
        digraph: Digraph,
        budget: Optional[int] = None,
        oracle_cap: Optional[int] = None,
        search_budget: Optional[int] = None
    ):
        """
        Args:
            digraph: The digraph
            budget: Improvement iterations (defaults to GROWER_BUDGET_FACTOR * n)
            oracle_cap: Largest order for the exact fallback (defaults to ORACLE_CAP)
            search_budget: Node expansions per path search (defaults to BYPASS_SEARCH_BUDGET)
        """
        self.digraph = digraph
        self.budget = GrowerConfig.default_budget(digraph.n) if budget is None else budget
        self.oracle_cap = OracleConfig.ORACLE_CAP if oracle_cap is None else oracle_cap
        self.search_budget = search_budget

    # ------------------------------------------------------------------
    # Improvement steps
    # ------------------------------------------------------------------

    def _direct_insertion(self, cycle: Cycle, y_mask: int) -> Optional[Tuple[Cycle, str]]:
        for y in iter_bits(y_mask & ~cycle.mask):
            grown = insert_into_cycle(self.digraph, cycle, Path((y,)))
            if grown is not None:
                return grown, f"vertex={y}"
        return None

    def _candidate_bypasses(self, cycle: Cycle, y_mask: int) -> List[Bypass]:
        found = []
        for y in iter_bits(y_mask & ~cycle.mask):
            try:
                bypass = find_bypass(self.digraph, cycle, y, budget=self.search_budget)
            except SearchBudgetExceeded as e:
                logger.warning(f"Bypass search through {y} abandoned: {e}")
                continue
            if bypass is not None:
                found.append(bypass)
        found.sort(key=Bypass.sort_key)
        return found

    def merge_bypass(self, cycle: Cycle, bypass: Bypass, y_mask: int) -> Cycle:
        """
        Replace C[entry, exit] by the bypass, then multi-insert the displaced
        Y-vertices that fit, trying every cut of the new cycle as host path
        """
        digraph = self.digraph
        segment = cycle.segment(bypass.entry, bypass.exit)
        displaced = segment[1:-1]
        back = cycle.segment(bypass.exit, bypass.entry)[1:-1]
        merged = Cycle.of(digraph, bypass.path.vertices + back)

        required = [v for v in displaced if y_mask & bit(v)]
        if not required:
            return merged

        donor = Path.of(digraph, displaced)
        best = merged
        seq = merged.vertices
        for cut in range(len(seq)):
            host = Path(seq[cut:] + seq[:cut])
            fitting = [v for v in required if path_insert(digraph, host, Path((v,))) is not None]
            if not fitting:
                continue
            rebuilt = multi_insert(digraph, host, donor, fitting)
            candidate = Cycle.of(digraph, rebuilt.vertices)
            if candidate.y_length(y_mask) > best.y_length(y_mask):
                best = candidate
                if popcount(y_mask & ~best.mask & cycle.mask) == 0:
                    break
        return best

    def _bypass_step(self, cycle: Cycle, y_mask: int) -> Optional[Tuple[Cycle, str]]:
        current = cycle.y_length(y_mask)
        for bypass in self._candidate_bypasses(cycle, y_mask):
            merged = self.merge_bypass(cycle, bypass, y_mask)
            if merged.y_length(y_mask) > current:
                detail = (f"entry={bypass.entry} exit={bypass.exit} "
                          f"gap={bypass.gap} length={bypass.length}")
                return merged, detail
        return None

    # ------------------------------------------------------------------
    # Driver
    # ------------------------------------------------------------------

    def _certificate(
        self,
        cycle: Optional[Cycle],
        y_mask: int,
        status: CertificateStatus,
        trace: List[TraceStep]
    ) -> Certificate:
        covered_mask = y_mask & cycle.mask if cycle is not None else 0
        missing = members(y_mask & ~covered_mask)
        omitted = missing[0] if len(missing) == 1 else None
        return Certificate(cycle, frozenset(members(covered_mask)), omitted, status, trace)

    def _best_effort(self, y_mask: int, trace: List[TraceStep]) -> Optional[Cycle]:
        if self.digraph.n <= self.oracle_cap:
            result = max_y_cycle(self.digraph, members(y_mask), cap=self.oracle_cap)
            if result.best_cycle is not None:
                trace.append(TraceStep(StepKind.FALLBACK, result.max_y_length, result.best_cycle))
            return result.best_cycle
        if popcount(y_mask) < 2:
            return None
        try:
            cycle = initial_cycle(self.digraph, members(y_mask), budget=self.search_budget)
        except SearchBudgetExceeded:
            return None
        if cycle is not None:
            trace.append(TraceStep(StepKind.INITIAL_CYCLE, cycle.y_length(y_mask), cycle))
        return cycle

    def _single_vertex(self, y: int) -> Certificate:
        y_mask = bit(y)
        cycle = self.digraph.shortest_cycle_through(y)
        if cycle is not None:
            trace = [TraceStep(StepKind.INITIAL_CYCLE, 1, cycle)]
        else:
            trace = [TraceStep(StepKind.NOTE, 0, None, "no cycle through the single Y-vertex")]
        return self._certificate(cycle, y_mask, CertificateStatus.OK, trace)

    def grow(self, y: Iterable[int]) -> Certificate:
        """
        Cycle through all of Y except at most one

        Hypotheses (Y-strong and A0) are checked, not assumed.

        Args:
            y: Nonempty vertex set Y

        Returns:
            Certificate
        """
        digraph = self.digraph
        y_mask = digraph.mask(y)
        if not y_mask:
            raise PreconditionError("Cycle growing needs a nonempty Y")
        size = popcount(y_mask)
        trace: List[TraceStep] = []

        if not (is_s_strong_mask(digraph, y_mask) and satisfies_a0_mask(digraph, y_mask)):
            logger.info(f"Hypotheses unmet for Y={members(y_mask)}; best-effort cycle only")
            cycle = self._best_effort(y_mask, trace)
            return self._certificate(cycle, y_mask, CertificateStatus.HYPOTHESIS_UNMET, trace)

        if size == 1:
            return self._single_vertex(members(y_mask)[0])

        try:
            cycle = initial_cycle(digraph, members(y_mask), budget=self.search_budget)
        except SearchBudgetExceeded as e:
            logger.warning(f"Initial cycle search abandoned: {e}")
            cycle = None

        if cycle is not None:
            trace.append(TraceStep(StepKind.INITIAL_CYCLE, cycle.y_length(y_mask), cycle))
            iterations = 0
            while cycle.y_length(y_mask) < size and iterations < self.budget:
                iterations += 1
                step = self._direct_insertion(cycle, y_mask)
                kind = StepKind.INSERTION
                if step is None:
                    step = self._bypass_step(cycle, y_mask)
                    kind = StepKind.BYPASS_MERGE
                if step is None:
                    break
                cycle, detail = step
                trace.append(TraceStep(kind, cycle.y_length(y_mask), cycle, detail))
                logger.debug(f"{kind.value}: Y-length {cycle.y_length(y_mask)} of {size}")

        y_length = cycle.y_length(y_mask) if cycle is not None else 0
        if y_length < size - 1:
            if digraph.n > self.oracle_cap:
                logger.warning(f"Stuck at Y-length {y_length} of {size}; n={digraph.n} "
                               f"is above the oracle cap")
                trace.append(TraceStep(StepKind.INCONCLUSIVE, y_length, cycle,
                                       f"oracle-cap={self.oracle_cap}"))
                return self._certificate(cycle, y_mask, CertificateStatus.INCONCLUSIVE, trace)

            logger.warning(f"Stuck at Y-length {y_length} of {size}; running the exact oracle")
            result = max_y_cycle(digraph, members(y_mask), cap=self.oracle_cap)
            if result.max_y_length > y_length:
                cycle = result.best_cycle
                y_length = result.max_y_length
                trace.append(TraceStep(StepKind.FALLBACK, y_length, cycle))
            else:
                trace.append(TraceStep(StepKind.NOTE, y_length, None,
                                       "oracle found no cycle with larger Y-length"))

        if y_length < size - 1:
            logger.error(f"Cycle-except-one conclusion fails: Y={members(y_mask)} has max "
                         f"Y-length {y_length} under the hypotheses")
            return self._certificate(cycle, y_mask, CertificateStatus.THEOREM_VIOLATION, trace)

        logger.info(f"Grown cycle covers {y_length} of {size} Y-vertices")
        return self._certificate(cycle, y_mask, CertificateStatus.OK, trace)


def grow(
    digraph: Digraph,
    y: Iterable[int],
    budget: Optional[int] = None,
    oracle_cap: Optional[int] = None
) -> Certificate:
    """Convenience wrapper around CycleGrower(...).grow(y)"""
    return CycleGrower(digraph, budget=budget, oracle_cap=oracle_cap).grow(y)
