"""
Verification Campaigns
Exhaustive and seeded random scans of small digraphs against the registered
properties, plus the open-conjecture scanner; chunked across worker processes
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..config import OracleConfig, ScanConfig
from ..exceptions import CapExceeded, PreconditionError, ScanTooLarge
from .digraph import Digraph, members
from .properties import (
    ConjectureVariant,
    InstanceContext,
    Outcome,
    PropertyCheck,
    conjecture_property,
    resolve_property,
)

logger = logging.getLogger(__name__)


class YPolicy(Enum):
    ALL_SUBSETS = 'all-subsets'
    FULL = 'full'
    SAMPLED = 'sampled-k'


class ScanMode(Enum):
    EXHAUSTIVE = 'exhaustive'
    RANDOM = 'random'


@dataclass(frozen=True, order=True)
class ScanViolation:
    """One failing (or, for conjecture scans, qualifying) instance"""
    arc_code: int
    y: Tuple[int, ...]

    def to_text(self) -> str:
        return f"violation 0x{self.arc_code:x} " + " ".join(str(v) for v in self.y)


@dataclass
class ScanReport:
    """Merged result of one campaign"""
    property_name: str
    n: int
    policy: YPolicy
    seed: Optional[int] = None
    instances_examined: int = 0
    hypothesis_hits: int = 0
    violations: List[ScanViolation] = field(default_factory=list)
    truncated: bool = False
    proved: bool = True
    wall_time: float = 0.0

    @property
    def failed(self) -> bool:
        """A proved statement was contradicted"""
        return self.proved and bool(self.violations)

    def to_text(self) -> str:
        """
        Line format:
            scan <property> n=<n> policy=<policy> seed=<seed|none>
            examined <count>
            hits <count>
            violations <count>
            violation 0x<arc code> <y...>     (one per kept violation)
        """
        seed = "none" if self.seed is None else str(self.seed)
        lines = [
            f"scan {self.property_name} n={self.n} policy={self.policy.value} seed={seed}",
            f"examined {self.instances_examined}",
            f"hits {self.hypothesis_hits}",
            f"violations {len(self.violations)}",
        ]
        lines.extend(v.to_text() for v in self.violations)
        return "\n".join(lines) + "\n"


# ============================================================================
# WORK UNITS
# ============================================================================

@dataclass(frozen=True)
class ChunkTask:
    """Contiguous index range handed to one worker"""
    mode: ScanMode
    n: int
    start: int
    stop: int
    property_name: str
    variant: Optional[str]
    policy: YPolicy
    seed: Optional[int]
    sampled_k: int
    arc_probability: float


@dataclass
class ChunkResult:
    examined: int = 0
    hits: int = 0
    violations: List[ScanViolation] = field(default_factory=list)
    truncated: bool = False


def random_digraph(n: int, seed: int, index: int, arc_probability: float) -> Digraph:
    """Digraph number `index` of a seeded random stream (independent of chunking)"""
    rng = np.random.default_rng([seed, index])
    chosen = np.flatnonzero(rng.random(n * (n - 1)) < arc_probability)
    code = 0
    for position in chosen:
        code |= 1 << int(position)
    return Digraph.from_arc_code(n, code)


def y_masks(
    n: int,
    policy: YPolicy,
    min_size: int,
    rng: Optional[np.random.Generator],
    sampled_k: int
) -> List[int]:
    """Y sets (as bitsets) to check for one digraph, each at least min_size"""
    full = (1 << n) - 1
    if policy is YPolicy.FULL:
        return [full] if n >= min_size else []
    if policy is YPolicy.ALL_SUBSETS:
        return [m for m in range(1, full + 1) if bin(m).count("1") >= min_size]

    if n < min_size:
        return []
    chosen = {full}
    low = max(min_size, 1)
    for _ in range(sampled_k):
        size = int(rng.integers(low, n + 1))
        mask = 0
        for v in rng.choice(n, size=size, replace=False):
            mask |= 1 << int(v)
        chosen.add(mask)
    return sorted(chosen)


def _instances(task: ChunkTask) -> Iterator[Tuple[int, Digraph]]:
    for index in range(task.start, task.stop):
        if task.mode is ScanMode.EXHAUSTIVE:
            yield index, Digraph.from_arc_code(task.n, index)
        else:
            yield index, random_digraph(task.n, task.seed, index, task.arc_probability)


def scan_chunk(task: ChunkTask) -> ChunkResult:
    """Evaluate one property on every instance of a chunk"""
    prop = resolve_property(task.property_name, task.variant)
    policy = YPolicy.FULL if prop.per_digraph else task.policy
    cap = ScanConfig.REPORT_VIOLATION_CAP
    result = ChunkResult()

    for index, digraph in _instances(task):
        result.examined += 1
        ctx = InstanceContext(digraph)
        rng = None
        if policy is YPolicy.SAMPLED:
            rng = np.random.default_rng([task.seed or 0, index, 1])

        for y_mask in y_masks(task.n, policy, prop.min_y, rng, task.sampled_k):
            outcome = prop.check(ctx, y_mask)
            if outcome is Outcome.NOT_APPLICABLE:
                continue
            result.hits += 1
            if outcome is Outcome.VIOLATED:
                if len(result.violations) < cap:
                    result.violations.append(
                        ScanViolation(digraph.arc_code(), tuple(members(y_mask)))
                    )
                else:
                    result.truncated = True
                if prop.proved:
                    logger.error(f"{prop.name} violated: n={task.n} "
                                 f"code=0x{digraph.arc_code():x} Y={members(y_mask)}")
    return result


# ============================================================================
# DRIVER
# ============================================================================

def _chunks(total: int, chunk_size: int) -> Iterator[Tuple[int, int]]:
    for start in range(0, total, chunk_size):
        yield start, min(start + chunk_size, total)


def _run(
    mode: ScanMode,
    n: int,
    total: int,
    prop: PropertyCheck,
    property_name: str,
    variant: Optional[str],
    policy: YPolicy,
    seed: Optional[int],
    sampled_k: Optional[int],
    arc_probability: Optional[float],
    workers: Optional[int]
) -> ScanReport:
    workers = ScanConfig.SCAN_WORKERS if workers is None else workers
    if workers < 1:
        raise PreconditionError(f"workers must be >= 1, got {workers}")

    tasks = [
        ChunkTask(
            mode=mode, n=n, start=start, stop=stop,
            property_name=property_name, variant=variant, policy=policy, seed=seed,
            sampled_k=ScanConfig.SCAN_SAMPLED_K if sampled_k is None else sampled_k,
            arc_probability=(ScanConfig.SCAN_ARC_PROBABILITY
                             if arc_probability is None else arc_probability),
        )
        for start, stop in _chunks(total, ScanConfig.SCAN_CHUNK_SIZE)
    ]

    logger.info(f"Scan {prop.name}: n={n}, {mode.value}, {total} digraphs, "
                f"policy={policy.value}, {len(tasks)} chunks, {workers} worker(s)")
    started = time.perf_counter()

    if workers == 1 or len(tasks) == 1:
        results = [scan_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan_chunk, tasks))

    report = ScanReport(property_name=prop.name, n=n, policy=policy, seed=seed,
                        proved=prop.proved)
    violations: List[ScanViolation] = []
    for chunk in results:
        report.instances_examined += chunk.examined
        report.hypothesis_hits += chunk.hits
        violations.extend(chunk.violations)
        report.truncated = report.truncated or chunk.truncated

    violations.sort()
    cap = ScanConfig.REPORT_VIOLATION_CAP
    if len(violations) > cap:
        violations = violations[:cap]
        report.truncated = True
    report.violations = violations
    report.wall_time = time.perf_counter() - started

    if report.truncated:
        logger.warning(f"Scan report truncated at {cap} violations")
    if report.failed:
        logger.error(f"Scan {prop.name} n={n}: {len(violations)} violation(s) of a proved statement")
    logger.info(f"Scan {prop.name} n={n}: examined {report.instances_examined}, "
                f"hits {report.hypothesis_hits}, violations {len(violations)}, "
                f"{report.wall_time:.2f}s")
    return report


def exhaustive_scan(
    n: int,
    property_name: str,
    policy: YPolicy = YPolicy.FULL,
    seed: Optional[int] = None,
    sampled_k: Optional[int] = None,
    workers: Optional[int] = None
) -> ScanReport:
    """
    Check a property on every loop-free digraph of order n

    Digraphs are visited in arc-code order 0 .. 2^(n(n-1)) - 1.

    Raises:
        ScanTooLarge: n above EXHAUSTIVE_MAX_ORDER
    """
    if n < 1:
        raise PreconditionError(f"Scan order must be >= 1, got {n}")
    if n > ScanConfig.EXHAUSTIVE_MAX_ORDER:
        raise ScanTooLarge(
            f"Exhaustive scan of n={n} exceeds EXHAUSTIVE_MAX_ORDER="
            f"{ScanConfig.EXHAUSTIVE_MAX_ORDER}; use random_scan"
        )
    policy = YPolicy(policy)
    prop = resolve_property(property_name)
    return _run(ScanMode.EXHAUSTIVE, n, 1 << (n * (n - 1)), prop, property_name, None,
                policy, seed, sampled_k, None, workers)


def random_scan(
    n: int,
    trials: int,
    seed: int,
    property_name: str,
    policy: YPolicy = YPolicy.FULL,
    sampled_k: Optional[int] = None,
    arc_probability: Optional[float] = None,
    workers: Optional[int] = None
) -> ScanReport:
    """
    Check a property on `trials` seeded random digraphs of order n

    Raises:
        CapExceeded: n above ORACLE_CAP
    """
    _check_random(n, trials)
    policy = YPolicy(policy)
    prop = resolve_property(property_name)
    return _run(ScanMode.RANDOM, n, trials, prop, property_name, None,
                policy, seed, sampled_k, arc_probability, workers)


def conjecture_scan(
    n: int,
    variant: ConjectureVariant,
    trials: int,
    seed: int,
    policy: YPolicy = YPolicy.SAMPLED,
    sampled_k: Optional[int] = None,
    arc_probability: Optional[float] = None,
    workers: Optional[int] = None
) -> ScanReport:
    """
    Look for A0 instances meeting a conjecture clause whose Y is not cyclable

    Entries in the report are candidate counterexamples, never errors.
    """
    _check_random(n, trials)
    variant = ConjectureVariant(variant)
    policy = YPolicy(policy)
    prop = conjecture_property(variant)
    report = _run(ScanMode.RANDOM, n, trials, prop, 'conjecture', variant.value,
                  policy, seed, sampled_k, arc_probability, workers)
    if report.violations:
        logger.warning(f"Conjecture variant ({variant.value}): "
                       f"{len(report.violations)} candidate counterexample(s)")
    return report


def _check_random(n: int, trials: int) -> None:
    if n < 1:
        raise PreconditionError(f"Scan order must be >= 1, got {n}")
    if n > OracleConfig.ORACLE_CAP:
        raise CapExceeded(f"Random scan of n={n} exceeds ORACLE_CAP={OracleConfig.ORACLE_CAP}")
    if trials < 1:
        raise PreconditionError(f"trials must be >= 1, got {trials}")
