#!/usr/bin/env python3
"""
Run the acceptance campaign: exhaustive and seeded scans of the proved
statements plus the fixed-family checks

Usage:
    python scripts/run_acceptance_campaign.py [--full] [--seed S] [--trials T] [--workers W]

Exit codes:
    0 - Every check passed
    2 - A proved statement was violated or a family check failed
"""

import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from digraph_cyclability.config import LogConfig
from digraph_cyclability.modules.conditions import is_2_strong, is_s_strong, satisfies_a0
from digraph_cyclability.modules.families import (
    gen_d6,
    gen_d6_prime,
    gen_h_2m,
    gen_h_m_m1_1,
    gen_h_mm,
    gen_k_star_bipartite,
    gen_remark1,
    gen_two_cliques_plus_one,
    Orientation,
)
from digraph_cyclability.modules.oracle import is_cyclable, is_hamiltonian, max_y_cycle
from digraph_cyclability.modules.verifier import YPolicy, exhaustive_scan, random_scan

# (property, policy) checked on every digraph of the order
EXHAUSTIVE_SET = [
    ('cycle-except-one', YPolicy.ALL_SUBSETS),
    ('manoussakis', YPolicy.FULL),
    ('meyniel-hamiltonian', YPolicy.FULL),
    ('nonadjacent-partner-degree', YPolicy.ALL_SUBSETS),
    ('length-two-paths', YPolicy.FULL),
    ('close-pair-cycle', YPolicy.FULL),
    ('bypass-exists', YPolicy.ALL_SUBSETS),
    ('no-bypass-degree-bound', YPolicy.FULL),
    ('meyniel-set', YPolicy.ALL_SUBSETS),
    ('cycle-absorption', YPolicy.FULL),
    ('path-insertion', YPolicy.FULL),
    ('multi-insertion', YPolicy.FULL),
    ('oracle-consistency', YPolicy.FULL),
]

# (property, largest order, policy) checked on seeded random digraphs
SAMPLED_SET = [
    ('meyniel-set', 8, YPolicy.SAMPLED),
    ('cycle-except-one', 9, YPolicy.SAMPLED),
    ('oracle-consistency', 6, YPolicy.FULL),
    ('grower-agreement', 9, YPolicy.SAMPLED),
    ('length-two-paths', 7, YPolicy.FULL),
    ('close-pair-cycle', 7, YPolicy.FULL),
    ('bypass-exists', 7, YPolicy.SAMPLED),
    ('no-bypass-degree-bound', 7, YPolicy.FULL),
    ('path-insertion', 7, YPolicy.FULL),
    ('cycle-absorption', 7, YPolicy.FULL),
    ('multi-insertion', 7, YPolicy.FULL),
]


def check_families():
    """Fixed-family facts; returns a list of failure messages"""
    failures = []

    for n in range(6, 15):
        for m in range(2, n - 3):
            witness = gen_remark1(n, m)
            digraph, y = witness.digraph, witness.y_set
            identity = (digraph.total_degree(witness.y) + digraph.total_degree(witness.z)
                        + digraph.in_degree(witness.y) + digraph.out_degree(witness.x))
            if identity != 4 * n - m - 6:
                failures.append(f"remark1({n},{m}): degree identity {identity} != {4 * n - m - 6}")
            if not (satisfies_a0(digraph, y) and is_s_strong(digraph, y)):
                failures.append(f"remark1({n},{m}): hypotheses fail")
            if is_cyclable(digraph, y):
                failures.append(f"remark1({n},{m}): Y is cyclable")

    d6 = gen_d6()
    regular = all(d6.total_degree(v) == 5 for v in d6.vertices())
    longest = max_y_cycle(d6, d6.vertices()).max_y_length
    if not (regular and is_2_strong(d6) and not is_hamiltonian(d6) and longest == 5):
        failures.append("d6: expected 5-regular, 2-strong, longest cycle 5, non-Hamiltonian")
    d6_prime = gen_d6_prime()
    if not is_2_strong(d6_prime) or is_hamiltonian(d6_prime):
        failures.append("d6_prime: expected 2-strong and non-Hamiltonian")

    non_hamiltonian = [("k_star_bipartite 2 3", gen_k_star_bipartite(2, 3)),
                       ("two_cliques_plus_one 2", gen_two_cliques_plus_one(2))]
    for m in (2, 3, 4):
        non_hamiltonian.append((f"h_mm {m}", gen_h_mm(m)))
        non_hamiltonian.append((f"h_2m {m}", gen_h_2m(m)))
        for orientation in Orientation:
            non_hamiltonian.append((f"h_m_m1_1 {m} {orientation.value}",
                                    gen_h_m_m1_1(m, orientation)))
    for label, digraph in non_hamiltonian:
        if is_hamiltonian(digraph):
            failures.append(f"{label}: unexpectedly Hamiltonian")

    return failures


def run_campaign(full: bool, seed: int, trials: int, workers: int) -> int:
    """Run every acceptance check and return the exit code"""
    failed = False
    orders = (4, 5) if full else (4,)

    print("=" * 60)
    print("EXHAUSTIVE SCANS")
    print("=" * 60)
    for n in orders:
        for property_name, policy in EXHAUSTIVE_SET:
            if n == 5 and policy is YPolicy.ALL_SUBSETS:
                policy = YPolicy.SAMPLED
            report = exhaustive_scan(n, property_name, policy=policy, seed=seed, workers=workers)
            mark = "FAIL" if report.failed else "ok"
            print(f"[{mark:>4}] {property_name:<28} n={n} examined={report.instances_examined} "
                  f"hits={report.hypothesis_hits} violations={len(report.violations)}")
            failed = failed or report.failed

    print("")
    print("=" * 60)
    print(f"SAMPLED SCANS (seed {seed}, {trials} trials per order)")
    print("=" * 60)
    for property_name, largest, policy in SAMPLED_SET:
        for n in range(4, largest + 1):
            report = random_scan(n, trials, seed, property_name, policy=policy, workers=workers)
            mark = "FAIL" if report.failed else "ok"
            print(f"[{mark:>4}] {property_name:<28} n={n} hits={report.hypothesis_hits} "
                  f"violations={len(report.violations)}")
            failed = failed or report.failed

    print("")
    print("=" * 60)
    print("FAMILY CHECKS")
    print("=" * 60)
    failures = check_families()
    for failure in failures:
        print(f"[FAIL] {failure}")
    if not failures:
        print("[  ok] remark1, D6, D6', H-families, K*_(2,3), [(K2 u K2) + K1]*")

    print("")
    if failed or failures:
        print("Acceptance campaign FAILED")
        return 2
    print("Acceptance campaign passed")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance campaign")
    parser.add_argument('--full', action='store_true',
                        help='Also enumerate every digraph of order 5 (slow)')
    parser.add_argument('--seed', type=int, default=0, help='Random seed (default: 0)')
    parser.add_argument('--trials', type=int, default=1000,
                        help='Random digraphs per order for sampled scans')
    parser.add_argument('--workers', type=int, default=None, help='Worker processes')
    parser.add_argument('--log-level', default='WARNING')
    args = parser.parse_args()

    LogConfig.setup_logging(args.log_level)
    return run_campaign(args.full, args.seed, args.trials, args.workers)


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
