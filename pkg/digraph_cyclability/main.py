"""
Command-line entry point for the digraph cyclability toolkit
Subcommands: check, grow, oracle, gen, scan

Exit codes:
    0 - success
    1 - usage or parse error
    2 - proved statement violated (scan) or theorem-violation certificate (grow)
    3 - oracle cap exceeded or inconclusive result
"""

import argparse
import logging
import sys
from typing import List, Optional

from .config import LogConfig, validate_configuration
from .exceptions import CapExceeded, CyclabilityError, ScanTooLarge
from .modules.conditions import (
    check_a0,
    check_meyniel_set,
    is_2_strong,
    is_s_strong,
    is_strong,
)
from .modules.cycle_grower import CertificateStatus, CycleGrower
from .modules.digraph_format import DigraphDocument, format_digraph, read_document, write_text
from .modules.families import FamilyName, build_family
from .modules.oracle import max_y_cycle
from .modules.properties import ConjectureVariant, PropertyName
from .modules.verifier import YPolicy, conjecture_scan, exhaustive_scan, random_scan

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_CAP = 3


class UsageError(Exception):
    """Bad command line"""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as exceptions (exit code 1, not 2)"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="digraph-cyclability",
        description="Cycles through vertex sets of digraphs: checks, growth, oracle, scans"
    )
    parser.add_argument(
        '--log-level',
        default=None,
        help='Logging level (default: LOG_LEVEL from the environment)'
    )
    commands = parser.add_subparsers(dest='command', required=True, parser_class=CliParser)

    # check
    check = commands.add_parser('check', help='Report A0, Meyniel and connectivity conditions')
    check.add_argument('file', help="Digraph file ('-' for stdin)")

    # grow
    grow = commands.add_parser('grow', help='Grow a cycle through Y except at most one vertex')
    grow.add_argument('file', help="Digraph file ('-' for stdin)")
    grow.add_argument('--budget', type=int, default=None,
                      help='Improvement iterations (default: GROWER_BUDGET_FACTOR * n)')
    grow.add_argument('--set', dest='y_set', type=int, nargs='+', default=None,
                      help="Y (default: the file's 'set Y' line, else all vertices)")

    # oracle
    oracle = commands.add_parser('oracle', help='Exact maximum Y-length cycle')
    oracle.add_argument('file', help="Digraph file ('-' for stdin)")
    oracle.add_argument('--set', dest='y_set', type=int, nargs='+', default=None,
                        help="Y (default: the file's 'set Y' line, else all vertices)")
    oracle.add_argument('--cap', type=int, default=None, help='Order cap (default: ORACLE_CAP)')

    # gen
    gen = commands.add_parser('gen', help='Write a family member in the digraph format')
    gen.add_argument('family', choices=[f.value for f in FamilyName])
    gen.add_argument('params', nargs='*', help='Family parameters')
    gen.add_argument('-o', '--output', default='-', help="Output file ('-' for stdout)")

    # scan
    scan = commands.add_parser('scan', help='Exhaustive, random or conjecture scans')
    scan.add_argument('property', choices=[p.value for p in PropertyName] + ['conjecture'])
    scan.add_argument('--n', type=int, required=True, help='Digraph order')
    scan.add_argument('--policy', choices=[p.value for p in YPolicy], default=None,
                      help='Y policy (default: full; sampled-k for conjecture scans)')
    scan.add_argument('--seed', type=int, default=None, help='Random seed')
    scan.add_argument('--trials', type=int, default=None,
                      help='Random digraphs to draw (omit for an exhaustive scan)')
    scan.add_argument('--variant', choices=[v.value for v in ConjectureVariant], default=None,
                      help='Conjecture clause (conjecture scans only)')
    scan.add_argument('--k', type=int, default=None, help='Y sets sampled per digraph')
    scan.add_argument('--arc-probability', type=float, default=None,
                      help='Arc probability for random digraphs')
    scan.add_argument('--workers', type=int, default=None, help='Worker processes')
    scan.add_argument('-o', '--output', default='-', help="Report file ('-' for stdout)")
    scan.add_argument('--strict', action='store_true',
                      help='CI mode: randomized scans must be given --seed')

    return parser


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def _y_for(document: DigraphDocument, override: Optional[List[int]]):
    if override is not None:
        return frozenset(document.digraph.check_vertex(v) for v in override)
    return document.y_or_all()


def cmd_check(args) -> int:
    document = read_document(args.file)
    digraph = document.digraph
    y = sorted(document.y_or_all())

    lines = [f"n {digraph.n}", "y " + " ".join(str(v) for v in y)]
    lines.append(f"strong {str(is_strong(digraph)).lower()}")
    two_strong = str(is_2_strong(digraph)).lower() if digraph.n >= 3 else "n/a"
    lines.append(f"two_strong {two_strong}")
    lines.append(f"y_strong {str(is_s_strong(digraph, y)).lower()}")

    a0 = check_a0(digraph, y)
    a0_line = f"a0 {'holds' if a0.holds else 'fails'} violations={len(a0.violations)}"
    lines.append(a0_line + (" truncated" if a0.truncated else ""))
    lines.extend(str(v) for v in a0.violations)

    meyniel = check_meyniel_set(digraph, y)
    meyniel_line = (f"meyniel {'holds' if meyniel.holds else 'fails'} "
                    f"violations={len(meyniel.violations)}")
    lines.append(meyniel_line + (" truncated" if meyniel.truncated else ""))
    lines.extend(str(v) for v in meyniel.violations)

    write_text('-', "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_grow(args) -> int:
    document = read_document(args.file)
    y = _y_for(document, args.y_set)
    certificate = CycleGrower(document.digraph, budget=args.budget).grow(y)
    write_text('-', certificate.to_text())

    if certificate.status is CertificateStatus.THEOREM_VIOLATION:
        return EXIT_VIOLATION
    if certificate.status is CertificateStatus.INCONCLUSIVE:
        return EXIT_CAP
    return EXIT_OK


def cmd_oracle(args) -> int:
    document = read_document(args.file)
    y = _y_for(document, args.y_set)
    result = max_y_cycle(document.digraph, y, cap=args.cap)
    write_text('-', result.to_text())
    return EXIT_OK


def cmd_gen(args) -> int:
    generated = build_family(args.family, args.params)
    text = format_digraph(
        generated.digraph,
        generated.y_set,
        comments=[f"family: {generated.spec.label()}"]
    )
    write_text(args.output, text)
    return EXIT_OK


def cmd_scan(args) -> int:
    is_conjecture = args.property == 'conjecture'
    randomized = is_conjecture or args.trials is not None

    if is_conjecture and (args.variant is None or args.trials is None):
        raise UsageError("conjecture scans need --variant and --trials")
    if not is_conjecture and args.variant is not None:
        raise UsageError("--variant applies to conjecture scans only")
    if args.strict and randomized and args.seed is None:
        raise UsageError("--strict requires --seed for randomized scans")

    seed = args.seed
    if randomized and seed is None:
        seed = 0
        logger.warning("No --seed given; using seed 0")

    if is_conjecture:
        policy = YPolicy(args.policy) if args.policy else YPolicy.SAMPLED
        report = conjecture_scan(args.n, ConjectureVariant(args.variant), args.trials, seed,
                                 policy=policy, sampled_k=args.k,
                                 arc_probability=args.arc_probability, workers=args.workers)
    elif randomized:
        policy = YPolicy(args.policy) if args.policy else YPolicy.FULL
        report = random_scan(args.n, args.trials, seed, args.property, policy=policy,
                             sampled_k=args.k, arc_probability=args.arc_probability,
                             workers=args.workers)
    else:
        policy = YPolicy(args.policy) if args.policy else YPolicy.FULL
        report = exhaustive_scan(args.n, args.property, policy=policy, seed=seed,
                                 sampled_k=args.k, workers=args.workers)

    write_text(args.output, report.to_text())
    return EXIT_VIOLATION if report.failed else EXIT_OK


COMMANDS = {
    'check': cmd_check,
    'grow': cmd_grow,
    'oracle': cmd_oracle,
    'gen': cmd_gen,
    'scan': cmd_scan,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and dispatch one subcommand

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    LogConfig.setup_logging(args.log_level)
    if not validate_configuration():
        print("error: invalid configuration", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except ScanTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CyclabilityError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    """Console entry point"""
    return run(sys.argv[1:])


if __name__ == "__main__":
    exit(main())
