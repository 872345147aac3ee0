"""
Extremal Digraph Families
Generators, membership validators and samplers for the sharpness example
and the non-Hamiltonian exception families, plus a registry for the CLI
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

try:
    import networkx as nx
except ImportError:
    nx = None
    logging.warning("NetworkX not installed. Install with: pip install networkx")

from ..exceptions import InvalidDigraphError, PreconditionError
from .digraph import Digraph, DigraphBuilder, bit, iter_bits
from .symmetric import join, symmetric_closure, union

logger = logging.getLogger(__name__)


class FamilyName(Enum):
    REMARK1 = 'remark1'
    H_MM = 'h_mm'
    H_M_M1_1 = 'h_m_m1_1'
    H_2M = 'h_2m'
    D6 = 'd6'
    D6_PRIME = 'd6_prime'
    D6_CONVERSE = 'd6_converse'
    D6_PRIME_CONVERSE = 'd6_prime_converse'
    K_STAR = 'k_star'
    K_STAR_BIPARTITE = 'k_star_bipartite'
    TWO_CLIQUES_PLUS_ONE = 'two_cliques_plus_one'
    K_JOIN_INDEPENDENT = 'k_join_independent'


class Orientation(Enum):
    """Wiring of vertex a in H(m, m-1, 1)"""
    IN = 'in'    # N-(a) = B, A inside N+(a)
    OUT = 'out'  # N+(a) = B, A inside N-(a)


@dataclass(frozen=True)
class FamilySpec:
    """A family name with its parameters"""
    family: FamilyName
    params: Tuple[Any, ...] = ()
    canonical: bool = True

    def label(self) -> str:
        values = " ".join(p.value if isinstance(p, Enum) else str(p) for p in self.params)
        return f"{self.family.value} {values}".strip()


@dataclass(frozen=True)
class Remark1Witness:
    """Digraph where Y = {x, y, z} is Y-strong and satisfies A0 but is not cyclable"""
    digraph: Digraph
    x: int
    y: int
    z: int

    @property
    def y_set(self) -> FrozenSet[int]:
        return frozenset((self.x, self.y, self.z))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionError(message)


def _require_networkx() -> None:
    if nx is None:
        raise ImportError("NetworkX is required. Install with: pip install networkx")


# ============================================================================
# SHARPNESS EXAMPLE
# ============================================================================

def gen_remark1(n: int, m: int) -> Remark1Witness:
    """
    Y-strong digraph with Y satisfying A0 and no cycle through all of Y

    Vertices 0..m-1 form G = K*_m with x = 0, z = 1; vertices m..n-1 form
    H = K*_(n-m) with y = m. Every u in H - y gets both arcs ux and xu, and
    y gets the single arc yx. Then
    d(y) + d(z) + d-(y) + d+(x) = 4n - m - 6, which is >= 3n - 2 exactly
    when m <= n - 4.

    Raises:
        PreconditionError: m < 2 or n - m < 4
    """
    _require(m >= 2, f"remark1 needs m >= 2, got m={m}")
    _require(n - m >= 4, f"remark1 needs n - m >= 4, got n={n}, m={m}")

    x, z, y = 0, 1, m
    builder = DigraphBuilder(n)
    builder.add_complete(range(m))
    builder.add_complete(range(m, n))
    for u in range(m + 1, n):
        builder.add_symmetric(u, x)
    builder.add_arc(y, x)

    logger.debug(f"remark1({n}, {m}): x={x}, y={y}, z={z}")
    return Remark1Witness(builder.freeze(), x=x, y=y, z=z)


# ============================================================================
# H FAMILIES
# ============================================================================

def gen_h_mm(m: int) -> Digraph:
    """
    Canonical (arc-maximal) member of H(m, m)

    A = 0..m-1 and B = m..2m-1 both induce K*_m; every arc A -> B is
    present and no arc goes from B to A.
    """
    _require(m >= 2, f"h_mm needs m >= 2, got m={m}")
    builder = DigraphBuilder(2 * m)
    builder.add_complete(range(m))
    builder.add_complete(range(m, 2 * m))
    builder.add_arcs((a, b) for a in range(m) for b in range(m, 2 * m))
    return builder.freeze()


def _h_m_m1_1_frame(m: int) -> DigraphBuilder:
    builder = DigraphBuilder(2 * m)
    for a in range(m):
        for b in range(m, 2 * m - 1):
            builder.add_symmetric(a, b)
    return builder


def _wire_a(builder: DigraphBuilder, m: int, orientation: Orientation) -> None:
    a = 2 * m - 1
    for b in range(m, 2 * m - 1):
        if orientation is Orientation.IN:
            builder.add_arc(b, a)
        else:
            builder.add_arc(a, b)
    for v in range(m):
        if orientation is Orientation.IN:
            builder.add_arc(a, v)
        else:
            builder.add_arc(v, a)


def gen_h_m_m1_1(m: int, orientation: Orientation = Orientation.IN) -> Digraph:
    """
    Canonical member of H(m, m-1, 1)

    A = 0..m-1 is arcless, B = m..2m-2 induces K*_(m-1), every arc between
    A and B is present in both directions, and a = 2m-1 is wired as
    N-(a) = B, N+(a) = A (IN) or N+(a) = B, N-(a) = A (OUT).
    """
    _require(m >= 2, f"h_m_m1_1 needs m >= 2, got m={m}")
    orientation = Orientation(orientation)
    builder = _h_m_m1_1_frame(m)
    builder.add_complete(range(m, 2 * m - 1))
    _wire_a(builder, m, orientation)
    return builder.freeze()


def gen_h_2m(m: int, both_arcs: bool = False) -> Digraph:
    """
    H(2m): A = 0..m-2, x = m-1, B = m..2m-2, y = 2m-1

    A + x and B + y induce K*_m, nothing joins A and B, plus arcs ya for
    a in A, bx for b in B, the arc xy, and yx when both_arcs is set.
    """
    _require(m >= 2, f"h_2m needs m >= 2, got m={m}")
    x, y = m - 1, 2 * m - 1
    builder = DigraphBuilder(2 * m)
    builder.add_complete(range(m))
    builder.add_complete(range(m, 2 * m))
    builder.add_arcs((y, a) for a in range(m - 1))
    builder.add_arcs((b, x) for b in range(m, 2 * m - 1))
    builder.add_arc(x, y)
    if both_arcs:
        builder.add_arc(y, x)
    return builder.freeze()


def is_h_mm_member(digraph: Digraph, a_part: Iterable[int]) -> bool:
    """Membership test for H(m, m) with the given A (B is the rest)"""
    a_mask = digraph.mask(a_part)
    b_mask = digraph.vertex_mask & ~a_mask
    m = bin(a_mask).count("1")
    if m < 2 or digraph.n != 2 * m:
        return False

    for part in (a_mask, b_mask):
        for v in iter_bits(part):
            others = part & ~bit(v)
            if digraph.out_mask(v) & others != others:
                return False
    for v in iter_bits(b_mask):
        if digraph.out_mask(v) & a_mask:
            return False
        if not digraph.in_mask(v) & a_mask:
            return False
    for v in iter_bits(a_mask):
        if not digraph.out_mask(v) & b_mask:
            return False
    return True


def is_h_m_m1_1_member(
    digraph: Digraph,
    a_part: Iterable[int],
    b_part: Iterable[int],
    a: int
) -> bool:
    """Membership test for H(m, m-1, 1) with the given A, B and a"""
    a_mask = digraph.mask(a_part)
    b_mask = digraph.mask(b_part)
    a_bit = bit(digraph.check_vertex(a))
    m = bin(a_mask).count("1")

    if a_mask & b_mask or (a_mask | b_mask) & a_bit:
        return False
    if bin(b_mask).count("1") != m - 1 or digraph.n != 2 * m:
        return False

    for v in iter_bits(a_mask):
        if digraph.out_mask(v) & a_mask:
            return False
        if digraph.out_mask(v) & b_mask != b_mask or digraph.in_mask(v) & b_mask != b_mask:
            return False

    in_a, out_a = digraph.in_mask(a), digraph.out_mask(a)
    wired_in = in_a == b_mask and out_a & a_mask == a_mask
    wired_out = out_a == b_mask and in_a & a_mask == a_mask
    return wired_in or wired_out


def sample_h_mm(m: int, rng: np.random.Generator) -> Digraph:
    """Random member of H(m, m): each A -> B arc kept with probability 1/2, then repaired"""
    _require(m >= 2, f"h_mm needs m >= 2, got m={m}")
    builder = DigraphBuilder(2 * m)
    builder.add_complete(range(m))
    builder.add_complete(range(m, 2 * m))

    keep = rng.random((m, m)) < 0.5
    for i in range(m):
        if not keep[i].any():
            keep[i, rng.integers(m)] = True
    for j in range(m):
        if not keep[:, j].any():
            keep[rng.integers(m), j] = True

    for i, j in zip(*np.nonzero(keep)):
        builder.add_arc(int(i), m + int(j))
    return builder.freeze()


def sample_h_m_m1_1(m: int, orientation: Orientation, rng: np.random.Generator) -> Digraph:
    """Random member of H(m, m-1, 1): arbitrary <B>, extra arcs from a into B"""
    _require(m >= 2, f"h_m_m1_1 needs m >= 2, got m={m}")
    orientation = Orientation(orientation)
    builder = _h_m_m1_1_frame(m)

    b_vertices = list(range(m, 2 * m - 1))
    for u in b_vertices:
        for v in b_vertices:
            if u != v and rng.random() < 0.5:
                builder.add_arc(u, v)

    _wire_a(builder, m, orientation)

    # A is forced on the free side of a; B is optional there
    a = 2 * m - 1
    for b in b_vertices:
        if rng.random() < 0.5:
            if orientation is Orientation.IN:
                builder.add_arc(a, b)
            else:
                builder.add_arc(b, a)
    return builder.freeze()


# ============================================================================
# SMALL FIXED DIGRAPHS
# ============================================================================

# x1..x5 -> 0..4, x -> 5
D6_ARCS: Tuple[Tuple[int, int], ...] = (
    (0, 1), (1, 2), (2, 3), (3, 4),
    (5, 0), (5, 1), (5, 2),
    (0, 4), (1, 4), (4, 0), (4, 3), (2, 1), (2, 5), (3, 0), (3, 5),
)


def gen_d6() -> Digraph:
    """5-regular, 2-strong, non-Hamiltonian digraph of order 6"""
    return Digraph.from_arcs(6, D6_ARCS)


def gen_d6_prime() -> Digraph:
    """D6 plus the arc x2 x4"""
    return Digraph.from_arcs(6, D6_ARCS + ((1, 3),))


# ============================================================================
# SYMMETRIC FAMILIES
# ============================================================================

def gen_k_star(n: int) -> Digraph:
    _require(n >= 1, f"k_star needs n >= 1, got n={n}")
    _require_networkx()
    return symmetric_closure(nx.complete_graph(n))


def gen_k_star_bipartite(p: int, q: int) -> Digraph:
    """K*_(p,q): parts 0..p-1 and p..p+q-1"""
    _require(p >= 1 and q >= 1, f"k_star_bipartite needs p, q >= 1, got {p}, {q}")
    _require_networkx()
    return symmetric_closure(nx.complete_bipartite_graph(p, q))


def gen_two_cliques_plus_one(m: int) -> Digraph:
    """[(K_m u K_m) + K_1]*; the joined vertex is 2m"""
    _require(m >= 2, f"two_cliques_plus_one needs m >= 2, got m={m}")
    _require_networkx()
    return symmetric_closure(join(union(nx.complete_graph(m), nx.complete_graph(m)),
                                  nx.complete_graph(1)))


def gen_k_join_independent(m: int) -> Digraph:
    """[K_m + complement(K_(m+1))]*: clique 0..m-1, independent m..2m"""
    _require(m >= 1, f"k_join_independent needs m >= 1, got m={m}")
    _require_networkx()
    return symmetric_closure(join(nx.complete_graph(m), nx.empty_graph(m + 1)))


# ============================================================================
# REGISTRY
# ============================================================================

def _parse_bool(token: str) -> bool:
    lowered = token.lower()
    if lowered in ("1", "true", "yes", "both"):
        return True
    if lowered in ("0", "false", "no", "single"):
        return False
    raise ValueError(f"expected a boolean, got {token!r}")


@dataclass(frozen=True)
class FamilyEntry:
    """Registry record: generator plus how to read its parameters"""
    generator: Callable[..., Any]
    param_names: Tuple[str, ...]
    param_types: Tuple[Callable[[str], Any], ...]
    description: str

    @property
    def arity(self) -> int:
        return len(self.param_names)


@dataclass(frozen=True)
class GeneratedFamily:
    """Output of a registry build, ready for the text format"""
    spec: FamilySpec
    digraph: Digraph
    y_set: Optional[FrozenSet[int]] = None


FAMILIES: Dict[FamilyName, FamilyEntry] = {
    FamilyName.REMARK1: FamilyEntry(
        gen_remark1, ("n", "m"), (int, int),
        "Y-strong, A0, but no cycle through Y = {x, y, z}"),
    FamilyName.H_MM: FamilyEntry(
        gen_h_mm, ("m",), (int,), "canonical H(m, m)"),
    FamilyName.H_M_M1_1: FamilyEntry(
        gen_h_m_m1_1, ("m", "orientation"), (int, Orientation), "canonical H(m, m-1, 1)"),
    FamilyName.H_2M: FamilyEntry(
        gen_h_2m, ("m", "both_arcs"), (int, _parse_bool), "H(2m)"),
    FamilyName.D6: FamilyEntry(gen_d6, (), (), "D6"),
    FamilyName.D6_PRIME: FamilyEntry(gen_d6_prime, (), (), "D6 plus x2x4"),
    FamilyName.D6_CONVERSE: FamilyEntry(
        lambda: gen_d6().converse(), (), (), "converse of D6"),
    FamilyName.D6_PRIME_CONVERSE: FamilyEntry(
        lambda: gen_d6_prime().converse(), (), (), "converse of D6 plus x2x4"),
    FamilyName.K_STAR: FamilyEntry(gen_k_star, ("n",), (int,), "complete symmetric K*_n"),
    FamilyName.K_STAR_BIPARTITE: FamilyEntry(
        gen_k_star_bipartite, ("p", "q"), (int, int), "complete symmetric bipartite K*_(p,q)"),
    FamilyName.TWO_CLIQUES_PLUS_ONE: FamilyEntry(
        gen_two_cliques_plus_one, ("m",), (int,), "[(K_m u K_m) + K_1]*"),
    FamilyName.K_JOIN_INDEPENDENT: FamilyEntry(
        gen_k_join_independent, ("m",), (int,), "[K_m + complement(K_(m+1))]*"),
}


def build_family(name: str, raw_params: Sequence[str]) -> GeneratedFamily:
    """
    Build a registered family member from command-line tokens

    Raises:
        PreconditionError: unknown family, wrong arity or unparsable parameter
    """
    try:
        family = FamilyName(name)
    except ValueError:
        known = ", ".join(f.value for f in FamilyName)
        raise PreconditionError(f"unknown family {name!r} (known: {known})")

    entry = FAMILIES[family]
    if len(raw_params) != entry.arity:
        raise PreconditionError(
            f"{name} takes {entry.arity} parameter(s) {entry.param_names}, got {len(raw_params)}"
        )

    try:
        params = tuple(kind(token) for kind, token in zip(entry.param_types, raw_params))
    except ValueError as e:
        raise PreconditionError(f"bad parameter for {name}: {e}") from e

    spec = FamilySpec(family, params)
    built = entry.generator(*params)
    if isinstance(built, Remark1Witness):
        return GeneratedFamily(spec, built.digraph, built.y_set)
    if not isinstance(built, Digraph):
        raise InvalidDigraphError(f"{name} generator returned {type(built).__name__}")
    return GeneratedFamily(spec, built)
