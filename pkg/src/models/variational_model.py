# src/models/variational_model.py
"""
Variational Model for Motif Count Exponents

Every motif vertex i gets a scale alpha_i: the motif is counted on hidden
variables of order n^alpha_i. The expected number of copies then scales as
n^E(alpha) (up to constants and log factors) with

    E(alpha) = k + (1 - tau) * sum(alpha_i) + sum over edges ij with
               alpha_i + alpha_j < 1 of (alpha_i + alpha_j - 1)

and the exponent of the motif is the maximum of E over the candidate scales.

Key Rules:
1. FREE modes: alpha_i in {0, 1/2, 1}
2. TYPICAL modes: degree-one vertices sit at 0, the rest in
   {(tau-2)/(tau-1), 1/2, 1/(tau-1)}
3. GRAPHLET modes: every non-edge ij needs alpha_i + alpha_j <= 1
4. Several optimal assignments put a log n factor on the count

All scales have the form p/2 + q/(tau-1) with small integers p, q, so the
objective is a + b*tau + c/(tau-1) with half-integer coefficients and whether
an edge term is active never depends on tau inside (2, 3). That lets the
optimizer score every assignment at once with integer numpy arrays and only
touch exact rationals for the distinct objective functions.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from src.config import MAX_OPTIMIZE_VERTICES
from src.exceptions import AssignmentError, ConsistencyError, MotifError
from src.motifs.catalog import display_name
from src.motifs.graph import SmallGraph
from src.models.exponent import (
    TauExponent,
    TauLike,
    parse_tau,
    upper_envelope,
)
from src.models.surd import QuadraticSurd


class Scale(Enum):
    """Candidate vertex scales, in increasing order of value"""
    ZERO = "0"
    LOW = "(tau-2)/(tau-1)"  # typical weight of a light vertex
    HALF = "1/2"  # sqrt(n)
    HUB = "1/(tau-1)"  # typical maximum weight
    ONE = "1"

    @property
    def half_units(self) -> Tuple[int, int]:
        """(p, q) with alpha = p/2 + q/(tau-1)."""
        return _HALF_UNITS[self]

    def alpha(self, tau: TauLike) -> Fraction:
        tau = parse_tau(tau)
        p, q = self.half_units
        return Fraction(p, 2) + Fraction(q) / (tau - 1)


_LABELS: Tuple[Scale, ...] = (Scale.ZERO, Scale.LOW, Scale.HALF, Scale.HUB, Scale.ONE)
_HALF_UNITS: Dict[Scale, Tuple[int, int]] = {
    Scale.ZERO: (0, 0),
    Scale.LOW: (2, -1),
    Scale.HALF: (1, 0),
    Scale.HUB: (0, 1),
    Scale.ONE: (2, 0),
}
_INDEX = {label: i for i, label in enumerate(_LABELS)}
_P = np.array([_HALF_UNITS[label][0] for label in _LABELS], dtype=np.int64)
_Q = np.array([_HALF_UNITS[label][1] for label in _LABELS], dtype=np.int64)


class VariationMode(Enum):
    """Which candidate set and which non-edge rule apply"""
    FREE_MOTIF = "free_motif"  # mean count, subgraphs
    TYPICAL_MOTIF = "typical_motif"  # typical (median) count, subgraphs
    FREE_GRAPHLET = "free_graphlet"  # mean count, induced subgraphs
    TYPICAL_GRAPHLET = "typical_graphlet"  # typical count, induced subgraphs

    @property
    def typical(self) -> bool:
        return self in (VariationMode.TYPICAL_MOTIF, VariationMode.TYPICAL_GRAPHLET)

    @property
    def induced(self) -> bool:
        return self in (VariationMode.FREE_GRAPHLET, VariationMode.TYPICAL_GRAPHLET)

    @property
    def candidates(self) -> Tuple[Scale, ...]:
        if self.typical:
            return (Scale.LOW, Scale.HALF, Scale.HUB)
        return (Scale.ZERO, Scale.HALF, Scale.ONE)

    @classmethod
    def select(cls, typical: bool, induced: bool) -> "VariationMode":
        if typical:
            return cls.TYPICAL_GRAPHLET if induced else cls.TYPICAL_MOTIF
        return cls.FREE_GRAPHLET if induced else cls.FREE_MOTIF

    def allowed(self, degree: int) -> Tuple[Scale, ...]:
        if self.typical and degree == 1:
            return (Scale.ZERO,)
        return self.candidates


class PartitionClass(Enum):
    """Vertex classes of an optimal assignment"""
    S1 = "S1"  # constant weight (free) or (tau-2)/(tau-1) (typical)
    S2 = "S2"  # hubs
    S3 = "S3"  # sqrt(n)
    LEAF = "degree_one"  # typical modes only


_FREE_CLASSES = {Scale.ZERO: PartitionClass.S1, Scale.HALF: PartitionClass.S3, Scale.ONE: PartitionClass.S2}
_TYPICAL_CLASSES = {
    Scale.ZERO: PartitionClass.LEAF,
    Scale.LOW: PartitionClass.S1,
    Scale.HALF: PartitionClass.S3,
    Scale.HUB: PartitionClass.S2,
}


def _pair_sign(p: int, q: int) -> int:
    """
    Sign of alpha_i + alpha_j - 1 on the whole open interval, where the
    pair sums to p/2 + q*x and x = 1/(tau-1) runs over (1/2, 1).
    """
    at_half = Fraction(p, 2) + Fraction(q, 2) - 1
    at_one = Fraction(p, 2) + q - 1
    if at_half == 0 and at_one == 0:
        return 0
    if at_half <= 0 and at_one <= 0:
        return -1
    if at_half >= 0 and at_one >= 0:
        return 1
    raise ConsistencyError(f"pair sum p={p}, q={q} changes side of 1 inside (2, 3)")


_PAIR_SIGN = np.array(
    [[_pair_sign(_P[i] + _P[j], _Q[i] + _Q[j]) for j in range(len(_LABELS))] for i in range(len(_LABELS))],
    dtype=np.int64,
)
_BELOW_ONE = _PAIR_SIGN < 0
_NON_EDGE_OK = _PAIR_SIGN <= 0


@dataclass(frozen=True)
class Assignment:
    """One scale per motif vertex"""
    labels: Tuple[Scale, ...]

    def alphas(self, tau: TauLike) -> Tuple[Fraction, ...]:
        return tuple(label.alpha(tau) for label in self.labels)

    def classes(self, mode: VariationMode) -> Tuple[PartitionClass, ...]:
        table = _TYPICAL_CLASSES if mode.typical else _FREE_CLASSES
        return tuple(table[label] for label in self.labels)

    def __str__(self) -> str:
        return "(" + ", ".join(label.value for label in self.labels) + ")"


@dataclass
class VariationalResult:
    """
    Optimum of the variational problem for one motif, mode and tau
    """
    motif: SmallGraph
    mode: VariationMode
    tau: Fraction
    exponent: TauExponent  # log_power is 1 when the optimum is not unique
    optimal_assignments: Tuple[Assignment, ...]  # lexicographic order
    partition_view: Tuple[PartitionClass, ...]  # classes of the first optimum
    nonunique_vertices: Tuple[int, ...]  # vertices whose scale differs across optima

    @property
    def unique(self) -> bool:
        return len(self.optimal_assignments) == 1

    @property
    def value(self) -> Fraction:
        return self.exponent.evaluate(self.tau)


@dataclass(frozen=True)
class ExponentPiece:
    lo: QuadraticSurd
    hi: QuadraticSurd
    exponent: TauExponent
    unique: bool
    representative: Assignment

    def contains(self, tau: Union[Fraction, QuadraticSurd]) -> bool:
        return self.lo < tau < self.hi


@dataclass(frozen=True)
class PiecewiseExponent:
    motif: SmallGraph
    mode: VariationMode
    pieces: Tuple[ExponentPiece, ...]

    @property
    def breakpoints(self) -> Tuple[QuadraticSurd, ...]:
        return tuple(piece.lo for piece in self.pieces[1:])

    def piece_at(self, tau: TauLike) -> ExponentPiece:
        """Piece whose open interval holds tau; at a breakpoint, the left piece."""
        tau = parse_tau(tau)
        for piece in self.pieces:
            if piece.hi.compare(tau) >= 0:
                return piece
        raise ConsistencyError("empty piecewise exponent")


@dataclass(frozen=True)
class PartitionCounts:
    s1: int
    s2: int
    s3: int
    leaves: int
    e_s1: int  # edges inside S1
    e_s1_s3: int
    e_s1_leaf: int
    e_s2_leaf: int


def _check_motif(h: SmallGraph) -> None:
    if not h.is_connected:
        raise MotifError(f"motif {h} is not connected")
    if h.k > MAX_OPTIMIZE_VERTICES:
        raise MotifError(f"motif has {h.k} vertices; optimizer supports up to {MAX_OPTIMIZE_VERTICES}")


def symbolic_exponent(h: SmallGraph, assignment: Union[Assignment, Sequence[Scale]], mode: VariationMode) -> TauExponent:
    """
    Objective of one assignment as a + b*tau + c/(tau-1).

    Args:
        h: Connected motif
        assignment: One candidate scale per vertex
        mode: Variation mode that decides which scales are legal

    Returns:
        TauExponent with log_power 0
    """
    labels = tuple(assignment.labels if isinstance(assignment, Assignment) else assignment)
    if len(labels) != h.k:
        raise AssignmentError(f"assignment has {len(labels)} entries, motif has {h.k} vertices")
    degrees = h.degrees
    for v, label in enumerate(labels):
        if label not in mode.allowed(degrees[v]):
            raise AssignmentError(f"scale {label.value} not allowed for vertex {v} (degree {degrees[v]}) in {mode.value}")
    if mode.induced:
        for u, v in h.non_edges():
            if not _NON_EDGE_OK[_INDEX[labels[u]], _INDEX[labels[v]]]:
                raise AssignmentError(f"non-edge {u}-{v} has scale sum above 1 in {mode.value}")
    a, b, c = Fraction(h.k), Fraction(0), Fraction(0)
    for label in labels:
        p, q = label.half_units
        # (1 - tau) * (p/2 + q/(tau-1)) = p/2 - (p/2) tau - q
        a += Fraction(p, 2) - q
        b -= Fraction(p, 2)
    for u, v in h.edges:
        if _BELOW_ONE[_INDEX[labels[u]], _INDEX[labels[v]]]:
            pu, qu = labels[u].half_units
            pv, qv = labels[v].half_units
            a += Fraction(pu + pv, 2) - 1
            c += qu + qv
    return TauExponent(a, b, c)


@dataclass(frozen=True)
class _AssignmentTable:
    labels: np.ndarray  # (rows, k) label indices, lexicographic row order
    coeffs: np.ndarray  # (rows, 3) objective in half units
    functions: np.ndarray  # (distinct, 3) distinct rows of coeffs
    function_of_row: np.ndarray  # (rows,)
    multiplicity: np.ndarray  # (distinct,) rows per distinct function


@lru_cache(maxsize=4096)
def _assignment_table(h: SmallGraph, mode: VariationMode) -> _AssignmentTable:
    degrees = h.degrees
    allowed = [np.array([_INDEX[s] for s in mode.allowed(d)], dtype=np.int64) for d in degrees]
    radices = [len(options) for options in allowed]
    rows = int(np.prod(radices))
    codes = np.arange(rows, dtype=np.int64)
    labels = np.empty((rows, h.k), dtype=np.int64)
    # vertex 0 is the most significant digit, so rows come out lexicographic
    for v in range(h.k - 1, -1, -1):
        labels[:, v] = allowed[v][codes % radices[v]]
        codes //= radices[v]
    p, q = _P[labels], _Q[labels]
    a2 = 2 * h.k + p.sum(axis=1) - 2 * q.sum(axis=1)
    b2 = -p.sum(axis=1)
    c2 = np.zeros(rows, dtype=np.int64)
    for u, v in h.edges:
        active = _BELOW_ONE[labels[:, u], labels[:, v]]
        a2 += active * (p[:, u] + p[:, v] - 2)
        c2 += 2 * active * (q[:, u] + q[:, v])
    if mode.induced:
        feasible = np.ones(rows, dtype=bool)
        for u, v in h.non_edges():
            feasible &= _NON_EDGE_OK[labels[:, u], labels[:, v]]
        labels, a2, b2, c2 = labels[feasible], a2[feasible], b2[feasible], c2[feasible]
    coeffs = np.stack([a2, b2, c2], axis=1)
    functions, inverse, counts = np.unique(coeffs, axis=0, return_inverse=True, return_counts=True)
    return _AssignmentTable(labels, coeffs, functions, inverse.reshape(-1), counts)


def _to_assignment(row: np.ndarray) -> Assignment:
    return Assignment(tuple(_LABELS[i] for i in row))


def _scores(functions: np.ndarray, tau: Fraction) -> List[int]:
    # 2 q^2 (tau - 1) * objective, exact integers for tau = p/q
    p, q = tau.numerator, tau.denominator
    return [
        int(a2) * (p - q) * q + int(b2) * p * (p - q) + int(c2) * q * q
        for a2, b2, c2 in functions
    ]


def optimize(h: SmallGraph, mode: VariationMode, tau: TauLike) -> VariationalResult:
    """
    Maximize the objective over all legal assignments at a fixed tau.

    Args:
        h: Connected motif with at most MAX_OPTIMIZE_VERTICES vertices
        mode: Variation mode
        tau: Exponent in (2, 3); strings like '5/2' or '2.2' are exact

    Returns:
        VariationalResult with every optimal assignment
    """
    _check_motif(h)
    tau = parse_tau(tau)
    table = _assignment_table(h, mode)
    scores = _scores(table.functions, tau)
    best = max(scores)
    winners = np.array([s == best for s in scores])
    rows = np.nonzero(winners[table.function_of_row])[0]
    optimal = tuple(_to_assignment(table.labels[r]) for r in rows)
    a2, b2, c2 = table.functions[int(np.argmax(winners))]
    exponent = TauExponent.from_half_units(a2, b2, c2, log_power=0 if len(optimal) == 1 else 1)
    first = table.labels[rows[0]]
    varying = tuple(int(v) for v in range(h.k) if np.any(table.labels[rows, v] != first[v]))
    return VariationalResult(
        motif=h,
        mode=mode,
        tau=tau,
        exponent=exponent,
        optimal_assignments=optimal,
        partition_view=optimal[0].classes(mode),
        nonunique_vertices=varying,
    )


def distinct_functions(h: SmallGraph, mode: VariationMode) -> List[Tuple[TauExponent, int, Assignment]]:
    """
    Every distinct objective function with its assignment count and the
    lexicographically first assignment that produces it.
    """
    _check_motif(h)
    table = _assignment_table(h, mode)
    # rows are lexicographic, so the first occurrence is the representative
    _, first_row = np.unique(table.function_of_row, return_index=True)
    return [
        (TauExponent.from_half_units(*table.functions[i]), int(table.multiplicity[i]), _to_assignment(table.labels[first_row[i]]))
        for i in range(len(table.functions))
    ]


@lru_cache(maxsize=1024)
def piecewise(h: SmallGraph, mode: VariationMode) -> PiecewiseExponent:
    """
    Exponent of h as a function of tau over the whole interval (2, 3).

    Adjacent pieces always carry different exponents; a piece is unique
    when exactly one assignment attains its exponent.
    """
    candidates = distinct_functions(h, mode)
    functions = [f for f, _, _ in candidates]
    pieces = []
    for piece in upper_envelope(functions):
        f, count, representative = candidates[piece.index]
        pieces.append(ExponentPiece(
            lo=piece.lo,
            hi=piece.hi,
            exponent=f.with_log(0 if count == 1 else 1),
            unique=count == 1,
            representative=representative,
        ))
    return PiecewiseExponent(motif=h, mode=mode, pieces=tuple(pieces))


def partition_counts(h: SmallGraph, assignment: Assignment, mode: VariationMode) -> PartitionCounts:
    classes = assignment.classes(mode)
    sizes = {cls: classes.count(cls) for cls in PartitionClass}
    pair_counts: Dict[frozenset, int] = {}
    for u, v in h.edges:
        key = frozenset((classes[u], classes[v]))
        pair_counts[key] = pair_counts.get(key, 0) + 1
    S1, S2, S3, LEAF = PartitionClass.S1, PartitionClass.S2, PartitionClass.S3, PartitionClass.LEAF
    return PartitionCounts(
        s1=sizes[S1],
        s2=sizes[S2],
        s3=sizes[S3],
        leaves=sizes[LEAF],
        e_s1=pair_counts.get(frozenset((S1,)), 0),
        e_s1_s3=pair_counts.get(frozenset((S1, S3)), 0),
        e_s1_leaf=pair_counts.get(frozenset((S1, LEAF)), 0),
        e_s2_leaf=pair_counts.get(frozenset((S2, LEAF)), 0),
    )


def b_value(h: SmallGraph, assignment: Assignment, mode: VariationMode) -> TauExponent:
    """
    B = |S1| - |S2| - (2 E_S1 + E_S1S3 [+ E_S1,1 - E_S2,1]) / (tau - 1),
    the bracketed terms only in typical modes. Returned as a TauExponent
    with b == 0.
    """
    counts = partition_counts(h, assignment, mode)
    weight = 2 * counts.e_s1 + counts.e_s1_s3
    if mode.typical:
        weight += counts.e_s1_leaf - counts.e_s2_leaf
    return TauExponent(Fraction(counts.s1 - counts.s2), Fraction(0), Fraction(-weight))


def check_b_identity(h: SmallGraph, assignment: Assignment, mode: VariationMode) -> TauExponent:
    """
    Recompute the objective from B and compare with the direct objective.

    Free:    (3 - tau) k / 2 + (tau - 1) B / 2
    Typical: (3 - tau) (k + B) / 2 + (tau - 2) k1 / 2
    """
    direct = symbolic_exponent(h, assignment, mode)
    b = b_value(h, assignment, mode)
    k = Fraction(h.k)
    if mode.typical:
        k1 = Fraction(partition_counts(h, assignment, mode).leaves)
        # (3 - tau)(k + A + C/(tau-1))/2 + (tau - 2) k1 / 2 with B = A + C/(tau-1)
        A, C = b.a, b.c
        rebuilt = TauExponent(
            a=Fraction(3, 2) * (k + A) - C / 2 - k1,
            b=-(k + A) / 2 + k1 / 2,
            c=C,
        )
    else:
        A, C = b.a, b.c
        # (tau - 1)(A + C/(tau-1))/2 = (A tau - A + C)/2
        rebuilt = TauExponent(a=Fraction(3, 2) * k - A / 2 + C / 2, b=-k / 2 + A / 2, c=Fraction(0))
    if rebuilt.key != direct.key:
        raise ConsistencyError(
            f"B identity failed for {display_name(h)} {assignment} in {mode.value}: "
            f"direct {direct}, from B {rebuilt}"
        )
    return b


def format_result_summary(result: VariationalResult) -> str:
    """Human-readable summary of an optimization result."""
    name = display_name(result.motif)
    lines = [
        f"{name} ({result.mode.value}) at tau={result.tau}",
        f"  exponent: {result.exponent} = {float(result.value):.4f}",
        f"  optimum: {'unique' if result.unique else f'{len(result.optimal_assignments)} assignments (log n factor)'}",
        f"  first assignment: {result.optimal_assignments[0]}",
        "  partition: " + " ".join(cls.value for cls in result.partition_view),
    ]
    if result.nonunique_vertices:
        lines.append(f"  vertices with varying scale: {list(result.nonunique_vertices)}")
    return "\n".join(lines)
