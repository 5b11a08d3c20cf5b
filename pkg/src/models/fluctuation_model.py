# src/models/fluctuation_model.py
"""
Fluctuation Model: variance exponents and self-averaging classification

The variance of a motif count is a sum over the merged graphs of two copies
(each weighted by its identification constant) minus the squared mean. Its
exponent is therefore the largest of the merged-graph exponents and
2 * mean - 1.

Classification:
1. TYPE_I: self-averaging, Var / E^2 -> 0 (variance exponent < 2 * mean)
2. TYPE_II: not self-averaging, optimum is all-sqrt(n) (B == 0)
3. TYPE_III: not self-averaging, optimum has B > 0
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.exceptions import ConsistencyError
from src.motifs.catalog import ATLAS, display_name, enumerate_connected, parse_motif
from src.motifs.graph import SmallGraph
from src.motifs.merge import merge_enumerate
from src.models.exponent import TAU_HIGH, TAU_LOW, TauExponent, TauLike, parse_tau, upper_envelope
from src.models.surd import QuadraticSurd, rational_between
from src.models.variational_model import (
    PiecewiseExponent,
    Scale,
    VariationMode,
    distinct_functions,
    optimize,
    piecewise,
)


class FluctuationType(Enum):
    """Fluctuation classes of a motif count"""
    TYPE_I = "I"  # self-averaging
    TYPE_II = "II"  # not self-averaging, B == 0
    TYPE_III = "III"  # not self-averaging, B > 0


def mean_mode(induced: bool) -> VariationMode:
    return VariationMode.FREE_GRAPHLET if induced else VariationMode.FREE_MOTIF


@dataclass(frozen=True)
class VarianceTerm:
    name: str
    merged: SmallGraph
    constant: int  # identification maps producing this merged graph
    overlap: int  # identified vertices
    exponent: TauExponent


@dataclass
class VarianceBreakdown:
    """
    Variance exponent at one tau, term by term
    """
    motif: SmallGraph
    tau: Fraction
    induced: bool
    mean: TauExponent
    terms: List[VarianceTerm]
    correction: TauExponent  # 2 * mean - 1
    variance: TauExponent
    dominant: str  # merged graph name, or "correction"

    @property
    def self_averaging(self) -> bool:
        return self.variance.evaluate(self.tau) < 2 * self.mean.evaluate(self.tau)


def _rank(exponent: TauExponent, tau: Fraction) -> Tuple[Fraction, int]:
    return exponent.evaluate(tau), exponent.log_power


def variance_breakdown(h: SmallGraph, tau: TauLike, induced: bool = False) -> VarianceBreakdown:
    """
    Exponent of Var(N) at tau from the merged-graph family of h.

    Args:
        h: Connected motif with at most five vertices
        tau: Exponent in (2, 3)
        induced: Use graphlet (induced) counting throughout

    Returns:
        VarianceBreakdown listing every merged graph and its exponent
    """
    tau = parse_tau(tau)
    mode = mean_mode(induced)
    family = merge_enumerate(h, induced)
    mean = optimize(h, mode, tau).exponent
    terms = [
        VarianceTerm(
            name=entry.name,
            merged=entry.merged,
            constant=entry.constant,
            overlap=entry.overlap,
            exponent=optimize(entry.merged, mode, tau).exponent,
        )
        for entry in family.entries
    ]
    correction = mean.scaled(2).shifted(Fraction(-1))
    variance, dominant = correction, "correction"
    for term in terms:
        if _rank(term.exponent, tau) > _rank(variance, tau):
            variance, dominant = term.exponent, term.name
    return VarianceBreakdown(h, tau, induced, mean, terms, correction, variance, dominant)


def self_averaging_at(h: SmallGraph, tau: TauLike, induced: bool = False) -> bool:
    """Polynomial ties count as not self-averaging, whatever the log powers."""
    return variance_breakdown(h, tau, induced).self_averaging


@dataclass(frozen=True)
class VariancePiece:
    lo: QuadraticSurd
    hi: QuadraticSurd
    exponent: TauExponent
    sources: Tuple[str, ...]  # merged graphs (or "correction") giving this exponent


@dataclass(frozen=True)
class Interval:
    lo: QuadraticSurd
    hi: QuadraticSurd

    def contains(self, tau) -> bool:
        return self.lo < tau < self.hi

    def to_list(self) -> List[str]:
        return [str(self.lo), str(self.hi)]


@dataclass(frozen=True)
class TypedInterval:
    lo: QuadraticSurd
    hi: QuadraticSurd
    kind: FluctuationType


@dataclass
class FluctuationClass:
    """
    Self-averaging intervals and fluctuation types of one motif
    """
    motif: SmallGraph
    induced: bool
    mean_pieces: PiecewiseExponent
    variance_pieces: Tuple[VariancePiece, ...]
    self_averaging: Tuple[Interval, ...]
    types: Tuple[TypedInterval, ...] = field(default_factory=tuple)


@lru_cache(maxsize=256)
def variance_pieces(h: SmallGraph, induced: bool = False) -> Tuple[VariancePiece, ...]:
    """
    Variance exponent of h over (2, 3) as maximal pieces.

    The candidate functions are every distinct objective of every merged
    graph plus 2f - 1 for each mean objective f. A function carries a log
    factor when some merged graph reaches it through two or more assignments.
    """
    mode = mean_mode(induced)
    logs: Dict[tuple, int] = {}
    sources: Dict[tuple, List[str]] = {}
    functions: Dict[tuple, TauExponent] = {}

    def add(f: TauExponent, log_power: int, source: str) -> None:
        functions.setdefault(f.key, f.with_log(0))
        logs[f.key] = max(logs.get(f.key, 0), log_power)
        if source not in sources.setdefault(f.key, []):
            sources[f.key].append(source)

    for entry in merge_enumerate(h, induced).entries:
        for f, count, _ in distinct_functions(entry.merged, mode):
            add(f, 1 if count > 1 else 0, entry.name)
    for f, count, _ in distinct_functions(h, mode):
        add(f.scaled(2).shifted(Fraction(-1)), 2 if count > 1 else 0, "correction")
    ordered = list(functions.values())
    return tuple(
        VariancePiece(
            lo=piece.lo,
            hi=piece.hi,
            exponent=ordered[piece.index].with_log(logs[ordered[piece.index].key]),
            sources=tuple(sources[ordered[piece.index].key]),
        )
        for piece in upper_envelope(ordered)
    )


def _active(pieces: Sequence, point: Fraction):
    for piece in pieces:
        if piece.lo < point < piece.hi:
            return piece
    raise ConsistencyError(f"no piece covers tau={point}")


def _segments(boundaries: Sequence[QuadraticSurd]) -> List[Tuple[QuadraticSurd, QuadraticSurd]]:
    unique: List[QuadraticSurd] = []
    for b in sorted(boundaries):
        if not unique or b != unique[-1]:
            unique.append(b)
    return list(zip(unique[:-1], unique[1:]))


def _self_averaging_intervals(mean: PiecewiseExponent, variance: Sequence[VariancePiece]) -> Tuple[Interval, ...]:
    zero = TauExponent(Fraction(0))
    cuts = [QuadraticSurd.of(TAU_LOW), QuadraticSurd.of(TAU_HIGH)]
    cuts += [p.lo for p in mean.pieces[1:]] + [p.lo for p in variance[1:]]
    runs: List[Interval] = []
    for lo, hi in _segments(cuts):
        sample = rational_between(lo, hi)
        gap = _active(variance, sample).exponent - _active(mean.pieces, sample).exponent.scaled(2)
        inner = [lo] + gap.crossings(zero, lo, hi) + [hi]
        for a, b in zip(inner[:-1], inner[1:]):
            if gap.evaluate(rational_between(a, b)) >= 0:
                continue
            if runs and runs[-1].hi == a and gap.evaluate_exact(a).sign() < 0:
                runs[-1] = Interval(runs[-1].lo, b)
            else:
                runs.append(Interval(a, b))
    return tuple(runs)


def _baseline(h: SmallGraph) -> TauExponent:
    # all vertices at sqrt(n): (3 - tau) k / 2
    return TauExponent(Fraction(3 * h.k, 2), Fraction(-h.k, 2), Fraction(0))


def _typed_intervals(h: SmallGraph, mean: PiecewiseExponent, sa: Sequence[Interval]) -> Tuple[TypedInterval, ...]:
    cuts = [QuadraticSurd.of(TAU_LOW), QuadraticSurd.of(TAU_HIGH)]
    cuts += [p.lo for p in mean.pieces[1:]] + [i.lo for i in sa] + [i.hi for i in sa]
    baseline = _baseline(h).key
    typed: List[TypedInterval] = []
    for lo, hi in _segments(cuts):
        sample = rational_between(lo, hi)
        if _active(mean.pieces, sample).exponent.key != baseline:
            kind = FluctuationType.TYPE_III
        elif any(i.contains(sample) for i in sa):
            kind = FluctuationType.TYPE_I
        else:
            kind = FluctuationType.TYPE_II
        if typed and typed[-1].kind == kind:
            typed[-1] = TypedInterval(typed[-1].lo, hi, kind)
        else:
            typed.append(TypedInterval(lo, hi, kind))
    return tuple(typed)


@lru_cache(maxsize=256)
def self_averaging_intervals(h: SmallGraph, induced: bool = False) -> FluctuationClass:
    """
    Open tau intervals where the count of h is self-averaging, and the
    fluctuation type on every part of (2, 3).
    """
    mean = piecewise(h, mean_mode(induced))
    variance = variance_pieces(h, induced)
    sa = _self_averaging_intervals(mean, variance)
    return FluctuationClass(
        motif=h,
        induced=induced,
        mean_pieces=mean,
        variance_pieces=variance,
        self_averaging=sa,
        types=_typed_intervals(h, mean, sa),
    )


def classify_type(h: SmallGraph, tau: TauLike, induced: bool = False) -> FluctuationType:
    """
    Fluctuation type at a single tau.

    TYPE_III when the mean optimum beats the all-sqrt(n) assignment
    (B > 0), otherwise TYPE_I or TYPE_II by the self-averaging verdict.
    """
    tau = parse_tau(tau)
    mean = optimize(h, mean_mode(induced), tau)
    if mean.value > _baseline(h).evaluate(tau):
        return FluctuationType.TYPE_III
    if self_averaging_at(h, tau, induced):
        return FluctuationType.TYPE_I
    return FluctuationType.TYPE_II


@dataclass(frozen=True)
class AuditRow:
    motif: str
    interval: Interval
    mean_exponent: TauExponent


def audit_sqrt_structure(k_max: int = 5, k_min: int = 3) -> List[AuditRow]:
    """
    On every self-averaging interval the mean optimum must be the unique
    all-sqrt(n) assignment. Checks every connected motif with k_min..k_max
    vertices and raises ConsistencyError on the first violation.
    """
    rows: List[AuditRow] = []
    for k in range(k_min, k_max + 1):
        for h in enumerate_connected(k):
            result = self_averaging_intervals(h)
            for interval in result.self_averaging:
                for piece in result.mean_pieces.pieces:
                    if not (piece.lo < interval.hi and interval.lo < piece.hi):
                        continue
                    all_half = all(label is Scale.HALF for label in piece.representative.labels)
                    if not (piece.unique and all_half):
                        raise ConsistencyError(
                            f"{display_name(h)} is self-averaging on ({interval.lo}, {interval.hi}) "
                            f"but its mean optimum there is {piece.representative}"
                        )
                    rows.append(AuditRow(display_name(h), interval, piece.exponent))
    return rows


def _interval_text(intervals: Sequence[Interval]) -> str:
    if not intervals:
        return "none"
    return ", ".join(f"({i.lo}, {i.hi})" for i in intervals)


def self_averaging_table(names: Optional[Sequence[str]] = None, induced: bool = False) -> List[dict]:
    """One row per motif: name, edge count and self-averaging intervals."""
    rows = []
    for name in names or ATLAS:
        h = parse_motif(name)
        result = self_averaging_intervals(h, induced)
        rows.append({
            "motif": name,
            "vertices": h.k,
            "edges": h.m,
            "self_averaging": _interval_text(result.self_averaging),
            "intervals": [i.to_list() for i in result.self_averaging],
        })
    return rows


def fluctuation_report(h: SmallGraph, induced: bool = False, tau: Optional[TauLike] = None) -> dict:
    """JSON-ready classification of h, with a per-tau breakdown when tau is given."""
    result = self_averaging_intervals(h, induced)
    report = {
        "motif": display_name(h),
        "induced": induced,
        "self_averaging": [i.to_list() for i in result.self_averaging],
        "types": [{"lo": str(t.lo), "hi": str(t.hi), "type": t.kind.value} for t in result.types],
        "mean_pieces": [
            {"lo": str(p.lo), "hi": str(p.hi), "exponent": p.exponent.to_dict(), "unique": p.unique}
            for p in result.mean_pieces.pieces
        ],
        "variance_pieces": [
            {"lo": str(p.lo), "hi": str(p.hi), "exponent": p.exponent.to_dict(), "sources": list(p.sources)}
            for p in result.variance_pieces
        ],
    }
    if tau is not None:
        breakdown = variance_breakdown(h, tau, induced)
        report["at_tau"] = {
            "tau": str(breakdown.tau),
            "type": classify_type(h, breakdown.tau, induced).value,
            "mean": breakdown.mean.to_dict(),
            "variance": breakdown.variance.to_dict(),
            "dominant": breakdown.dominant,
            "self_averaging": breakdown.self_averaging,
            "terms": [
                {"merged": t.name, "constant": t.constant, "overlap": t.overlap, "exponent": t.exponent.to_dict()}
                for t in breakdown.terms
            ],
        }
    return report
