"""Divisions of the unit interval and preference oracles over them.

A point of the simplex encodes a division: prefix sums give the cut
positions, and the pieces are the open intervals between consecutive distinct
cuts. Each piece remembers the smallest cut index whose prefix sum equals its
right endpoint, which is how pieces are referred to by labels. The empty
piece is represented as None.

Measure-based oracles come in two families: attraction players accept the
pieces of maximal measure, rejection players accept the pieces of minimal
measure when the division has no degenerate piece and accept only the empty
piece otherwise. Custom oracles are arbitrary callables on divisions and are
available through the library API only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import AssumptionViolationError
from .geometry import Point, simplex_point
from .triangulation import barycentric_subdivide, standard_triangulation

Interval = Tuple[Q, Q]
Piece = Optional[Interval]


@dataclass(frozen=True)
class Division:
    """Cuts and open pieces of [0,1] encoded by a simplex point."""

    point: Point
    cuts: Tuple[Q, ...]
    pieces: Tuple[Interval, ...]
    piece_indices: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.point)

    @property
    def degenerate(self) -> bool:
        """True when some cut coincides with another (fewer than n pieces)."""
        return len(self.pieces) < self.n

    def piece_for_index(self, j: int) -> Piece:
        """The piece whose smallest right-endpoint cut index is j, or None."""
        for piece, idx in zip(self.pieces, self.piece_indices):
            if idx == j:
                return piece
        return None


def division_from_point(x: Iterable) -> Division:
    """Cut [0,1] at the prefix sums of a simplex point."""
    pt = simplex_point(x)
    cuts = [Q(0)]
    for c in pt:
        cuts.append(cuts[-1] + c)
    pieces: List[Interval] = []
    indices: List[int] = []
    for j in range(1, len(cuts)):
        if cuts[j] > cuts[j - 1]:
            pieces.append((cuts[j - 1], cuts[j]))
            # j is the first index reaching this value, hence the piece's name.
            indices.append(j)
    return Division(
        point=pt, cuts=tuple(cuts), pieces=tuple(pieces), piece_indices=tuple(indices)
    )


@dataclass(frozen=True)
class DensitySegment:
    start: Q
    end: Q
    value: Q


@dataclass(frozen=True)
class Density:
    """Piecewise-constant nonnegative density on [0,1] with positive mass."""

    segments: Tuple[DensitySegment, ...]

    def __post_init__(self) -> None:
        segs = self.segments
        if not segs:
            raise ValueError("density needs at least one segment")
        if segs[0].start != 0 or segs[-1].end != 1:
            raise ValueError("density segments must cover [0,1]")
        prev_end = Q(0)
        mass = Q(0)
        for seg in segs:
            if seg.start != prev_end:
                raise ValueError(f"segment starting at {seg.start} leaves a gap at {prev_end}")
            if seg.end <= seg.start:
                raise ValueError(f"segment ({seg.start}, {seg.end}) has nonpositive length")
            if seg.value < 0:
                raise ValueError(f"negative density value {seg.value}")
            mass += seg.value * (seg.end - seg.start)
            prev_end = seg.end
        if mass <= 0:
            raise ValueError("density must have positive total mass")

    @classmethod
    def uniform(cls) -> "Density":
        return cls(segments=(DensitySegment(Q(0), Q(1), Q(1)),))

    @classmethod
    def from_breaks(cls, breaks: Sequence, values: Sequence) -> "Density":
        """Build from cut positions 0 = b0 < ... < bk = 1 and k values."""
        bs = [Q(b) for b in breaks]
        vs = [Q(v) for v in values]
        if len(bs) != len(vs) + 1:
            raise ValueError("need one more break than values")
        return cls(segments=tuple(DensitySegment(a, b, v) for a, b, v in zip(bs, bs[1:], vs)))

    @property
    def total_mass(self) -> Q:
        return sum((s.value * (s.end - s.start) for s in self.segments), Q(0))


def measure_of(density: Density, piece: Piece) -> Q:
    """Exact measure of an open interval (None measures zero)."""
    if piece is None:
        return Q(0)
    lo, hi = piece
    if not (0 <= lo <= hi <= 1):
        raise ValueError(f"interval ({lo}, {hi}) is not inside [0,1]")
    total = Q(0)
    for seg in density.segments:
        overlap = min(hi, seg.end) - max(lo, seg.start)
        if overlap > 0:
            total += seg.value * overlap
    return total


def sym_diff_distance(a: Piece, b: Piece) -> Q:
    """Lebesgue measure of the symmetric difference of two pieces."""

    def length(p: Piece) -> Q:
        return Q(0) if p is None else p[1] - p[0]

    if a is None or b is None:
        return length(a) + length(b)
    overlap = max(Q(0), min(a[1], b[1]) - max(a[0], b[0]))
    return length(a) + length(b) - 2 * overlap


def attraction_accepts(density: Density, division: Division) -> Set[Piece]:
    """Pieces of maximal measure; never the empty piece."""
    measures = [measure_of(density, p) for p in division.pieces]
    top = max(measures)
    return {p for p, m in zip(division.pieces, measures) if m == top}


def rejection_accepts(density: Density, division: Division) -> Set[Piece]:
    """Pieces of minimal measure if no cut coincides, only None otherwise."""
    if division.degenerate:
        return {None}
    measures = [measure_of(density, p) for p in division.pieces]
    low = min(measures)
    return {p for p, m in zip(division.pieces, measures) if m == low}


@dataclass(frozen=True)
class PreferenceOracle:
    """A player's acceptance rule over divisions."""

    kind: str
    density: Optional[Density] = None
    fn: Optional[Callable[[Division], Set[Piece]]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind in ("attraction", "rejection"):
            if self.density is None:
                raise ValueError(f"{self.kind} oracle needs a density")
        elif self.kind == "custom":
            if self.fn is None:
                raise ValueError("custom oracle needs a callable")
        else:
            raise ValueError(f"unknown oracle kind {self.kind!r}")

    @property
    def measure_based(self) -> bool:
        return self.kind in ("attraction", "rejection")

    def accepts(self, division: Division) -> Set[Piece]:
        """The set of pieces (possibly including None) the player accepts."""
        if self.kind == "attraction":
            return attraction_accepts(self.density, division)
        if self.kind == "rejection":
            return rejection_accepts(self.density, division)
        out = set(self.fn(division))
        allowed = set(division.pieces) | {None}
        if not out:
            raise AssumptionViolationError(
                "custom oracle accepted nothing", point=division.point
            )
        bad = out - allowed
        if bad:
            raise AssumptionViolationError(
                f"custom oracle accepted non-pieces {sorted(bad, key=repr)}",
                point=division.point,
            )
        return out


def default_validation_points(n: int) -> List[Point]:
    """Barycenter plus the interior vertices of one subdivision."""
    tri = barycentric_subdivide(standard_triangulation(n))
    center = tuple(Q(1, n) for _ in range(n))
    points = [center]
    for v in tri.vertices:
        if all(c > 0 for c in v) and v != center:
            points.append(v)
    return points


def validate_full_division(
    oracle: PreferenceOracle,
    n: int,
    extra_points: Sequence[Point] = (),
    player: Optional[int] = None,
) -> dict:
    """Check the full-division assumption on a deterministic sample of points.

    The assumption: the oracle always accepts something, and never accepts the
    empty piece when the division has n distinct pieces. Returns a report dict
    with a witness on failure.
    """
    samples = default_validation_points(n) + [simplex_point(p) for p in extra_points]
    for x in samples:
        division = division_from_point(x)
        try:
            accepted = oracle.accepts(division)
        except AssumptionViolationError as exc:
            return {"passed": False, "witness": (x, str(exc)), "samples_checked": len(samples)}
        if not accepted:
            return {
                "passed": False,
                "witness": (x, "empty acceptance set"),
                "samples_checked": len(samples),
            }
        if not division.degenerate and None in accepted:
            return {
                "passed": False,
                "witness": (x, "accepted the empty piece in a full division"),
                "samples_checked": len(samples),
            }
    return {"passed": True, "witness": None, "samples_checked": len(samples)}


def require_full_division(
    oracle: PreferenceOracle, n: int, player: Optional[int] = None
) -> None:
    """Raise when validate_full_division fails; used by the solver."""
    report = validate_full_division(oracle, n, player=player)
    if not report["passed"]:
        point, reason = report["witness"]
        who = f"player {player}" if player is not None else "oracle"
        raise AssumptionViolationError(
            f"{who} violates the full-division assumption at {point}: {reason}",
            player=player,
            point=point,
        )
