"""Envy-free division solver: refine, label, search, extract, verify.

Each depth subdivides once more, labels vertices by owner preference, finds a
fully-labeled simplex, and reads a candidate division off its barycenter. A
player's candidate piece is the one named by the witness's distinct
representatives; the assignment keeps the candidate only when the player
actually accepts it at the candidate division. The envy gap is measured on
candidates, so a zero gap is exactly an accepted-by-everyone division.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, WitnessNotFoundError
from .geometry import Point, points_barycenter
from .labeling import build_labeling
from .preferences import (
    Division,
    Piece,
    PreferenceOracle,
    division_from_point,
    measure_of,
    require_full_division,
)
from .sperner import (
    Witness,
    _is_prime,
    check_existence_preconditions,
    fully_labeled_simplices,
    serialize_instance,
)
from .triangulation import (
    DEFAULT_BUDGET,
    Triangulation,
    barycentric_subdivide,
    check_budget,
    mesh_size,
    owner_labeling,
    standard_triangulation,
)


@dataclass(frozen=True)
class Problem:
    """An instance: n players with preference oracles over divisions."""

    n: int
    oracles: Tuple[PreferenceOracle, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one player")
        if len(self.oracles) != self.n:
            raise ValueError(f"need {self.n} oracles, got {len(self.oracles)}")

    @property
    def measure_based(self) -> bool:
        return all(o.measure_based for o in self.oracles)


@dataclass
class Assignment:
    """Candidate cut indices and accepted pieces per player (1-based keys)."""

    division: Division
    candidates: Dict[int, int]
    pieces: Dict[int, Piece]
    complete: bool


@dataclass
class DepthRecord:
    depth: int
    mesh: Q
    simplex_count: int
    witness_count: int
    envy_gap: Optional[Q]


@dataclass
class SolveResult:
    status: str  # "exact" | "approximate" | "budget-exhausted"
    problem: Problem
    mode: str
    x_star: Point
    division: Division
    assignment: Assignment
    witness: Witness
    envy_gap: Optional[Q]
    trace: List[DepthRecord] = field(default_factory=list)
    conditions: Optional[dict] = None


def default_max_depth(n: int) -> int:
    """Depth defaults: deep for tiny instances, shallow as n! bites."""
    if n <= 3:
        return 7
    if n <= 5:
        return 2
    return 1


def extract_assignment(
    witness: Witness,
    owners: Dict[int, int],
    x_star: Point,
    oracles: Sequence[PreferenceOracle],
) -> Assignment:
    """Read the candidate division and per-player pieces off a witness."""
    division = division_from_point(x_star)
    vertex_owners = [owners[v] for v in witness.simplex]
    if len(set(vertex_owners)) != len(vertex_owners):
        raise ValueError("witness vertices must have pairwise distinct owners")
    candidates: Dict[int, int] = {}
    pieces: Dict[int, Piece] = {}
    for player, cut_index in sorted(zip(vertex_owners, witness.sdr)):
        candidates[player] = cut_index
        candidate = None
        if division.cuts[cut_index] > division.cuts[cut_index - 1]:
            candidate = (division.cuts[cut_index - 1], division.cuts[cut_index])
        accepted = oracles[player - 1].accepts(division)
        pieces[player] = candidate if candidate is not None and candidate in accepted else None
    assigned = {p for p in pieces.values() if p is not None}
    complete = assigned == set(division.pieces)
    return Assignment(
        division=division, candidates=candidates, pieces=pieces, complete=complete
    )


def verify_envy_free(
    division: Division, assignment: Assignment, oracles: Sequence[PreferenceOracle]
) -> dict:
    """Check the three envy-freeness conditions; returns per-condition results.

    (i) every player accepts what they were assigned, (ii) the assigned pieces
    cover the whole division, (iii) no piece is assigned twice.
    """
    acceptable = {}
    for player, piece in sorted(assignment.pieces.items()):
        accepted = oracles[player - 1].accepts(division)
        acceptable[player] = piece in accepted
    coverage = {p for p in assignment.pieces.values() if p is not None} == set(
        division.pieces
    )
    real = [p for p in assignment.pieces.values() if p is not None]
    injective = len(real) == len(set(real))
    return {
        "acceptable": acceptable,
        "coverage": coverage,
        "injective": injective,
        "all": all(acceptable.values()) and coverage and injective,
    }


def envy_gap(
    division: Division, assignment: Assignment, oracles: Sequence[PreferenceOracle]
) -> Optional[Q]:
    """Worst player dissatisfaction, measured on candidate pieces.

    None when some oracle is not measure-based. Zero if and only if every
    player accepts their candidate (for measure-based instances).
    """
    if not all(o.measure_based for o in oracles):
        return None
    worst = Q(0)
    full = not division.degenerate
    for player, cut_index in assignment.candidates.items():
        oracle = oracles[player - 1]
        candidate: Piece = None
        if division.cuts[cut_index] > division.cuts[cut_index - 1]:
            candidate = (division.cuts[cut_index - 1], division.cuts[cut_index])
        measures = [measure_of(oracle.density, p) for p in division.pieces]
        mine = measure_of(oracle.density, candidate)
        if oracle.kind == "attraction":
            gap = max(measures) - mine
        elif full:
            gap = mine - min(measures)
        else:
            gap = Q(0) if assignment.pieces[player] is None else mine
        if gap > worst:
            worst = gap
    return worst


def solve(
    problem: Problem,
    max_depth: Optional[int] = None,
    target_gap: Q = Q(1, 20),
    budget: int = DEFAULT_BUDGET,
    mode: str = "det",
    jobs: int = 1,
) -> SolveResult:
    """Refine until an acceptable division is found or resources run out.

    Status "exact" means all three envy-freeness conditions verified;
    "approximate" means the candidate gap reached the target or the depth
    limit; "budget-exhausted" means the simplex budget refused the next
    refinement first.
    """
    n = problem.n
    if max_depth is None:
        max_depth = default_max_depth(n)
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if mode not in ("det", "matching"):
        raise ValueError(f"unknown mode {mode!r}")
    for player, oracle in enumerate(problem.oracles, start=1):
        require_full_division(oracle, n, player=player)
    if mode == "det" and n >= 2 and not (_is_prime(n) or n == 4):
        warnings.warn(
            f"n={n} is composite: no existence guarantee, falling back to matching mode",
            stacklevel=2,
        )
        mode = "matching"

    tri = standard_triangulation(n)
    trace: List[DepthRecord] = []
    result: Optional[SolveResult] = None
    status = "approximate"
    for depth in range(1, max_depth + 1):
        try:
            check_budget(n, depth, budget)
        except BudgetExceededError:
            if result is None:
                raise
            status = "budget-exhausted"
            break
        tri = barycentric_subdivide(tri)
        owners = owner_labeling(tri)
        labeling = build_labeling(tri, owners, problem.oracles)
        check_existence_preconditions(tri, labeling, mode)
        witnesses = fully_labeled_simplices(tri, labeling, mode=mode)
        if not witnesses:
            raise WitnessNotFoundError(
                f"no fully-labeled simplex at depth {depth} (n={n}, mode={mode})",
                instance=serialize_instance(tri, labeling),
            )
        witness = witnesses[0]
        x_star = points_barycenter([tri.vertices[v] for v in witness.simplex])
        assignment = extract_assignment(witness, owners, x_star, problem.oracles)
        division = assignment.division
        gap = envy_gap(division, assignment, problem.oracles)
        conditions = verify_envy_free(division, assignment, problem.oracles)
        trace.append(
            DepthRecord(
                depth=depth,
                mesh=mesh_size(tri),
                simplex_count=len(tri.simplices),
                witness_count=len(witnesses),
                envy_gap=gap,
            )
        )
        result = SolveResult(
            status="approximate",
            problem=problem,
            mode=mode,
            x_star=x_star,
            division=division,
            assignment=assignment,
            witness=witness,
            envy_gap=gap,
            trace=trace,
            conditions=conditions,
        )
        if conditions["all"]:
            status = "exact"
            break
        if gap is not None and gap <= target_gap:
            status = "approximate"
            break
    assert result is not None
    result.status = status
    result.trace = trace
    return result
