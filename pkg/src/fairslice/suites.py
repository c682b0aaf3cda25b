"""Randomized verification suites behind the CLI and the acceptance gate.

Every suite is seeded and deterministic: reports are JSON-ready dicts whose
failure entries carry enough to reproduce (the seed, the trial number, and
serialized instances where relevant).
"""
from __future__ import annotations

from fractions import Fraction as Q
from random import Random
from typing import List, Optional

from .errors import InvariantViolationError
from .geometry import Point, face_barycenter, format_rational, support
from .labeling import NiceLabelingSampler, check_nice_labeling
from .sperner import (
    PointLabeling,
    barycenter_det_sum,
    boundary_identity_check,
    det_sum,
    fully_labeled_simplices,
    serialize_instance,
)
from .triangulation import Triangulation, is_nice, sd_pow


def random_rational(rng: Random, span: int = 9) -> Q:
    """Small random rational, negatives included."""
    return Q(rng.randint(-span, span), rng.randint(1, span))


def random_point_labeling(tri: Triangulation, rng: Random) -> PointLabeling:
    """Random affine point per vertex, inside the vertex's support hull."""
    points = {}
    for v, vertex in enumerate(tri.vertices):
        supp = support(vertex)
        coords = [Q(0)] * tri.n
        total = Q(0)
        for i in supp[:-1]:
            c = random_rational(rng)
            coords[i - 1] = c
            total += c
        coords[supp[-1] - 1] = 1 - total
        points[v] = tuple(coords)
    return PointLabeling(tri=tri, points=points)


def corrupt_point_labeling(tri: Triangulation) -> PointLabeling:
    """A labeling that deliberately breaks the affine-hull requirement."""
    if tri.n < 2:
        raise ValueError("cannot corrupt a one-coordinate instance")
    points = {}
    broken = False
    for v, vertex in enumerate(tri.vertices):
        supp = support(vertex)
        if not broken and len(supp) < tri.n:
            outside = [i for i in range(1, tri.n + 1) if i not in supp]
            points[v] = face_barycenter(outside, tri.n)
            broken = True
        else:
            points[v] = face_barycenter(supp, tri.n)
    if not broken:
        raise InvariantViolationError("no boundary vertex to corrupt")
    return PointLabeling(tri=tri, points=points)


def random_affine_columns(n: int, rng: Random) -> List[Point]:
    """n random columns with coordinate sum 1 (not necessarily nonnegative)."""
    out = []
    for _ in range(n):
        coords = [random_rational(rng) for _ in range(n - 1)]
        coords.append(1 - sum(coords))
        out.append(tuple(coords))
    return out


def det_sum_suite(n: int, depth: int, trials: int, seed: int, jobs: int = 1) -> dict:
    """Random support-respecting labelings must sum to determinant ±1."""
    rng = Random(seed)
    tri = sd_pow(n, depth)
    failures = []
    for trial in range(trials):
        labeling = random_point_labeling(tri, rng)
        value = det_sum(labeling, jobs=jobs)
        if abs(value) != 1:
            failures.append({"trial": trial, "value": format_rational(value)})
    return {
        "suite": "det-sum",
        "n": n,
        "depth": depth,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "passed": not failures,
    }


def projection_suite(n: int, trials: int, seed: int) -> dict:
    """The projection identity must hold exactly on random sum-1 columns."""
    rng = Random(seed)
    failures = []
    for trial in range(trials):
        points = random_affine_columns(n, rng)
        ok, left, right = boundary_identity_check(points)
        if not ok:
            failures.append(
                {
                    "trial": trial,
                    "left": format_rational(left),
                    "right": format_rational(right),
                }
            )
    return {
        "suite": "projection",
        "n": n,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "passed": not failures,
    }


def existence_suite(
    n: int,
    depth: int,
    trials: int,
    seed: int,
    mode: str = "det",
    shaped: Optional[bool] = None,
) -> dict:
    """Random nice labelings must all carry a fully-labeled simplex.

    shaped defaults to True exactly for n=4, where the guarantee needs labels
    restricted to vanishing sets and outside singletons.
    """
    if shaped is None:
        shaped = n == 4
    rng = Random(seed)
    tri = sd_pow(n, depth)
    ok, counterexample = is_nice(tri)
    if not ok:
        raise InvariantViolationError(f"subdivision is not symmetric: {counterexample}")
    sampler = NiceLabelingSampler(tri)
    witness_counts = []
    failures = []
    for trial in range(trials):
        labeling = sampler.sample_shaped(rng) if shaped else sampler.sample(rng)
        nice, where = check_nice_labeling(tri, labeling)
        if not nice:
            raise InvariantViolationError(f"sampler produced a non-nice labeling at {where}")
        witnesses = fully_labeled_simplices(tri, labeling, mode=mode)
        witness_counts.append(len(witnesses))
        if not witnesses:
            failures.append({"trial": trial, "instance": serialize_instance(tri, labeling)})
    return {
        "suite": "existence",
        "n": n,
        "depth": depth,
        "mode": mode,
        "shaped": shaped,
        "trials": trials,
        "seed": seed,
        "witness_counts": witness_counts,
        "failures": failures,
        "passed": not failures,
    }


def scan_suite(n: int, depth: int, trials: int, seed: int) -> dict:
    """Exploratory scan for sizes without a guarantee: no pass/fail claim."""
    rng = Random(seed)
    tri = sd_pow(n, depth)
    sampler = NiceLabelingSampler(tri)
    rows = []
    for trial in range(trials):
        labeling = sampler.sample(rng)
        value = barycenter_det_sum(tri, labeling)
        witnesses = fully_labeled_simplices(tri, labeling, mode="matching")
        rows.append(
            {
                "trial": trial,
                "det_sum": format_rational(value),
                "matching_witnesses": len(witnesses),
            }
        )
    return {
        "suite": "scan",
        "n": n,
        "depth": depth,
        "trials": trials,
        "seed": seed,
        "rows": rows,
    }
