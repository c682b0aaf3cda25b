"""Determinant sums, distinct representatives, and fully-labeled simplices.

The determinant-sum invariant: over a coherently oriented triangulation whose
point labeling sends every vertex into the affine hull of its support, the
signed sum of labeling determinants has absolute value exactly 1. The
existence machinery looks for maximal simplices whose barycenter-labeling
determinant is nonzero; each such simplex yields a system of distinct
representatives picking one label per vertex.
"""
from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernels
from .errors import InvariantViolationError, PreconditionError, WitnessNotFoundError
from .geometry import (
    LabelSet,
    Point,
    det_points,
    drop_last,
    face_barycenter,
    format_rational,
    support,
    sym_sign,
)
from .labeling import VertexLabeling, check_label_shape, check_nice_labeling
from .triangulation import Simplex, Triangulation, is_nice, supports_comparable


@dataclass
class PointLabeling:
    """Affine points per vertex id, with affine-hull violations recorded.

    A violation is a vertex whose labeling point has a coordinate outside the
    vertex's support. Summing determinants requires zero violations; the
    fully-labeled search does not.
    """

    tri: Triangulation
    points: Dict[int, Point]
    violations: List[tuple] = field(default_factory=list)

    def __post_init__(self) -> None:
        if set(self.points) != set(range(len(self.tri.vertices))):
            raise ValueError("point labeling must cover every vertex exactly once")
        for v, pt in self.points.items():
            if len(pt) != self.tri.n:
                raise ValueError(f"point at vertex {v} has wrong dimension")
            if sum(pt) != 1:
                raise ValueError(f"point at vertex {v} does not lie in the affine hull")
        if not self.violations:
            self.violations = self._find_violations()

    def _find_violations(self) -> List[tuple]:
        out = []
        for v in range(len(self.tri.vertices)):
            supp = set(support(self.tri.vertices[v]))
            bad = tuple(
                i for i, c in enumerate(self.points[v], start=1) if c != 0 and i not in supp
            )
            if bad:
                out.append((v, bad, tuple(sorted(supp))))
        return out


def barycenter_labeling(labeling: VertexLabeling) -> PointLabeling:
    """Point labeling sending each vertex to the barycenter of its label set."""
    n = labeling.tri.n
    points = {v: face_barycenter(lab, n) for v, lab in labeling.labels.items()}
    return PointLabeling(tri=labeling.tri, points=points)


def _column_data(points: Sequence[Point]):
    nums = [[c.numerator for c in p] for p in points]
    dens = [[c.denominator for c in p] for p in points]
    return nums, dens


def _det_batch(tri: Triangulation, points: Dict[int, Point]):
    batch = []
    for simplex, orient in zip(tri.simplices, tri.orientations):
        nums, dens = _column_data([points[v] for v in simplex])
        batch.append((orient, nums, dens))
    return batch


def det_sum(plabeling: PointLabeling, jobs: int = 1) -> Q:
    """Signed sum of labeling determinants over the maximal simplices.

    Fatal when the labeling has affine-hull violations. jobs > 1 evaluates in
    parallel processes with a deterministic in-order reduction.
    """
    if plabeling.violations:
        v, bad, supp = plabeling.violations[0]
        raise InvariantViolationError(
            f"{len(plabeling.violations)} affine-hull violations, first at vertex {v}: "
            f"nonzero coordinates {bad} outside support {supp}"
        )
    batch = _det_batch(plabeling.tri, plabeling.points)
    if jobs <= 1 or len(batch) < 64:
        p, q = kernels.det_sum_cols(batch)
        return Q(p, q)
    chunk = (len(batch) + jobs - 1) // jobs
    parts = [batch[i : i + chunk] for i in range(0, len(batch), chunk)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        partials = list(pool.map(kernels.det_sum_cols, parts))
    return sum((Q(p, q) for p, q in partials), Q(0))


def boundary_identity_check(points: Sequence[Point]) -> Tuple[bool, Q, Q]:
    """Exact two-sided check of the projection identity for sum-1 columns.

    The determinant of n sum-1 columns equals (-1)**(n-1) times the
    alternating sum of the (n-1)-minors of the projected columns. Returns
    (equal, left, right), both sides computed independently.
    """
    n = len(points)
    if n < 2:
        raise ValueError("identity needs dimension at least 2")
    for p in points:
        if len(p) != n:
            raise ValueError("need square column data")
        if sum(p) != 1:
            raise ValueError("columns must have coordinate sum 1")
    left = det_points(points)
    projected = [drop_last(p) for p in points]
    right = Q(0)
    for i in range(n):
        minor = det_points([projected[k] for k in range(n) if k != i])
        right += minor if i % 2 == 0 else -minor
    right *= sym_sign(n, n)
    return left == right, left, right


def _max_matching(candidates: List[Tuple[int, ...]], banned: set) -> int:
    match: Dict[int, int] = {}

    def augment(i: int, visited: set) -> bool:
        for c in candidates[i]:
            if c in banned or c in visited:
                continue
            visited.add(c)
            if c not in match or augment(match[c], visited):
                match[c] = i
                return True
        return False

    size = 0
    for i in range(len(candidates)):
        if augment(i, set()):
            size += 1
    return size


def distinct_representatives(label_sets: Sequence[LabelSet]) -> Optional[Tuple[int, ...]]:
    """Lexicographically smallest choice of distinct labels, one per set."""
    k = len(label_sets)
    sets = [tuple(sorted(s)) for s in label_sets]
    chosen: List[int] = []
    used: set = set()
    for i in range(k):
        found = False
        for c in sets[i]:
            if c in used:
                continue
            rest = sets[i + 1 :]
            if _max_matching(rest, used | {c}) == len(rest):
                chosen.append(c)
                used.add(c)
                found = True
                break
        if not found:
            return None
    return tuple(chosen)


@dataclass(frozen=True)
class Witness:
    """A fully-labeled maximal simplex with its determinant and representatives."""

    simplex: Simplex
    labels: Tuple[LabelSet, ...]
    det_value: Q
    sdr: Tuple[int, ...]


def fully_labeled_simplices(
    tri: Triangulation, labeling: VertexLabeling, mode: str = "det"
) -> List[Witness]:
    """All witnesses, in lexicographic vertex-id order.

    det mode: simplices whose barycenter-labeling determinant is nonzero (a
    nonzero determinant guarantees distinct representatives exist). matching
    mode: simplices where distinct representatives exist at all; this is a
    superset of det mode.
    """
    if mode not in ("det", "matching"):
        raise ValueError(f"unknown mode {mode!r}")
    n = tri.n
    points = {v: face_barycenter(lab, n) for v, lab in labeling.labels.items()}
    batch = [
        _column_data([points[v] for v in simplex]) for simplex in tri.simplices
    ]
    dets = kernels.dets_cols(batch)
    out: List[Witness] = []
    for simplex, (p, q) in zip(tri.simplices, dets):
        value = Q(p, q)
        labels = tuple(labeling.labels[v] for v in simplex)
        if mode == "det":
            if value == 0:
                continue
            sdr = distinct_representatives(labels)
            if sdr is None:
                raise InvariantViolationError(
                    f"nonzero determinant without distinct representatives at {simplex}"
                )
        else:
            sdr = distinct_representatives(labels)
            if sdr is None:
                continue
        out.append(Witness(simplex=simplex, labels=labels, det_value=value, sdr=sdr))
    return out


def barycenter_det_sum(tri: Triangulation, labeling: VertexLabeling) -> Q:
    """Diagnostic signed determinant sum of the barycenter labeling.

    No affine-hull requirement; useful for exploring instances without an
    existence guarantee.
    """
    n = tri.n
    points = {v: face_barycenter(lab, n) for v, lab in labeling.labels.items()}
    p, q = kernels.det_sum_cols(_det_batch(tri, points))
    return Q(p, q)


def serialize_instance(tri: Triangulation, labeling: VertexLabeling) -> dict:
    """JSON-ready dump of a labeled triangulation for reproduction."""
    return {
        "n": tri.n,
        "depth": tri.depth,
        "vertices": [[format_rational(c) for c in v] for v in tri.vertices],
        "simplices": [list(s) for s in tri.simplices],
        "labels": {str(v): list(lab) for v, lab in sorted(labeling.labels.items())},
        "owners": (
            {str(v): o for v, o in sorted(labeling.owners.items())}
            if labeling.owners
            else None
        ),
    }


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def existence_witness(
    tri: Triangulation, labeling: VertexLabeling, mode: str = "det"
) -> Witness:
    """First fully-labeled simplex, after checking the existence preconditions.

    det mode requires the instance size to be prime or 4 (the sizes with a
    guarantee); matching mode searches without one. Raises a precondition
    error when the hypotheses fail and a witness-not-found error (carrying the
    serialized instance) when the search comes up empty.
    """
    n = tri.n
    check_existence_preconditions(tri, labeling, mode)
    witnesses = fully_labeled_simplices(tri, labeling, mode=mode)
    if not witnesses:
        raise WitnessNotFoundError(
            f"no fully-labeled simplex at depth {tri.depth} (n={n}, mode={mode})",
            instance=serialize_instance(tri, labeling),
        )
    return witnesses[0]


def check_existence_preconditions(
    tri: Triangulation, labeling: VertexLabeling, mode: str = "det"
) -> None:
    """Raise a named precondition error unless the existence hypotheses hold."""
    n = tri.n
    if mode == "det" and n >= 2 and not (_is_prime(n) or n == 4):
        raise PreconditionError(
            "instance-size", f"determinant mode guarantees nothing for composite n={n}"
        )
    ok, counterexample = is_nice(tri)
    if not ok:
        raise PreconditionError(
            "niceness", f"triangulation is not symmetric: face {counterexample}"
        )
    ok, where = check_nice_labeling(tri, labeling)
    if not ok:
        raise PreconditionError(
            "labeling-symmetry", f"labeling breaks equivariance at {where}"
        )
    if n >= 2:
        full = tuple(range(1, n + 1))
        for v, lab in labeling.labels.items():
            if lab == full:
                raise PreconditionError(
                    "properness", f"vertex {v} is labeled by the full index set"
                )
    if n == 4 and mode == "det":
        if not supports_comparable(tri):
            raise PreconditionError(
                "supports", "adjacent vertices with incomparable supports"
            )
        ok, v = check_label_shape(tri, labeling)
        if not ok:
            raise PreconditionError(
                "label-shape", f"vertex {v} is labeled neither by its vanishing set "
                "nor by an outside singleton"
            )
