"""Exact rational geometry on the standard simplex.

Points are tuples of Fractions summing to 1; the simplex proper additionally
requires nonnegative coordinates. Indices, labels, and players are 1-based
throughout. The boundary symmetries implemented here permute coordinates: the
j-th symmetry sends coordinate 1 to slot j and shifts slots 2..j down by one,
mapping the first facet onto the j-th.
"""
from __future__ import annotations

import re
from fractions import Fraction as Q
from typing import Iterable, Sequence, Tuple

from . import kernels

Point = Tuple[Q, ...]
LabelSet = Tuple[int, ...]


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: str) -> Q:
    """Parse "p/q" or "p" into an exact rational.

    Decimal and scientific notation are refused: they read like floats, and
    the formats promise none appear.
    """
    stripped = text.strip()
    if not _RATIONAL_RE.fullmatch(stripped):
        raise ValueError(f"not a rational: {text!r} (expected \"p/q\" or \"p\")")
    try:
        return Q(stripped)
    except ZeroDivisionError as exc:
        raise ValueError(f"not a rational: {text!r} (zero denominator)") from exc


def format_rational(value: Q) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def affine_point(coords: Iterable) -> Point:
    """Coerce to an exact point of the affine hull (coordinates sum to 1)."""
    pt = tuple(Q(c) for c in coords)
    if not pt:
        raise ValueError("a point needs at least one coordinate")
    if sum(pt) != 1:
        raise ValueError(f"coordinates must sum to 1, got {sum(pt)}")
    return pt


def simplex_point(coords: Iterable) -> Point:
    """Coerce to a point of the standard simplex (nonnegative, sum 1)."""
    pt = affine_point(coords)
    for c in pt:
        if c < 0:
            raise ValueError(f"negative coordinate {c} outside the simplex")
    return pt


def label_set(items: Iterable[int], n: int) -> LabelSet:
    """Canonical nonempty label set: sorted, deduplicated, within 1..n."""
    out = tuple(sorted(set(items)))
    if not out:
        raise ValueError("label set must be nonempty")
    if out[0] < 1 or out[-1] > n:
        raise ValueError(f"labels must lie in 1..{n}, got {out}")
    return out


def sym_index(j: int, i: int, n: int) -> int:
    """Image of index i under the j-th boundary symmetry of 1..n."""
    if not (1 <= j <= n and 1 <= i <= n):
        raise ValueError(f"indices must lie in 1..{n}, got j={j}, i={i}")
    if i == 1:
        return j
    if i <= j:
        return i - 1
    return i


def sym_sign(j: int, n: int) -> int:
    """Sign of the j-th boundary symmetry as a permutation: (-1)**(j-1)."""
    if not (1 <= j <= n):
        raise ValueError(f"j must lie in 1..{n}, got {j}")
    return 1 if j % 2 == 1 else -1


def sym_point(j: int, x: Sequence[Q]) -> Point:
    """Apply the j-th boundary symmetry: coordinate i moves to slot sym_index(j, i)."""
    n = len(x)
    out = [Q(0)] * n
    for i in range(1, n + 1):
        out[sym_index(j, i, n) - 1] = x[i - 1]
    return tuple(out)


def sym_label_set(j: int, labels: Iterable[int], n: int) -> LabelSet:
    """Image of a label set under the j-th boundary symmetry."""
    return label_set((sym_index(j, i, n) for i in labels), n)


def face_barycenter(labels: Iterable[int], n: int) -> Point:
    """The point with coordinates 1/|S| on the label set S and 0 elsewhere."""
    s = label_set(labels, n)
    w = Q(1, len(s))
    out = [Q(0)] * n
    for i in s:
        out[i - 1] = w
    return tuple(out)


def points_barycenter(points: Sequence[Point]) -> Point:
    """Coordinatewise average of a nonempty list of points."""
    if not points:
        raise ValueError("barycenter of no points")
    k = len(points)
    n = len(points[0])
    acc = [Q(0)] * n
    for p in points:
        if len(p) != n:
            raise ValueError("dimension mismatch")
        for i, c in enumerate(p):
            acc[i] += c
    return tuple(c / k for c in acc)


def facet_indices(x: Sequence[Q]) -> Tuple[int, ...]:
    """Indices of vanishing coordinates (the facets containing x); may be empty."""
    return tuple(i for i, c in enumerate(x, start=1) if c == 0)


def support(x: Sequence[Q]) -> LabelSet:
    """Indices of nonzero coordinates; complements facet_indices."""
    out = tuple(i for i, c in enumerate(x, start=1) if c != 0)
    if not out:
        raise ValueError("zero vector has empty support")
    return out


def det_points(points: Sequence[Sequence[Q]]) -> Q:
    """Exact determinant of the matrix whose columns are the given points."""
    n = len(points)
    for p in points:
        if len(p) != n:
            raise ValueError(f"need {n} points of dimension {n}")
    nums = [[c.numerator for c in p] for p in points]
    dens = [[c.denominator for c in p] for p in points]
    p, q = kernels.det_cols(nums, dens)
    return Q(p, q)


def drop_last(x: Sequence[Q]) -> Tuple[Q, ...]:
    """Project to the affine chart by dropping the last coordinate."""
    if len(x) < 2:
        raise ValueError("projection needs dimension at least 2")
    return tuple(x[:-1])
