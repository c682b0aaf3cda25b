"""Subdivision, chain algebra, and structural checks against abstract oracles."""
import itertools
from fractions import Fraction as Q
from math import factorial

import pytest

from fairslice.errors import BudgetExceededError, InvariantViolationError
from fairslice.triangulation import (
    Chain,
    Triangulation,
    barycentric_subdivide,
    boundary_chain,
    check_budget,
    check_owner,
    is_nice,
    mesh_size,
    owner_labeling,
    positively_oriented_chain,
    sd_pow,
    standard_triangulation,
    supports_comparable,
)

from oracles import abstract_counts, chart2, det_cols, triangle_intersection_area


def test_abstract_oracle_sanity():
    # The oracle itself is checked against hand counts before it checks anything.
    assert abstract_counts(2, 1) == (3, 2)  # segment: two halves, 3 endpoints
    assert abstract_counts(3, 0) == (3, 1)
    assert abstract_counts(3, 1) == (7, 6)  # 3 corners + 3 edge midpoints + center
    assert abstract_counts(3, 2) == (25, 36)


@pytest.mark.parametrize(
    "n,depth",
    [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)],
)
def test_counts_match_abstract_oracle(n, depth):
    tri = sd_pow(n, depth)
    vertices, simplices = abstract_counts(n, depth)
    assert len(tri.vertices) == vertices
    assert len(tri.simplices) == simplices
    assert len(tri.simplices) == factorial(n) ** depth


def test_standard_triangulation_shape():
    tri = standard_triangulation(3)
    assert tri.vertices == [
        (Q(0), Q(0), Q(1)),
        (Q(0), Q(1), Q(0)),
        (Q(1), Q(0), Q(0)),
    ]
    assert tri.simplices == [(0, 1, 2)]
    assert mesh_size(tri) == 1


def test_budget_enforced():
    with pytest.raises(BudgetExceededError) as err:
        check_budget(6, 3)  # 720**3 = 373 million
    assert err.value.requested == 720**3
    # 120**3 = 1.7 million is within the default budget.
    assert check_budget(5, 3) == 120**3
    with pytest.raises(BudgetExceededError):
        sd_pow(3, 3, budget=100)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mesh_decreases_by_stated_ratio(n):
    tri = standard_triangulation(n)
    mesh = mesh_size(tri)
    assert mesh == 1
    for _ in range(3 if n < 4 else 2):
        tri = barycentric_subdivide(tri)
        new_mesh = mesh_size(tri)
        assert new_mesh <= Q(n - 1, n) * mesh
        mesh = new_mesh


def test_mesh_frozen_values():
    assert mesh_size(sd_pow(3, 1)) == Q(2, 3)
    assert mesh_size(sd_pow(2, 4)) == Q(1, 16)


def test_degenerate_simplex_rejected():
    vertices = [
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(1), Q(0)),
        (Q(1, 2), Q(1, 2), Q(0)),  # collinear with the first two
    ]
    with pytest.raises(InvariantViolationError):
        Triangulation(n=3, vertices=vertices, simplices=[(0, 1, 2)])


def test_chain_add_and_orientation_sign():
    chain = Chain(1)
    chain.add((3, 1), 1)
    assert chain.coefficient((1, 3)) == -1
    assert chain.coefficient((3, 1)) == 1
    chain.add((1, 3), 1)
    assert len(chain) == 0  # opposite orientations cancel
    chain.add((1, 1), 5)  # degenerate input is dropped
    assert len(chain) == 0


@pytest.mark.parametrize("n,depth", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_boundary_squares_to_zero(n, depth):
    tri = sd_pow(n, depth)
    top = positively_oriented_chain(tri)
    boundary = boundary_chain(top)
    assert len(boundary_chain(boundary)) == 0


@pytest.mark.parametrize("n,depth", [(2, 2), (3, 1), (3, 2), (4, 1)])
def test_boundary_supported_on_simplex_boundary(n, depth):
    # After cancellation the boundary chain lives on faces with a vanishing
    # coordinate, one face each, with coefficient +-1.
    tri = sd_pow(n, depth)
    boundary = boundary_chain(positively_oriented_chain(tri))
    for face, coeff in boundary.terms.items():
        assert coeff in (-1, 1)
        shared_zero = set(range(1, n + 1))
        for v in face:
            shared_zero &= {
                i for i, c in enumerate(tri.vertices[v], start=1) if c == 0
            }
        assert shared_zero, f"face {face} is interior but survived cancellation"
    # Interior (n-2)-faces are shared by exactly two simplices, boundary by one.
    face_count = {}
    for simplex in tri.simplices:
        for face in itertools.combinations(simplex, n - 1):
            face_count[face] = face_count.get(face, 0) + 1
    for face, count in face_count.items():
        on_boundary = boundary.terms.get(face, 0) != 0
        assert count == (1 if on_boundary else 2)


@pytest.mark.parametrize("n,depth", [(2, 1), (2, 3), (3, 1), (3, 2), (4, 1)])
def test_volume_additivity(n, depth):
    # Exact: the oriented volumes of the parts sum to the whole.
    tri = sd_pow(n, depth)
    total = Q(0)
    for simplex, orient in zip(tri.simplices, tri.orientations):
        cols = [tri.vertices[v] for v in simplex]
        value = det_cols(cols)
        assert value != 0
        assert (value > 0) == (orient > 0)
        total += abs(value)
    assert total == 1


@pytest.mark.parametrize("depth", [1, 2])
def test_face_to_face_exhaustive_2d(depth):
    # Pairwise open intersections are empty (exact polygon clipping) and the
    # pieces tile the chart triangle exactly.
    tri = sd_pow(3, depth)
    charts = [
        [chart2(tri.vertices[v]) for v in simplex] for simplex in tri.simplices
    ]
    total = Q(0)
    for i, t1 in enumerate(charts):
        area = triangle_intersection_area(t1, t1)
        assert area > 0
        total += area
        for t2 in charts[i + 1 :]:
            assert triangle_intersection_area(t1, t2) == 0
    assert total == Q(1, 2)


@pytest.mark.parametrize("n,depth", [(4, 1), (4, 2), (5, 1)])
def test_interiors_disjoint_sampled(n, depth):
    # Barycenter of one simplex is never inside another (exact barycentric
    # coordinates via Cramer).
    from random import Random

    tri = sd_pow(n, depth)
    rng = Random(5)
    pairs = [
        (rng.randrange(len(tri.simplices)), rng.randrange(len(tri.simplices)))
        for _ in range(60)
    ]
    for a, b in pairs:
        if a == b:
            continue
        pts_a = [tri.vertices[v] for v in tri.simplices[a]]
        center = tuple(sum(c) / n for c in zip(*pts_a))
        cols = [tri.vertices[v] for v in tri.simplices[b]]
        denom = det_cols(cols)
        coords = []
        for k in range(n):
            replaced = cols[:k] + [center] + cols[k + 1 :]
            coords.append(det_cols(replaced) / denom)
        assert any(c <= 0 for c in coords)


@pytest.mark.parametrize("n,depth", [(2, 2), (3, 1), (3, 2), (4, 1), (5, 1)])
def test_subdivisions_are_nice(n, depth):
    ok, witness = is_nice(sd_pow(n, depth))
    assert ok, witness


def test_asymmetric_triangulation_rejected():
    # Split the triangle through a point of one facet only: closure under the
    # boundary symmetries fails and a witness face is reported.
    vertices = [
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(1), Q(0)),
        (Q(0), Q(0), Q(1)),
        (Q(0), Q(1, 2), Q(1, 2)),
    ]
    tri = Triangulation(
        n=3,
        vertices=vertices,
        simplices=[(0, 1, 3), (0, 3, 2)],
    )
    ok, witness = is_nice(tri)
    assert not ok
    face, j = witness
    assert j >= 2
    midpoint = tri.vertex_id((Q(0), Q(1, 2), Q(1, 2)))
    assert midpoint in face


@pytest.mark.parametrize("n,depth", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_owner_labeling_valid(n, depth):
    tri = sd_pow(n, depth)
    owners = owner_labeling(tri)
    ok, witness = check_owner(tri, owners)
    assert ok, witness
    assert set(owners.values()) == set(range(1, n + 1))


def test_owner_labeling_frozen_small():
    tri = sd_pow(3, 1)
    owners = owner_labeling(tri)
    for vid, vertex in enumerate(tri.vertices):
        nonzero = sum(1 for c in vertex if c != 0)
        assert owners[vid] == nonzero  # corners 1, edge midpoints 2, center 3


def test_constant_owner_rejected():
    tri = sd_pow(3, 1)
    ok, witness = check_owner(tri, {v: 1 for v in range(len(tri.vertices))})
    assert not ok
    assert witness[0] == "edge"


def test_symmetry_breaking_owner_rejected():
    tri = sd_pow(3, 1)
    owners = owner_labeling(tri)
    # Swap the owner of one first-facet vertex with something else legal-looking.
    facet1 = tri.facet_vertex_ids(1)
    target = next(v for v in facet1 if owners[v] == 2)
    bad = dict(owners)
    bad[target] = 1
    ok, witness = check_owner(tri, bad)
    assert not ok


def test_owner_requires_subdivision():
    with pytest.raises(ValueError):
        owner_labeling(standard_triangulation(3))


def test_supports_comparable():
    assert not supports_comparable(standard_triangulation(3))
    assert supports_comparable(sd_pow(3, 1))
    assert supports_comparable(sd_pow(4, 2))


def test_reruns_identical():
    a = sd_pow(3, 2)
    b = sd_pow(3, 2)
    assert a.vertices == b.vertices
    assert a.simplices == b.simplices
    assert a.orientations == b.orientations
    assert a.owner_dims == b.owner_dims


def test_vertex_lookup_and_faces():
    tri = sd_pow(3, 1)
    center = tri.vertex_id((Q(1, 3), Q(1, 3), Q(1, 3)))
    assert center is not None
    assert tri.vertex_id((Q(1, 5), Q(1, 5), Q(3, 5))) is None
    corner = tri.vertex_id((Q(1), Q(0), Q(0)))
    assert tri.contains_face((corner, center))
    corner2 = tri.vertex_id((Q(0), Q(1), Q(0)))
    # Two corners are no longer adjacent after subdivision.
    assert not tri.contains_face((corner, corner2))
    assert not tri.contains_face(())
    assert len(tri.facet_vertex_ids(1)) == 3
