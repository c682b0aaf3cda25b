"""Preference labels and constrained random labelings."""
from fractions import Fraction as Q
from random import Random

import pytest

from fairslice.errors import AssumptionViolationError, InvariantViolationError
from fairslice.labeling import (
    NiceLabelingSampler,
    VertexLabeling,
    accepted_cut_indices,
    build_labeling,
    check_label_shape,
    check_nice_labeling,
    preference_label,
)
from fairslice.preferences import Density, PreferenceOracle
from fairslice.triangulation import (
    Triangulation,
    owner_labeling,
    sd_pow,
)

UNIFORM = Density.uniform()
ATTRACT = PreferenceOracle(kind="attraction", density=UNIFORM)
REJECT = PreferenceOracle(kind="rejection", density=UNIFORM)


def test_accepted_cut_indices_frozen():
    # Heaviest piece is the last third: its right endpoint is cut 3.
    assert accepted_cut_indices(ATTRACT, (Q(1, 4), Q(1, 4), Q(1, 2))) == (3,)
    # All pieces tie at the center.
    assert accepted_cut_indices(ATTRACT, (Q(1, 3), Q(1, 3), Q(1, 3))) == (1, 2, 3)
    # Degenerate division: rejection accepts only the empty piece, which
    # contributes the vanishing coordinate set.
    assert accepted_cut_indices(REJECT, (Q(0), Q(1, 2), Q(1, 2))) == (1,)
    assert accepted_cut_indices(REJECT, (Q(1, 2), Q(1, 2), Q(0))) == (3,)


def test_accepted_cut_indices_rejects_empty_at_interior():
    only_none = PreferenceOracle(kind="custom", fn=lambda d: {None})
    with pytest.raises(AssumptionViolationError):
        accepted_cut_indices(only_none, (Q(1, 3), Q(1, 3), Q(1, 3)))


def test_preference_label_two_branch_rule():
    # Branch 1: accepted indices equal the vanishing set -> keep the whole set.
    assert preference_label(REJECT, (Q(0), Q(1, 2), Q(1, 2))) == (1,)
    # Branch 2: otherwise the smallest accepted index outside it.
    assert preference_label(ATTRACT, (Q(1, 3), Q(1, 3), Q(1, 3))) == (1,)
    assert preference_label(ATTRACT, (Q(1, 4), Q(1, 4), Q(1, 2))) == (3,)
    # Both halves tie; 1 vanishes, so the smallest outside accepted index is 2.
    assert preference_label(ATTRACT, (Q(0), Q(1, 2), Q(1, 2))) == (2,)


def test_preference_label_limit_texture():
    # Approaching the second unit vector along the third facet, the labels
    # stay inside the label of the limit point (acceptance is closed).
    limit_label = preference_label(REJECT, (Q(0), Q(1), Q(0)))
    assert limit_label == (1, 3)
    for k in range(1, 8):
        eps = Q(1, 2**k)
        label = preference_label(REJECT, (eps, 1 - eps, Q(0)))
        assert label == (3,)
        assert set(label) <= set(limit_label)


def test_vertex_labeling_requires_full_coverage():
    tri = sd_pow(2, 1)
    with pytest.raises(ValueError):
        VertexLabeling(tri=tri, labels={0: (1,)})


def test_build_labeling_is_nice_and_shaped():
    tri = sd_pow(3, 2)
    owners = owner_labeling(tri)
    for oracles in (
        (ATTRACT, ATTRACT, ATTRACT),
        (REJECT, REJECT, REJECT),
        (ATTRACT, REJECT, ATTRACT),
    ):
        labeling = build_labeling(tri, owners, oracles)
        assert set(labeling.labels) == set(range(len(tri.vertices)))
        ok, witness = check_nice_labeling(tri, labeling)
        assert ok, witness
        ok, witness = check_label_shape(tri, labeling)
        assert ok, witness
    with pytest.raises(ValueError):
        build_labeling(tri, owners, (ATTRACT,))


def test_check_nice_labeling_detects_corruption():
    tri = sd_pow(3, 1)
    owners = owner_labeling(tri)
    labeling = build_labeling(tri, owners, (REJECT, REJECT, REJECT))
    # Corrupt the image of a first-facet vertex under the swap symmetry.
    e2 = tri.vertex_id((Q(0), Q(1), Q(0)))
    e1 = tri.vertex_id((Q(1), Q(0), Q(0)))
    expected = labeling.labels[e1]
    labeling.labels[e1] = (2,) if expected != (2,) else (3,)
    ok, witness = check_nice_labeling(tri, labeling)
    assert not ok
    assert witness is not None


def test_check_label_shape_detects_inside_singleton():
    tri = sd_pow(3, 1)
    owners = owner_labeling(tri)
    labeling = build_labeling(tri, owners, (REJECT, REJECT, REJECT))
    e2 = tri.vertex_id((Q(0), Q(1), Q(0)))  # vanishing set (1, 3)
    labeling.labels[e2] = (1,)
    ok, witness = check_label_shape(tri, labeling)
    assert not ok
    assert witness == e2


@pytest.mark.parametrize("n,depth", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)])
def test_sampler_labelings_are_nice_and_proper(n, depth):
    tri = sd_pow(n, depth)
    sampler = NiceLabelingSampler(tri)
    rng = Random(42)
    for _ in range(5):
        labeling = sampler.sample(rng)
        ok, witness = check_nice_labeling(tri, labeling)
        assert ok, witness
        for lab in labeling.labels.values():
            assert 1 <= len(lab) < n or n == 1


@pytest.mark.parametrize("n,depth", [(3, 1), (4, 1), (4, 2)])
def test_sampler_shaped_labelings(n, depth):
    tri = sd_pow(n, depth)
    sampler = NiceLabelingSampler(tri)
    rng = Random(3)
    for _ in range(5):
        labeling = sampler.sample_shaped(rng)
        ok, witness = check_nice_labeling(tri, labeling)
        assert ok, witness
        ok, witness = check_label_shape(tri, labeling)
        assert ok, witness


def test_sampler_deterministic_under_seed():
    tri = sd_pow(3, 2)
    a = NiceLabelingSampler(tri).sample(Random(7)).labels
    b = NiceLabelingSampler(tri).sample(Random(7)).labels
    assert a == b


def test_sampler_rejects_asymmetric_triangulation():
    vertices = [
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(1), Q(0)),
        (Q(0), Q(0), Q(1)),
        (Q(0), Q(1, 2), Q(1, 2)),
    ]
    tri = Triangulation(n=3, vertices=vertices, simplices=[(0, 1, 3), (0, 3, 2)])
    with pytest.raises(InvariantViolationError):
        NiceLabelingSampler(tri)


def test_sampler_valid_sets_include_vanishing_set():
    # The vanishing set of each component representative must be sampleable,
    # otherwise constrained sampling could get stuck.
    for n, depth in ((2, 1), (3, 1), (3, 2), (5, 1)):
        tri = sd_pow(n, depth)
        sampler = NiceLabelingSampler(tri)
        for comp in sampler.components:
            rep = comp["rep"]
            vanishing = tuple(
                i for i, c in enumerate(tri.vertices[rep], start=1) if c == 0
            )
            assert vanishing in comp["valid_sets"]
