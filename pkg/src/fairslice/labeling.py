"""Vertex labelings: from preference oracles and from constrained sampling.

The label of a vertex records which cut could be moved to improve the owning
player's lot: the set of accepted cut indices if it equals the vertex's
vanishing-coordinate set, otherwise the smallest accepted index outside it.
Labelings built this way are symmetric under the boundary symmetries
("nice"), which the checkers here verify rather than assume.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AssumptionViolationError, InvariantViolationError
from .geometry import LabelSet, label_set, sym_index, sym_label_set, sym_point
from .preferences import PreferenceOracle, division_from_point
from .triangulation import Triangulation

Perm = Tuple[int, ...]  # perm[i-1] = image of i, 1-based


def accepted_cut_indices(oracle: PreferenceOracle, x: Sequence) -> Tuple[int, ...]:
    """Cut indices of accepted pieces, plus the vanishing set if None is accepted."""
    division = division_from_point(x)
    accepted = oracle.accepts(division)
    out = set()
    by_piece = dict(zip(division.pieces, division.piece_indices))
    for piece in accepted:
        if piece is None:
            out.update(i for i, c in enumerate(division.point, start=1) if c == 0)
        else:
            out.add(by_piece[piece])
    if not out:
        raise AssumptionViolationError(
            "acceptance yields no cut indices (empty piece accepted at an interior point)",
            point=division.point,
        )
    return tuple(sorted(out))


def preference_label(oracle: PreferenceOracle, x: Sequence) -> LabelSet:
    """Label of a point for one oracle: the two-branch rule."""
    division = division_from_point(x)
    n = division.n
    indices = accepted_cut_indices(oracle, x)
    vanishing = tuple(i for i, c in enumerate(division.point, start=1) if c == 0)
    if indices == vanishing:
        return label_set(indices, n)
    rest = sorted(set(indices) - set(vanishing))
    if not rest:
        raise InvariantViolationError(
            f"accepted indices {indices} differ from {vanishing} only inside it"
        )
    return (rest[0],)


@dataclass
class VertexLabeling:
    """Label sets per vertex id of a triangulation."""

    tri: Triangulation
    labels: Dict[int, LabelSet]
    owners: Optional[Dict[int, int]] = None

    def __post_init__(self) -> None:
        if set(self.labels) != set(range(len(self.tri.vertices))):
            raise ValueError("labeling must cover every vertex exactly once")


def build_labeling(
    tri: Triangulation, owners: Dict[int, int], oracles: Sequence[PreferenceOracle]
) -> VertexLabeling:
    """Label every vertex by its owner's preference at that vertex."""
    if len(oracles) != tri.n:
        raise ValueError(f"need {tri.n} oracles, got {len(oracles)}")
    labels = {
        v: preference_label(oracles[owners[v] - 1], tri.vertices[v])
        for v in range(len(tri.vertices))
    }
    return VertexLabeling(tri=tri, labels=labels, owners=dict(owners))


def check_nice_labeling(tri: Triangulation, labeling: VertexLabeling):
    """Whether labels transform equivariantly on the first facet.

    Returns (True, None) or (False, (vertex, j)).
    """
    n = tri.n
    for v in tri.facet_vertex_ids(1):
        for j in range(2, n + 1):
            u = tri.vertex_id(sym_point(j, tri.vertices[v]))
            if u is None:
                return False, (v, j)
            if labeling.labels[u] != sym_label_set(j, labeling.labels[v], n):
                return False, (v, j)
    return True, None


def check_label_shape(tri: Triangulation, labeling: VertexLabeling):
    """Whether every label is the vertex's vanishing set or an outside singleton.

    This is the shape required by the four-player existence argument. Returns
    (True, None) or (False, vertex).
    """
    for v in range(len(tri.vertices)):
        lab = labeling.labels[v]
        vanishing = tuple(i for i, c in enumerate(tri.vertices[v], start=1) if c == 0)
        if lab == vanishing:
            continue
        if len(lab) == 1 and lab[0] not in vanishing:
            continue
        return False, v
    return True, None


def _compose(p: Perm, q: Perm) -> Perm:
    # (p o q)(i) = p[q[i]]
    return tuple(p[q[i] - 1] for i in range(len(q)))


def _invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, img in enumerate(p, start=1):
        out[img - 1] = i
    return tuple(out)


class NiceLabelingSampler:
    """Uniform sampling of labelings that respect the boundary symmetries.

    Every vertex of the first facet constrains its images under the boundary
    symmetries; chasing those constraints partitions the boundary vertices
    into components, each carrying a transport permutation per vertex and a
    stabilizer group at the representative. A label choice at the
    representative is valid exactly when it is a union of stabilizer orbits,
    and the vanishing set of the representative always is one, so sampling
    never gets stuck. Interior vertices are unconstrained.
    """

    def __init__(self, tri: Triangulation):
        self.tri = tri
        self.n = tri.n
        n = tri.n
        identity = tuple(range(1, n + 1))
        facet1 = tri.facet_vertex_ids(1)
        adjacency: Dict[int, List[Tuple[int, Perm, bool]]] = {}
        for v in facet1:
            for j in range(2, n + 1):
                u = tri.vertex_id(sym_point(j, tri.vertices[v]))
                if u is None:
                    raise InvariantViolationError(
                        f"triangulation is not symmetric: vertex {v} has no image under {j}"
                    )
                perm = tuple(sym_index(j, i, n) for i in range(1, n + 1))
                adjacency.setdefault(v, []).append((u, perm, False))
                adjacency.setdefault(u, []).append((v, perm, True))

        facet1_set = set(facet1)
        seen: Dict[int, Perm] = {}
        self.components: List[dict] = []
        for start in sorted(adjacency):
            if start in seen or start not in facet1_set:
                continue
            transport: Dict[int, Perm] = {start: identity}
            generators = set()
            stack = [start]
            while stack:
                v = stack.pop()
                for u, perm, reverse in adjacency[v]:
                    step = _invert(perm) if reverse else perm
                    candidate = _compose(step, transport[v])
                    if u in transport:
                        gen = _compose(_invert(transport[u]), candidate)
                        if gen != identity:
                            generators.add(gen)
                    else:
                        transport[u] = candidate
                        stack.append(u)
            seen.update(transport)
            orbits = self._orbits(generators)
            self.components.append(
                {
                    "rep": start,
                    "transport": transport,
                    "orbits": orbits,
                    "valid_sets": self._valid_sets(orbits),
                }
            )
        self.constrained = set(seen)
        self.free = [
            v for v in range(len(tri.vertices)) if v not in self.constrained
        ]
        # Sanity: unconstrained vertices must be interior (symmetric complexes).
        for v in self.free:
            if any(c == 0 for c in tri.vertices[v]):
                raise InvariantViolationError(
                    f"boundary vertex {v} escaped the constraint graph"
                )

    def _orbits(self, generators) -> List[Tuple[int, ...]]:
        n = self.n
        parent = list(range(n + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for gen in generators:
            for i in range(1, n + 1):
                ra, rb = find(i), find(gen[i - 1])
                if ra != rb:
                    parent[ra] = rb
        groups: Dict[int, List[int]] = {}
        for i in range(1, n + 1):
            groups.setdefault(find(i), []).append(i)
        return sorted(tuple(g) for g in groups.values())

    def _valid_sets(self, orbits) -> List[LabelSet]:
        n = self.n
        out = []
        for take in range(1, 2 ** len(orbits) - 1 if len(orbits) > 1 else 1):
            combo = []
            for k, orbit in enumerate(orbits):
                if take >> k & 1:
                    combo.extend(orbit)
            if combo:
                out.append(label_set(combo, n))
        if not out:
            if n == 1:
                out.append((1,))
            else:
                raise InvariantViolationError(
                    "stabilizer is transitive: no proper label set is available"
                )
        return sorted(out)

    def _propagate(self, choice: Dict[int, LabelSet]) -> Dict[int, LabelSet]:
        labels: Dict[int, LabelSet] = {}
        for comp in self.components:
            base = choice[comp["rep"]]
            for v, perm in comp["transport"].items():
                moved = label_set((perm[i - 1] for i in base), self.n)
                if v in labels and labels[v] != moved:
                    raise InvariantViolationError(f"conflicting labels at vertex {v}")
                labels[v] = moved
        return labels

    def sample(self, rng: Random) -> VertexLabeling:
        """Random nice labeling with nonempty proper label sets everywhere."""
        n = self.n
        choice = {c["rep"]: rng.choice(c["valid_sets"]) for c in self.components}
        labels = self._propagate(choice)
        full = (1 << n) - 1
        for v in self.free:
            mask = rng.randrange(1, full) if n > 1 else 1
            labels[v] = label_set((i + 1 for i in range(n) if mask >> i & 1), n)
        return VertexLabeling(tri=self.tri, labels=labels)

    def sample_shaped(self, rng: Random) -> VertexLabeling:
        """Random nice labeling shaped as vanishing set or outside singleton."""
        n = self.n
        choice: Dict[int, LabelSet] = {}
        for comp in self.components:
            rep = comp["rep"]
            vanishing = tuple(
                i for i, c in enumerate(self.tri.vertices[rep], start=1) if c == 0
            )
            options: List[LabelSet] = [label_set(vanishing, n)] if vanishing else []
            fixed = {orbit[0] for orbit in comp["orbits"] if len(orbit) == 1}
            options.extend((m,) for m in sorted(fixed - set(vanishing)))
            if not options:
                raise InvariantViolationError(
                    f"no shaped label is available at representative {rep}"
                )
            choice[rep] = rng.choice(options)
        labels = self._propagate(choice)
        for v in self.free:
            labels[v] = (rng.randrange(1, n + 1),)
        return VertexLabeling(tri=self.tri, labels=labels)
