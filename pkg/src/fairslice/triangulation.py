"""Triangulations of the standard simplex and their chain algebra.

A triangulation stores canonically ordered exact-rational vertices (sorted
lexicographically, ids are list positions) and maximal simplices as sorted
vertex-id tuples in lexicographic order, so equal complexes compare equal and
every downstream tie-break is deterministic. Orientation of a maximal simplex
is the sign of the determinant of its vertex coordinates in stored order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .errors import BudgetExceededError, InvariantViolationError
from .geometry import Point, det_points, facet_indices, simplex_point, support, sym_point

DEFAULT_BUDGET = 10**7

Simplex = Tuple[int, ...]


def _sort_sign(vertices: Sequence[int]) -> Tuple[Simplex, int]:
    # Canonical ascending order; the parity of the sort flips the coefficient.
    order = sorted(range(len(vertices)), key=lambda k: vertices[k])
    sign = 1
    seen = [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(vertices[k] for k in order), sign


class Chain:
    """Integer chain on simplices, keyed by sorted vertex tuples."""

    def __init__(self, dim: int):
        self.dim = dim
        self.terms: Dict[Simplex, int] = {}

    def add(self, vertices: Sequence[int], coeff: int) -> None:
        """Add coeff times the oriented simplex given by a vertex ordering."""
        if len(set(vertices)) != len(vertices):
            return
        key, sign = _sort_sign(vertices)
        new = self.terms.get(key, 0) + sign * coeff
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def coefficient(self, vertices: Sequence[int]) -> int:
        key, sign = _sort_sign(vertices)
        return sign * self.terms.get(key, 0)

    def restrict(self, vertex_ids: Iterable[int]) -> "Chain":
        """Sub-chain of terms supported on the given vertex set."""
        keep = set(vertex_ids)
        out = Chain(self.dim)
        for key, coeff in self.terms.items():
            if all(v in keep for v in key):
                out.terms[key] = coeff
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Chain) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Chain(dim={self.dim}, terms={len(self.terms)})"


def boundary_chain(chain: Chain) -> Chain:
    """Alternating-sign boundary of a chain; squares to zero."""
    out = Chain(chain.dim - 1)
    for key, coeff in chain.terms.items():
        for i in range(len(key)):
            out.add(key[:i] + key[i + 1 :], coeff if i % 2 == 0 else -coeff)
    return out


@dataclass
class Triangulation:
    """A triangulation of the standard simplex on n coordinates."""

    n: int
    vertices: List[Point]
    simplices: List[Simplex]
    depth: int = 0
    # Per vertex: dimension of the previous-level face it is the barycenter of.
    owner_dims: Optional[List[int]] = None
    orientations: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        self._canonicalize()
        if not self.orientations:
            self.orientations = [self._orientation(s) for s in self.simplices]
        self._vertex_id = {v: i for i, v in enumerate(self.vertices)}
        self._incidence: Optional[List[set]] = None
        self._edge_set: Optional[set] = None

    def _canonicalize(self) -> None:
        coords = [simplex_point(v) for v in self.vertices]
        order = sorted(range(len(coords)), key=lambda i: coords[i])
        remap = {old: new for new, old in enumerate(order)}
        dims = self.owner_dims
        self.vertices = [coords[i] for i in order]
        if dims is not None:
            self.owner_dims = [dims[i] for i in order]
        seen = set()
        simplices = []
        for s in self.simplices:
            if len(set(s)) != self.n:
                raise ValueError(f"a maximal simplex needs {self.n} distinct vertices, got {s}")
            key = tuple(sorted(remap[v] for v in s))
            if key not in seen:
                seen.add(key)
                simplices.append(key)
        self.simplices = sorted(simplices)

    def _orientation(self, simplex: Simplex) -> int:
        d = det_points([self.vertices[v] for v in simplex])
        if d == 0:
            raise InvariantViolationError(f"degenerate simplex {simplex}")
        return 1 if d > 0 else -1

    def vertex_id(self, point: Sequence[Q]) -> Optional[int]:
        """Exact-coordinate vertex lookup; None when absent."""
        return self._vertex_id.get(tuple(Q(c) for c in point))

    def incidence(self) -> List[set]:
        """For each vertex, the set of maximal-simplex indices containing it."""
        if self._incidence is None:
            inc: List[set] = [set() for _ in self.vertices]
            for k, s in enumerate(self.simplices):
                for v in s:
                    inc[v].add(k)
            self._incidence = inc
        return self._incidence

    def contains_face(self, vertex_ids: Sequence[int]) -> bool:
        """Whether the vertex set spans a face of some maximal simplex."""
        ids = list(vertex_ids)
        if not ids:
            return False
        inc = self.incidence()
        if any(v < 0 or v >= len(self.vertices) for v in ids):
            return False
        common = set(inc[ids[0]])
        for v in ids[1:]:
            common &= inc[v]
            if not common:
                return False
        return True

    def edges(self) -> set:
        """Unordered vertex-id pairs spanning an edge of some maximal simplex."""
        if self._edge_set is None:
            es = set()
            for s in self.simplices:
                for a, b in itertools.combinations(s, 2):
                    es.add((a, b))
            self._edge_set = es
        return self._edge_set

    def facet_vertex_ids(self, j: int) -> List[int]:
        """Ids of vertices lying on the facet where coordinate j vanishes."""
        if not (1 <= j <= self.n):
            raise ValueError(f"facet index must lie in 1..{self.n}")
        return [i for i, v in enumerate(self.vertices) if v[j - 1] == 0]


def standard_triangulation(n: int) -> Triangulation:
    """The simplex itself as a one-simplex triangulation (depth 0)."""
    vertices = [tuple(Q(1) if i == j else Q(0) for i in range(n)) for j in range(n)]
    return Triangulation(n=n, vertices=vertices, simplices=[tuple(range(n))], depth=0)


def barycentric_subdivide(tri: Triangulation) -> Triangulation:
    """One barycentric subdivision; faces keep their barycenter ancestry."""
    n = tri.n
    intern: Dict[Point, int] = {}
    vertices: List[Point] = []
    owner_dims: List[int] = []

    def vertex_for(pt: Point, dim: int) -> int:
        vid = intern.get(pt)
        if vid is None:
            vid = len(vertices)
            intern[pt] = vid
            vertices.append(pt)
            owner_dims.append(dim)
        elif owner_dims[vid] != dim:
            raise InvariantViolationError(
                f"barycenter {pt} claimed by faces of dimensions {owner_dims[vid]} and {dim}"
            )
        return vid

    simplices = set()
    for simplex in tri.simplices:
        pts = [tri.vertices[v] for v in simplex]
        for perm in itertools.permutations(range(n)):
            acc = [Q(0)] * n
            ids = []
            for k, p in enumerate(perm, start=1):
                for i, c in enumerate(pts[p]):
                    acc[i] += c
                ids.append(vertex_for(tuple(c / k for c in acc), k - 1))
            simplices.add(tuple(sorted(ids)))
    return Triangulation(
        n=n,
        vertices=vertices,
        simplices=sorted(simplices),
        depth=tri.depth + 1,
        owner_dims=owner_dims,
    )


def sd_pow(n: int, depth: int, budget: int = DEFAULT_BUDGET) -> Triangulation:
    """Iterated barycentric subdivision of the standard simplex.

    Refuses (rather than thrashes) when the maximal-simplex count factorial(n)**depth
    would exceed the budget.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    check_budget(n, depth, budget)
    tri = standard_triangulation(n)
    for _ in range(depth):
        tri = barycentric_subdivide(tri)
    return tri


def check_budget(n: int, depth: int, budget: int = DEFAULT_BUDGET) -> int:
    """Simplex count at the given depth, or a budget error if it is too large."""
    count = factorial(n) ** depth
    if count > budget:
        raise BudgetExceededError(
            f"sd^{depth} of the {n-1}-simplex has {count} maximal simplices, "
            f"over the budget of {budget}",
            requested=count,
            budget=budget,
        )
    return count


def mesh_size(tri: Triangulation) -> Q:
    """Largest pairwise vertex distance within a simplex, in the max metric."""
    mesh = Q(0)
    for simplex in tri.simplices:
        pts = [tri.vertices[v] for v in simplex]
        for a, b in itertools.combinations(pts, 2):
            d = max(abs(x - y) for x, y in zip(a, b))
            if d > mesh:
                mesh = d
    return mesh


def positively_oriented_chain(tri: Triangulation) -> Chain:
    """Sum of all maximal simplices, each oriented to positive determinant."""
    chain = Chain(tri.n - 1)
    for simplex, orient in zip(tri.simplices, tri.orientations):
        chain.terms[simplex] = orient
    return chain


def is_nice(tri: Triangulation):
    """Whether every face in the first facet maps into the complex under all symmetries.

    Returns (True, None) or (False, (face, j)) with a counterexample face and
    the symmetry index that breaks closure.
    """
    facet1 = set(tri.facet_vertex_ids(1))
    faces = set()
    for simplex in tri.simplices:
        inside = [v for v in simplex if v in facet1]
        for size in range(1, len(inside) + 1):
            for face in itertools.combinations(inside, size):
                faces.add(face)
    for face in sorted(faces):
        for j in range(1, tri.n + 1):
            image = []
            ok = True
            for v in face:
                u = tri.vertex_id(sym_point(j, tri.vertices[v]))
                if u is None:
                    ok = False
                    break
                image.append(u)
            if not ok or not tri.contains_face(image):
                return False, (face, j)
    return True, None


def owner_labeling(tri: Triangulation) -> Dict[int, int]:
    """Owner of each vertex: barycenter ancestry dimension plus one."""
    if tri.owner_dims is None:
        raise ValueError("owner labeling is defined only after at least one subdivision")
    return {v: d + 1 for v, d in enumerate(tri.owner_dims)}


def check_owner(tri: Triangulation, owners: Dict[int, int]):
    """Validate an owner labeling.

    Adjacent vertices must receive distinct owners, and owners must be
    preserved by every boundary symmetry on the first facet. Returns
    (True, None) or (False, witness).
    """
    n = tri.n
    for v, o in owners.items():
        if not (1 <= o <= n):
            return False, ("range", v, o)
    for a, b in sorted(tri.edges()):
        if owners[a] == owners[b]:
            return False, ("edge", a, b)
    for v in tri.facet_vertex_ids(1):
        for j in range(2, n + 1):
            u = tri.vertex_id(sym_point(j, tri.vertices[v]))
            if u is None or owners[u] != owners[v]:
                return False, ("symmetry", v, j)
    return True, None


def supports_comparable(tri: Triangulation) -> bool:
    """Whether adjacent vertices always have nested supports."""
    supports = [frozenset(support(v)) for v in tri.vertices]
    for a, b in tri.edges():
        sa, sb = supports[a], supports[b]
        if not (sa <= sb or sb <= sa):
            return False
    return True
