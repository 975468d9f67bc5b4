"""Pure polytopal complexes: planar polygonal ones and simplicial ones in any
dimension.  Faces are canonical sorted vertex-id tuples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .forms import LinearForm, hyperplane_through
from .linalg import QMatrix

POLYTOPAL2D = "polytopal2d"
SIMPLICIAL = "simplicial"
KINDS = (POLYTOPAL2D, SIMPLICIAL)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Face:
    dim: int
    vertex_ids: tuple[int, ...]
    interior: bool = field(default=False, compare=False)

    def __contains__(self, other: "Face") -> bool:
        return set(other.vertex_ids) <= set(self.vertex_ids)


def facet_label(i: int) -> str:
    return chr(ord("A") + i) if i < 26 else f"F{i}"


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


class PolytopalComplex:
    """Immutable pure complex with derived faces and interior classification.

    ``facet_vertices[i]`` keeps the input order (counterclockwise for planar
    polygons); ``facets[i]`` is the canonical sorted face.
    """

    def __init__(self, ambient_dim: int, kind: str, vertices: Sequence[Sequence],
                 facets: Sequence[Sequence[int]]):
        if kind not in KINDS:
            raise ComplexError(f"unknown kind {kind!r}")
        if kind == POLYTOPAL2D and ambient_dim != 2:
            raise ComplexError("polytopal2d complexes must have ambient_dim 2")
        if ambient_dim < 1:
            raise ComplexError("ambient_dim must be positive")
        self.ambient_dim = ambient_dim
        self.kind = kind
        self.vertices = tuple(tuple(Fraction(x) for x in v) for v in vertices)
        self.facet_vertices = tuple(tuple(int(i) for i in f) for f in facets)
        self._check_input()
        self._derive()

    # -- validation -------------------------------------------------------

    def _check_input(self):
        n = self.ambient_dim
        if not self.facet_vertices:
            raise ComplexError("complex has no facets")
        for v in self.vertices:
            if len(v) != n:
                raise ComplexError(f"vertex {v} has wrong dimension")
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError("duplicate vertices")
        used = set()
        for f in self.facet_vertices:
            if any(not 0 <= i < len(self.vertices) for i in f):
                raise ComplexError(f"facet {f} references a missing vertex")
            if len(set(f)) != len(f):
                raise ComplexError(f"facet {f} repeats a vertex")
            if len(f) < n + 1:
                raise ComplexError(f"non-pure input: facet {f} has dimension < {n}")
            used.update(f)
        if len(used) != len(self.vertices):
            raise ComplexError("non-pure input: some vertices lie in no facet")
        if len({tuple(sorted(f)) for f in self.facet_vertices}) != len(self.facet_vertices):
            raise ComplexError("duplicate facets")
        if self.kind == SIMPLICIAL:
            for f in self.facet_vertices:
                if len(f) != n + 1:
                    raise ComplexError(f"simplicial facet {f} needs {n + 1} vertices")
                pts = [list(self.vertices[i]) + [1] for i in f]
                if QMatrix.from_dense(pts).rank() != n + 1:
                    raise ComplexError(f"degenerate simplex {f}")
        else:
            self._check_polygons()

    def _check_polygons(self):
        V = self.vertices
        for f in self.facet_vertices:
            k = len(f)
            for j in range(k):
                a, b = V[f[j]], V[f[(j + 1) % k]]
                for m in range(k):
                    if m in (j, (j + 1) % k):
                        continue
                    if _cross(a, b, V[f[m]]) <= 0:
                        raise ComplexError(f"facet {f} is not a strictly convex CCW polygon")
            for j in range(k):
                a, b = f[j], f[(j + 1) % k]
                for i, p in enumerate(V):
                    if i not in (a, b) and _on_segment(p, V[a], V[b]):
                        raise ComplexError(
                            f"facet intersection not a common face: vertex {i} on edge {a}-{b}")
        for f, g in combinations(self.facet_vertices, 2):
            shared = set(f) & set(g)
            if len(shared) <= 1:
                continue
            if len(shared) > 2 or not (self._is_polygon_edge(f, shared)
                                       and self._is_polygon_edge(g, shared)):
                raise ComplexError(f"facet intersection not a common face: {f} and {g}")

    @staticmethod
    def _is_polygon_edge(f, pair) -> bool:
        k = len(f)
        return any({f[j], f[(j + 1) % k]} == set(pair) for j in range(k))

    # -- derived data -----------------------------------------------------

    def _facet_face_sets(self, f) -> set[tuple[int, ...]]:
        if self.kind == SIMPLICIAL:
            out = set()
            for m in range(1, len(f) + 1):
                out.update(tuple(sorted(c)) for c in combinations(f, m))
            return out
        k = len(f)
        out = {(i,) for i in f}
        out.update(tuple(sorted((f[j], f[(j + 1) % k]))) for j in range(k))
        out.add(tuple(sorted(f)))
        return out

    def _derive(self):
        n = self.ambient_dim
        self.labels = tuple(facet_label(i) for i in range(len(self.facet_vertices)))
        self.facet_face_ids = tuple(self._facet_face_sets(f) for f in self.facet_vertices)
        containing: dict[tuple[int, ...], list[int]] = {}
        for i, ff in enumerate(self.facet_face_ids):
            for t in ff:
                containing.setdefault(t, []).append(i)
        wall_dim = n - 1
        walls = {t: fs for t, fs in containing.items() if self._dim_of(t) == wall_dim}
        for t, fs in walls.items():
            if len(fs) > 2:
                raise ComplexError(f"non-manifold: codim-1 face {t} lies in {len(fs)} facets")
        boundary_walls = [t for t, fs in walls.items() if len(fs) == 1]
        faces = []
        for t in containing:
            d = self._dim_of(t)
            if d == n:
                interior = True
            else:
                st = set(t)
                interior = not any(st <= set(b) for b in boundary_walls)
            faces.append(Face(d, t, interior))
        faces.sort()
        self.faces = tuple(faces)
        self._face_index = {f.vertex_ids: f for f in faces}
        self._containing = {t: tuple(sorted(fs)) for t, fs in containing.items()}
        self.facets = tuple(self._face_index[tuple(sorted(f))] for f in self.facet_vertices)

    def _dim_of(self, ids: tuple[int, ...]) -> int:
        if self.kind == SIMPLICIAL:
            return len(ids) - 1
        return min(len(ids) - 1, 2)

    # -- queries ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.ambient_dim

    @property
    def num_facets(self) -> int:
        return len(self.facet_vertices)

    def face(self, ids: Iterable[int]) -> Face:
        key = tuple(sorted(ids))
        try:
            return self._face_index[key]
        except KeyError:
            raise ComplexError(f"{key} is not a face") from None

    def faces_of_dim(self, d: int, interior_only: bool = False) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == d and (f.interior or not interior_only))

    @cached_property
    def walls(self) -> tuple[Face, ...]:
        return self.faces_of_dim(self.n - 1)

    @cached_property
    def interior_walls(self) -> tuple[Face, ...]:
        return self.faces_of_dim(self.n - 1, interior_only=True)

    def facets_containing(self, face: Face | Iterable[int]) -> tuple[int, ...]:
        ids = face.vertex_ids if isinstance(face, Face) else tuple(sorted(face))
        if ids not in self._containing:
            raise ComplexError(f"{ids} is not a face")
        return self._containing[ids]

    @cached_property
    def wall_forms(self) -> dict[tuple[int, ...], LinearForm]:
        """Canonical affine form of every codim-1 face (interior or not)."""
        return {w.vertex_ids: hyperplane_through([self.vertices[i] for i in w.vertex_ids])
                for w in self.walls}

    def wall_form(self, wall: Face | Iterable[int]) -> LinearForm:
        ids = wall.vertex_ids if isinstance(wall, Face) else tuple(sorted(wall))
        if ids not in self.wall_forms:
            raise ComplexError(f"{ids} is not a codim-1 face")
        return self.wall_forms[ids]

    def facet_edges(self, i: int) -> list[Face]:
        """Codim-1 faces of facet ``i``."""
        return [self._face_index[t] for t in sorted(self.facet_face_ids[i])
                if self._dim_of(t) == self.n - 1]

    def subcomplex(self, facet_ids: Iterable[int]) -> "SubComplex":
        return SubComplex(self, tuple(sorted(set(facet_ids))))

    def whole(self) -> "SubComplex":
        return self.subcomplex(range(self.num_facets))

    def star(self, face: Face | Iterable[int]) -> "SubComplex":
        return self.subcomplex(self.facets_containing(face))

    def dual_graph(self) -> "DualGraph":
        return self.whole().dual_graph()

    def counts(self) -> dict[str, int]:
        n = self.n
        out = {"facets": self.num_facets}
        for d in range(n):
            out[f"faces_{d}"] = len(self.faces_of_dim(d))
            out[f"interior_faces_{d}"] = len(self.faces_of_dim(d, True))
        return out

    def __repr__(self):
        return (f"PolytopalComplex(kind={self.kind}, n={self.n}, "
                f"vertices={len(self.vertices)}, facets={self.num_facets})")


@dataclass(frozen=True)
class SubComplex:
    parent: PolytopalComplex = field(repr=False, compare=False, hash=False)
    facet_ids: tuple[int, ...]

    def __post_init__(self):
        if not self.facet_ids:
            raise ComplexError("subcomplex needs at least one facet")
        if any(not 0 <= i < self.parent.num_facets for i in self.facet_ids):
            raise ComplexError("facet id out of range")

    @property
    def label(self) -> str:
        return "".join(self.parent.labels[i] for i in self.facet_ids)

    @property
    def facet_set(self) -> frozenset[int]:
        return frozenset(self.facet_ids)

    def __le__(self, other: "SubComplex") -> bool:
        return self.facet_set <= other.facet_set

    def __lt__(self, other: "SubComplex") -> bool:
        return self.facet_set < other.facet_set

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        P = self.parent
        ids = set()
        for i in self.facet_ids:
            ids.update(P.facet_face_ids[i])
        return tuple(sorted(P.face(t) for t in ids))

    def _wall_split(self):
        P, mine = self.parent, self.facet_set
        interior, boundary = [], []
        for i in self.facet_ids:
            for w in P.facet_edges(i):
                inside = [s for s in P.facets_containing(w) if s in mine]
                if len(inside) == 2:
                    if i == inside[0]:
                        interior.append(w)
                else:
                    boundary.append(w)
        return tuple(sorted(interior)), tuple(sorted(boundary))

    @property
    def interior_walls(self) -> tuple[Face, ...]:
        """Codim-1 faces shared by two facets of the subcomplex."""
        return self._wall_split()[0]

    @property
    def boundary_walls(self) -> tuple[Face, ...]:
        return self._wall_split()[1]

    def dual_graph(self) -> "DualGraph":
        P = self.parent
        edges = []
        for w in self.interior_walls:
            a, b = P.facets_containing(w)
            edges.append((a, b, w))
        return DualGraph(self.facet_ids, tuple(edges))


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, Face], ...]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for a, b, w in self.edges:
            g.add_edge(a, b, wall=w.vertex_ids)
        return g

    def components(self) -> list[tuple[int, ...]]:
        comps = nx.connected_components(self.to_networkx())
        return sorted(tuple(sorted(c)) for c in comps)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def adjacency(self) -> set[frozenset[int]]:
        return {frozenset((a, b)) for a, b, _ in self.edges}


@dataclass(frozen=True)
class ValidationReport:
    pure: bool
    hereditary: bool
    manifold_ok: bool
    non_hereditary_faces: tuple[tuple[int, ...], ...] = ()

    @property
    def ok(self) -> bool:
        return self.pure and self.hereditary and self.manifold_ok


def validate_complex(P: PolytopalComplex) -> ValidationReport:
    bad = tuple(f.vertex_ids for f in P.faces if not P.star(f).dual_graph().is_connected())
    # purity and manifoldness are enforced while loading
    return ValidationReport(pure=True, hereditary=not bad, manifold_ok=True,
                            non_hereditary_faces=bad)


def enumerate_faces(P: PolytopalComplex) -> tuple[Face, ...]:
    return P.faces


def dual_graph(P: PolytopalComplex | SubComplex) -> DualGraph:
    return P.dual_graph()


def star(P: PolytopalComplex, face) -> SubComplex:
    return P.star(face)


@dataclass(frozen=True)
class Cone:
    """Homogenization of ``base``: same combinatorics, forms gain ``x0``.

    The cone lives in dimension n+1 and is described only through its
    homogenized wall forms; slicing at ``x0 = 1`` returns ``base``.
    """

    base: PolytopalComplex = field(repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.base.n + 1

    def wall_form(self, wall) -> LinearForm:
        # the stored vector (a, c) already reads as a.x + c*x0
        return self.base.wall_form(wall)

    def wall_poly(self, wall):
        return self.wall_form(wall).poly(homogeneous=True)

    def slice(self) -> PolytopalComplex:
        return self.base


def cone(P: PolytopalComplex) -> Cone:
    return Cone(P)
