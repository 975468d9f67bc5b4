"""Hyperplane arrangement of interior walls and the structures built on it.

A flat is stored through the span of the form vectors ``(a1..an, c)`` that
vanish on it.  Read affinely, the flat is nonempty iff that span misses the
constant form ``(0, .., 0, 1)``.  Read homogeneously (on the cone over the
complex) every span is a valid central flat, and it lies at infinity iff it
contains ``x0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from . import polys
from .complex import SIMPLICIAL, Face, PolytopalComplex, SubComplex
from .forms import LinearForm
from .linalg import Echelon, Subspace, kernel_vectors

AFFINE = "affine"
HOMOGENIZED = "homogenized"
FLAT_KINDS = (AFFINE, HOMOGENIZED)


class ArrangementError(ValueError):
    pass


def _kind(flats) -> bool:
    """Return True for the homogenized lattice."""
    if flats in (True, HOMOGENIZED):
        return True
    if flats in (False, AFFINE, "affine_only"):
        return False
    raise ArrangementError(f"flats must be one of {FLAT_KINDS}, got {flats!r}")


def edge_form(P: PolytopalComplex, tau: Face | Iterable[int]) -> LinearForm:
    ids = tau.vertex_ids if isinstance(tau, Face) else tuple(sorted(tau))
    face = P.face(ids)
    if face.dim != P.n - 1:
        raise ArrangementError(f"{ids} is not a codim-1 face")
    return P.wall_form(face)


def _vec(form: LinearForm) -> dict[int, int]:
    return {i: a for i, a in enumerate(form.coeffs) if a}


@dataclass(frozen=True, order=True)
class Flat:
    rank: int
    basis: tuple[tuple[int, ...], ...]
    n: int
    homogenized: bool = False

    @classmethod
    def from_forms(cls, vectors: Iterable[dict | Sequence], n: int,
                   homogenized: bool = False) -> "Flat":
        ech = Echelon(n + 1)
        for v in vectors:
            if not isinstance(v, dict):
                v = {i: a for i, a in enumerate(v) if a}
            ech.add(v)
        rows = tuple(tuple(r.get(i, 0) for i in range(n + 1)) for _, r in ech.reduced())
        return cls(len(rows), rows, n, homogenized)

    @classmethod
    def whole(cls, n: int, homogenized: bool = False) -> "Flat":
        return cls(0, (), n, homogenized)

    @cached_property
    def span(self) -> Subspace:
        return Subspace(self.n + 1, [{i: a for i, a in enumerate(r) if a} for r in self.basis])

    def contains_form(self, form: LinearForm | dict) -> bool:
        """True iff the form vanishes on the flat."""
        v = _vec(form) if isinstance(form, LinearForm) else form
        return self.span.contains(v)

    @property
    def contains_constant(self) -> bool:
        return self.span.contains({self.n: 1})

    @property
    def at_infinity(self) -> bool:
        return self.homogenized and self.contains_constant

    @property
    def is_empty_affine(self) -> bool:
        return self.contains_constant

    def join(self, other: "Flat | LinearForm") -> "Flat":
        """Intersection of the two flats (span of both generator sets)."""
        more = other.basis if isinstance(other, Flat) else [other.coeffs]
        return Flat.from_forms(list(self.basis) + list(more), self.n, self.homogenized)

    def below(self, other: "Flat") -> bool:
        """Lattice order: ``other`` lies inside this flat as a point set."""
        return self.span.issubspace(other.span)

    def point(self) -> tuple[Fraction, ...] | None:
        """The affine point when the flat is a single point."""
        if self.homogenized or self.rank != self.n or self.contains_constant:
            return None
        rows = [{i: a for i, a in enumerate(r) if a} for r in self.basis]
        # (x, 1) is the kernel of the basis rows
        (v,) = kernel_vectors(rows, self.n + 1)
        t = Fraction(v.get(self.n, 0))
        return tuple(Fraction(v.get(i, 0)) / t for i in range(self.n))

    def to_str(self) -> str:
        if self.rank == 0:
            return "whole space"
        pt = self.point()
        if pt is not None:
            return "(" + ", ".join(str(x) for x in pt) + ")"
        names = polys.variable_names(self.n, self.homogenized)
        parts = [polys.to_str(polys.linear(r, self.homogenized), names) for r in self.basis]
        return "{" + ", ".join(p + " = 0" for p in parts) + "}"

    def __str__(self):
        return self.to_str()


@dataclass(frozen=True)
class IntersectionLattice:
    n: int
    homogenized: bool
    hyperplanes: tuple[LinearForm, ...]
    flats: tuple[Flat, ...]
    covers: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, ...], ...]

    def index(self, W: Flat) -> int:
        try:
            return self.flats.index(W)
        except ValueError:
            raise ArrangementError(f"unknown flat {W}") from None

    def of_rank(self, k: int) -> tuple[Flat, ...]:
        return tuple(W for W in self.flats if W.rank == k)

    @property
    def rank_counts(self) -> tuple[int, ...]:
        top = max(W.rank for W in self.flats)
        return tuple(len(self.of_rank(k)) for k in range(top + 1))

    def to_dot(self, labels: bool = True) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;"]
        for i, W in enumerate(self.flats):
            text = f"{i}: {W}" if labels else str(i)
            if W.at_infinity:
                text += " (inf)"
            lines.append(f'  f{i} [label="{text}"];')
        for a, b in self.covers:
            lines.append(f"  f{a} -> f{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def arrangement_forms(P: PolytopalComplex) -> tuple[LinearForm, ...]:
    """Distinct canonical forms of the interior walls (collinear walls merge)."""
    return tuple(sorted({P.wall_form(w) for w in P.interior_walls}))


def intersection_lattice(P: PolytopalComplex, homogenized: bool = False) -> IntersectionLattice:
    homog = _kind(homogenized)
    hyps = arrangement_forms(P)
    bottom = Flat.whole(P.n, homog)
    seen = {bottom}
    level = [bottom]
    while level:
        nxt = set()
        for W in level:
            for h in hyps:
                if W.contains_form(h):
                    continue
                V = W.join(h)
                if not homog and V.contains_constant:
                    continue
                if V not in seen:
                    nxt.add(V)
        seen |= nxt
        level = sorted(nxt)
    flats = tuple(sorted(seen))
    pos = {W: i for i, W in enumerate(flats)}
    covers = []
    for W in flats:
        for V in flats:
            if V.rank == W.rank + 1 and W.below(V):
                covers.append((pos[W], pos[V]))
    incidence = tuple(tuple(j for j, h in enumerate(hyps) if W.contains_form(h)) for W in flats)
    return IntersectionLattice(P.n, homog, hyps, flats, tuple(sorted(covers)), incidence)


# ---------------------------------------------------------------------------
# lattice complexes


def _check_flat(P: PolytopalComplex, W: Flat):
    if not isinstance(W, Flat) or W.n != P.n:
        raise ArrangementError("flat does not belong to this complex's ambient space")
    if not W.homogenized and W.contains_constant:
        raise ArrangementError("empty affine flat")


def walls_on(P: PolytopalComplex, W: Flat) -> tuple[Face, ...]:
    """Interior walls whose form vanishes on ``W``."""
    _check_flat(P, W)
    if W.rank == 0:
        return ()
    return tuple(w for w in P.interior_walls if W.contains_form(P.wall_form(w)))


def restriction_components(P: PolytopalComplex, W: Flat) -> list[tuple[int, ...]]:
    """Connected components of the graph of walls vanishing on ``W``.

    The whole-space flat gives one singleton component per facet.
    """
    _check_flat(P, W)
    if W.rank == 0:
        return [(i,) for i in range(P.num_facets)]
    g = nx.MultiGraph()
    for w in walls_on(P, W):
        a, b = P.facets_containing(w)
        g.add_edge(a, b, wall=w.vertex_ids)
    return sorted(tuple(sorted(c)) for c in nx.connected_components(g))


@dataclass(frozen=True)
class LatticeComplex:
    flat: Flat
    components: tuple[SubComplex, ...]
    walls: tuple[Face, ...] = field(repr=False, default=())

    @property
    def facet_ids(self) -> tuple[int, ...]:
        return tuple(sorted({i for c in self.components for i in c.facet_ids}))

    def labels(self) -> list[str]:
        return [c.label for c in self.components]

    def to_dot(self) -> str:
        """Dual graph of the parent with this complex's facets shaded."""
        if not self.components:
            return "graph latcomplex {\n}\n"
        P = self.components[0].parent
        comp_of = {i: k for k, c in enumerate(self.components) for i in c.facet_ids}
        on = {w.vertex_ids for w in self.walls}
        lines = ["graph latcomplex {"]
        for i in range(P.num_facets):
            if i in comp_of:
                attr = f'style=filled, fillcolor="/pastel19/{comp_of[i] % 9 + 1}"'
            else:
                attr = "style=dashed"
            lines.append(f'  {P.labels[i]} [{attr}];')
        for w in P.interior_walls:
            a, b = P.facets_containing(w)
            style = "bold" if w.vertex_ids in on else "dotted"
            lines.append(f"  {P.labels[a]} -- {P.labels[b]} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def lattice_complex_for_flat(P: PolytopalComplex, W: Flat) -> LatticeComplex:
    comps = tuple(P.subcomplex(c) for c in restriction_components(P, W))
    return LatticeComplex(W, comps, walls_on(P, W))


def minimal_flat(P: PolytopalComplex, Q, homogenized: bool = False) -> Flat:
    """Intersection of the spans of the constraining walls of ``Q``.

    For a lattice complex these are the walls of its graph; for a plain
    subcomplex (or facet ids) its interior walls.  No walls gives the whole
    space.
    """
    homog = _kind(homogenized)
    if isinstance(Q, LatticeComplex):
        walls = Q.walls
    else:
        sub = Q if isinstance(Q, SubComplex) else P.subcomplex(Q)
        walls = sub.interior_walls
    W = Flat.from_forms([P.wall_form(w).coeffs for w in walls], P.n, homog)
    if not homog and W.contains_constant:
        raise ArrangementError("walls have no common affine point; use the homogenized lattice")
    return W


# ---------------------------------------------------------------------------
# the inclusion poset of lattice-complex components


@dataclass(frozen=True)
class GammaNode:
    facets: tuple[int, ...]
    rank: int
    flat: Flat
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class GammaPoset:
    max_rank: int
    flats_kind: str
    nodes: tuple[GammaNode, ...]
    edges: tuple[tuple[int, int], ...]   # (smaller, larger) Hasse edges

    def of_rank(self, k: int) -> tuple[GammaNode, ...]:
        return tuple(v for v in self.nodes if v.rank == k)

    @property
    def row_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.of_rank(k)) for k in range(self.max_rank + 1))

    def maximal(self) -> tuple[GammaNode, ...]:
        below = {a for a, _ in self.edges}
        return tuple(v for i, v in enumerate(self.nodes) if i not in below)

    def node(self, facets: Iterable[int]) -> GammaNode:
        key = tuple(sorted(set(facets)))
        for v in self.nodes:
            if v.facets == key:
                return v
        raise ArrangementError(f"no node with facets {key}")

    def label_edges(self) -> set[tuple[str, str]]:
        return {(self.nodes[a].label, self.nodes[b].label) for a, b in self.edges}

    def to_dot(self) -> str:
        lines = ["digraph gamma {", "  rankdir=BT;"]
        for k in range(self.max_rank + 1):
            ids = [f"n{i}" for i, v in enumerate(self.nodes) if v.rank == k]
            if ids:
                lines.append("  { rank=same; " + "; ".join(ids) + "; }")
        for i, v in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{v.label}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def node_label(P: PolytopalComplex, facets: Iterable[int]) -> str:
    return "".join(P.labels[i] for i in sorted(facets))


def gamma_poset(P: PolytopalComplex, max_rank: int | None = None,
                flats: str = HOMOGENIZED) -> GammaPoset:
    homog = _kind(flats)
    k = P.n if max_rank is None else max_rank
    if k < 0:
        raise ArrangementError("max_rank must be nonnegative")
    L = intersection_lattice(P, homog)
    best: dict[tuple[int, ...], Flat] = {}
    for W in L.flats:
        if W.rank > k:
            continue
        for comp in restriction_components(P, W):
            old = best.get(comp)
            if old is None or W.rank < old.rank:
                best[comp] = W
    nodes = sorted(
        (GammaNode(c, W.rank, W, node_label(P, c)) for c, W in best.items()),
        key=lambda v: (v.rank, v.facets),
    )
    g = nx.DiGraph()
    g.add_nodes_from(range(len(nodes)))
    sets = [frozenset(v.facets) for v in nodes]
    for i in range(len(nodes)):
        for j in range(len(nodes)):
            if sets[i] < sets[j]:
                g.add_edge(i, j)
    red = nx.transitive_reduction(g)
    return GammaPoset(k, HOMOGENIZED if homog else AFFINE, tuple(nodes),
                      tuple(sorted(red.edges())))


# ---------------------------------------------------------------------------
# simplicial complexes: lattice complexes are unions of stars


def _aff_contains(P: PolytopalComplex, face: Face, W: Flat) -> bool:
    """True iff the point set of ``W`` lies in the affine span of ``face``."""
    rows = [{i: x for i, x in enumerate(list(P.vertices[v]) + [1]) if x}
            for v in face.vertex_ids]
    eqs = kernel_vectors(rows, P.n + 1)
    return all(W.contains_form(v) for v in eqs)


@dataclass(frozen=True)
class StarSet:
    flat: Flat
    faces: tuple[Face, ...]                      # the minimal faces S(W)
    pairing: tuple[tuple[Face, tuple[int, ...]], ...]  # face -> component facets


def star_set(P: PolytopalComplex, W: Flat) -> StarSet:
    """Minimal faces whose span contains ``W``, paired with the components.

    Raises AssertionError unless the components of the lattice complex of
    ``W`` are exactly the stars of those faces that hold two or more facets.
    """
    if P.kind != SIMPLICIAL:
        raise ArrangementError("star_set needs a simplicial complex")
    _check_flat(P, W)
    if W.homogenized:
        raise ArrangementError("star_set works with affine flats")
    cands = [f for f in P.faces if _aff_contains(P, f, W)]
    cset = {f.vertex_ids for f in cands}
    minimal = []
    for f in cands:
        ids = set(f.vertex_ids)
        if not any(set(g) < ids for g in cset):
            minimal.append(f)
    minimal.sort()
    comps = set(restriction_components(P, W)) if W.rank else set()
    pairing = []
    for f in minimal:
        st = P.facets_containing(f)
        if len(st) >= 2:
            pairing.append((f, st))
    stars = [st for _, st in pairing]
    if W.rank:
        assert len(set(stars)) == len(stars), f"two minimal faces share a star for {W}"
        assert set(stars) == comps, f"components of {W} are not the stars of S(W)"
    return StarSet(W, tuple(minimal), tuple(pairing))


# ---------------------------------------------------------------------------


def boundary_walls_inside(P: PolytopalComplex, Q) -> tuple[Face, ...]:
    """Codim-1 faces on the boundary of ``Q`` that are interior in ``P``."""
    sub = Q if isinstance(Q, SubComplex) else P.subcomplex(Q)
    return tuple(w for w in sub.boundary_walls if w.interior)


def boundary_form(P: PolytopalComplex, Q, homogeneous: bool = False) -> polys.Poly:
    nv = P.n + 1 if homogeneous else P.n
    out = polys.const(1, nv)
    for w in boundary_walls_inside(P, Q):
        out = polys.mul(out, P.wall_form(w).poly(homogeneous))
    return out
