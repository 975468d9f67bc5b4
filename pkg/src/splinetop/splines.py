"""Spline spaces as exact kernels of smoothness matrices.

Unknowns are the per-facet coefficients (in a fixed monomial basis) followed
by one multiplier polynomial per constrained wall.  Each wall contributes the
coefficientwise equations ``F_a - F_b - l^(r+1) * m = 0``; a wall between a
facet of the support and a facet outside it contributes ``F_a - l^(r+1) m = 0``.

Two modes share everything except the monomial basis: ``filtered`` (degree
``<= d`` in n variables, affine wall forms) and ``homogeneous`` (degree
exactly ``d`` in n+1 variables with x0 last, homogenized wall forms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import polys
from .complex import SIMPLICIAL, PolytopalComplex, SubComplex
from .linalg import (
    Echelon,
    QMatrix,
    Subspace,
    combination,
    kernel_vectors,
    member,
    modular_kernel,
    modular_rank,
    subspace_sum,
)

FILTERED = "filtered"
HOMOGENEOUS = "homogeneous"
MODES = (FILTERED, HOMOGENEOUS)


class SplineError(ValueError):
    pass


def _check_mode(mode):
    if mode not in MODES:
        raise SplineError(f"mode must be one of {MODES}, got {mode!r}")


@dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int
    mode: str

    @cached_property
    def nvars(self) -> int:
        return self.n + 1 if self.mode == HOMOGENEOUS else self.n

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return polys.monomials(self.nvars, self.d, self.mode == HOMOGENEOUS)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def vector(self, p: polys.Poly) -> dict[int, object]:
        out = {}
        for e, c in p.items():
            if c == 0:
                continue
            if e not in self.index:
                raise SplineError(f"monomial {e} outside the degree-{self.d} {self.mode} basis")
            out[self.index[e]] = c
        return out

    def poly(self, coeffs: dict[int, object]) -> polys.Poly:
        return {self.monomials[i]: c for i, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class WallEquation:
    wall: tuple[int, ...]
    plus: int            # local facet slot with +F
    minus: int | None    # local facet slot with -F, None if the neighbour is outside
    offset: int          # first multiplier column
    size: int


@dataclass(frozen=True, eq=False)
class SmoothnessSystem:
    """One smoothness matrix together with its column layout."""

    complex: PolytopalComplex = field(repr=False)
    r: int
    d: int
    mode: str
    facet_ids: tuple[int, ...]
    basis: MonomialBasis = field(repr=False)
    walls: tuple[WallEquation, ...] = field(repr=False)
    rows: tuple = field(repr=False)
    ncols: int

    @property
    def facet_cols(self) -> int:
        return len(self.facet_ids) * len(self.basis)

    def matrix(self) -> QMatrix:
        return QMatrix(len(self.rows), self.ncols, self.rows)

    def embed(self, vec: dict[int, int]) -> dict[int, int]:
        """Project a kernel vector to facet coordinates of the whole complex."""
        m = len(self.basis)
        out = {}
        for c, v in vec.items():
            if c < self.facet_cols:
                k, j = divmod(c, m)
                out[self.facet_ids[k] * m + j] = v
        return out

    @cached_property
    def kernel(self) -> list[dict[int, int]]:
        return kernel_vectors(self.rows, self.ncols)

    def projected_kernel(self) -> list[dict[int, int]]:
        return [self.embed(v) for v in self.kernel]

    def modular_projected_kernel(self, p: int) -> list[dict[int, int]]:
        return [self.embed(v) for v in modular_kernel(self.rows, self.ncols, p)]


def smoothness_system(P: PolytopalComplex, r: int, d: int, mode: str = FILTERED,
                      support: Iterable[int] | None = None) -> SmoothnessSystem:
    _check_mode(mode)
    if r < 0 or d < 0:
        raise SplineError("r and d must be nonnegative")
    basis = MonomialBasis(P.n, d, mode)
    homog = mode == HOMOGENEOUS
    facet_ids = tuple(range(P.num_facets)) if support is None else tuple(sorted(set(support)))
    slot = {f: k for k, f in enumerate(facet_ids)}
    m = len(basis)
    mdeg = d - (r + 1)
    mult_basis = MonomialBasis(P.n, mdeg, mode) if mdeg >= 0 else None
    ms = len(mult_basis) if mult_basis else 0
    ncols = len(facet_ids) * m
    walls = []
    rows = []
    for w in P.interior_walls:
        a, b = P.facets_containing(w)
        if a not in slot and b not in slot:
            continue
        if a not in slot:
            a, b = b, a
        eq = WallEquation(w.vertex_ids, slot[a], slot.get(b), ncols, ms)
        ncols += ms
        walls.append(eq)
        lp = polys.power(P.wall_form(w).poly(homog), r + 1, basis.nvars)
        block = [dict() for _ in range(m)]
        for i in range(m):
            block[i][eq.plus * m + i] = 1
            if eq.minus is not None:
                block[i][eq.minus * m + i] = -1
        if mult_basis is not None:
            for j, nu in enumerate(mult_basis.monomials):
                for t, c in lp.items():
                    mu = tuple(x + y for x, y in zip(nu, t))
                    block[basis.index[mu]][eq.offset + j] = -c
        rows.extend(block)
    return SmoothnessSystem(P, r, d, mode, facet_ids, basis, tuple(walls), tuple(rows), ncols)


def smoothness_matrix(P: PolytopalComplex, r: int, d: int, mode: str = FILTERED) -> QMatrix:
    return smoothness_system(P, r, d, mode).matrix()


# ---------------------------------------------------------------------------
# spline subspaces


@dataclass(frozen=True)
class Source:
    """A smoothness system whose projected kernel spans part of a space.

    ``shift`` multiplies every vector by a monomial (used for the
    submodule generated in lower degree).
    """

    system: SmoothnessSystem
    shift: tuple[int, ...] | None = None


def _shift_vectors(vecs, src_basis: MonomialBasis, dst_basis: MonomialBasis,
                   shift, nfacets: int):
    ms, md = len(src_basis), len(dst_basis)
    table = [dst_basis.index[tuple(a + b for a, b in zip(e, shift))] for e in src_basis.monomials]
    out = []
    for v in vecs:
        out.append({(c // ms) * md + table[c % ms]: x for c, x in v.items()})
    return out


class SplineSubspace:
    """Exact subspace of per-facet coefficient space with provenance.

    Coordinates: facet ``s`` occupies columns ``s*m .. s*m + m - 1`` with
    ``m = len(basis)``.
    """

    def __init__(self, P: PolytopalComplex, r: int, d: int, mode: str,
                 support: Iterable[int], sources: Sequence[Source], label: str = ""):
        self.complex = P
        self.r, self.d, self.mode = r, d, mode
        self.basis = MonomialBasis(P.n, d, mode)
        self.support = tuple(sorted(set(support)))
        self.sources = tuple(sources)
        self.label = label
        self.space = Subspace(self.ambient_dim, self._exact_vectors())
        self._check_support()

    @property
    def ambient_dim(self) -> int:
        return self.complex.num_facets * len(self.basis)

    @property
    def dim(self) -> int:
        return self.space.dim

    def _vectors(self, src: Source, modular_p: int | None = None):
        sysm = src.system
        if modular_p is None:
            vecs = sysm.projected_kernel()
            if len(vecs) != len(sysm.kernel):
                raise AssertionError("projection lost kernel vectors")
        else:
            vecs = sysm.modular_projected_kernel(modular_p)
        if src.shift is not None:
            vecs = _shift_vectors(vecs, sysm.basis, self.basis, src.shift, self.complex.num_facets)
        return vecs

    def _exact_vectors(self):
        out = []
        for src in self.sources:
            vecs = self._vectors(src)
            if src.shift is None:
                # multipliers are determined by the facet values, so the
                # projection of the kernel must stay independent
                if Echelon(self.ambient_dim).extend(vecs).rank != len(src.system.kernel):
                    raise AssertionError("projection of the smoothness kernel is not injective")
            out.extend(vecs)
        return out

    def _check_support(self):
        m = len(self.basis)
        allowed = set(self.support)
        for v in self.space.sparse_basis:
            for c in v:
                if c // m not in allowed:
                    raise AssertionError("basis vector leaves its declared support")

    def modular_dim(self, p: int) -> int:
        vecs = []
        for src in self.sources:
            vecs.extend(self._vectors(src, modular_p=p))
        return modular_rank(vecs, p)

    # -- conversions ---------------------------------------------------

    def vector_of(self, pieces: Sequence[polys.Poly]) -> dict[int, object]:
        if len(pieces) != self.complex.num_facets:
            raise SplineError("need one polynomial per facet")
        m = len(self.basis)
        out = {}
        for s, p in enumerate(pieces):
            for i, c in self.basis.vector(p).items():
                out[s * m + i] = c
        return out

    def pieces_of(self, vec: dict[int, object]) -> list[polys.Poly]:
        m = len(self.basis)
        pieces = [dict() for _ in range(self.complex.num_facets)]
        for c, v in vec.items():
            if v:
                pieces[c // m][self.basis.monomials[c % m]] = v
        return pieces

    def basis_splines(self) -> list[list[polys.Poly]]:
        return [self.pieces_of(v) for v in self.space.sparse_basis]

    def contains(self, pieces: Sequence[polys.Poly]) -> bool:
        return self.space.contains(self.vector_of(pieces))

    def coefficients(self, pieces: Sequence[polys.Poly]):
        return member(self.space, self.vector_of(pieces))

    def issubspace(self, other: "SplineSubspace") -> bool:
        return self.space.issubspace(other.space)

    def __eq__(self, other):
        if not isinstance(other, SplineSubspace):
            return NotImplemented
        return self.space == other.space

    __hash__ = None

    def __repr__(self):
        return (f"SplineSubspace({self.label or 'C'}, r={self.r}, d={self.d}, "
                f"mode={self.mode}, dim={self.dim})")


def spline_basis(P: PolytopalComplex, r: int, d: int, mode: str = FILTERED) -> SplineSubspace:
    """``C^r_d(P)`` (filtered) or ``C^r(P^)_d`` (homogeneous)."""
    sysm = smoothness_system(P, r, d, mode)
    return SplineSubspace(P, r, d, mode, range(P.num_facets), [Source(sysm)], label="C")


def _facets_of(Q) -> tuple[int, ...]:
    if isinstance(Q, SubComplex):
        return Q.facet_ids
    return tuple(sorted(set(Q)))


def supported_basis(P: PolytopalComplex, Q, r: int, d: int,
                    mode: str = FILTERED) -> SplineSubspace:
    """Splines vanishing on every facet outside ``Q``."""
    ids = _facets_of(Q)
    sysm = smoothness_system(P, r, d, mode, support=ids)
    label = "".join(P.labels[i] for i in ids)
    return SplineSubspace(P, r, d, mode, ids, [Source(sysm)], label=label)


def supported_basis_augmented(P: PolytopalComplex, Q, r: int, d: int,
                              mode: str = FILTERED) -> SplineSubspace:
    """Same space as :func:`supported_basis` via the full matrix plus rows
    forcing the outside facets to zero (slower; used as a cross-check)."""
    ids = set(_facets_of(Q))
    full = smoothness_system(P, r, d, mode)
    m = len(full.basis)
    extra = [{s * m + i: 1} for s in range(P.num_facets) if s not in ids for i in range(m)]
    aug = SmoothnessSystem(P, r, d, mode, full.facet_ids, full.basis, full.walls,
                           full.rows + tuple(extra), full.ncols)
    return SplineSubspace(P, r, d, mode, ids, [Source(aug)], label="aug")


def sum_spaces(P: PolytopalComplex, r: int, d: int, mode: str,
               parts: Sequence[SplineSubspace], label: str = "") -> SplineSubspace:
    """Sum of spline subspaces (keeps provenance for the modular oracle)."""
    sources = [s for part in parts for s in part.sources]
    support = {f for part in parts for f in part.support}
    if not parts:
        support = set()
    out = SplineSubspace.__new__(SplineSubspace)
    out.complex, out.r, out.d, out.mode = P, r, d, mode
    out.basis = MonomialBasis(P.n, d, mode)
    out.support = tuple(sorted(support))
    out.sources = tuple(sources)
    out.label = label
    if parts:
        out.space = subspace_sum([p.space for p in parts])
    else:
        out.space = Subspace(out.ambient_dim)
    return out


# ---------------------------------------------------------------------------
# pointwise tests and conversions


def is_spline(P: PolytopalComplex, r: int, pieces: Sequence[polys.Poly],
              homogeneous: bool | None = None) -> bool:
    """``l^(r+1)`` divides the jump across every interior wall."""
    if len(pieces) != P.num_facets:
        raise SplineError("need one polynomial per facet")
    if homogeneous is None:
        sample = next((e for p in pieces for e in p), None)
        homogeneous = sample is not None and len(sample) == P.n + 1
    for w in P.interior_walls:
        a, b = P.facets_containing(w)
        diff = polys.sub(pieces[a], pieces[b])
        if diff and not polys.divisible_by_power(diff, P.wall_form(w).poly(homogeneous), r + 1):
            return False
    return True


def homogenize_spline(P: PolytopalComplex, r: int, pieces: Sequence[polys.Poly],
                      d: int) -> list[polys.Poly]:
    if not is_spline(P, r, pieces, homogeneous=False):
        raise SplineError("input is not a spline")
    return [polys.homogenize(p, d) for p in pieces]


def dehomogenize_spline(pieces: Sequence[polys.Poly]) -> list[polys.Poly]:
    return [polys.dehomogenize(p) for p in pieces]


def trivial_spline(P: PolytopalComplex, g: polys.Poly) -> list[polys.Poly]:
    """The global polynomial ``g`` on every facet."""
    return [dict(g) for _ in range(P.num_facets)]


def scale_spline(pieces: Sequence[polys.Poly], g: polys.Poly) -> list[polys.Poly]:
    return [polys.mul(p, g) for p in pieces]


def require_simplicial(P: PolytopalComplex):
    if P.kind != SIMPLICIAL:
        raise SplineError("operation needs a simplicial complex")


# ---------------------------------------------------------------------------
# lattice-supported spaces


class _SupportCache:
    """Memo of supported spaces keyed by facet set (one per r, d, mode)."""

    def __init__(self, P, r, d, mode):
        self.P, self.r, self.d, self.mode = P, r, d, mode
        self._memo: dict[tuple[int, ...], SplineSubspace] = {}

    def __call__(self, facets) -> SplineSubspace:
        key = tuple(sorted(facets))
        if key not in self._memo:
            self._memo[key] = supported_basis(self.P, key, self.r, self.d, self.mode)
        return self._memo[key]


def flat_supported(P: PolytopalComplex, W, r: int, d: int, mode: str = FILTERED,
                   _cache: _SupportCache | None = None) -> SplineSubspace:
    """Direct sum of the spaces supported on the components of ``P_W``."""
    from .arrangement import restriction_components

    cache = _cache or _SupportCache(P, r, d, mode)
    parts = [cache(c) for c in restriction_components(P, W)]
    return sum_spaces(P, r, d, mode, parts, label=f"C_W[{W}]")


def ls_supports(P: PolytopalComplex, k: int, flats: str = "homogenized") -> list[tuple[int, ...]]:
    """Facet sets of the maximal lattice-complex components up to rank ``k``."""
    from .arrangement import gamma_poset

    return [v.facets for v in gamma_poset(P, k, flats).maximal()]


def ls_space(P: PolytopalComplex, r: int, k: int, d: int, mode: str = FILTERED,
             flats: str = "homogenized", via: str = "maximal") -> SplineSubspace:
    """Sum of the flat-supported spaces over flats of rank ``<= k``.

    ``via="maximal"`` sums only over the maximal components (a space
    supported on a smaller component is contained in one supported on a
    larger one); ``via="all"`` sums over every flat.
    """
    from .arrangement import intersection_lattice

    if not 0 <= k <= P.n:
        raise SplineError(f"k must lie in [0, {P.n}]")
    cache = _SupportCache(P, r, d, mode)
    if via == "maximal":
        parts = [cache(c) for c in ls_supports(P, k, flats)]
    elif via == "all":
        parts = [flat_supported(P, W, r, d, mode, cache)
                 for W in intersection_lattice(P, flats).flats if W.rank <= k]
    else:
        raise SplineError("via must be 'maximal' or 'all'")
    return sum_spaces(P, r, d, mode, parts, label=f"LS{k}[{flats}]")


def star_supported_sum(P: PolytopalComplex, faces, r: int, d: int,
                       mode: str = FILTERED) -> SplineSubspace:
    """Sum of the spaces supported on the stars of ``faces`` (any complex)."""
    cache = _SupportCache(P, r, d, mode)
    parts = [cache(P.facets_containing(f)) for f in faces]
    return sum_spaces(P, r, d, mode, parts, label="stars")


def star_sum(P: PolytopalComplex, r: int, d: int, mode: str = FILTERED,
             k: int | None = None) -> SplineSubspace:
    """Sum over stars of all ``(n-k)``-faces; vertices by default."""
    require_simplicial(P)
    k = P.n if k is None else k
    return star_supported_sum(P, P.faces_of_dim(P.n - k), r, d, mode)


def _tidy(x):
    return x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x


@dataclass(frozen=True)
class Decomposition:
    summands: tuple[tuple[tuple[int, ...], tuple[polys.Poly, ...]], ...]

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [s for s, _ in self.summands]


def decompose(P: PolytopalComplex, pieces: Sequence[polys.Poly], r: int, k: int, d: int,
              mode: str = FILTERED, flats: str = "homogenized") -> Decomposition | None:
    """Write a spline as a sum of splines each supported on one maximal
    lattice-complex component; None when it is not in the LS space."""
    homog = mode == HOMOGENEOUS
    if not is_spline(P, r, pieces, homogeneous=homog):
        raise SplineError("input is not a spline")
    cache = _SupportCache(P, r, d, mode)
    supports = ls_supports(P, k, flats)
    parts = [cache(c) for c in supports]
    target = parts[0].vector_of(pieces) if parts else {}
    gens, owner = [], []
    for j, part in enumerate(parts):
        for v in part.space.sparse_basis:
            gens.append(v)
            owner.append(j)
    amb = P.num_facets * len(MonomialBasis(P.n, d, mode))
    coeffs = combination(gens, target, amb)
    if coeffs is None:
        return None
    acc = [dict() for _ in parts]
    for c, v, j in zip(coeffs, gens, owner):
        if c:
            for col, x in v.items():
                acc[j][col] = acc[j].get(col, 0) + c * x
    out = []
    for j, vec in enumerate(acc):
        vec = {c: _tidy(x) for c, x in vec.items() if x}
        if vec:
            out.append((supports[j], tuple(parts[j].pieces_of(vec))))
    return Decomposition(tuple(out))
