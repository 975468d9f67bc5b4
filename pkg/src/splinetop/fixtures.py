"""Built-in complexes.

``Q``/``Q'`` are the square-in-square complexes with facets A (top), B
(left), C (bottom), D (right), E (inner square).  ``T_n`` follows the
parabola construction with the lower chain reflected, facets ordered
A (upper), B (lower), then the triangle and the quadrilaterals.
"""

from __future__ import annotations

import random

import numpy as np
from scipy.spatial import ConvexHull, Delaunay

from .complex import ComplexError, PolytopalComplex
from .io import load_complex

_INNER = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
# A, B, C, D, E over vertices inner 0..3 and outer 4..7
_SQUARE_FACETS = [[1, 0, 4, 5], [5, 6, 2, 1], [2, 6, 7, 3], [3, 7, 4, 0], [0, 1, 2, 3]]


def q_doc() -> dict:
    outer = [(2, 2), (-2, 2), (-2, -2), (2, -2)]
    return {"ambient_dim": 2, "kind": "polytopal2d",
            "vertices": [list(v) for v in _INNER + outer], "facets": _SQUARE_FACETS}


def q_prime_doc() -> dict:
    outer = [(3, 2), (-2, 2), (-2, -2), (2, -3)]
    return {"ambient_dim": 2, "kind": "polytopal2d",
            "vertices": [list(v) for v in _INNER + outer], "facets": _SQUARE_FACETS}


def delta_plus_doc() -> dict:
    return {"ambient_dim": 2, "kind": "simplicial",
            "vertices": [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]],
            "facets": [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]]}


def triangle_doc() -> dict:
    return {"ambient_dim": 2, "kind": "simplicial",
            "vertices": [[0, 0], [1, 0], [0, 1]], "facets": [[0, 1, 2]]}


def polygon_doc() -> dict:
    """A single unit square as a polytopal complex."""
    return {"ambient_dim": 2, "kind": "polytopal2d",
            "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "facets": [[0, 1, 2, 3]]}


def two_squares_doc() -> dict:
    """Unit squares on either side of the line x = 0."""
    return {"ambient_dim": 2, "kind": "polytopal2d",
            "vertices": [[-1, 0], [0, 0], [0, 1], [-1, 1], [1, 0], [1, 1]],
            "facets": [[0, 1, 2, 3], [1, 4, 5, 2]]}


def bowtie_doc() -> dict:
    """Two triangles meeting only at a vertex (not hereditary)."""
    return {"ambient_dim": 2, "kind": "simplicial",
            "vertices": [[0, 0], [1, 1], [-1, 1], [1, -1], [-1, -1]],
            "facets": [[0, 1, 2], [0, 3, 4]]}


def tn_doc(n: int) -> dict:
    if n < 2:
        raise ValueError("T_n needs n >= 2")
    verts = [[0, 0]]
    verts += [[i, i * (i + 1) // 2] for i in range(1, n + 1)]      # v_i
    verts += [[j, -(j * (j + 1) // 2)] for j in range(1, n + 1)]   # w_j
    v = lambda i: 0 if i == 0 else i
    w = lambda j: 0 if j == 0 else n + j
    upper = [v(i) for i in range(n + 1)]
    lower = [0] + [w(j) for j in range(n, 0, -1)]
    facets = [upper, lower, [0, w(1), v(1)]]
    facets += [[w(i), w(i + 1), v(i + 1), v(i)] for i in range(1, n)]
    return {"ambient_dim": 2, "kind": "polytopal2d", "vertices": verts, "facets": facets}


def build_tn(n: int) -> PolytopalComplex:
    return load_complex(tn_doc(n))


def Q() -> PolytopalComplex:
    return load_complex(q_doc())


def Q_prime() -> PolytopalComplex:
    return load_complex(q_prime_doc())


def delta_plus() -> PolytopalComplex:
    return load_complex(delta_plus_doc())


FIXTURE_DOCS = {
    "Q": q_doc,
    "Qprime": q_prime_doc,
    "DeltaPlus": delta_plus_doc,
    "T2": lambda: tn_doc(2),
    "T3": lambda: tn_doc(3),
    "T4": lambda: tn_doc(4),
    "triangle": triangle_doc,
    "square": polygon_doc,
    "two_squares": two_squares_doc,
}


def fixture(name: str) -> PolytopalComplex:
    try:
        return load_complex(FIXTURE_DOCS[name]())
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURE_DOCS)}") from None


def random_triangulation(rng: random.Random, max_triangles: int = 12,
                         grid: int = 6) -> PolytopalComplex:
    """Delaunay triangulation of random integer points with >= 1 interior edge.

    Samples whose exact geometry is degenerate are redrawn.
    """
    while True:
        k = rng.randint(4, 8)
        pts = set()
        while len(pts) < k:
            pts.add((rng.randint(0, grid), rng.randint(0, grid)))
        pts = sorted(pts)
        arr = np.array(pts, dtype=float)
        if np.linalg.matrix_rank(arr - arr[0]) < 2:
            continue
        try:
            tri = Delaunay(arr)
        except Exception:
            continue
        simplices = [sorted(int(i) for i in s) for s in tri.simplices]
        if not 2 <= len(simplices) <= max_triangles:
            continue
        used = sorted({i for s in simplices for i in s})
        remap = {old: new for new, old in enumerate(used)}
        doc = {"ambient_dim": 2, "kind": "simplicial",
               "vertices": [list(pts[i]) for i in used],
               "facets": [[remap[i] for i in s] for s in simplices]}
        try:
            P = load_complex(doc)
        except ComplexError:
            continue
        if _has_overlaps(P) or not P.interior_walls:
            continue
        return P


def _has_overlaps(P: PolytopalComplex) -> bool:
    # exact check that triangle areas add up to the hull area and no
    # vertex sits inside an edge; float Delaunay can return slivers

    def area(a, b, c):
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    V = P.vertices
    tot = sum(area(*(V[i] for i in f)) for f in P.facet_vertices)
    if any(area(*(V[i] for i in f)) == 0 for f in P.facet_vertices):
        return True
    hull = _hull_area2(V)
    if tot != hull:
        return True
    for w in P.walls:
        a, b = (V[i] for i in w.vertex_ids)
        for i, p in enumerate(V):
            if i in w.vertex_ids:
                continue
            cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cr == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return True
    return False


def _hull_area2(V):
    hull = [V[i] for i in ConvexHull(np.array(V, dtype=float)).vertices]
    s = 0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)
