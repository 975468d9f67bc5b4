"""Exact linear algebra over the rationals.

Matrices are stored as sparse rows (``dict`` column -> value).  Elimination is
fraction-free: every row is scaled to a primitive integer vector before it
enters the echelon, and each combination step divides out the row content
again, so no ``Fraction`` arithmetic happens in the inner loop.

A modular rank/kernel pair is provided as an independent oracle.  It shares no
elimination code with the exact path.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

SparseRow = dict  # column index -> int/Fraction


class LinalgError(ValueError):
    pass


class BadPrimeError(LinalgError):
    """The chosen prime divides a denominator; pick another one."""


# ---------------------------------------------------------------------------
# rows


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def primitive_row(row: SparseRow) -> dict[int, int]:
    """Scale a sparse rational row to a primitive integer row, pivot positive.

    The sign is fixed by the entry at the smallest column index.
    """
    row = {c: v for c, v in row.items() if v != 0}
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    if den != 1:
        ints = {c: int(v * den) for c, v in row.items()}
    else:
        ints = {c: int(v) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    if g != 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _content_reduce(row: dict[int, int], sign_col: int | None = None) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if sign_col is not None and row.get(sign_col, 0) < 0:
        g = -g
    if g not in (1, 0):
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Return a*row - b*piv with the entry at ``col`` cancelled."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: a * v for c, v in row.items()} if a != 1 else dict(row)
    for c, v in piv.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _content_reduce(out)


class Echelon:
    """Incrementally maintained row echelon form.

    ``pivots`` maps pivot column -> primitive integer row whose smallest
    column is the pivot.  Rows are not reduced above their pivots until
    :meth:`reduced` is called.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> dict[int, int]:
        r = primitive_row(row)
        pivots = self.pivots
        while r:
            # smallest column that is a pivot; non-pivot columns are skipped
            cands = [c for c in r if c in pivots]
            if not cands:
                break
            c = min(cands)
            r = _combine(r, pivots[c], c)
        return r

    def add(self, row: SparseRow) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        if r[c] < 0:
            r = {k: -v for k, v in r.items()}
        self.pivots[c] = r
        return True

    def extend(self, rows: Iterable[SparseRow]) -> "Echelon":
        for row in rows:
            self.add(row)
        return self

    def reduced(self) -> list[tuple[int, dict[int, int]]]:
        """Reduced row echelon form as (pivot column, primitive row) pairs.

        Each row has zeros in every other pivot column, a positive pivot, and
        primitive integer content, which makes the result canonical for the
        row space.
        """
        cols = sorted(self.pivots)
        done: dict[int, dict[int, int]] = {}
        pivset = set(cols)
        for c in reversed(cols):
            r = self.pivots[c]
            while True:
                hits = [k for k in r if k != c and k in done]
                if not hits:
                    break
                k = min(hits)
                r = _combine(r, done[k], k)
            r = _content_reduce(r, sign_col=c)
            done[c] = r
        # every row is now cleared in all later pivot columns; earlier pivot
        # columns cannot appear because rows start at their own pivot
        assert all(not (set(done[c]) - {c}) & pivset for c in cols)
        return [(c, done[c]) for c in cols]


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class QMatrix:
    """Sparse exact rational matrix."""

    nrows: int
    ncols: int
    rows: tuple = field(repr=False)

    @classmethod
    def from_rows(cls, rows: Sequence[SparseRow], ncols: int) -> "QMatrix":
        clean = []
        for r in rows:
            for c in r:
                if not 0 <= c < ncols:
                    raise LinalgError(f"column {c} out of range for {ncols} columns")
            clean.append({c: v for c, v in r.items() if v != 0})
        return cls(len(clean), ncols, tuple(clean))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "QMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise LinalgError("ragged matrix")
        rows = [{j: Fraction(v) for j, v in enumerate(r) if v != 0} for r in data]
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple({i: 1} for i in range(n)))

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = Fraction(v)
        return out

    def rank(self) -> int:
        return Echelon(self.ncols).extend(self.rows).rank

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((Fraction(a) * v[j] for j, a in r.items()), Fraction(0)) for r in self.rows]


class Subspace:
    """A subspace of Q^n given by independent spanning vectors.

    The canonical form is the reduced echelon form of the basis vectors laid
    out as rows; two subspaces are equal iff their canonical forms agree.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable[SparseRow] = ()):
        self.ambient_dim = ambient_dim
        ech = Echelon(ambient_dim)
        basis = []
        for v in vectors:
            if any(not 0 <= c < ambient_dim for c in v):
                raise LinalgError("vector outside ambient space")
            if ech.add(v):
                basis.append(primitive_row(v))
        self._basis = basis
        self._ech = ech
        self._canon = None

    @classmethod
    def _from_independent(cls, ambient_dim, vectors, ech):
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s._basis = list(vectors)
        s._ech = ech
        s._canon = None
        return s

    @property
    def dim(self) -> int:
        return len(self._basis)

    @property
    def sparse_basis(self) -> list[dict[int, int]]:
        return self._basis

    def basis_vectors(self) -> list[list[int]]:
        out = []
        for v in self._basis:
            dense = [0] * self.ambient_dim
            for c, a in v.items():
                dense[c] = a
            out.append(dense)
        return out

    def basis_matrix(self) -> QMatrix:
        """Basis vectors as the columns of a matrix."""
        rows = [dict() for _ in range(self.ambient_dim)]
        for j, v in enumerate(self._basis):
            for c, a in v.items():
                rows[c][j] = a
        return QMatrix(self.ambient_dim, self.dim, tuple(rows))

    def canonical(self) -> tuple:
        if self._canon is None:
            self._canon = tuple(
                tuple(sorted(r.items())) for _, r in self._ech.reduced()
            )
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ambient_dim, self.canonical()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def contains(self, v: SparseRow) -> bool:
        return not self._ech.reduce(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self._basis)


def rref(M: QMatrix) -> tuple[list[int], list[dict[int, int]]]:
    """Pivot columns and primitive integer RREF rows of ``M``."""
    red = Echelon(M.ncols).extend(M.rows).reduced()
    return [c for c, _ in red], [r for _, r in red]


def rank(M: QMatrix) -> int:
    return M.rank()


def kernel_vectors(rows: Sequence[SparseRow], ncols: int) -> list[dict[int, int]]:
    """Primitive integer kernel basis, one vector per free column in order."""
    red = Echelon(ncols).extend(rows).reduced()
    pivcols = {c for c, _ in red}
    # column -> list of (pivot col, pivot value, entry)
    by_col: dict[int, list[tuple[int, int, int]]] = {}
    for c, r in red:
        p = r[c]
        for k, v in r.items():
            if k != c:
                by_col.setdefault(k, []).append((c, p, v))
    out = []
    for f in range(ncols):
        if f in pivcols:
            continue
        entries = by_col.get(f, [])
        den = 1
        for _, p, _ in entries:
            den = _lcm(den, p)
        vec = {f: den}
        for c, p, v in entries:
            vec[c] = -v * (den // p)
        out.append(_content_reduce(vec))
    return out


def kernel_basis(M: QMatrix) -> Subspace:
    vecs = kernel_vectors(M.rows, M.ncols)
    # kernel vectors are independent by construction (distinct free columns)
    ech = Echelon(M.ncols)
    for v in vecs:
        ech.add(v)
    return Subspace._from_independent(M.ncols, vecs, ech)


def subspace_sum(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise LinalgError("empty sum needs an ambient dimension")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise LinalgError("ambient dimension mismatch")
    return Subspace(n, (v for s in spaces for v in s.sparse_basis))


def combination(vectors: Sequence[SparseRow], v: SparseRow, ambient_dim: int
                ) -> list[Fraction] | None:
    """Coefficients expressing ``v`` through ``vectors`` (which may be
    dependent), or None.  Only the leftmost independent vectors get nonzero
    coefficients, so the answer is deterministic."""
    k = len(vectors)
    rows = [dict() for _ in range(ambient_dim)]
    for j, b in enumerate(vectors):
        for c, a in b.items():
            if a:
                rows[c][j] = a
    for c, a in v.items():
        if a:
            rows[c][k] = -Fraction(a)
    if not any(r.get(k) for r in rows):
        return [Fraction(0)] * k
    for vec in kernel_vectors(rows, k + 1):
        if vec.get(k):
            t = Fraction(vec[k])
            return [Fraction(vec.get(j, 0)) / t for j in range(k)]
    return None


def member(S: Subspace, v: Sequence | SparseRow) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum(c[i] * basis[i]) == v``, or None."""
    if not isinstance(v, dict):
        if len(v) != S.ambient_dim:
            raise LinalgError("dimension mismatch")
        v = {i: a for i, a in enumerate(v) if a != 0}
    return combination(S.sparse_basis, v, S.ambient_dim)


# ---------------------------------------------------------------------------
# modular oracle


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def random_primes(count: int = 3, bits: int = 30, rng: random.Random | None = None) -> list[int]:
    """Distinct random primes of the given bit length.

    Without an explicit generator the seed comes from ``SPLINETOP_SEED``.
    """
    if rng is None:
        seed = os.environ.get("SPLINETOP_SEED")
        rng = random.Random(int(seed)) if seed is not None else random.Random()
    out: list[int] = []
    while len(out) < count:
        p = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if is_prime(p) and p not in out:
            out.append(p)
    return out


def _rows_mod(rows: Sequence[SparseRow], p: int) -> list[dict[int, int]]:
    out = []
    for r in rows:
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                if v.denominator % p == 0:
                    raise BadPrimeError(f"{p} divides a denominator")
                den = den * v.denominator % p
        m = {}
        for c, v in r.items():
            if isinstance(v, Fraction):
                x = v.numerator * pow(v.denominator, -1, p) % p
            else:
                x = v % p
            if x:
                m[c] = x
        out.append(m)
    return out


def _mod_echelon(rows: list[dict[int, int]], p: int) -> dict[int, dict[int, int]]:
    piv: dict[int, dict[int, int]] = {}
    for r in rows:
        r = dict(r)
        while r:
            cands = [c for c in r if c in piv]
            if not cands:
                c = min(r)
                inv = pow(r[c], -1, p)
                piv[c] = {k: v * inv % p for k, v in r.items()}
                break
            c = min(cands)
            f = r[c]
            for k, v in piv[c].items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return piv


def modular_rank(M: QMatrix | Sequence[SparseRow], p: int, ncols: int | None = None) -> int:
    """Rank of ``M`` over GF(p)."""
    if not is_prime(p):
        raise LinalgError(f"{p} is not prime")
    rows = M.rows if isinstance(M, QMatrix) else M
    return len(_mod_echelon(_rows_mod(rows, p), p))


def modular_kernel(rows: Sequence[SparseRow], ncols: int, p: int) -> list[dict[int, int]]:
    """Kernel basis over GF(p), one vector per free column."""
    piv = _mod_echelon(_rows_mod(rows, p), p)
    cols = sorted(piv)
    # back substitution; later pivot rows are already fully reduced
    for c in reversed(cols):
        r = piv[c]
        for k in [k for k in r if k != c and k in piv]:
            f = r[k]
            for kk, v in piv[k].items():
                nv = (r.get(kk, 0) - f * v) % p
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
    pivset = set(cols)
    by_col: dict[int, list[tuple[int, int]]] = {}
    for c in cols:
        for k, v in piv[c].items():
            if k != c:
                by_col.setdefault(k, []).append((c, v))
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: 1}
        for c, v in by_col.get(f, []):
            vec[c] = (-v) % p
        out.append(vec)
    return out
