"""Hilbert functions of graded spline modules on the cone, polynomial fits,
generator-degree profiles and the window-limited conjecture report.

Every table entry is a dimension in homogeneous mode.  Nothing here
computes regularity; agreement degrees are observations inside a finite
degree window and are flagged as such.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import oracle
from .complex import PolytopalComplex
from .fixtures import build_tn  # noqa: F401  (re-exported)
from .splines import (
    HOMOGENEOUS,
    Source,
    SplineSubspace,
    ls_space,
    smoothness_system,
    spline_basis,
    supported_basis,
)


class HilbertError(ValueError):
    pass


@dataclass(frozen=True)
class Selector:
    """Which graded module: ``full``, ``ls`` (with rank bound ``k``) or
    ``supported`` (on ``facets``)."""

    kind: str = "full"
    k: int | None = None
    facets: tuple[int, ...] = ()
    flats: str = "homogenized"

    @classmethod
    def parse(cls, text: str, P: PolytopalComplex | None = None) -> "Selector":
        """``full``, ``ls``, ``ls:1``, ``supported:B`` or ``supported:0,2``."""
        head, _, arg = text.partition(":")
        if head == "full" and not arg:
            return cls()
        if head == "ls":
            return cls("ls", int(arg) if arg else None)
        if head == "supported" and arg:
            if P is not None and arg.isalpha():
                ids = tuple(P.labels.index(c) for c in arg)
            else:
                ids = tuple(int(x) for x in arg.split(","))
            return cls("supported", facets=tuple(sorted(ids)))
        raise HilbertError(f"bad selector {text!r}")

    def __str__(self):
        if self.kind == "ls":
            return "ls" if self.k is None else f"ls:{self.k}"
        if self.kind == "supported":
            return "supported:" + ",".join(map(str, self.facets))
        return "full"

    def space(self, P: PolytopalComplex, r: int, d: int) -> SplineSubspace:
        if self.kind == "full":
            return spline_basis(P, r, d, HOMOGENEOUS)
        if self.kind == "ls":
            k = P.n if self.k is None else self.k
            return ls_space(P, r, k, d, HOMOGENEOUS, self.flats)
        if self.kind == "supported":
            return supported_basis(P, self.facets, r, d, HOMOGENEOUS)
        raise HilbertError(f"unknown selector kind {self.kind!r}")


@dataclass(frozen=True)
class HFTable:
    selector: str
    r: int
    n: int
    values: tuple[int, ...]            # values[d] for d = 0..d_max
    oracle_ok: tuple[bool, ...] = ()

    @property
    def d_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, d: int) -> int:
        return self.values[d]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "hf", "oracle"])
        for d, v in enumerate(self.values):
            ok = self.oracle_ok[d] if self.oracle_ok else None
            w.writerow([d, v, "" if ok is None else ("ok" if ok else "MISMATCH")])
        return buf.getvalue()


def free_hf(n: int, d: int) -> int:
    """Dimension of forms of degree ``d`` in ``n + 1`` variables."""
    return comb(d + n, n) if d >= 0 else 0


def hf_table(P: PolytopalComplex, selector: Selector | str = "full", r: int = 0,
             d_max: int | None = None, check: bool = True) -> HFTable:
    sel = Selector.parse(selector, P) if isinstance(selector, str) else selector
    if d_max is None:
        d_max = default_dmax(P, r)
    if d_max < P.n + 1:
        raise HilbertError(f"d_max must be at least n+1 = {P.n + 1}")
    values, oks = [], []
    for d in range(d_max + 1):
        S = sel.space(P, r, d)
        if check:
            res = oracle.check(S)
            if not res.ok:
                raise oracle.OracleMismatch(f"{sel} d={d}: {res}")
            oks.append(True)
        values.append(S.dim)
    return HFTable(str(sel), r, P.n, tuple(values), tuple(oks))


# ---------------------------------------------------------------------------


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the polynomial through the points."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # Lagrange basis polynomial for node i
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            den *= xs[i] - xs[j]
        for t in range(m):
            coeffs[t] += ys[i] * basis[t] / den
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class HPFit:
    coeffs: tuple[Fraction, ...]       # constant term first
    agreement_from: int
    window_limited: bool

    def __call__(self, d: int) -> Fraction:
        return sum((c * d ** i for i, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def to_str(self, var: str = "d") -> str:
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"


def hp_fit(t: HFTable, n: int | None = None) -> HPFit:
    """Fit through the top ``n + 1`` values and scan down for agreement.

    ``window_limited`` means the window gave no evidence beyond the points
    used for the fit.
    """
    n = t.n if n is None else n
    vals = t.values
    if len(vals) < n + 2:
        raise HilbertError(f"window of {len(vals)} values is too short (need {n + 2})")
    top = len(vals) - 1
    xs = list(range(top - n, top + 1))
    fit = _interpolate(xs, [vals[x] for x in xs])
    hp = HPFit(fit, 0, False)
    start = 0
    for d in range(top - n - 1, -1, -1):
        if hp(d) != vals[d]:
            start = d + 1
            break
    return HPFit(fit, start, start > top - n - 1)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorProfile:
    r: int
    values: tuple[int, ...]            # new generators needed in degree d

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, v in enumerate(self.values) if v)

    @property
    def max_degree(self) -> int | None:
        return self.degrees[-1] if self.degrees else None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "new_generators"])
        for d, v in enumerate(self.values):
            w.writerow([d, v])
        return buf.getvalue()


def shifted_space(P: PolytopalComplex, r: int, d: int, facets=None) -> SplineSubspace:
    """Span of ``x_i * M_{d-1}`` over all variables, inside degree ``d``."""
    ids = range(P.num_facets) if facets is None else facets
    sysm = smoothness_system(P, r, d - 1, HOMOGENEOUS, support=None if facets is None else ids)
    nv = P.n + 1
    sources = [Source(sysm, tuple(int(j == i) for j in range(nv))) for i in range(nv)]
    return SplineSubspace(P, r, d, HOMOGENEOUS, ids, sources, label="shifted")


def generator_degrees(P: PolytopalComplex, r: int, d_max: int | None = None,
                      check: bool = True, facets=None) -> GeneratorProfile:
    if d_max is None:
        d_max = default_dmax(P, r)
    out = []
    for d in range(d_max + 1):
        if facets is None:
            M = spline_basis(P, r, d, HOMOGENEOUS)
        else:
            M = supported_basis(P, facets, r, d, HOMOGENEOUS)
        if d == 0:
            lower_dim = 0
        else:
            low = shifted_space(P, r, d, facets)
            if not low.issubspace(M):
                raise AssertionError("x_i * M_(d-1) left M_d")
            lower_dim = oracle.confirm(low) if check else low.dim
        top = oracle.confirm(M) if check else M.dim
        out.append(top - lower_dim)
    return GeneratorProfile(r, tuple(out))


# ---------------------------------------------------------------------------


def max_boundary_length(P: PolytopalComplex) -> int:
    """Largest number of edges of a facet."""
    return max(len(P.facet_edges(i)) for i in range(P.num_facets))


def default_dmax(P: PolytopalComplex, r: int) -> int:
    F = max_boundary_length(P) if P.n == 2 else P.n + 1
    return max(3 * r + 6, (F - 1) * (r + 1) + 2)


def _stable_from(diff: Sequence[int]) -> int | None:
    """First index from which ``diff`` is zero to the end (None if the last
    value is nonzero)."""
    if not diff or diff[-1] != 0:
        return None
    d = len(diff) - 1
    while d > 0 and diff[d - 1] == 0:
        d -= 1
    return d


@dataclass(frozen=True)
class ConjectureReport:
    r: int
    d_max: int
    max_boundary_length: int
    hf_full: tuple[int, ...]
    hf_ls: tuple[int, ...]
    hp: str
    hp_agreement_from: int
    hp_window_limited: bool
    ls_equal_from: int | None
    max_generator_degree: int | None
    ls_regularity_bound: int  # F(r+1) - 1
    ls_bound_hf_hp_from: int  # F(r+1) - 2
    full_regularity_bound: int  # (F-1)(r+1)
    full_bound_hf_hp_from: int  # (F-1)(r+1) - 1
    note: str = field(default="window-limited evidence, not proof")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def lines(self) -> list[str]:
        lim = " (window-limited)" if self.hp_window_limited else ""
        return [
            f"F (max facet boundary length) = {self.max_boundary_length}",
            f"window: 0..{self.d_max}",
            f"HF full: {list(self.hf_full)}",
            f"HF ls:   {list(self.hf_ls)}",
            f"HP = {self.hp}",
            f"HF = HP observed from d = {self.hp_agreement_from}{lim}",
            f"  full-module bound: reg <= (F-1)(r+1) = {self.full_regularity_bound}, "
            f"HF = HP from d >= {self.full_bound_hf_hp_from}",
            f"HF full = HF ls observed from d = {self.ls_equal_from}",
            f"  ls-module bound: reg <= F(r+1)-1 = {self.ls_regularity_bound}, "
            f"HF = HP from d >= {self.ls_bound_hf_hp_from}",
            f"max generator degree in window: {self.max_generator_degree}",
            self.note,
        ]


def conjecture_report(P: PolytopalComplex, r: int, d_max: int | None = None,
                      check: bool = True) -> ConjectureReport:
    if P.n != 2:
        raise HilbertError("conjecture report is for planar complexes")
    F = max_boundary_length(P)
    if d_max is None:
        d_max = default_dmax(P, r)
    full = hf_table(P, "full", r, d_max, check)
    ls = hf_table(P, Selector("ls", 2), r, d_max, check)
    fit = hp_fit(full)
    gens = generator_degrees(P, r, d_max, check)
    diff = [a - b for a, b in zip(full.values, ls.values)]
    return ConjectureReport(
        r=r, d_max=d_max, max_boundary_length=F,
        hf_full=full.values, hf_ls=ls.values,
        hp=fit.to_str(), hp_agreement_from=fit.agreement_from,
        hp_window_limited=fit.window_limited,
        ls_equal_from=_stable_from(diff),
        max_generator_degree=gens.max_degree,
        ls_regularity_bound=F * (r + 1) - 1,
        ls_bound_hf_hp_from=F * (r + 1) - 2,
        full_regularity_bound=(F - 1) * (r + 1),
        full_bound_hf_hp_from=(F - 1) * (r + 1) - 1,
    )


__all__ = [
    "ConjectureReport", "GeneratorProfile", "HFTable", "HPFit", "HilbertError", "Selector",
    "build_tn", "conjecture_report", "default_dmax", "free_hf", "generator_degrees",
    "hf_table", "hp_fit", "max_boundary_length", "shifted_space",
]
