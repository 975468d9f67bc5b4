"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a ``dict`` mapping exponent tuples to ``int``/``Fraction``.
Homogeneous polynomials carry the homogenizing variable ``x0`` in the LAST
exponent slot.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Poly = dict


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int, homogeneous: bool) -> tuple[tuple[int, ...], ...]:
    """Graded lex monomial list: all of degree ``d`` (homogeneous) or ``<= d``.

    Within one degree the order is lexicographic with x1 largest, so in the
    homogeneous case ``x0`` (the last variable) comes last.
    """
    if d < 0:
        return ()
    if homogeneous:
        return tuple(_compositions(d, nvars))
    out = []
    for k in range(d + 1):
        out.extend(_compositions(k, nvars))
    return tuple(out)


def clean(p: Poly) -> Poly:
    return {e: c for e, c in p.items() if c != 0}


def add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, q, -1)


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def scale(p: Poly, c) -> Poly:
    return {e: c * v for e, v in p.items()} if c else {}


def power(p: Poly, k: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    for _ in range(k):
        out = mul(out, p)
    return out


def degree(p: Poly) -> int:
    return max((sum(e) for e in p), default=-1)


def is_homogeneous(p: Poly) -> bool:
    return len({sum(e) for e in p}) <= 1


def monomial_poly(e: Sequence[int], c=1) -> Poly:
    return {tuple(e): c}


def const(c, nvars: int) -> Poly:
    return {(0,) * nvars: c} if c else {}


def homogenize(p: Poly, d: int) -> Poly:
    """``x0^d p(x/x0)``; ``x0`` is appended as the last variable."""
    if degree(p) > d:
        raise ValueError(f"degree {degree(p)} exceeds {d}")
    return {e + (d - sum(e),): c for e, c in p.items()}


def dehomogenize(p: Poly) -> Poly:
    """Set ``x0 = 1``."""
    out: Poly = {}
    for e, c in p.items():
        k = e[:-1]
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def linear(coeffs: Sequence[int], homogeneous: bool) -> Poly:
    """Polynomial of a form ``a1 x1 + ... + an xn + c``.

    ``coeffs`` is ``(a1, ..., an, c)``; in homogeneous mode ``c`` multiplies
    ``x0``.
    """
    n = len(coeffs) - 1
    nv = n + 1 if homogeneous else n
    out: Poly = {}
    for i, a in enumerate(coeffs[:n]):
        if a:
            e = [0] * nv
            e[i] = 1
            out[tuple(e)] = a
    if coeffs[n]:
        e = [0] * nv
        if homogeneous:
            e[n] = 1
        out[tuple(e)] = coeffs[n]
    return out


def divide_linear(p: Poly, lin: Poly) -> Poly | None:
    """Exact quotient ``p / lin`` for a nonzero linear (or affine) ``lin``.

    Returns None when ``lin`` does not divide ``p``.
    """
    if not p:
        return {}
    nv = len(next(iter(p)))
    # pick the last variable with a nonzero coefficient as the eliminated one
    j = None
    for e, c in lin.items():
        if sum(e) == 1:
            k = e.index(1)
            if j is None or k > j:
                j = k
    if j is None:
        raise ValueError("divisor has no variable term")
    unit = tuple(1 if i == j else 0 for i in range(nv))
    a = Fraction(lin[unit])
    rest = {e: c for e, c in lin.items() if e != unit}
    # p as a polynomial in x_j with coefficients in the other variables
    by_deg: dict[int, Poly] = {}
    for e, c in p.items():
        k = e[j]
        key = e[:j] + (0,) + e[j + 1:]
        by_deg.setdefault(k, {})[key] = c
    top = max(by_deg)
    quot: Poly = {}
    cur = {k: dict(v) for k, v in by_deg.items()}
    for k in range(top, 0, -1):
        ck = cur.get(k)
        if not ck:
            continue
        # q_{k-1} = c_k / a ; c_{k-1} -= q_{k-1} * rest
        q = {e: c / a for e, c in ck.items()}
        for e, c in q.items():
            ee = e[:j] + (k - 1,) + e[j + 1:]
            quot[ee] = quot.get(ee, 0) + c
        cur[k - 1] = sub(cur.get(k - 1, {}), mul(q, rest))
    if clean(cur.get(0, {})):
        return None
    return _normalize(clean(quot))


def _normalize(p: Poly) -> Poly:
    out = {}
    for e, c in p.items():
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out[e] = c
    return out


def divisible_by_power(p: Poly, lin: Poly, k: int) -> bool:
    q = p
    for _ in range(k):
        if not q:
            return True
        q = divide_linear(q, lin)
        if q is None:
            return False
    return True


def equal(p: Poly, q: Poly) -> bool:
    return not clean(sub(p, q))


def to_str(p: Poly, names: Sequence[str]) -> str:
    if not p:
        return "0"
    terms = []
    for e in sorted(p, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p[e]
        mono = "*".join(
            f"{names[i]}^{x}" if x > 1 else names[i] for i, x in enumerate(e) if x
        )
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def variable_names(n: int, homogeneous: bool) -> list[str]:
    if n == 2:
        base = ["x", "y"]
        h = "z"
    elif n == 1:
        base = ["x"]
        h = "z"
    else:
        base = [f"x{i}" for i in range(1, n + 1)]
        h = "x0"
    return base + [h] if homogeneous else base


def evaluate(p: Poly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        t = Fraction(c)
        for x, k in zip(point, e):
            if k:
                t *= Fraction(x) ** k
        total += t
    return total

