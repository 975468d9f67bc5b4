"""Primitive integer affine/linear forms and exact affine spans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polys
from .linalg import kernel_vectors, primitive_row


@dataclass(frozen=True, order=True)
class LinearForm:
    """``a1 x1 + ... + an xn + c`` stored as ``(a1, ..., an, c)``.

    The same vector read homogeneously is ``a.x + c x0``.  Coefficients are
    coprime integers and the first nonzero one is positive.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("zero form")
        canon = tuple(primitive_row(dict(enumerate(self.coeffs))).get(i, 0)
                      for i in range(len(self.coeffs)))
        if canon != tuple(self.coeffs):
            raise ValueError(f"form {self.coeffs} is not canonical; use LinearForm.make")

    @classmethod
    def make(cls, coeffs: Sequence) -> "LinearForm":
        row = primitive_row({i: Fraction(c) for i, c in enumerate(coeffs)})
        if not row:
            raise ValueError("zero form")
        return cls(tuple(row.get(i, 0) for i in range(len(coeffs))))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_central(self) -> bool:
        return self.coeffs[-1] == 0

    def poly(self, homogeneous: bool = False) -> polys.Poly:
        return polys.linear(self.coeffs, homogeneous)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((Fraction(a) * x for a, x in zip(self.coeffs, point)),
                   Fraction(self.coeffs[-1]))

    def to_str(self, homogeneous: bool = False) -> str:
        return polys.to_str(self.poly(homogeneous), polys.variable_names(self.n, homogeneous))

    def __str__(self):
        return self.to_str()


def span_equations(points: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Primitive integer forms ``(a, c)`` spanning those vanishing on ``points``."""
    n = len(points[0])
    rows = [{i: Fraction(x) for i, x in enumerate(list(p) + [1]) if x != 0} for p in points]
    return [tuple(v.get(i, 0) for i in range(n + 1)) for v in kernel_vectors(rows, n + 1)]


def hyperplane_through(points: Sequence[Sequence[Fraction]]) -> LinearForm:
    eqs = span_equations(points)
    if len(eqs) != 1:
        raise ValueError(f"points span a flat of codimension {len(eqs)}, expected 1")
    return LinearForm.make(eqs[0])
