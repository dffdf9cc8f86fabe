"""Iterated-integral solution terms, kept as exact matrix polynomials in t.

The terms are U_0 = I and U_n(t) = integral_0^t A(s) U_{n-1}(s) ds (product
on the orientation side).  With polynomial A each integral is a polynomial
multiplication followed by term-wise division by the new exponent, so no
quadrature enters.  Summing terms and truncating at degree N must reproduce
the order-N Maclaurin series coefficient for coefficient; that agreement is
an independent oracle for the series engine, since the two constructions
share no recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import MatrixPolyCoefficients, MatrixSeries, Orientation, compute_coefficients

__all__ = [
    "MatrixPolynomial",
    "DegreeGap",
    "pb_term",
    "pb_partial_sum",
    "pb_equivalence_report",
]


def _frozen(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=float)
    out.setflags(write=False)
    return out


def _trim(coeffs: list[np.ndarray]) -> tuple[np.ndarray, ...]:
    last = 0
    for k, mat in enumerate(coeffs):
        if np.any(mat):
            last = k
    return tuple(coeffs[: last + 1])


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """Dense matrix coefficients by power of t, trailing zero matrices trimmed."""

    coeffs: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("polynomial needs at least one coefficient")
        dim = self.coeffs[0].shape[0]
        for mat in self.coeffs:
            if mat.shape != (dim, dim):
                raise ValueError("all polynomial coefficients must share one square shape")
        trimmed = _trim([np.asarray(m, dtype=float) for m in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(_frozen(m) for m in trimmed))

    @classmethod
    def identity(cls, dim: int) -> "MatrixPolynomial":
        return cls((np.eye(dim),))

    @property
    def dim(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> np.ndarray:
        """Degree-k coefficient; zero matrix beyond the stored degree."""
        if k < 0:
            raise ValueError(f"degree must be >= 0, got {k}")
        if k <= self.degree:
            return self.coeffs[k]
        return np.zeros((self.dim, self.dim))

    def min_degree(self) -> int | None:
        """Lowest degree with a nonzero coefficient, or None for the zero polynomial."""
        for k, mat in enumerate(self.coeffs):
            if np.any(mat):
                return k
        return None

    def __add__(self, other: "MatrixPolynomial") -> "MatrixPolynomial":
        if self.dim != other.dim:
            raise ValueError("polynomial dimensions differ")
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            out.append(self.coefficient(k) + other.coefficient(k))
        return MatrixPolynomial(tuple(out))

    def integrate(self) -> "MatrixPolynomial":
        """Antiderivative vanishing at 0: C_k t^k integrates to C_k t^(k+1)/(k+1)."""
        out = [np.zeros((self.dim, self.dim))]
        for k, mat in enumerate(self.coeffs):
            out.append(mat / (k + 1))
        return MatrixPolynomial(tuple(out))

    def truncated(self, max_degree: int) -> "MatrixPolynomial":
        """Drop every term of degree above max_degree."""
        if max_degree < 0:
            raise ValueError(f"degree must be >= 0, got {max_degree}")
        return MatrixPolynomial(self.coeffs[: max_degree + 1])

    def value_at(self, t: float) -> np.ndarray:
        acc = np.array(self.coeffs[-1])
        for mat in reversed(self.coeffs[:-1]):
            acc = acc * t + mat
        return acc


def _family_times_poly(
    coeffs: MatrixPolyCoefficients, poly: MatrixPolynomial
) -> MatrixPolynomial:
    # A(t) * poly(t) for LEFT, poly(t) * A(t) for RIGHT; exact convolution.
    if coeffs.dim != poly.dim:
        raise ValueError("coefficient and polynomial dimensions differ")
    left = coeffs.orientation is Orientation.LEFT
    out = [np.zeros((poly.dim, poly.dim)) for _ in range(coeffs.degree + poly.degree + 1)]
    for j, aj in enumerate(coeffs.matrices):
        for k, ck in enumerate(poly.coeffs):
            if left:
                out[j + k] += aj @ ck
            else:
                out[j + k] += ck @ aj
    return MatrixPolynomial(tuple(out))


def pb_term(
    coeffs: MatrixPolyCoefficients, n: int, max_degree: int | None = None
) -> MatrixPolynomial:
    """The n-th iterated-integral term U_n as an exact matrix polynomial.

    Each integration raises the minimum degree by at least one, so U_n has no
    terms below degree n.  Passing max_degree discards higher terms after each
    integration, which keeps long runs cheap without touching the kept range.
    """
    if n < 0:
        raise ValueError(f"term index must be >= 0, got {n}")
    term = MatrixPolynomial.identity(coeffs.dim)
    for _ in range(n):
        term = _family_times_poly(coeffs, term).integrate()
        if max_degree is not None and term.degree > max_degree:
            term = term.truncated(max_degree)
    return term


def pb_partial_sum(
    coeffs: MatrixPolyCoefficients, order: int, max_degree: int | None = None
) -> MatrixPolynomial:
    """U_0 + U_1 + ... + U_order as one matrix polynomial."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    term = MatrixPolynomial.identity(coeffs.dim)
    total = term
    for _ in range(order):
        term = _family_times_poly(coeffs, term).integrate()
        if max_degree is not None and term.degree > max_degree:
            term = term.truncated(max_degree)
        total = total + term
    return total


@dataclass(frozen=True)
class DegreeGap:
    """Entrywise gap at one degree between the two series constructions."""

    degree: int
    abs_gap: float
    rel_gap: float


def pb_equivalence_report(
    coeffs: MatrixPolyCoefficients, order: int, series: MatrixSeries | None = None
) -> list[DegreeGap]:
    """Per-degree gap between the iterated-integral sum and the recursion series.

    Terms past U_order start at degree > order, so the degree-truncated
    partial sum should match the order-N Maclaurin polynomial to float
    accuracy.  rel_gap divides by max(1, largest entry) of the recursion
    coefficient at that degree.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    poly = pb_partial_sum(coeffs, order, max_degree=order)
    if series is None:
        series = compute_coefficients(coeffs, order)
    rows = []
    for k in range(order + 1):
        gap = float(np.abs(poly.coefficient(k) - series.terms[k]).max())
        scale = max(1.0, float(np.abs(series.terms[k]).max()))
        rows.append(DegreeGap(k, gap, gap / scale))
    return rows
