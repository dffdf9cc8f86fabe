"""Series solver for dR/dt = A(t) R(t) with matrix-polynomial A(t).

Coefficients R_n of R(t) = I + R_1 t + ... + R_N t^N come from two
independent routes: the fundamental recursion
n R_n = A_0 R_{n-1} + A_1 R_{n-2} + ... (products taken on the orientation
side), and the explicit formula summing weighted coefficient products over
index sets.  Truncation error is certified by a scalar majorant fitted to the
coefficient norms, and larger horizons are covered by re-expanding at shifted
origins and composing the per-step propagators.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import (
    enumerate_restricted_index_set,
    max_total_index,
    pi_coefficient,
    term_count,
)
from .scalar import majorant_coefficients, majorant_total

__all__ = [
    "Orientation",
    "Source",
    "TermBudgetError",
    "MatrixPolyCoefficients",
    "MatrixSeries",
    "TailBound",
    "SolveStep",
    "ResidualComparison",
    "operator_norm",
    "compute_coefficients",
    "compute_coefficients_explicit",
    "evaluate",
    "majorant_fit",
    "tail_bound",
    "residual",
    "naive_exponential",
    "recenter",
    "solve_stepped",
    "counterexample_coefficients",
    "counterexample_report",
]

EXPLICIT_TERM_BUDGET = 1_000_000


class Orientation(enum.Enum):
    """Which side A(t) multiplies on: LEFT is dR/dt = A R, RIGHT is dR/dt = R A."""

    LEFT = "left"
    RIGHT = "right"


class Source(enum.Enum):
    RECURSION = "recursion"
    EXPLICIT = "explicit"


class TermBudgetError(RuntimeError):
    """Raised when an explicit expansion would enumerate too many products."""

    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(
            f"explicit expansion needs {count} weighted products, "
            f"over the budget of {budget}"
        )


def _frozen(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MatrixPolyCoefficients:
    """Coefficients A_0..A_p of a matrix polynomial plus the side it acts on.

    RIGHT orientation is the row-vector convention used for Markov generators,
    where distributions evolve as p(t) = p(0) R(t).
    """

    matrices: tuple[np.ndarray, ...]
    orientation: Orientation = Orientation.LEFT

    def __post_init__(self) -> None:
        if len(self.matrices) == 0:
            raise ValueError("need at least the constant coefficient A_0")
        frozen = []
        dim = None
        for j, mat in enumerate(self.matrices):
            arr = np.asarray(mat, dtype=float)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(f"coefficient A_{j} is not a square matrix")
            if dim is None:
                dim = arr.shape[0]
            elif arr.shape[0] != dim:
                raise ValueError(
                    f"coefficient A_{j} is {arr.shape[0]}x{arr.shape[1]}, "
                    f"expected {dim}x{dim}"
                )
            frozen.append(_frozen(arr))
        object.__setattr__(self, "matrices", tuple(frozen))

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.matrices) - 1

    def value_at(self, t: float) -> np.ndarray:
        """A(t) by Horner evaluation."""
        acc = np.array(self.matrices[-1])
        for mat in reversed(self.matrices[:-1]):
            acc = acc * t + mat
        return acc


def operator_norm(mat: np.ndarray, orientation: Orientation) -> float:
    """Operator norm on the l1 side matching the orientation.

    LEFT acts on column vectors, so the induced norm is the max absolute
    column sum; RIGHT acts on row vectors, max absolute row sum.
    """
    arr = np.abs(np.asarray(mat, dtype=float))
    if arr.size == 0:
        return 0.0
    axis = 0 if orientation is Orientation.LEFT else 1
    return float(arr.sum(axis=axis).max())


@dataclass(frozen=True, eq=False)
class MatrixSeries:
    """Terms R_0 = I, R_1, ..., R_N of the series solution."""

    terms: tuple[np.ndarray, ...]
    orientation: Orientation
    source: Source

    def __post_init__(self) -> None:
        if len(self.terms) == 0:
            raise ValueError("series needs at least the order-0 term")
        dim = self.terms[0].shape[0]
        if not np.array_equal(self.terms[0], np.eye(dim)):
            raise ValueError("order-0 term must be exactly the identity")
        object.__setattr__(self, "terms", tuple(_frozen(m) for m in self.terms))

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def dim(self) -> int:
        return self.terms[0].shape[0]


@dataclass(frozen=True)
class TailBound:
    """Certified bound on the norm of the dropped tail past the given order at time t.

    b and d are the fitted majorant parameters; value is +inf outside the
    certified window b t < 1, which means "not certified here", not that the
    underlying series diverges.
    """

    order: int
    time: float
    value: float
    b: float
    d: float


def compute_coefficients(
    coeffs: MatrixPolyCoefficients, order: int
) -> MatrixSeries:
    """R_0..R_order from the fundamental recursion.

    LEFT: n R_n = sum_j A_j R_{n-1-j}; RIGHT multiplies the A_j from the
    right instead.  Coefficients beyond the stored degree are zero, so the
    inner sum truncates at min(p, n-1).
    """
    if order < 1:
        raise ValueError(f"series order must be >= 1, got {order}")
    dim = coeffs.dim
    left = coeffs.orientation is Orientation.LEFT
    mats = coeffs.matrices
    terms = [np.eye(dim)]
    for n in range(1, order + 1):
        acc = np.zeros((dim, dim))
        for j in range(min(coeffs.degree, n - 1) + 1):
            if left:
                acc += mats[j] @ terms[n - 1 - j]
            else:
                acc += terms[n - 1 - j] @ mats[j]
        terms.append(acc / n)
    return MatrixSeries(tuple(terms), coeffs.orientation, Source.RECURSION)


def compute_coefficients_explicit(
    coeffs: MatrixPolyCoefficients, n: int, term_budget: int = EXPLICIT_TERM_BUDGET
) -> np.ndarray:
    """The single coefficient R_n from the explicit weighted-product formula.

    R_n = sum over q and over multi-indices m in the restricted (n, q, p) set
    of pi(m) * A_{m_1} ... A_{m_{n-q}}, with the product order reversed for
    RIGHT orientation.  Shares no code path with the recursion, which is the
    point: the two must agree to float accuracy.

    Refuses to run when the number of products exceeds term_budget.
    """
    if n < 1:
        raise ValueError(f"coefficient order must be >= 1, got {n}")
    mats = coeffs.matrices
    p = coeffs.degree
    if p == 0:
        return np.linalg.matrix_power(mats[0], n) / math.factorial(n)
    count = term_count(n, p)
    if count > term_budget:
        raise TermBudgetError(count, term_budget)
    left = coeffs.orientation is Orientation.LEFT
    total = np.zeros((coeffs.dim, coeffs.dim))
    for q in range(max_total_index(n, p) + 1):
        for m in enumerate_restricted_index_set(n, q, p):
            order = m if left else tuple(reversed(m))
            product = np.array(mats[order[0]])
            for idx in order[1:]:
                product = product @ mats[idx]
            total += float(pi_coefficient(m)) * product
    return total


def evaluate(series: MatrixSeries, t: float) -> np.ndarray:
    """Value of the truncated series at t, by Horner evaluation."""
    acc = np.array(series.terms[-1])
    for term in reversed(series.terms[:-1]):
        acc = acc * t + term
    return acc


def majorant_fit(coeffs: MatrixPolyCoefficients) -> tuple[float, float]:
    """Fit (b, d) with ||A_j|| <= d b^j for every supplied coefficient.

    d is the j = 0 norm when positive (the smallest choice the j = 0
    constraint allows), falling back to the largest norm when A_0 = 0; b is
    then the smallest base covering the remaining coefficients.  An all-zero
    family fits (0, 0), for which every tail is exactly zero.
    """
    norms = [operator_norm(m, coeffs.orientation) for m in coeffs.matrices]
    if max(norms) == 0.0:
        return 0.0, 0.0
    d = norms[0] if norms[0] > 0 else max(norms)
    b = 0.0
    for j, nj in enumerate(norms[1:], start=1):
        if nj > 0:
            b = max(b, (nj / d) ** (1.0 / j))
    return b, d


def tail_bound(coeffs: MatrixPolyCoefficients, order: int, t: float) -> TailBound:
    """Bound on ||R(t) - partial sum through R_order t^order|| in the orientation norm.

    The fitted scalar majorant dominates ||R_n|| term by term, so its own
    tail (closed form minus partial sum, all terms positive) bounds the
    matrix tail.  Finite only inside the certified window b t < 1.  The
    subtraction is padded outward by an order-proportional few ulps of the
    closed form, so the certificate survives its own float rounding.
    """
    if order < 1:
        raise ValueError(f"series order must be >= 1, got {order}")
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    b, d = majorant_fit(coeffs)
    if d == 0.0:
        return TailBound(order, t, 0.0, b, d)
    total = majorant_total(b, d, t)
    if math.isinf(total):
        return TailBound(order, t, math.inf, b, d)
    partial = majorant_coefficients(b, d, order).partial_sum(t)
    pad = (2 * order + 10) * math.ulp(total)
    return TailBound(order, t, max(total - partial, 0.0) + pad, b, d)


def residual(
    coeffs: MatrixPolyCoefficients, series: MatrixSeries, t: float, h: float
) -> float:
    """Central-difference defect ||(R(t+h) - R(t-h)) / 2h - A(t) R(t)||.

    The product A(t) R(t) is taken on the orientation side and the defect is
    measured in the orientation norm.  Small residual at many t is evidence
    the truncated series actually solves the equation there.
    """
    if h <= 0:
        raise ValueError(f"finite-difference step must be > 0, got {h}")
    derivative = (evaluate(series, t + h) - evaluate(series, t - h)) / (2.0 * h)
    value = evaluate(series, t)
    at = coeffs.value_at(t)
    if coeffs.orientation is Orientation.LEFT:
        defect = derivative - at @ value
    else:
        defect = derivative - value @ at
    return operator_norm(defect, coeffs.orientation)


def naive_exponential(
    coeffs: MatrixPolyCoefficients, t: float, terms: int = 40
) -> np.ndarray:
    """Taylor partial sum of exp(B(t)) with B(t) = sum_j A_j t^(j+1) / (j+1).

    This is the would-be closed form obtained by exponentiating the
    antiderivative of A.  It solves the evolution equation only when the
    coefficient family commutes; it exists here as a diagnostic for how wrong
    that shortcut is, not as a solver.
    """
    if terms < 1:
        raise ValueError(f"need at least 1 Taylor term, got {terms}")
    dim = coeffs.dim
    b = np.zeros((dim, dim))
    for j, mat in enumerate(coeffs.matrices):
        b += mat * (t ** (j + 1) / (j + 1))
    out = np.eye(dim)
    term = np.eye(dim)
    for k in range(1, terms):
        term = term @ b / k
        out = out + term
    return out


def recenter(coeffs: MatrixPolyCoefficients, t0: float) -> MatrixPolyCoefficients:
    """Coefficients of s -> A(t0 + s): the binomial Taylor shift.

    Same degree, same orientation; exact apart from float rounding in the
    powers of t0.
    """
    p = coeffs.degree
    mats = coeffs.matrices
    shifted = []
    for j in range(p + 1):
        acc = np.zeros((coeffs.dim, coeffs.dim))
        for k in range(j, p + 1):
            acc += math.comb(k, j) * t0 ** (k - j) * mats[k]
        shifted.append(acc)
    return MatrixPolyCoefficients(tuple(shifted), coeffs.orientation)


@dataclass(frozen=True, eq=False)
class SolveStep:
    """One grid point of a stepped solve: time, propagator, accumulated bound."""

    t: float
    value: np.ndarray
    tail_bound: float


def solve_stepped(
    coeffs: MatrixPolyCoefficients, t_final: float, step: float, order: int
) -> list[SolveStep]:
    """R(t) on the grid {0, step, 2 step, ..., t_final}, one local expansion per step.

    Each step recenters the coefficients at the left endpoint, expands to the
    given order, advances by the step with the local series, and composes the
    propagators by multiplication on the orientation side.  The reported
    bound accumulates the local truncation bounds through the products
    (e_new = e_loc (||R_prev|| + e_prev) + ||R_loc|| e_prev), so it certifies
    the composed value rather than just the last step.  A final partial step
    covers t_final when it is not a multiple of step.
    """
    if step <= 0:
        raise ValueError(f"step must be > 0, got {step}")
    if not math.isfinite(t_final) or t_final < 0:
        raise ValueError(f"final time must be finite and >= 0, got {t_final}")
    left = coeffs.orientation is Orientation.LEFT
    current = np.eye(coeffs.dim)
    err = 0.0
    out = [SolveStep(0.0, _frozen(current), 0.0)]
    t_prev = 0.0
    k = 1
    while t_prev < t_final:
        t_next = min(k * step, t_final)
        h = t_next - t_prev
        local = recenter(coeffs, t_prev)
        series = compute_coefficients(local, order)
        r_loc = evaluate(series, h)
        bound_loc = tail_bound(local, order, h).value
        norm_prev = operator_norm(current, coeffs.orientation)
        norm_loc = operator_norm(r_loc, coeffs.orientation)
        current = r_loc @ current if left else current @ r_loc
        err = bound_loc * (norm_prev + err) + norm_loc * err
        out.append(SolveStep(t_next, _frozen(current), err))
        t_prev = t_next
        k += 1
    return out


def counterexample_coefficients() -> MatrixPolyCoefficients:
    """The 2x2 family A(t) = [[0, 1], [t, 0]] that breaks the exponential shortcut.

    Here B(t) = [[0, t], [t^2/2, 0]] fails to commute with B'(t) = A(t), so
    exp(B(t)) does not solve dR/dt = A(t) R(t); its (1,1) entry starts
    1 + t^3/4 + ... while the true solution needs 1 + t^3/6 + ....
    """
    a0 = np.array([[0.0, 1.0], [0.0, 0.0]])
    a1 = np.array([[0.0, 0.0], [1.0, 0.0]])
    return MatrixPolyCoefficients((a0, a1), Orientation.LEFT)


@dataclass(frozen=True)
class ResidualComparison:
    """Residuals of the series solution and the exponential shortcut at one time."""

    t: float
    series_residual: float
    exponential_residual: float

    @property
    def ratio(self) -> float:
        if self.series_residual == 0.0:
            return math.inf
        return self.exponential_residual / self.series_residual


def counterexample_report(
    times: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0),
    order: int = 30,
    h: float = 1e-4,
    exp_terms: int = 40,
) -> list[ResidualComparison]:
    """Residual comparison on a time grid for the counterexample family.

    The series residual uses the order-N Maclaurin solution; the exponential
    residual applies the same central-difference defect to the truncated
    exp(B(t)) candidate.
    """
    coeffs = counterexample_coefficients()
    series = compute_coefficients(coeffs, order)
    rows = []
    for t in times:
        series_res = residual(coeffs, series, t, h)
        plus = naive_exponential(coeffs, t + h, exp_terms)
        minus = naive_exponential(coeffs, t - h, exp_terms)
        center = naive_exponential(coeffs, t, exp_terms)
        defect = (plus - minus) / (2.0 * h) - coeffs.value_at(t) @ center
        exp_res = operator_norm(defect, coeffs.orientation)
        rows.append(ResidualComparison(t, series_res, exp_res))
    return rows
