"""Index sets and exact rational weights for the noncommutative series coefficients.

The order-n coefficient of the series solution to dR/dt = A(t) R(t) is a sum
of weighted products A_{m_1} ... A_{m_{n-q}} over integer tuples m grouped by
their total index q = sum(m).  This module enumerates those tuples, computes
the exact weight attached to each product, and provides the two independent
weight-sum formulas whose agreement validates the construction.

A multi-index is a plain tuple of nonnegative ints.  For a tuple drawn from
the (n, q) family, sum(m) == q and len(m) == n - q, so n is recoverable as
sum(m) + len(m); nothing else is stored.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

MultiIndex = tuple[int, ...]

__all__ = [
    "MultiIndex",
    "total_index",
    "total_exponent",
    "max_total_index",
    "enumerate_index_set",
    "enumerate_restricted_index_set",
    "pi_coefficient",
    "pi_sum",
    "multinomial_pi_sum",
    "term_count",
]


def total_index(m: MultiIndex) -> int:
    return sum(m)


def total_exponent(m: MultiIndex) -> int:
    return len(m)


def max_total_index(n: int, p: int) -> int:
    """Largest total index q that a degree-p coefficient family reaches at order n.

    Tuples of length n - q with entries capped at p can sum to q only while
    q <= p (n - q), i.e. q <= floor(p n / (p + 1)).
    """
    return (p * n) // (p + 1)


def _check_order_index(n: int, q: int) -> None:
    if n < 1:
        raise ValueError(f"series order n must be >= 1, got {n}")
    if not 0 <= q <= n - 1:
        raise ValueError(f"total index q must lie in [0, {n - 1}] for n={n}, got {q}")


def _compositions(total: int, length: int, cap: int) -> Iterator[MultiIndex]:
    # Lexicographically ascending tuples in {0..cap}^length with the given sum.
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for first in range(min(cap, total) + 1):
        rest = total - first
        if rest > cap * (length - 1):
            continue
        for tail in _compositions(rest, length - 1, cap):
            yield (first,) + tail


def enumerate_index_set(n: int, q: int) -> Iterator[MultiIndex]:
    """All length-(n-q) tuples of nonnegative ints summing to q, lexicographically.

    Tuples are generated lazily; the full set at large n is huge and callers
    usually fold over it rather than materialize it.
    """
    _check_order_index(n, q)
    return _compositions(q, n - q, q)


def enumerate_restricted_index_set(n: int, q: int, p: int) -> Iterator[MultiIndex]:
    """The (n, q) tuples whose entries do not exceed p, lexicographically.

    These are the indices that actually contribute when the coefficient family
    stops at A_p.  Valid only for q <= max_total_index(n, p).
    """
    if p < 1:
        raise ValueError(f"coefficient degree p must be >= 1, got {p}")
    _check_order_index(n, q)
    cutoff = max_total_index(n, p)
    if q > cutoff:
        raise ValueError(
            f"total index q={q} exceeds the degree-{p} cutoff {cutoff} at order n={n}"
        )
    return _compositions(q, n - q, p)


def pi_coefficient(m: MultiIndex) -> Fraction:
    """Exact weight of the product selected by the multi-index m.

    The weight is the product of reciprocals of nested suffix sums: position j
    (1-based) contributes the factor m_j + ... + m_last + (len(m) - j + 1).
    A single right-to-left pass accumulates the suffix sums.  The leading
    factor is always sum(m) + len(m) = n and the trailing one m_last + 1.
    """
    if len(m) == 0:
        raise ValueError("multi-index must be nonempty")
    denominator = 1
    suffix = 0
    for offset, entry in enumerate(reversed(m), start=1):
        if entry < 0:
            raise ValueError(f"multi-index entries must be nonnegative, got {m}")
        suffix += entry
        denominator *= suffix + offset
    return Fraction(1, denominator)


def pi_sum(n: int, q: int, p: int) -> Fraction:
    """Sum of pi_coefficient over the restricted (n, q, p) index set, exactly."""
    total = Fraction(0)
    for m in enumerate_restricted_index_set(n, q, p):
        total += pi_coefficient(m)
    return total


def multinomial_pi_sum(n: int, q: int, p: int) -> Fraction:
    """The same weight sum computed from exponent counts instead of tuples.

    Sums 1 / (k_1! ... k_{p+1}! * 1^{k_1} * 2^{k_2} * ... * (p+1)^{k_{p+1}})
    over exponent vectors k with k_1 + ... + k_{p+1} = n - q and
    k_1 + 2 k_2 + ... + (p+1) k_{p+1} = n.  Counts how often each coefficient
    appears in a product rather than where, so it must agree with pi_sum; the
    agreement is a nontrivial identity and a primary correctness check.
    """
    if p < 1:
        raise ValueError(f"coefficient degree p must be >= 1, got {p}")
    _check_order_index(n, q)
    if q > max_total_index(n, p):
        raise ValueError(
            f"total index q={q} exceeds the degree-{p} cutoff at order n={n}"
        )
    total = Fraction(0)
    for k in _compositions(n - q, p + 1, n - q):
        if sum(j * kj for j, kj in enumerate(k, start=1)) != n:
            continue
        denominator = 1
        for j, kj in enumerate(k, start=1):
            denominator *= math.factorial(kj) * j**kj
        total += Fraction(1, denominator)
    return total


def _bounded_count(length: int, total: int, cap: int) -> int:
    # |{x in {0..cap}^length : sum(x) = total}| by inclusion-exclusion.
    count = 0
    for i in range(length + 1):
        rest = total - i * (cap + 1)
        if rest < 0:
            break
        count += (-1) ** i * math.comb(length, i) * math.comb(rest + length - 1, length - 1)
    return count


def term_count(n: int, p: int) -> int:
    """Number of weighted products contributing at order n for a degree-p family.

    Counted without enumeration so callers can budget-check before expanding.
    For p = 1 the counts follow the Fibonacci recurrence.
    """
    if n < 1:
        raise ValueError(f"series order n must be >= 1, got {n}")
    if p < 1:
        raise ValueError(f"coefficient degree p must be >= 1, got {p}")
    return sum(
        _bounded_count(n - q, q, p) for q in range(max_total_index(n, p) + 1)
    )
