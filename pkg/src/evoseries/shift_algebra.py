"""Normal forms in the operator algebra generated by U and the down-shift S.

On one-sided sequence space, with S_r the up-shift and S = S_l the down-shift,
the letter U stands for -I + S_r.  The only relation needed is U S = I - S
(S U = I - S fails: S_r S_l is not the identity), and it rewrites any word
over {U, S} into an integer-coefficient combination of canonical monomials
S^s U^k with all shifts in front.  Powers of the birth-death coefficient
lam U - mu S U then split into a head polynomial in U plus S^s-prefixed tail
polynomials, the delayed contributions.

Words are strings over the letters U and S; coefficients stay exact
(fractions.Fraction) throughout.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ShiftPolynomial",
    "IdentityReport",
    "BinomialGroupDecomposition",
    "POWER_GUARD",
    "reduce",
    "word_power_mixed",
    "shift_identities_check",
    "binomial_group",
    "power_expand",
    "realize",
    "up_shift_matrix",
    "down_shift_matrix",
    "letter_matrix",
]

POWER_GUARD = 12


def _as_terms(items) -> tuple:
    cleaned = {}
    for (s, k), coeff in items:
        if s < 0 or k < 0:
            raise ValueError(f"monomial exponents must be >= 0, got S^{s} U^{k}")
        frac = Fraction(coeff)
        if frac != 0:
            cleaned[(s, k)] = cleaned.get((s, k), Fraction(0)) + frac
    return tuple(sorted((key, c) for key, c in cleaned.items() if c != 0))


class ShiftPolynomial:
    """Finite sum of monomials c * S^s U^k with exact rational coefficients.

    Canonical: no zero coefficients, terms sorted by (s, k).  Two polynomials
    are equal exactly when their term lists are.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        self._terms = _as_terms(terms)

    @classmethod
    def monomial(cls, s: int, k: int, coeff=1) -> "ShiftPolynomial":
        return cls([((s, k), coeff)])

    @classmethod
    def identity(cls) -> "ShiftPolynomial":
        return cls.monomial(0, 0)

    @classmethod
    def zero(cls) -> "ShiftPolynomial":
        return cls()

    @property
    def terms(self) -> tuple:
        return self._terms

    def coefficient(self, s: int, k: int) -> Fraction:
        for key, coeff in self._terms:
            if key == (s, k):
                return coeff
        return Fraction(0)

    @property
    def max_shift(self) -> int:
        return max((s for (s, _), _ in self._terms), default=0)

    @property
    def max_power(self) -> int:
        return max((k for (_, k), _ in self._terms), default=0)

    def is_zero(self) -> bool:
        return len(self._terms) == 0

    def with_delay(self, s: int) -> "ShiftPolynomial":
        """Left-multiply by S^s; exact on canonical monomials."""
        if s < 0:
            raise ValueError(f"delay must be >= 0, got {s}")
        return ShiftPolynomial(
            ((shift + s, k), c) for (shift, k), c in self._terms
        )

    def __add__(self, other: "ShiftPolynomial") -> "ShiftPolynomial":
        return ShiftPolynomial(list(self._terms) + list(other._terms))

    def __sub__(self, other: "ShiftPolynomial") -> "ShiftPolynomial":
        return self + (-other)

    def __neg__(self) -> "ShiftPolynomial":
        return ShiftPolynomial((key, -c) for key, c in self._terms)

    def __mul__(self, scalar) -> "ShiftPolynomial":
        return ShiftPolynomial((key, c * Fraction(scalar)) for key, c in self._terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "ShiftPolynomial(0)"
        parts = [f"{c} S^{s} U^{k}" for (s, k), c in self._terms]
        return "ShiftPolynomial(" + " + ".join(parts) + ")"


def _parse_word(word) -> tuple[str, ...]:
    if isinstance(word, str):
        letters = tuple(word.replace(" ", "").upper())
    else:
        letters = tuple(str(c).upper() for c in word)
    for c in letters:
        if c not in ("U", "S"):
            raise ValueError(f"words may contain only U and S, got {c!r}")
    return letters


def reduce(word, rng: random.Random | None = None) -> ShiftPolynomial:
    """Canonical form of a word over {U, S}.

    Repeatedly replaces one U S adjacency by I - S (two branch words, the
    second with flipped sign) until every surviving word has all its shifts in
    front, then collects the S^s U^k monomials.  Every rewrite removes one U,
    so the process terminates.  The adjacency picked is the leftmost one
    unless rng is supplied, in which case a random one: the normal form is
    order-independent, and the randomized mode lets tests exercise that.
    """
    letters = _parse_word(word)
    pending: list[tuple[tuple[str, ...], Fraction]] = [(letters, Fraction(1))]
    collected: dict[tuple[int, int], Fraction] = {}
    while pending:
        w, c = pending.pop()
        spots = [i for i in range(len(w) - 1) if w[i] == "U" and w[i + 1] == "S"]
        if not spots:
            key = (w.count("S"), w.count("U"))
            collected[key] = collected.get(key, Fraction(0)) + c
            continue
        i = spots[0] if rng is None else rng.choice(spots)
        pending.append((w[:i] + w[i + 2 :], c))
        pending.append((w[:i] + ("S",) + w[i + 2 :], -c))
    return ShiftPolynomial(collected)


def word_power_mixed(p: int, q: int) -> ShiftPolynomial:
    """Closed form for U^p (S U)^q without any rewriting.

    U^p (S U)^q = sum_{k=0}^{p-1} (-1)^k C(q+k-1, k) U^{p-k}
                + sum_{k=p}^{q+p-1} (-1)^k C(q+p-1, k) S^{k-p+1} U.

    The first sum is the head (pure powers of U); the second collapses every
    delayed contribution to a single trailing U.
    """
    if p < 1 or q < 1:
        raise ValueError(f"need p >= 1 and q >= 1, got p={p}, q={q}")
    terms: dict[tuple[int, int], Fraction] = {}
    for k in range(p):
        terms[(0, p - k)] = Fraction((-1) ** k * math.comb(q + k - 1, k))
    for k in range(p, q + p):
        terms[(k - p + 1, 1)] = Fraction((-1) ** k * math.comb(q + p - 1, k))
    return ShiftPolynomial(terms)


def _binomial_in_s(power: int, extra_s: int = 0, u_prefix: int = 0) -> ShiftPolynomial:
    # U^{u_prefix} (I - S)^{power} S^{extra_s}, reduced to canonical form.
    acc = ShiftPolynomial.zero()
    for k in range(power + 1):
        word = "U" * u_prefix + "S" * (k + extra_s)
        acc = acc + reduce(word) * ((-1) ** k * math.comb(power, k))
    return acc


@dataclass(frozen=True)
class IdentityReport:
    """Results of the three structural identities at one (q, r).

    absorb:   U^q S^(q+r-1) == (I - S)^q S^(r-1)
    transfer: U^(q+r) S^q == U^r (I - S)^q
    peel:     U^r (I - S)^q == U^r (I - S)^(q-1) - U^(r-1) (I - S)^q
    """

    q: int
    r: int
    absorb: bool
    transfer: bool
    peel: bool

    @property
    def all_pass(self) -> bool:
        return self.absorb and self.transfer and self.peel


def shift_identities_check(q: int, r: int) -> IdentityReport:
    """Check the power-cancellation identities by reducing both sides.

    Left sides are raw words put through reduce; right sides are built from
    binomial expansions of (I - S), so agreement exercises the rewriting on
    genuinely different routes.
    """
    if q < 1 or r < 1:
        raise ValueError(f"need q >= 1 and r >= 1, got q={q}, r={r}")
    absorb_lhs = reduce("U" * q + "S" * (q + r - 1))
    absorb_rhs = ShiftPolynomial(
        {(k + r - 1, 0): Fraction((-1) ** k * math.comb(q, k)) for k in range(q + 1)}
    )
    transfer_lhs = reduce("U" * (q + r) + "S" * q)
    transfer_rhs = _binomial_in_s(q, u_prefix=r)
    peel_lhs = _binomial_in_s(q, u_prefix=r)
    peel_rhs = _binomial_in_s(q - 1, u_prefix=r) - _binomial_in_s(q, u_prefix=r - 1)
    return IdentityReport(
        q=q,
        r=r,
        absorb=absorb_lhs == absorb_rhs,
        transfer=transfer_lhs == transfer_rhs,
        peel=peel_lhs == peel_rhs,
    )


@dataclass(frozen=True)
class BinomialGroupDecomposition:
    """Reduced sum over all interleavings of m plain-U atoms and j S U atoms.

    head collects the undelayed part (monomials S^0 U^k) as a polynomial in
    U; tails[i] is the polynomial in U behind the prefix S^(i+1).  Both are
    stored as ShiftPolynomials with zero shift, so combined() rebuilds the
    group as head + sum_s S^s tails[s-1].
    """

    m: int
    j: int
    head: ShiftPolynomial
    tails: tuple[ShiftPolynomial, ...]

    @property
    def k(self) -> int:
        return self.m + self.j

    def combined(self) -> ShiftPolynomial:
        total = self.head
        for i, tail in enumerate(self.tails, start=1):
            total = total + tail.with_delay(i)
        return total


def binomial_group(m: int, j: int) -> BinomialGroupDecomposition:
    """Sum of reduce over the C(m+j, m) interleavings of U atoms and S U atoms.

    These groups are what the binomial theorem would produce for
    (lam U - mu S U)^k if the atoms commuted; they do not, so each group keeps
    every ordering.  Guarded at k = m + j <= 12: the word count and rewrite
    trees grow exponentially past that.
    """
    if m < 0 or j < 0 or m + j < 1:
        raise ValueError(f"need m, j >= 0 with m + j >= 1, got m={m}, j={j}")
    k = m + j
    if k > POWER_GUARD:
        raise ValueError(
            f"group order {k} exceeds the expansion guard {POWER_GUARD}"
        )
    total = ShiftPolynomial.zero()
    for positions in itertools.combinations(range(k), m):
        chosen = set(positions)
        word = "".join("U" if slot in chosen else "SU" for slot in range(k))
        total = total + reduce(word)
    head = ShiftPolynomial(
        (key, c) for key, c in total.terms if key[0] == 0
    )
    tails = []
    for s in range(1, total.max_shift + 1):
        tails.append(
            ShiftPolynomial(
                ((0, key[1]), c) for key, c in total.terms if key[0] == s
            )
        )
    return BinomialGroupDecomposition(m=m, j=j, head=head, tails=tuple(tails))


def power_expand(power: int, lam, mu) -> ShiftPolynomial:
    """(lam U - mu S U)^power in canonical form, coefficients exact.

    Expands through the binomial groups: sum over m of
    (-1)^(power-m) lam^m mu^(power-m) times the (m, power-m) group.
    """
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    if power > POWER_GUARD:
        raise ValueError(
            f"power {power} exceeds the expansion guard {POWER_GUARD}"
        )
    lam = Fraction(lam)
    mu = Fraction(mu)
    total = ShiftPolynomial.zero()
    for m in range(power + 1):
        j = power - m
        group = binomial_group(m, j).combined()
        total = total + group * ((-1) ** j * lam**m * mu**j)
    return total


def up_shift_matrix(size: int) -> np.ndarray:
    """Truncation of the up-shift S_r: ones on the first superdiagonal."""
    return np.eye(size, k=1)


def down_shift_matrix(size: int) -> np.ndarray:
    """Truncation of the down-shift S = S_l: ones on the first subdiagonal."""
    return np.eye(size, k=-1)


def letter_matrix(letter: str, size: int) -> np.ndarray:
    """Truncated matrix for a single word letter: U = -I + S_r, S = S_l."""
    if letter == "U":
        return -np.eye(size) + up_shift_matrix(size)
    if letter == "S":
        return down_shift_matrix(size)
    raise ValueError(f"unknown letter {letter!r}")


def realize(poly: ShiftPolynomial, size: int) -> np.ndarray:
    """Matrix of the polynomial on the size x size truncation.

    Truncation breaks the infinite-dimensional relations near the last rows,
    so two expressions equal in the algebra agree only on a leading block;
    callers comparing a realized word of length L should restrict to the
    first size - L rows and columns.  Requires size > max_shift + max_power
    so at least one row survives.
    """
    if size <= poly.max_shift + poly.max_power:
        raise ValueError(
            f"size {size} too small for monomials up to "
            f"S^{poly.max_shift} U^{poly.max_power}"
        )
    u = letter_matrix("U", size)
    s = letter_matrix("S", size)
    out = np.zeros((size, size))
    for (sh, kp), coeff in poly.terms:
        mono = np.linalg.matrix_power(s, sh) @ np.linalg.matrix_power(u, kp)
        out += float(coeff) * mono
    return out
