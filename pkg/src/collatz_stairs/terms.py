"""Closed-form generation of subtree stairs.

The subtree hanging below 2^(2k) is rooted at Y_k/3 with Y_k = 2^(2k)-1.
Every candidate member of its j-th stair has the shape

    (2^f * Y_k - sum_{r=1..q-1} 2^(e_r) * 3^r) / 3^q

with f + q = j and a non-increasing exponent sequence e_1 >= ... >=
e_(q-1) drawn from [0, f-1].  The binary tree of candidates is an
over-approximation: a candidate is kept only if its numerator divides
exactly and its BVC survives verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import verifier

NON_INTEGER_NUMERATOR = "non_integer_numerator"

ACCEPTED = "accepted"
REJECTED = "rejected"


def y_k(k: int) -> int:
    """2^(2k) - 1, divisible by 3 with an odd quotient.

    k = 1 would give root 1, which lies inside the invariant, so only
    k >= 2 is allowed.
    """
    if k < 2:
        raise ValueError("subtree index k must be >= 2")
    return (1 << (2 * k)) - 1


def subtree_root(k: int) -> int:
    """Root of the k-th subtree: Y_k / 3."""
    return y_k(k) // 3


def enumerate_exponent_sequences(n: int, l: int) -> list[tuple[int, ...]]:
    """Non-increasing length-n sequences over [0..l], lexicographically
    descending (outer values run from l down to 0)."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    return [tuple(c) for c in combinations_with_replacement(range(l, -1, -1), n)]


@dataclass(frozen=True)
class TermExpr:
    """Symbolic stair term: owner (k, j), denominator exponent q, and the
    exponents of two paired with 3^1 .. 3^(q-1)."""

    k: int
    j: int
    q: int
    exps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(self.exps))
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.j < 1:
            raise ValueError("j must be >= 1")
        q_max = 1 if self.j == 1 else self.j - 1
        if not 1 <= self.q <= q_max:
            raise ValueError(f"q must lie in [1, {q_max}] for j={self.j}")
        if len(self.exps) != self.q - 1:
            raise ValueError("expected q-1 exponents")
        prev = self.f - 1
        for e in self.exps:
            if not 0 <= e <= self.f - 1:
                raise ValueError("exponents must lie in [0, f-1]")
            if e > prev:
                raise ValueError("exponent sequence must be non-increasing")
            prev = e

    @property
    def f(self) -> int:
        """Leading exponent of two; f + q = j always."""
        return self.j - self.q


def term_value(expr: TermExpr) -> int | None:
    """Exact value of a term, or None when the candidate is spurious.

    The full integer numerator is computed first and divided only after
    the divisibility test, so no rational arithmetic is ever needed.
    None means the numerator is not a positive multiple of 3^q.
    """
    num = y_k(expr.k) << expr.f
    p3 = 1
    for e in expr.exps:
        p3 *= 3
        num -= (1 << e) * p3
    if num <= 0:
        return None
    den = 3**expr.q
    if num % den:
        return None
    return num // den


def bvc_from_exponents(expr: TermExpr) -> str:
    """Verification code of a term, length j-2 (empty for j <= 2).

    Walking the path from the stair-2 node, every '0' (multiply by two)
    bumps all current exponents of two and every '1' appends a new
    summand with exponent 0.  Hence e_r is exactly the number of zeros
    after the r-th one-bit, which inverts to: emit (f-1) - e_1 zeros,
    then for each r a '1' followed by e_r - e_(r+1) zeros, reading
    e_q as 0.
    """
    if expr.j <= 2:
        return ""
    exps = expr.exps
    first = exps[0] if exps else 0
    parts = ["0" * (expr.f - 1 - first)]
    for r in range(1, expr.q):
        nxt = exps[r] if r < len(exps) else 0
        parts.append("1" + "0" * (exps[r - 1] - nxt))
    return "".join(parts)


def exponents_from_bvc(s: str, k: int) -> TermExpr:
    """Inverse of bvc_from_exponents: rebuild the term owning code s."""
    if any(c not in "01" for c in s):
        raise ValueError("BVC must be a string over {0, 1}")
    q = s.count("1") + 1
    j = len(s) + 2
    exps = []
    for pos, c in enumerate(s):
        if c == "1":
            exps.append(s.count("0", pos + 1))
    return TermExpr(k, j, q, tuple(exps))


@dataclass(frozen=True)
class StairTerm:
    """One evaluated candidate: value (None when the numerator does not
    divide), its code, and the rejection reason if any."""

    expr: TermExpr
    value: int | None
    bvc: str
    reason: str | None = None

    @property
    def accepted(self) -> bool:
        return self.reason is None

    @property
    def status(self) -> str:
        return ACCEPTED if self.accepted else REJECTED


@dataclass(frozen=True)
class Stair:
    """All candidates of the j-th stair of subtree k, in deterministic
    order: q ascending, exponent sequences lexicographically descending."""

    k: int
    j: int
    terms: tuple[StairTerm, ...] = field(repr=False)

    def accepted_terms(self) -> list[StairTerm]:
        return [t for t in self.terms if t.accepted]

    def rejected_terms(self) -> list[StairTerm]:
        return [t for t in self.terms if not t.accepted]

    def accepted_values(self) -> tuple[int, ...]:
        return tuple(sorted(t.value for t in self.terms if t.accepted))


def term_exprs(k: int, j: int, q: int) -> list[TermExpr]:
    """All candidate terms of stair j with denominator exponent q."""
    if j == 1:
        if q != 1:
            raise ValueError("stair 1 has q = 1 only")
        return [TermExpr(k, 1, 1, ())]
    f = j - q
    return [TermExpr(k, j, q, exps)
            for exps in enumerate_exponent_sequences(q - 1, f - 1)]


def evaluate_term(expr: TermExpr) -> StairTerm:
    """Evaluate and verify a single candidate."""
    value = term_value(expr)
    bvc = bvc_from_exponents(expr)
    if value is None:
        return StairTerm(expr, None, bvc, NON_INTEGER_NUMERATOR)
    result = verifier.verify_bvc(value, bvc)
    return StairTerm(expr, value, bvc, result.reason)


def generate_stair_q(k: int, j: int, q: int) -> list[StairTerm]:
    """Candidates for one (k, j, q) slice; slices are independent and can
    run on separate workers."""
    return [evaluate_term(expr) for expr in term_exprs(k, j, q)]


def generate_stair(k: int, j: int) -> Stair:
    """The j-th stair of the subtree rooted at Y_k/3.

    Enumerates all 2^(j-2) candidates (one for j = 1), evaluates each
    exactly, verifies its code, and keeps rejected candidates as data
    alongside the accepted members.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if j < 1:
        raise ValueError("j must be >= 1")
    qs = [1] if j == 1 else range(1, j)
    terms: list[StairTerm] = []
    for q in qs:
        terms.extend(generate_stair_q(k, j, q))
    return Stair(k, j, tuple(terms))
