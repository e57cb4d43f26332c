"""Exact arithmetic for the Collatz map: forward steps, the inverse
relation, orbits, and stair indices relative to the two invariants.

Everything here works on plain Python ints (arbitrary precision) and is
a pure function of its inputs.  Natural numbers start at 1; passing 0
raises ValueError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

#: The closed cycle {4 -> 2 -> 1 -> 4}.
ICLTZ = frozenset({1, 2, 4})

#: Forward orbits are not known to terminate, so every forward loop runs
#: under a step budget and fails loudly instead of hanging.
DEFAULT_MAX_STEPS = 10**6


class BudgetExceeded(RuntimeError):
    """A forward orbit did not reach its target within the step budget."""

    def __init__(self, start: int, steps: int):
        super().__init__(f"orbit of {start} did not converge within {steps} steps")
        self.start = start
        self.steps = steps


class InternalContradiction(RuntimeError):
    """An impossible state was reached; aborting is safer than guessing.

    Raised when a forward orbit first hits a power of two whose exponent
    is odd or below 4.  No such orbit exists (2^m - 1 is divisible by 3
    only for even m), so seeing one means the arithmetic is broken.
    """


def _check_nat(x: int) -> None:
    if x < 1:
        raise ValueError(f"expected a natural number >= 1, got {x}")


def collatz_step(x: int) -> int:
    """One application of the Collatz function: x/2 if even, else 3x+1."""
    _check_nat(x)
    return x // 2 if x % 2 == 0 else 3 * x + 1


def inverse_step(x: int) -> set[int]:
    """Backward step: the set of y with collatz_step(y) == x.

    Always contains 2x; contains (x-1)/3 as well iff that quotient is an
    odd integer >= 1.  Result has one or two elements.
    """
    _check_nat(x)
    preds = {2 * x}
    if x % 3 == 1:
        y = (x - 1) // 3
        if y >= 1 and y % 2 == 1:
            preds.add(y)
    return preds


def power_of_two_exponent(x: int) -> int | None:
    """Return m if x == 2**m, else None."""
    _check_nat(x)
    if x & (x - 1):
        return None
    return x.bit_length() - 1


def is_power_of_two(x: int) -> bool:
    return power_of_two_exponent(x) is not None


def orbit(
    n: int,
    stop: Callable[[int], bool],
    max_steps: int = DEFAULT_MAX_STEPS,
) -> list[int]:
    """Forward orbit of n, ending at the first element satisfying stop.

    Raises BudgetExceeded if stop never holds within max_steps
    applications of the Collatz function.
    """
    _check_nat(n)
    seq = [n]
    x = n
    for _ in range(max_steps):
        if stop(x):
            return seq
        x = x // 2 if x % 2 == 0 else 3 * x + 1
        seq.append(x)
    if stop(x):
        return seq
    raise BudgetExceeded(n, len(seq) - 1)


def stair_index_icltz(n: int, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Minimal j with f_c^j(n) in {1, 2, 4}; 0 for members of the cycle."""
    _check_nat(n)
    x = n
    j = 0
    while x not in ICLTZ:
        if j >= max_steps:
            raise BudgetExceeded(n, j)
        x = x // 2 if x % 2 == 0 else 3 * x + 1
        j += 1
    return j


@dataclass(frozen=True)
class StairIndex:
    """Position of a value relative to the powers-of-two invariant.

    steps is the minimal number of forward steps to reach a power of
    two; subtree is the k with f_c^steps(n) == 2^(2k), or None when n is
    already a power of two (steps == 0).
    """

    steps: int
    subtree: int | None

    def __post_init__(self):
        if (self.steps == 0) != (self.subtree is None):
            raise ValueError("steps == 0 exactly for values inside the invariant")
        if self.subtree is not None and self.subtree < 2:
            raise ValueError("subtree index must be >= 2")

    @property
    def in_invariant(self) -> bool:
        return self.subtree is None


def stair_index_iu(n: int, max_steps: int = DEFAULT_MAX_STEPS) -> StairIndex:
    """Stair and subtree of n with respect to the powers of two.

    Walks the forward orbit to the first power of two 2^m.  The exponent
    m is necessarily even and >= 4; an odd m would contradict the fact
    that 2^m - 1 is divisible by 3 only for even m, so it raises
    InternalContradiction instead of being skipped.
    """
    _check_nat(n)
    if n & (n - 1) == 0:
        return StairIndex(0, None)
    x = n
    j = 0
    while True:
        if j >= max_steps:
            raise BudgetExceeded(n, j)
        x = x // 2 if x % 2 == 0 else 3 * x + 1
        j += 1
        if x & (x - 1) == 0:
            m = x.bit_length() - 1
            if m % 2 != 0 or m < 4:
                raise InternalContradiction(
                    f"orbit of {n} first reached 2^{m}, which should be impossible"
                )
            return StairIndex(j, m // 2)
