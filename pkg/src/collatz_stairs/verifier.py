"""Binary Verification Code checker.

A BVC is a bit string describing the backward path from the stair-2
node of a subtree down to a candidate value: '0' for multiply-by-two,
'1' for subtract-one-then-divide-by-three, written left to right in
path order.  Verification scans the string right to left, rebuilding
the ancestor chain with the forward Collatz rules and rejecting on the
first constraint violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# Rejection reason codes.
NOT_NATURAL = "not_natural"
POWER_OF_TWO = "power_of_two"
ANCESTOR_POWER_OF_TWO = "ancestor_power_of_two"
PARITY_VIOLATION = "parity_violation"
NON_INTEGER_ANCESTOR = "non_integer_ancestor"

# Parity rules, named after the offending bit value.
RULE_EVEN_UNDER_1 = "even_under_1"
RULE_BOTH_ODD_UNDER_1 = "both_odd_under_1"
RULE_ODD_UNDER_0 = "odd_under_0"


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of a BVC check.  Rejections are results, not errors.

    bit is 1-based from the left of the string (the scan runs from bit
    len(s) down to bit 1).  steps counts completed ancestor derivations;
    on acceptance it equals len(s) and final_ancestor holds the last
    value reached, which for a genuine stair term is the stair-2 node.
    """

    accepted: bool
    reason: str | None = None
    bit: int | None = None
    rule: str | None = None
    steps: int = 0
    final_ancestor: int | None = None

    def __post_init__(self):
        if self.accepted != (self.reason is None):
            raise ValueError("accepted exactly when there is no reason")

    def describe(self) -> str:
        if self.accepted:
            return "valid"
        if self.reason == NOT_NATURAL:
            return "not a natural number"
        if self.reason == POWER_OF_TWO:
            return "power-of-two"
        if self.reason == ANCESTOR_POWER_OF_TWO:
            return f"power-of-two ancestor at bit {self.bit}"
        if self.reason == PARITY_VIOLATION:
            return f"parity violation at bit {self.bit} ({self.rule})"
        return f"non-integer ancestor at bit {self.bit}"


def _reject(reason: str, bit: int | None = None, rule: str | None = None,
            steps: int = 0) -> VerificationResult:
    return VerificationResult(False, reason, bit, rule, steps)


def _as_exact_nat(x) -> int | None:
    """Collapse the real-valued precondition to an exactness check."""
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        v = x
    elif isinstance(x, float) and x.is_integer():
        v = int(x)
    elif isinstance(x, Fraction) and x.denominator == 1:
        v = int(x)
    else:
        return None
    return v if v >= 1 else None


def verify_bvc(x, s: str) -> VerificationResult:
    """Check that x is a legitimate Collatz number for the code s.

    The empty string is valid input: the scan loop runs zero times and
    only the naturalness and power-of-two checks apply.  Characters
    outside {0, 1} are malformed input and raise ValueError.
    """
    if any(c not in "01" for c in s):
        raise ValueError("BVC must be a string over {0, 1}")
    v = _as_exact_nat(x)
    if v is None:
        return _reject(NOT_NATURAL)
    if v & (v - 1) == 0:
        # Internal values of a subtree are never powers of two (1 = 2^0
        # included).
        return _reject(POWER_OF_TWO)
    steps = 0
    for i in range(len(s), 0, -1):
        if s[i - 1] == "1":
            # Parent was reached by subtract-one-divide-by-three, so the
            # forward rule here is 3x+1, which applies only to odd x.
            if v % 2 == 0:
                return _reject(PARITY_VIOLATION, i, RULE_EVEN_UNDER_1, steps)
            y = 3 * v + 1
            if y % 2 != 0:
                # Unreachable over exact integers (3*odd + 1 is even);
                # kept for parity with the 0-bit rule.
                return _reject(PARITY_VIOLATION, i, RULE_BOTH_ODD_UNDER_1, steps)
        else:
            # Forward rule x/2 applies only to even x; checking parity
            # first keeps the arithmetic in exact integers.
            if v % 2 != 0:
                return _reject(PARITY_VIOLATION, i, RULE_ODD_UNDER_0, steps)
            y = v // 2
        if y < 1:
            # Defense in depth; cannot trigger for v >= 1.
            return _reject(NON_INTEGER_ANCESTOR, i, steps=steps)
        if y & (y - 1) == 0:
            return _reject(ANCESTOR_POWER_OF_TWO, i, steps=steps)
        v = y
        steps += 1
    return VerificationResult(True, steps=steps, final_ancestor=v)
