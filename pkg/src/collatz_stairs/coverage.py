"""Forward-direction verification and empirical coverage probes.

verify_forward re-runs a generated term through the Collatz function and
checks it lands on 2^(2k) in exactly j steps.  check_equivalence pits
the closed-form generator against the backward BFS oracle.
coverage_scan classifies every natural up to a bound by (subtree,
stair), the bounded stand-in for the open question whether the union of
all stairs covers the naturals.
"""

from __future__ import annotations

import json
import multiprocessing
from array import array
from dataclasses import dataclass

from .backward import subtree_stairs_bfs
from .core import DEFAULT_MAX_STEPS, InternalContradiction
from .terms import generate_stair

#: Fixed scan chunk size; independent of the worker count so reports are
#: byte-identical however the work is distributed.
DEFAULT_CHUNK_SIZE = 1 << 16

#: Orbit positions are cached per process to speed up dense scans: slot v
#: holds (k << 32) | j for values below the cap, 0 when unknown.  The
#: cache stores pure facts, so reuse across calls cannot change results;
#: the flat array keeps it at 16 MB.
_MEMO_CAP = 1 << 21
_memo: array | None = None


def _get_memo() -> array:
    global _memo
    if _memo is None:
        _memo = array("Q", bytes(8 * (_MEMO_CAP + 1)))
    return _memo


def verify_forward(value: int, k: int, j: int) -> bool:
    """True iff value reaches 2^(2k) in exactly j steps with no earlier
    power of two anywhere in the orbit (the value itself included)."""
    if value < 1:
        raise ValueError("value must be >= 1")
    x = value
    for _ in range(j):
        if x & (x - 1) == 0:
            return False
        x = x // 2 if x % 2 == 0 else 3 * x + 1
    return x == 1 << (2 * k)


@dataclass(frozen=True)
class EquivalenceMismatch:
    """First disagreement between generator and BFS oracle."""

    j: int
    value: int
    direction: str  # "generated_only" | "bfs_only"


def first_mismatch(generated: set[int], ground_truth: set[int],
                   j: int) -> EquivalenceMismatch | None:
    """Smallest value on which two stair sets disagree, if any."""
    diff = generated.symmetric_difference(ground_truth)
    if not diff:
        return None
    value = min(diff)
    direction = "generated_only" if value in generated else "bfs_only"
    return EquivalenceMismatch(j, value, direction)


def check_equivalence(
    k: int, j_max: int
) -> tuple[bool, EquivalenceMismatch | None]:
    """Compare generated and BFS stairs for all j <= j_max."""
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    for j in range(1, j_max + 1):
        generated = set(generate_stair(k, j).accepted_values())
        ground_truth = set(subtree_stairs_bfs(k, j).members)
        mismatch = first_mismatch(generated, ground_truth, j)
        if mismatch is not None:
            return False, mismatch
    return True, None


def _stair_key(n: int, budget: int) -> tuple[int, int] | None:
    """(k, j) of a non-power-of-two n, or None when j would exceed the
    budget.  Walks the forward orbit, reusing and extending the memo."""
    memo = _get_memo()
    path = []
    x = n
    while True:
        if x <= _MEMO_CAP:
            enc = memo[x]
            if enc:
                k, j = enc >> 32, enc & 0xFFFFFFFF
                break
        if x & (x - 1) == 0:
            m = x.bit_length() - 1
            if m % 2 != 0 or m < 4:
                raise InternalContradiction(
                    f"orbit of {n} first reached 2^{m}, which should be impossible"
                )
            k, j = m // 2, 0
            break
        if len(path) > budget:
            return None
        path.append(x)
        x = 3 * x + 1 if x & 1 else x >> 1
    for back, v in enumerate(reversed(path), start=1):
        if v <= _MEMO_CAP and j + back < 1 << 32:
            memo[v] = (k << 32) | (j + back)
    total = j + len(path)
    return None if total > budget else (k, total)


def scan_chunk(lo: int, hi: int, budget: int) -> dict:
    """Classify every n in [lo, hi): invariant member, placed at (k, j),
    or budget exceeded.  Pure function of its arguments."""
    in_invariant = 0
    histogram: dict[tuple[int, int], int] = {}
    exceeded: list[int] = []
    for n in range(lo, hi):
        if n & (n - 1) == 0:
            in_invariant += 1
            continue
        key = _stair_key(n, budget)
        if key is None:
            exceeded.append(n)
        else:
            histogram[key] = histogram.get(key, 0) + 1
    return {
        "lo": lo,
        "hi": hi,
        "in_invariant": in_invariant,
        "histogram": histogram,
        "exceeded": exceeded,
    }


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of a coverage scan over 2..bound.

    The conjecture holds empirically on the range iff budget_exceeded is
    empty.  Chunks record how the range was partitioned, so partial
    scans can be reproduced and merged.
    """

    bound: int
    budget: int
    chunk_size: int
    chunks: tuple[tuple[int, int], ...]
    in_invariant: int
    budget_exceeded: tuple[int, ...]
    histogram: dict[tuple[int, int], int]

    def __post_init__(self):
        if self.placed + self.in_invariant + len(self.budget_exceeded) != self.bound - 1:
            raise ValueError("classification must cover 2..bound exactly")

    @property
    def placed(self) -> int:
        return sum(self.histogram.values())

    def to_json(self) -> str:
        """Deterministic serialization: fixed key order, sorted entries."""
        doc = {
            "bound": self.bound,
            "budget": self.budget,
            "chunk_size": self.chunk_size,
            "chunks": [list(c) for c in self.chunks],
            "in_invariant": self.in_invariant,
            "placed": self.placed,
            "budget_exceeded": list(self.budget_exceeded),
            "histogram": [
                {"k": k, "j": j, "count": self.histogram[(k, j)]}
                for k, j in sorted(self.histogram)
            ],
        }
        return json.dumps(doc, indent=2) + "\n"


def _scan_worker(args: tuple[int, int, int]) -> dict:
    return scan_chunk(*args)


def coverage_scan(
    bound: int,
    budget: int = DEFAULT_MAX_STEPS,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> CoverageReport:
    """Classify all naturals in 2..bound.

    Chunks are processed in range order (concurrently when workers > 1)
    and merged deterministically, so the report bytes depend only on
    (bound, budget, chunk_size).
    """
    if bound < 2:
        raise ValueError("bound must be >= 2")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    chunks = [
        (lo, min(lo + chunk_size, bound + 1))
        for lo in range(2, bound + 1, chunk_size)
    ]
    tasks = [(lo, hi, budget) for lo, hi in chunks]
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(min(workers, len(tasks))) as pool:
            results = pool.map(_scan_worker, tasks)
    else:
        results = [_scan_worker(t) for t in tasks]
    in_invariant = 0
    exceeded: list[int] = []
    histogram: dict[tuple[int, int], int] = {}
    for res in results:
        in_invariant += res["in_invariant"]
        exceeded.extend(res["exceeded"])
        for key, count in res["histogram"].items():
            histogram[key] = histogram.get(key, 0) + count
    return CoverageReport(
        bound=bound,
        budget=budget,
        chunk_size=chunk_size,
        chunks=tuple(chunks),
        in_invariant=in_invariant,
        budget_exceeded=tuple(sorted(exceeded)),
        histogram=histogram,
    )
