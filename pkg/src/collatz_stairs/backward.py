"""Brute-force backward reachability: the ground-truth oracle.

Stairs are grown by breadth-first expansion of the inverse relation,
either from the cycle {1, 2, 4} or from a subtree root Y_k/3.  Only the
previous frontier is kept in memory; full histories belong to callers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ICLTZ, inverse_step
from .terms import subtree_root


@dataclass(frozen=True)
class StairSet:
    """Members of one stair, ascending and pairwise distinct."""

    index: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("stair index must be >= 1")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be strictly ascending")

    def __contains__(self, value: int) -> bool:
        return value in set(self.members)

    def __len__(self) -> int:
        return len(self.members)


def _expand(frontier: set[int]) -> set[int]:
    nxt: set[int] = set()
    for v in frontier:
        nxt |= inverse_step(v)
    return nxt


def stairs_icltz(j_max: int) -> list[StairSet]:
    """Stairs 1..j_max toward the cycle {1, 2, 4}.

    Stair 1 is the inverse image of the cycle minus the cycle itself,
    which is {8}; later stairs never touch the cycle again, but the
    exclusion of the seed is explicit rather than assumed.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    frontier = _expand(set(ICLTZ)) - ICLTZ
    stairs = []
    for j in range(1, j_max + 1):
        stairs.append(StairSet(j, tuple(sorted(frontier))))
        frontier = _expand(frontier)
    return stairs


def subtree_stairs_bfs(k: int, j: int) -> StairSet:
    """Ground-truth j-th stair of the subtree rooted at Y_k/3."""
    if j < 1:
        raise ValueError("j must be >= 1")
    frontier = {subtree_root(k)}
    for _ in range(j - 1):
        frontier = _expand(frontier)
    return StairSet(j, tuple(sorted(frontier)))


def subtree_levels(k: int, depth: int) -> list[list[tuple[int, str]]]:
    """Stairs 1..depth of subtree k with each member's path code.

    Codes count from the stair-2 node: its code is empty and each
    backward step appends '0' (doubling) or '1' (subtract one, divide by
    three).  The root carries an empty code as well; it sits above the
    code anchor.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    root = subtree_root(k)
    levels: list[list[tuple[int, str]]] = [[(root, "")]]
    if depth >= 2:
        levels.append([(2 * root, "")])
    while len(levels) < depth:
        nxt = []
        for v, code in levels[-1]:
            for child in sorted(inverse_step(v)):
                nxt.append((child, code + ("0" if child == 2 * v else "1")))
        nxt.sort()
        levels.append(nxt)
    return levels


def tree_structure(
    k: int | None, depth: int
) -> tuple[list[tuple[int, int, str | None]], list[tuple[int, int]]]:
    """Nodes and edges of a backward tree, `depth` stairs deep.

    k = None renders the {1, 2, 4} tree (cycle drawn at stair 0);
    otherwise the subtree rooted at Y_k/3.  Returns (nodes, edges) with
    nodes as (value, stair, code-or-None) and edges parent -> child in
    backward direction.  Order is deterministic: by stair, then value.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    nodes: list[tuple[int, int, str | None]] = []
    edges: list[tuple[int, int]] = []
    if k is None:
        cycle = sorted(ICLTZ)
        nodes.extend((v, 0, None) for v in cycle)
        for v in cycle:
            for child in sorted(inverse_step(v)):
                if child in ICLTZ:
                    edges.append((v, child))
        for stair in stairs_icltz(depth):
            nodes.extend((v, stair.index, None) for v in stair.members)
            for v in stair.members:
                edges.append((v // 2 if v % 2 == 0 else 3 * v + 1, v))
    else:
        levels = subtree_levels(k, depth)
        for stair_idx, level in enumerate(levels, start=1):
            for v, code in level:
                nodes.append((v, stair_idx, code if stair_idx >= 2 else None))
        for level in levels[1:]:
            for v, _ in level:
                # The parent of a frontier member is its unique forward
                # image: doubled children are even, quotient children odd.
                edges.append((v // 2 if v % 2 == 0 else 3 * v + 1, v))
    return nodes, edges


def tree_dot(k: int | None, depth: int) -> str:
    """DOT rendering of a backward tree.

    Nodes are labelled with value and stair index, plus the path code
    for subtree nodes from stair 2 on.  Pass k = None for the {1, 2, 4}
    tree.
    """
    nodes, edges = tree_structure(k, depth)
    name = "convergence_stairs" if k is None else f"subtree_k{k}"
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for value, stair, code in nodes:
        label = f"{value}\\nstair={stair}"
        if code is not None:
            label += f'\\nbvc=\\"{code}\\"'
        lines.append(f'  "{value}" [label="{label}"];')
    for parent, child in edges:
        lines.append(f'  "{parent}" -> "{child}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
