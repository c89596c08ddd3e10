"""Shared test fixtures and brute-force oracles.

The oracles here are deliberately independent of the library internals:
closure is a plain BFS over image tuples with its own composition, so
chain-based orders and memberships are checked against something that
cannot share a bug with them.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply p, then q (matches the library's left-to-right convention)."""
    return tuple(q[p[i]] for i in range(len(p)))


def brute_close(gens: Iterable[Sequence[int]], degree: int) -> frozenset[tuple[int, ...]]:
    """All products of generators, by BFS. Independent of the library."""
    gens = [tuple(g) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def cyc(degree: int, *cycles: Sequence[int]) -> tuple[int, ...]:
    """Permutation tuple from disjoint cycles, test-local."""
    images = list(range(degree))
    for c in cycles:
        for i, pt in enumerate(c):
            images[pt] = c[(i + 1) % len(c)]
    return tuple(images)


# Generator sets used across test modules.
GENS = {
    "C2": [cyc(2, (0, 1))],
    "C3": [cyc(3, (0, 1, 2))],
    "C4": [cyc(4, (0, 1, 2, 3))],
    "C6": [cyc(6, (0, 1, 2, 3, 4, 5))],
    "C16": [cyc(16, tuple(range(16)))],
    "klein": [cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))],
    "S3": [cyc(3, (0, 1)), cyc(3, (0, 1, 2))],
    "D4": [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 2))],
    "A4": [cyc(4, (0, 1, 2)), cyc(4, (0, 1), (2, 3))],
    "S4": [cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))],
    "A5": [cyc(5, (0, 1, 2)), cyc(5, (2, 3, 4))],
    "S5": [cyc(5, (0, 1)), cyc(5, (0, 1, 2, 3, 4))],
    # Q8 as a regular representation on its 8 elements {1,-1,i,-i,j,-j,k,-k}.
    "Q8": [
        (2, 3, 1, 0, 7, 6, 4, 5),  # right multiplication by i
        (4, 5, 6, 7, 1, 0, 3, 2),  # right multiplication by j
    ],
    # C2 wr C2 on 4 points: two bottom swaps plus the block swap.
    "W2": [cyc(4, (0, 1)), cyc(4, (2, 3)), cyc(4, (0, 2), (1, 3))],
}

ORDERS = {
    "C2": 2, "C3": 3, "C4": 4, "C6": 6, "C16": 16, "klein": 4,
    "S3": 6, "D4": 8, "A4": 12, "S4": 24, "A5": 60, "S5": 120,
    "Q8": 8, "W2": 8,
}
