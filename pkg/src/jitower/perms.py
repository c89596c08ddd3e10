"""Permutations of {0, ..., n-1} in one-line notation.

A permutation is a tuple of images: p[i] is where point i goes.  Products
read left to right, (p * q)(i) == q[p[i]], so "p then q".  The module-level
helpers pmul/pinv/pconj operate on plain tuples and are what the group
algorithms use in their inner loops.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "identity_tuple",
    "pmul",
    "pinv",
    "pconj",
    "pcomm",
    "perm_order",
    "cycles_of",
]


def identity_tuple(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def pmul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Product "p then q": (p*q)[i] = q[p[i]]."""
    return tuple(q[i] for i in p)


def pinv(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def pconj(x: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """Conjugate x^g = g^-1 x g (apply g-inverse, then x, then g)."""
    gi = pinv(g)
    return tuple(g[x[gi[i]]] for i in range(len(x)))


def pcomm(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Commutator [a, b] = a^-1 b^-1 a b."""
    return pmul(pmul(pinv(a), pinv(b)), pmul(a, b))


def pglue(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p acting on the first len(p) points, q shifted onto the rest."""
    n = len(p)
    return tuple(p) + tuple(n + v for v in q)


def cycles_of(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each rotated to start at its least point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p)), 1)


class Permutation(tuple):
    """A permutation as a tuple of images; degree is the tuple length.

    The constructor validates that the images form a bijection.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> "Permutation":
        t = tuple(images)
        n = len(t)
        seen = [False] * n
        for v in t:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {t!r}")
            seen[v] = True
        return tuple.__new__(cls, t)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if not 0 <= a < degree:
                    raise ValueError(f"cycle point {a} out of range for degree {degree}")
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __mul__(self, other: Sequence[int]) -> "Permutation":  # type: ignore[override]
        if len(self) != len(other):
            raise ValueError("degree mismatch")
        return Permutation.__raw__(pmul(self, other))

    def __rmul__(self, other):  # pragma: no cover - symmetry with __mul__
        if not isinstance(other, tuple):
            return NotImplemented
        return Permutation.__raw__(pmul(other, self))

    def __pow__(self, n: int) -> "Permutation":  # type: ignore[override]
        if n < 0:
            return self.inverse() ** (-n)
        out = identity_tuple(len(self))
        base = tuple(self)
        while n:
            if n & 1:
                out = pmul(out, base)
            base = pmul(base, base)
            n >>= 1
        return Permutation.__raw__(out)

    @classmethod
    def __raw__(cls, images: tuple[int, ...]) -> "Permutation":
        # internal: skip validation for values produced by pmul/pinv
        return tuple.__new__(cls, images)

    def inverse(self) -> "Permutation":
        return Permutation.__raw__(pinv(self))

    def apply(self, point: int) -> int:
        return self[point]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def order(self) -> int:
        return perm_order(self)

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of(self)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({len(self)})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"<perm deg={len(self)} {body}>"
