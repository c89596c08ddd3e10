"""Named small-group factory used by builders, the CLI, and spec descriptors.

Supported names: C<n> (cyclic), S<n> (symmetric), A<n> (alternating, n >= 3),
D<n> (dihedral of order 2n, n >= 3), klein, Q8, SL25 (alias "SL(2,5)",
acting on the 24 nonzero vectors of a 2-dimensional space over GF(5)).
"""

from __future__ import annotations

import math
import re

from .groups import FiniteGroup
from .perms import Permutation


def _cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1, [Permutation.identity(1)])
    return FiniteGroup(n, [Permutation.from_cycles(n, tuple(range(n)))])


def _symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1, [Permutation.identity(1)])
    if n == 2:
        return _cyclic(2)
    G = FiniteGroup(n, [
        Permutation.from_cycles(n, (0, 1)),
        Permutation.from_cycles(n, tuple(range(n))),
    ])
    assert G.order == math.factorial(n)
    return G


def _alternating(n: int) -> FiniteGroup:
    if n < 3:
        raise ValueError("alternating groups need n >= 3")
    if n == 3:
        return FiniteGroup(3, [Permutation.from_cycles(3, (0, 1, 2))])
    # (0 1 2) plus an even long cycle generate A_n.
    if n % 2 == 1:
        long = Permutation.from_cycles(n, tuple(range(n)))
    else:
        long = Permutation.from_cycles(n, tuple(range(1, n)))
    G = FiniteGroup(n, [Permutation.from_cycles(n, (0, 1, 2)), long])
    assert G.order == math.factorial(n) // 2
    return G


def _dihedral(n: int) -> FiniteGroup:
    if n < 3:
        raise ValueError("dihedral groups need n >= 3")
    rot = Permutation.from_cycles(n, tuple(range(n)))
    refl = Permutation(tuple((n - i) % n for i in range(n)))
    G = FiniteGroup(n, [rot, refl])
    assert G.order == 2 * n
    return G


def _klein() -> FiniteGroup:
    return FiniteGroup(4, [
        Permutation.from_cycles(4, (0, 1), (2, 3)),
        Permutation.from_cycles(4, (0, 2), (1, 3)),
    ])


def _quaternion() -> FiniteGroup:
    # Regular representation on {1, -1, i, -i, j, -j, k, -k}.
    G = FiniteGroup(8, [
        Permutation((2, 3, 1, 0, 7, 6, 4, 5)),
        Permutation((4, 5, 6, 7, 1, 0, 3, 2)),
    ])
    assert G.order == 8
    return G


def _sl25() -> FiniteGroup:
    """SL(2,5) acting on the 24 nonzero vectors of GF(5)^2."""
    vectors = [(a, b) for a in range(5) for b in range(5) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def mat_perm(m) -> Permutation:
        (a, b), (c, d) = m
        images = []
        for (x, y) in vectors:
            images.append(index[((a * x + b * y) % 5, (c * x + d * y) % 5)])
        return Permutation(tuple(images))

    s = mat_perm(((0, 4), (1, 0)))   # [[0,-1],[1,0]]
    t = mat_perm(((1, 1), (0, 1)))
    G = FiniteGroup(24, [s, t])
    assert G.order == 120
    return G


def named_group(name: str) -> FiniteGroup:
    """Resolve a group descriptor to a permutation group."""
    clean = name.strip()
    if clean.lower() == "klein":
        return _klein()
    if clean.upper() == "Q8":
        return _quaternion()
    if clean.upper() in ("SL25", "SL(2,5)"):
        return _sl25()
    m = re.fullmatch(r"([CcSsAaDd])(\d+)", clean)
    if not m:
        raise ValueError(f"unknown group name: {name!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if n < 1:
        raise ValueError(f"bad group size in {name!r}")
    if family == "C":
        return _cyclic(n)
    if family == "S":
        return _symmetric(n)
    if family == "A":
        return _alternating(n)
    return _dihedral(n)
