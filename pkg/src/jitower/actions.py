"""Group actions on finite point sets, subprimitivity, basal decompositions.

An action is stored as one permutation of the point set per group
generator and validated through hom_from_images, so every GroupAction
carries a genuine homomorphism into the symmetric group on its points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .config import DEFAULT_CAPS, Caps
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    structure_profile,
)
from .homs import GroupHom, hom_from_images, quotient_by
from .perms import Permutation, identity_tuple, pconj, pmul


class GroupAction:
    """An action of `group` on {0, …, degree-1}."""

    __slots__ = ("group", "degree", "images", "hom")

    def __init__(self, group: FiniteGroup, degree: int, images: Sequence[Sequence[int]]):
        if degree < 1:
            raise ValueError("action degree must be positive")
        imgs = []
        for p in images:
            q = p if isinstance(p, Permutation) else Permutation(p)
            if q.degree != degree:
                raise ValueError(f"action image degree {q.degree} != {degree}")
            imgs.append(q)
        self.group = group
        self.degree = degree
        self.images = tuple(imgs)
        image_group = FiniteGroup(degree, imgs or [Permutation.identity(degree)])
        self.hom: GroupHom = hom_from_images(group, image_group, imgs)

    def perm_of(self, g: Sequence[int]) -> Permutation:
        """The permutation of the point set induced by the group element g."""
        return self.hom.apply(g)

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        return _orbits(self.images, self.degree)

    def kernel(self) -> SubgroupHandle:
        return self.hom.kernel()

    def is_faithful(self) -> bool:
        return self.kernel().is_trivial()

    def restricted_to(self, points: Sequence[int]) -> "GroupAction":
        """The same group acting on an invariant subset, points reindexed ascending."""
        pts = sorted(points)
        pos = {p: i for i, p in enumerate(pts)}
        imgs = []
        for q in self.images:
            if any(q[p] not in pos for p in pts):
                raise ValueError("point set is not invariant")
            imgs.append(tuple(pos[q[p]] for p in pts))
        return GroupAction(self.group, len(pts), imgs)

    def __repr__(self) -> str:
        return f"GroupAction(|G|={self.group.order}, degree={self.degree})"


def _orbits(images: Sequence[Sequence[int]], degree: int) -> tuple[tuple[int, ...], ...]:
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        i = 0
        while i < len(orbit):
            pt = orbit[i]
            i += 1
            for q in images:
                nxt = q[pt]
                if not seen[nxt]:
                    seen[nxt] = True
                    orbit.append(nxt)
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def natural_action(G: FiniteGroup) -> GroupAction:
    """G acting on its own points by its generators."""
    return GroupAction(G, G.degree, G.generators)


def regular_action(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> GroupAction:
    """G acting on itself by right multiplication; degree equals |G|."""
    els = G.sorted_elements(caps.enumeration_cap)
    rank = {e: i for i, e in enumerate(els)}
    images = [
        Permutation.__raw__(tuple(rank[pmul(e, x)] for e in els))
        for x in G.gen_tuples
    ]
    return GroupAction(G, len(els), images)


@dataclass(frozen=True)
class ActionProfile:
    orbits: tuple[tuple[int, ...], ...]
    kernel: SubgroupHandle
    transitive: bool
    primitive: bool

    @property
    def faithful(self) -> bool:
        return self.kernel.is_trivial()


def _merge_blocks(images: Sequence[Sequence[int]], degree: int, alpha: int, beta: int) -> list[int]:
    """Finest G-congruence identifying alpha and beta (union-find closure)."""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(alpha, beta)]
    ra, rb = find(alpha), find(beta)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)
    while queue:
        x, y = queue.pop()
        for q in images:
            a, b = find(q[x]), find(q[y])
            if a != b:
                parent[max(a, b)] = min(a, b)
                queue.append((q[x], q[y]))
    return [find(i) for i in range(degree)]


def action_profile(a: GroupAction) -> ActionProfile:
    orbits = a.orbits()
    transitive = len(orbits) == 1
    primitive = False
    if transitive and a.degree >= 1:
        primitive = True
        for beta in range(1, a.degree):
            reps = _merge_blocks(a.images, a.degree, 0, beta)
            block = sum(1 for r in reps if r == reps[0])
            if block != a.degree:
                primitive = False
                break
    return ActionProfile(orbits, a.kernel(), transitive, primitive)


def _intersection_order(
    H: SubgroupHandle,
    K: SubgroupHandle,
    caps: Caps,
) -> int:
    small, big = (H, K) if H.order <= K.order else (K, H)
    return sum(1 for e in small.elements(caps.enumeration_cap) if big.contains(e))


def _sub_action(a: GroupAction, H: SubgroupHandle) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """H as its own group together with its images in the ambient action."""
    Hgrp = H.as_group()
    return Hgrp, [tuple(a.hom.apply(h)) for h in H.gen_tuples]


def _orbit_kernel_order(
    Hgrp: FiniteGroup,
    h_images: list[tuple[int, ...]],
    orbit: Sequence[int],
) -> int:
    pos = {p: i for i, p in enumerate(orbit)}
    restricted = [tuple(pos[q[p]] for p in orbit) for q in h_images]
    tgt = FiniteGroup(len(orbit), restricted or [identity_tuple(len(orbit))])
    f = hom_from_images(Hgrp, tgt, restricted)
    return f.kernel().order


def is_subprimitive(a: GroupAction, method: str = "def13", caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether every normal subgroup acts faithfully on each of its orbits
    once the global kernel is factored out.

    method "def13": for every normal H of the acting group, the kernel of H
    on each H-orbit must equal H ∩ K where K is the global kernel.
    method "lemma62": for every L normal in some normal K' of the acting
    group, L acts trivially or fixes no point.  The two must agree.
    """
    from .lattice import normal_subgroups

    G = a.group
    if method == "def13":
        K = a.kernel()
        for H in normal_subgroups(G, caps).members:
            if H.is_trivial():
                continue
            Hgrp, h_images = _sub_action(a, H)
            hk = _intersection_order(H, K, caps)
            for orbit in _orbits(h_images, a.degree):
                if _orbit_kernel_order(Hgrp, h_images, orbit) != hk:
                    return False
        return True
    if method == "lemma62":
        for Kp in normal_subgroups(G, caps).members:
            if Kp.is_trivial():
                continue
            Kgrp = Kp.as_group()
            for Lsub in normal_subgroups(Kgrp, caps).members:
                l_images = [tuple(a.hom.apply(x)) for x in Lsub.gen_tuples]
                if all(q == identity_tuple(a.degree) for q in l_images):
                    continue  # acts trivially
                fixed = [
                    pt for pt in range(a.degree)
                    if all(q[pt] == pt for q in l_images)
                ]
                if fixed:
                    return False
        return True
    raise ValueError(f"unknown subprimitivity method: {method!r}")


def basal_decomposition(
    G: FiniteGroup,
    U: SubgroupHandle,
    caps: Caps = DEFAULT_CAPS,
) -> Optional[SubgroupHandle]:
    """A proper subgroup V < U whose distinct G-conjugates pairwise commute
    and generate U, or None when U is basally centrally indecomposable in G.

    Any witness is centralized by every other conjugate and normalized by
    itself, so it is normal in U; scanning the normal subgroups of U,
    smallest order first with canonical tie-breaking, therefore finds the
    canonically least witness without a full subgroup enumeration.
    """
    from .lattice import normal_subgroups

    if U.ambient is not G:
        raise ValueError("U must be a subgroup handle of G")
    if G.is_abelian():
        # Every subgroup is its own full conjugacy class, forcing V = U.
        return None
    Ugrp = U.as_group()
    for cand in normal_subgroups(Ugrp, caps).members:
        if cand.order == 1 or cand.order == U.order:
            continue
        v = G.subgroup(cand.gen_tuples, order=cand.order)
        if _is_basal_witness(G, U, v):
            return v
    return None


def _is_basal_witness(G: FiniteGroup, U: SubgroupHandle, V: SubgroupHandle) -> bool:
    # Distinct G-conjugates of V.
    cls: dict = {V.canonical_key(): V}
    frontier = [V]
    while frontier:
        s = frontier.pop()
        for g in G.gen_tuples:
            c = G.subgroup([pconj(x, g) for x in s.gen_tuples])
            ck = c.canonical_key()
            if ck not in cls:
                cls[ck] = c
                frontier.append(c)
    conjugates = [cls[k] for k in sorted(cls)]
    if len(conjugates) == 1:
        return False  # class {V} would force V = U, excluded by properness
    # Pairwise commuting: generator-level checks suffice.
    for i, A in enumerate(conjugates):
        for B in conjugates[i + 1:]:
            for x in A.gen_tuples:
                for y in B.gen_tuples:
                    if pmul(x, y) != pmul(y, x):
                        return False
    joined_gens = [x for c in conjugates for x in c.gen_tuples]
    return G.subgroup(joined_gens).order == U.order


def centralizer(G: FiniteGroup, H: SubgroupHandle, caps: Caps = DEFAULT_CAPS) -> SubgroupHandle:
    """C_G(H) by scanning G's elements."""
    h_gens = H.gen_tuples
    els = [
        e for e in G.sorted_elements(caps.enumeration_cap)
        if all(pmul(e, h) == pmul(h, e) for h in h_gens)
    ]
    return G.subgroup_from_elements(els)


def normalizer(G: FiniteGroup, H: SubgroupHandle, caps: Caps = DEFAULT_CAPS) -> SubgroupHandle:
    """N_G(H) by scanning G's elements."""
    h_gens = H.gen_tuples
    els = [
        e for e in G.sorted_elements(caps.enumeration_cap)
        if all(H.contains(pconj(h, e)) for h in h_gens)
    ]
    return G.subgroup_from_elements(els)


def outer_quotient_soluble(G: FiniteGroup, F: SubgroupHandle, caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether N_G(F) / (F · C_G(F)) is soluble."""
    N = normalizer(G, F, caps)
    C = centralizer(G, F, caps)
    Ngrp = N.as_group()
    inner = Ngrp.subgroup(list(F.gen_tuples) + list(C.gen_tuples))
    Q, _ = quotient_by(Ngrp, inner, caps)
    return structure_profile(Q).soluble


def factor_permutation_action(G: FiniteGroup, factors: Sequence[SubgroupHandle]) -> GroupAction:
    """G permuting a conjugation-closed family of subgroups.

    The factor list is sorted by canonical key, so generator images are
    deterministic index permutations.
    """
    ordered = sorted(factors, key=lambda f: f.canonical_key())
    index = {f.canonical_key(): i for i, f in enumerate(ordered)}
    images = []
    for g in G.gen_tuples:
        row = []
        for f in ordered:
            c = G.subgroup([pconj(x, g) for x in f.gen_tuples])
            k = c.canonical_key()
            if k not in index:
                raise ValueError("factor family is not closed under conjugation")
            row.append(index[k])
        images.append(Permutation(tuple(row)))
    return GroupAction(G, len(ordered), images)
