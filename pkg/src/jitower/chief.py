"""Chief series, association of chief factors, and narrowness over them.

A chief factor K/L is a minimal jump in the normal lattice.  Most of the
interesting structure lives in how factors relate: association (same
"content" seen from two positions), covering, centralizers, and the
strict partial order induced by relative Mel'nikov subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Caps, DEFAULT_CAPS
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    commutator_subgroup,
    structure_profile,
)
from .homs import quotient_by
from .lattice import is_narrow, is_prime, melnikov, normal_subgroups
from .perms import pcomm


@dataclass(frozen=True)
class ChiefFactor:
    """A factor K/L with no normal subgroup strictly between L and K."""

    ambient: FiniteGroup
    K: SubgroupHandle
    L: SubgroupHandle

    def __post_init__(self):
        if self.K.ambient is not self.ambient or self.L.ambient is not self.ambient:
            raise ValueError("factor subgroups must live in the ambient group")
        if not (self.K.is_normal() and self.L.is_normal()):
            raise ValueError("chief factor needs normal K and L")
        if self.L.order >= self.K.order or not self.K.contains_subgroup(self.L):
            raise ValueError("chief factor needs L < K")
        lat = normal_subgroups(self.ambient)
        for m in lat.members:
            if (
                self.L.order < m.order < self.K.order
                and m.contains_subgroup(self.L)
                and self.K.contains_subgroup(m)
            ):
                raise ValueError("a normal subgroup lies strictly between L and K")
        # minimal jumps are characteristically simple; prime order is
        # immediate, otherwise inspect the realized quotient
        if not is_prime(self.order):
            Q = self.realized()[0]
            kind = structure_profile(Q).classification[0]
            assert kind in ("elem_abelian", "simple_power")

    @property
    def order(self) -> int:
        return self.K.order // self.L.order

    def realized(self):
        """The quotient K/L as a concrete group, with the projection."""
        Kgrp = self.K.as_group()
        Lsub = Kgrp.subgroup_from_elements(self.L.elements())
        return quotient_by(Kgrp, Lsub)

    def __repr__(self) -> str:
        return f"<chief factor {self.K.order}/{self.L.order} of order {self.order}>"


def chief_series(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> list[ChiefFactor]:
    """A maximal normal chain from 1 to G, bottom-up.

    Each step picks the minimal member above the current level, tie-broken
    by canonical key, so the series is deterministic.
    """
    lat = normal_subgroups(G, caps)
    series = []
    cur = lat.trivial
    while cur.order < G.order:
        above = [
            m for m in lat.members
            if m.order > cur.order and m.contains_subgroup(cur)
        ]
        nxt = min(
            (
                m for m in above
                if not any(
                    o.order < m.order and m.contains_subgroup(o) for o in above
                )
            ),
            key=lambda h: (h.order, h.canonical_key()),
        )
        series.append(ChiefFactor(G, nxt, cur))
        cur = nxt
    total = 1
    for f in series:
        total *= f.order
    assert total == G.order
    return series


def are_associated(f1: ChiefFactor, f2: ChiefFactor) -> bool:
    """K1·L2 = K2·L1 and each K_i meets L1·L2 in L_i."""
    if f1.ambient is not f2.ambient:
        raise ValueError("factors live in different groups")
    G = f1.ambient
    k1l2 = G.subgroup(tuple(f1.K.gen_tuples) + tuple(f2.L.gen_tuples))
    k2l1 = G.subgroup(tuple(f2.K.gen_tuples) + tuple(f1.L.gen_tuples))
    if k1l2.canonical_key() != k2l1.canonical_key():
        return False
    l1l2 = G.subgroup(tuple(f1.L.gen_tuples) + tuple(f2.L.gen_tuples)).elements()
    if (f1.K.elements() & l1l2) != f1.L.elements():
        return False
    return (f2.K.elements() & l1l2) == f2.L.elements()


def covers(N: SubgroupHandle, f: ChiefFactor) -> bool:
    """Does N·L contain K?"""
    if N.ambient is not f.ambient:
        raise ValueError("subgroup lives in a different group")
    if not N.is_normal():
        raise ValueError("covering is defined for normal subgroups")
    nl = f.ambient.subgroup(tuple(N.gen_tuples) + tuple(f.L.gen_tuples))
    return nl.contains_subgroup(f.K)


def factor_centralizer(f: ChiefFactor) -> SubgroupHandle:
    """All g with [K, g] ≤ L; the kernel of the conjugation action on K/L.

    Generator-level commutators with K suffice because K/L is generated
    by the images of K's generators.
    """
    G = f.ambient
    kgens = f.K.gen_tuples
    els = [
        g for g in G.sorted_elements()
        if all(f.L.contains(pcomm(k, g)) for k in kgens)
    ]
    return G.subgroup_from_elements(els)


def narrow_associated_to(f: ChiefFactor, caps: Caps = DEFAULT_CAPS) -> SubgroupHandle:
    """The canonical narrow subgroup associated to the factor.

    Minimal normal subgroups inside K but not inside L are exactly the
    narrow subgroups associated to K/L; ties go to the smallest canonical
    key.  The narrowness and the identity A ∩ L = M_G(A) are asserted
    post hoc rather than trusted.
    """
    G = f.ambient
    lat = normal_subgroups(G, caps)
    cand = [
        m for m in lat.members
        if f.K.contains_subgroup(m) and not f.L.contains_subgroup(m)
    ]
    minimal = [
        m for m in cand
        if not any(
            o.order < m.order and m.contains_subgroup(o) for o in cand
        )
    ]
    A = min(minimal, key=lambda h: h.canonical_key())
    assert is_narrow(G, A, caps).narrow
    meet = G.subgroup_from_elements(A.elements() & f.L.elements())
    assert meet.canonical_key() == melnikov(A, ambient_relative=G, caps=caps).canonical_key()
    return A


def nar_precedes(f1: ChiefFactor, f2: ChiefFactor, caps: Caps = DEFAULT_CAPS) -> bool:
    """f1 ≻ f2: L1 contains K2 and K1/L2 is narrow in G/L2 with M = L1/L2."""
    if f1.ambient is not f2.ambient:
        raise ValueError("factors live in different groups")
    G = f1.ambient
    if not f1.L.contains_subgroup(f2.K):
        return False
    Q, proj = quotient_by(G, f2.L, caps)
    k1_img = Q.subgroup([tuple(proj.apply(g)) for g in f1.K.gen_tuples])
    l1_img = Q.subgroup([tuple(proj.apply(g)) for g in f1.L.gen_tuples])
    m = melnikov(k1_img, ambient_relative=Q, caps=caps)
    return m.canonical_key() == l1_img.canonical_key()


@dataclass(frozen=True)
class CrosscheckResult:
    """One part of the Mel'nikov consistency check: lhs vs rhs."""

    case: str
    lhs: object
    rhs: object
    equal: bool


def melnikov_crosscheck(
    G: FiniteGroup, A: SubgroupHandle, caps: Caps = DEFAULT_CAPS
) -> list[CrosscheckResult]:
    """Cross-validate the narrow/Mel'nikov identities on a concrete pair.

    Always checks that [A, M_G(A)] lands in M(A); when A exceeds
    M(A)·[A,G], checks the narrowness criterion (prime index plus all
    chief quotients of A central); for nilpotent G, checks the closed
    form M_G(A) = M(A)·[A,G].
    """
    if A.ambient is not G:
        raise ValueError("subgroup handle does not live in the given ambient group")
    if A.is_trivial() or not A.is_normal():
        raise ValueError("crosscheck needs a nontrivial normal subgroup")

    results = []
    ma = melnikov(A, caps=caps)
    mga = melnikov(A, ambient_relative=G, caps=caps)

    comm = commutator_subgroup(A, mga, within=G)
    results.append(
        CrosscheckResult("i", comm, ma, ma.contains_subgroup(comm))
    )

    ag = commutator_subgroup(A, G.full_subgroup(), within=G)
    b = G.subgroup(tuple(ma.gen_tuples) + tuple(ag.gen_tuples))
    if b.order < A.order and A.contains_subgroup(b):
        narrow = is_narrow(G, A, caps).narrow
        lat = normal_subgroups(G, caps)
        tops = lat.maximal_below(A)
        all_central = all(c.contains_subgroup(ag) for c in tops)
        criterion = is_prime(A.order // b.order) and all_central
        results.append(CrosscheckResult("ii", narrow, criterion, narrow == criterion))
        if narrow:
            assert mga.canonical_key() == b.canonical_key()

    if structure_profile(G).nilpotent:
        results.append(
            CrosscheckResult("iii", mga, b, mga.canonical_key() == b.canonical_key())
        )
    return results
