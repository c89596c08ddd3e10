"""Normal-subgroup lattices and the subgroup operators built on them.

The lattice of a group is the ground set for everything downstream:
Mel'nikov subgroups (intersections of maximal (invariant) subgroups),
narrowness, p-radicals, Frattini subgroups, and obliquity cores.  All of
it is brute force over explicit subgroup lists, with one structural fast
path for iterated wreath products that avoids enumerating the big group.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Optional, Union

from .config import Caps, DEFAULT_CAPS, CapExceeded
from .groups import FiniteGroup, SubgroupHandle, commutator_subgroup, is_simple
from .homs import quotient_by
from .perms import identity_tuple, pconj, pmul
from .wreathspec import StructuredWreathSpec, WreathData, materialize_levels


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _tuple_pow(t: tuple[int, ...], k: int) -> tuple[int, ...]:
    res = identity_tuple(len(t))
    for _ in range(k):
        res = pmul(res, t)
    return res


# -- the lattice type -------------------------------------------------------


class NormalLattice:
    """The set of normal subgroups of a fixed ambient group.

    Immutable after construction.  Members are deduplicated by canonical
    key and held in (order, key) order, so the trivial subgroup is first
    and the full group last.
    """

    __slots__ = ("ambient", "members", "_by_key")

    def __init__(self, ambient: FiniteGroup, members: list[SubgroupHandle]):
        by_key: dict[tuple, SubgroupHandle] = {}
        for h in members:
            by_key.setdefault(h.canonical_key(), h)
        ordered = sorted(by_key.values(), key=lambda h: (h.order, h.canonical_key()))
        self.ambient = ambient
        self.members = tuple(ordered)
        self._by_key = {h.canonical_key(): h for h in ordered}

    @classmethod
    def from_members(cls, ambient: FiniteGroup, members) -> "NormalLattice":
        return cls(ambient, list(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, h: SubgroupHandle) -> bool:
        return h.canonical_key() in self._by_key

    def member_like(self, h: SubgroupHandle) -> SubgroupHandle:
        """The lattice's own handle with the same canonical key as h."""
        return self._by_key[h.canonical_key()]

    @property
    def trivial(self) -> SubgroupHandle:
        return self.members[0]

    @property
    def full(self) -> SubgroupHandle:
        return self.members[-1]

    def join(self, a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
        j = self.ambient.subgroup(tuple(a.gen_tuples) + tuple(b.gen_tuples))
        key = j.canonical_key()
        if key not in self._by_key:
            raise AssertionError("lattice is not join-closed")
        return self._by_key[key]

    def meet(self, a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
        m = self.ambient.subgroup_from_elements(a.elements() & b.elements())
        key = m.canonical_key()
        if key not in self._by_key:
            raise AssertionError("lattice is not meet-closed")
        return self._by_key[key]

    def below(self, a: SubgroupHandle) -> list[SubgroupHandle]:
        """Members strictly contained in a (a itself need not be a member)."""
        return [m for m in self.members if m.order < a.order and a.contains_subgroup(m)]

    def maximal_below(self, a: SubgroupHandle) -> list[SubgroupHandle]:
        """Maximal elements of the members strictly below a."""
        cand = self.below(a)
        return [
            m for m in cand
            if not any(o.order > m.order and o.contains_subgroup(m) for o in cand)
        ]

    def minimal_members(self) -> list[SubgroupHandle]:
        """The atoms: minimal nontrivial members."""
        nontriv = [m for m in self.members if m.order > 1]
        return [
            m for m in nontriv
            if not any(o.order < m.order and m.contains_subgroup(o) for o in nontriv)
        ]

    def maximal_members(self) -> list[SubgroupHandle]:
        """Maximal proper members."""
        return self.maximal_below(self.full)


# -- lattice construction ---------------------------------------------------

_lattice_cache: "weakref.WeakKeyDictionary[FiniteGroup, NormalLattice]" = (
    weakref.WeakKeyDictionary()
)


def normal_subgroups(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> NormalLattice:
    """Every normal subgroup of G.

    Seeds with the normal closures of conjugacy-class representatives,
    closes under join, then runs a meet pass.  A normal subgroup is a
    union of classes and hence the join of its classes' closures, so the
    join closure alone is already complete; the meet pass is a cheap
    consistency guard.
    """
    cached = _lattice_cache.get(G)
    if cached is not None:
        return cached
    if G.order > caps.max_order:
        raise CapExceeded("normal lattice order", G.order, caps.max_order)

    found: dict[tuple, SubgroupHandle] = {}

    def add(h: SubgroupHandle) -> bool:
        key = h.canonical_key()
        if key in found:
            return False
        found[key] = h
        return True

    add(G.trivial_subgroup())
    add(G.full_subgroup())
    for cls in G.conjugacy_classes():
        if len(cls) == 1 and cls[0] == identity_tuple(G.degree):
            continue
        add(G.normal_closure([cls[0]]))

    # join closure
    while True:
        batch = sorted(found.values(), key=lambda h: (h.order, h.canonical_key()))
        new = []
        for i, a in enumerate(batch):
            for b in batch[i + 1:]:
                j = G.subgroup(tuple(a.gen_tuples) + tuple(b.gen_tuples))
                if j.canonical_key() not in found:
                    new.append(j)
        if not new:
            break
        for h in new:
            add(h)

    # meet pass (mathematically a no-op, kept as a closure guard)
    batch = sorted(found.values(), key=lambda h: (h.order, h.canonical_key()))
    for i, a in enumerate(batch):
        for b in batch[i + 1:]:
            m = G.subgroup_from_elements(a.elements() & b.elements())
            add(m)

    lat = NormalLattice(G, list(found.values()))
    _lattice_cache[G] = lat
    return lat


# -- Mel'nikov subgroups and narrowness --------------------------------------


def _intersect_all(
    G: FiniteGroup, handles: list[SubgroupHandle]
) -> SubgroupHandle:
    # empty intersection convention: the whole group
    if not handles:
        return G.full_subgroup()
    els = set(handles[0].elements())
    for h in handles[1:]:
        els &= h.elements()
    return G.subgroup_from_elements(els)


def melnikov(
    A: Union[FiniteGroup, SubgroupHandle],
    ambient_relative: Optional[FiniteGroup] = None,
    caps: Caps = DEFAULT_CAPS,
) -> SubgroupHandle:
    """M(A), or M_G(A) when an ambient group is given.

    M(A) is the intersection of the maximal normal subgroups of A itself;
    M_G(A) is the intersection of the maximal members of the ambient
    lattice strictly below A.
    """
    if ambient_relative is None:
        if isinstance(A, FiniteGroup):
            Agrp, wrap = A, A
        else:
            Agrp, wrap = A.as_group(), A.ambient
        if Agrp.order == 1:
            raise ValueError("Melnikov subgroup of a trivial group is undefined")
        lat = normal_subgroups(Agrp, caps)
        maxes = lat.maximal_members()
        inter = _intersect_all(Agrp, maxes)
        return wrap.subgroup_from_elements(inter.elements())

    G = ambient_relative
    if isinstance(A, FiniteGroup):
        raise ValueError("relative Melnikov subgroup needs a subgroup handle")
    if A.ambient is not G:
        raise ValueError("subgroup handle does not live in the given ambient group")
    if A.is_trivial():
        raise ValueError("Melnikov subgroup of a trivial subgroup is undefined")
    if not A.is_normal():
        raise ValueError("relative Melnikov subgroup needs a normal subgroup")
    lat = normal_subgroups(G, caps)
    maxes = lat.maximal_below(A)
    return _intersect_all(G, maxes)


@dataclass(frozen=True)
class NarrownessResult:
    narrow: bool
    unique_max: Optional[SubgroupHandle]


def is_narrow(
    G: FiniteGroup, A: SubgroupHandle, caps: Caps = DEFAULT_CAPS
) -> NarrownessResult:
    """Is there a unique maximal G-invariant subgroup of A?"""
    if A.ambient is not G:
        raise ValueError("subgroup handle does not live in the given ambient group")
    if A.is_trivial():
        raise ValueError("narrowness of the trivial subgroup is undefined")
    if not A.is_normal():
        raise ValueError("narrowness needs a normal subgroup")
    maxes = normal_subgroups(G, caps).maximal_below(A)
    if len(maxes) == 1:
        return NarrownessResult(True, maxes[0])
    return NarrownessResult(False, None)


# -- p-radicals and Frattini subgroups ---------------------------------------


@dataclass(frozen=True)
class RadicalProfile:
    Op_lower: SubgroupHandle
    Op_upper: SubgroupHandle
    frattini: SubgroupHandle
    frattini_of_Op: SubgroupHandle


def _frattini_by_formula(G: FiniteGroup, H: SubgroupHandle, p: int) -> SubgroupHandle:
    # for a p-group: the agreement subgroup [H,H]·H^p
    Hgrp = H.as_group()
    seeds = list(commutator_subgroup(Hgrp, Hgrp).gen_tuples)
    seeds += [_tuple_pow(g, p) for g in Hgrp.gen_tuples]
    closure = Hgrp.normal_closure(seeds)
    return G.subgroup_from_elements(closure.elements())


def _frattini_by_maximals(G: FiniteGroup, caps: Caps) -> SubgroupHandle:
    subs = all_subgroups(G, caps=caps)
    proper = [h for h in subs if h.order < G.order]
    maxes = [
        h for h in proper
        if not any(o.order > h.order and o.contains_subgroup(h) for o in proper)
    ]
    return _intersect_all(G, maxes)


def p_radicals(G: FiniteGroup, p: int, caps: Caps = DEFAULT_CAPS) -> RadicalProfile:
    """O_p(G), O^p(G), Φ(G) and Φ(O_p(G))."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    lat = normal_subgroups(G, caps)

    # O^p: intersection of normal subgroups of p-power index (G included)
    upper_members = [n for n in lat.members if _is_power_of(G.order // n.order, p)]
    op_upper = _intersect_all(G, upper_members)

    # O_p: the largest normal p-subgroup; unique because the set is
    # join-closed, so the max-order candidate must contain the rest
    p_members = [n for n in lat.members if _is_power_of(n.order, p)]
    op_lower = max(p_members, key=lambda h: h.order)
    assert all(op_lower.contains_subgroup(n) for n in p_members)

    if _is_power_of(G.order, p):
        frattini = _frattini_by_formula(G, G.full_subgroup(), p)
        if G.order <= caps.max_subgroup_order:
            check = _frattini_by_maximals(G, caps)
            assert check.canonical_key() == frattini.canonical_key()
    else:
        frattini = _frattini_by_maximals(G, caps)

    frattini_of_op = _frattini_by_formula(G, op_lower, p)
    return RadicalProfile(op_lower, op_upper, frattini, frattini_of_op)


# -- full subgroup enumeration ------------------------------------------------


def all_subgroups(
    G: FiniteGroup,
    cap: Optional[int] = None,
    caps: Caps = DEFAULT_CAPS,
) -> list[SubgroupHandle]:
    """Every subgroup of G, by cyclic-extension closure from the bottom.

    Any subgroup is generated by its elements of prime-power order (an
    element of composite order is a product of commuting prime-power
    parts), so closing the trivial subgroup under single-element
    extensions by those enumerates everything.
    """
    limit = cap if cap is not None else caps.max_subgroup_order
    if G.order > limit:
        raise CapExceeded("subgroup enumeration order", G.order, limit)

    seeds = []
    for e in G.sorted_elements():
        ordr = _element_order(e)
        if ordr > 1 and _has_single_prime_factor(ordr):
            seeds.append(e)

    triv = G.trivial_subgroup()
    found: dict[tuple, SubgroupHandle] = {triv.canonical_key(): triv}
    frontier = [triv]
    while frontier:
        h = frontier.pop()
        for g in seeds:
            if h.contains(g):
                continue
            ext = G.subgroup(tuple(h.gen_tuples) + (g,))
            key = ext.canonical_key()
            if key not in found:
                found[key] = ext
                frontier.append(ext)
    return sorted(found.values(), key=lambda h: (h.order, h.canonical_key()))


def _has_single_prime_factor(n: int) -> bool:
    f = 2
    while f * f <= n:
        if n % f == 0:
            return _is_power_of(n, f)
        f += 1
    return True


def _element_order(t: tuple[int, ...]) -> int:
    n = 1
    cur = t
    ident = identity_tuple(len(t))
    while cur != ident:
        cur = pmul(cur, t)
        n += 1
    return n


# -- obliquity ----------------------------------------------------------------


def _normalizes(H: SubgroupHandle, K: SubgroupHandle) -> bool:
    return all(
        K.contains(pconj(k, h))
        for h in H.gen_tuples
        for k in K.gen_tuples
    )


def obliquity(
    G: FiniteGroup,
    H: SubgroupHandle,
    starred: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> SubgroupHandle:
    """The obliquity core of H in G.

    Unstarred: H ∩ ⋂{K normal in G : K not ≤ H}.  Starred: the same with
    K ranging over all subgroups normalized by H.  An empty family
    intersects to G, so Ob_G(G) = G.
    """
    if H.ambient is not G:
        raise ValueError("subgroup handle does not live in the given ambient group")
    if starred:
        cand = all_subgroups(G, caps=caps)
        ks = [K for K in cand if not H.contains_subgroup(K) and _normalizes(H, K)]
    else:
        ks = [K for K in normal_subgroups(G, caps).members if not H.contains_subgroup(K)]
    inter = _intersect_all(G, ks)
    return G.subgroup_from_elements(H.elements() & inter.elements())


# -- structured lattice for iterated wreath products --------------------------


def _vec_add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((x + y) % p for x, y in zip(a, b))


def _vec_neg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((-x) % p for x in a)


def _vec_conj(v: tuple[int, ...], sigma: tuple[int, ...]) -> tuple[int, ...]:
    # block j's content moves to block sigma[j]
    out = [0] * len(v)
    for j, x in enumerate(v):
        out[sigma[j]] = x
    return tuple(out)


def _span(gens: list[tuple[int, ...]], p: int, m: int) -> frozenset:
    zero = (0,) * m
    els = {zero}
    frontier = [zero]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = _vec_add(a, g, p)
            if b not in els:
                els.add(b)
                frontier.append(b)
    return frozenset(els)


def _invariant_subspaces(
    p: int, m: int, action_images: list[tuple[int, ...]]
) -> list[frozenset]:
    import itertools

    vectors = list(itertools.product(range(p), repeat=m))
    zero_space = frozenset({(0,) * m})
    seen = {zero_space}
    frontier = [zero_space]
    while frontier:
        space = frontier.pop()
        for v in vectors:
            if v in space:
                continue
            bigger = _span(list(space) + [v], p, m)
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    invariant = []
    for space in seen:
        if all(_vec_conj(v, sigma) in space for sigma in action_images for v in space):
            invariant.append(space)
    invariant.sort(key=lambda s: (len(s), sorted(s)))
    return invariant


def _wreath_lattice_simple(
    wd: WreathData, top_lat: NormalLattice
) -> list[SubgroupHandle]:
    # nonabelian simple bottom: the centralizer of the base is trivial,
    # so every nontrivial normal subgroup contains the base and the
    # lattice is {1} plus preimages of the top lattice
    W = wd.group
    base = [g for block in wd.base_gens for g in block]
    members = [W.trivial_subgroup()]
    for nbar in top_lat.members:
        gens = list(base) + [tuple(wd.embed_top_element(t)) for t in nbar.gen_tuples]
        h = W.subgroup(gens)
        assert h.order == wd.bottom.order ** wd.blocks * nbar.order
        members.append(h)
    return members


def _elem_abelian_basis(E: FiniteGroup, p: int):
    """Greedy basis and full coordinate table of an elementary abelian group."""
    ident = identity_tuple(E.degree)
    table: dict[tuple[int, ...], tuple[int, ...]] = {ident: ()}
    basis: list[tuple[int, ...]] = []
    for e in E.sorted_elements():
        if e in table:
            continue
        basis.append(e)
        expanded = {}
        for x, cx in table.items():
            cur = x
            for k in range(p):
                expanded[cur] = cx + (k,)
                cur = pmul(cur, e)
        table = expanded
    assert len(table) == E.order
    r = len(basis)
    # pad earlier short coordinates to full length
    table = {x: cx + (0,) * (r - len(cx)) for x, cx in table.items()}
    return basis, table


def _wreath_lattice_abelian(
    wd: WreathData, top_lat: NormalLattice, caps: Caps
) -> list[SubgroupHandle]:
    # prime-order bottom: normal subgroups correspond to triples
    # (V, Nbar, sigma) with V an invariant subspace of the base,
    # Nbar normal in the top with [Nbar, base] inside V, and
    # sigma: Nbar -> base/V an equivariant homomorphism giving the
    # base displacement of the lifts
    W = wd.group
    T = wd.top
    p = wd.bottom.order
    m = wd.blocks

    g0 = wd.bottom.sorted_elements()[1]
    pw = [_tuple_pow(g0, k) for k in range(p)]

    def embed_vec(v: tuple[int, ...]):
        return tuple(wd.embed_base_vector([pw[x] for x in v]))

    import itertools

    action_imgs = [tuple(s) for s in wd.action.images]
    all_vectors = list(itertools.product(range(p), repeat=m))
    basis_vecs = [
        tuple(1 if i == j else 0 for i in range(m)) for j in range(m)
    ]

    members: dict[tuple, SubgroupHandle] = {}

    def add(h: SubgroupHandle):
        members.setdefault(h.canonical_key(), h)

    for V in _invariant_subspaces(p, m, action_imgs):
        v_basis = _space_basis(V, p, m)
        rep = {}
        for v in all_vectors:
            rep[v] = min(_vec_add(v, w, p) for w in V)
        reps = sorted(set(rep.values()))

        for nbar in top_lat.members:
            ok = True
            for t in nbar.gen_tuples:
                sigma = tuple(wd.action.perm_of(t))
                for e in basis_vecs:
                    diff = _vec_add(_vec_conj(e, sigma), _vec_neg(e, p), p)
                    if diff not in V:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue

            nbar_grp = nbar.as_group()
            phi_seeds = list(commutator_subgroup(nbar_grp, nbar_grp).gen_tuples)
            phi_seeds += [_tuple_pow(g, p) for g in nbar_grp.gen_tuples]
            phi = nbar_grp.normal_closure(phi_seeds)
            E, psi = quotient_by(nbar_grp, phi, caps)
            e_basis, coord = _elem_abelian_basis(E, p)
            r = len(e_basis)
            lifts = [tuple(psi.preimage(b)) for b in e_basis]

            total = len(reps) ** r
            if total > caps.enumeration_cap:
                raise CapExceeded("equivariant map enumeration", total, caps.enumeration_cap)

            for assign in itertools.product(reps, repeat=r):
                if not _equivariant(
                    assign, lifts, nbar, T, wd, psi, coord, rep, p, r
                ):
                    continue
                gens = [embed_vec(v) for v in v_basis]
                for i in range(r):
                    gens.append(
                        pmul(embed_vec(assign[i]), tuple(wd.embed_top_element(lifts[i])))
                    )
                gens += [tuple(wd.embed_top_element(f)) for f in phi.gen_tuples]
                h = W.subgroup(gens)
                assert h.order == len(V) * nbar.order
                add(h)

    return list(members.values())


def _space_basis(V: frozenset, p: int, m: int) -> list[tuple[int, ...]]:
    basis: list[tuple[int, ...]] = []
    span = {(0,) * m}
    for v in sorted(V):
        if v in span:
            continue
        basis.append(v)
        span = set(_span(basis, p, m))
    assert len(span) == len(V)
    return basis


def _equivariant(assign, lifts, nbar, T, wd, psi, coord, rep, p, r) -> bool:
    """sigma(n^t) == sigma(n)^t for every basis lift n and top generator t."""
    zero = (0,) * wd.blocks
    for t in T.gen_tuples:
        sigma_t = tuple(wd.action.perm_of(t))
        for i in range(r):
            conj = pconj(lifts[i], t)
            if not nbar.contains(conj):
                return False
            cx = coord[tuple(psi.apply(conj))]
            lhs = zero
            for k in range(r):
                for _ in range(cx[k]):
                    lhs = _vec_add(lhs, assign[k], p)
            if rep[lhs] != rep[_vec_conj(assign[i], sigma_t)]:
                return False
    return True


def structured_normal_subgroups(
    spec: StructuredWreathSpec, caps: Caps = DEFAULT_CAPS
) -> NormalLattice:
    """The normal lattice of the last level of an iterated wreath spec.

    Works layer by layer: the lattice of level n+1 = S wr (level n) is
    derived from the level-n lattice by wreath-structure theory, without
    enumerating conjugacy classes of the big group.  Supported bottoms:
    nonabelian simple, or cyclic of prime order.
    """
    levels = materialize_levels(spec, caps=caps)
    lat = normal_subgroups(levels[0][0], caps)
    for _, wd in levels[1:]:
        if len(wd.action.orbits()) != 1:
            raise ValueError("spec not of supported shape: top action is intransitive")
        bottom = wd.bottom
        if is_prime(bottom.order):
            members = _wreath_lattice_abelian(wd, lat, caps)
        elif not bottom.is_abelian() and is_simple(bottom):
            members = _wreath_lattice_simple(wd, lat)
        else:
            raise ValueError("spec not of supported shape: bottom must be simple")
        lat = NormalLattice(wd.group, members)
    return lat
