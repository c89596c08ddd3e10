"""Finite permutation groups backed by deterministic stabilizer chains.

FiniteGroup knows its order and membership through a Schreier-Sims chain and
only enumerates elements on demand (and under a cap).  SubgroupHandle is a
subgroup of a fixed ambient group; its canonical key makes subgroup identity
and ordering deterministic across runs.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .config import Caps, DEFAULT_CAPS, CapExceeded
from .perms import Permutation, identity_tuple, pconj, pcomm, pglue, pinv, pmul

__all__ = [
    "FiniteGroup",
    "SubgroupHandle",
    "StructureProfile",
    "group_from_generators",
    "commutator_subgroup",
    "structure_profile",
    "mulclose",
    "normal_closure_tuples",
    "reduce_generators",
    "SIMPLE_ORDERS",
    "AMBIGUOUS_SIMPLE_ORDER",
]

# Orders of nonabelian simple groups below 20160.  20160 is the first order
# shared by non-isomorphic simple groups, so identification by order stops
# being trusted there.
SIMPLE_ORDERS = frozenset(
    [60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080,
     5616, 6048, 6072, 7800, 7920, 9828, 12180, 14880]
)
AMBIGUOUS_SIMPLE_ORDER = 20160


def mulclose(
    gens: Iterable[Sequence[int]],
    degree: int,
    limit: Optional[int] = None,
    seed: Optional[Iterable[tuple[int, ...]]] = None,
    what: str = "element enumeration",
) -> set[tuple[int, ...]]:
    """Close a generating set under multiplication (BFS from the identity).

    `seed` may carry an already-closed subgroup to extend.  Raises CapExceeded
    when the closure grows past `limit`.
    """
    gens = [tuple(g) for g in gens]
    els: set[tuple[int, ...]] = set(seed) if seed is not None else set()
    els.add(identity_tuple(degree))
    frontier = [g for g in gens if g not in els]
    els.update(frontier)
    while frontier:
        if limit is not None and len(els) > limit:
            raise CapExceeded(what, len(els), limit)
        new = []
        for a in frontier:
            for g in gens:
                p = pmul(a, g)
                if p not in els:
                    els.add(p)
                    new.append(p)
        frontier = new
    if limit is not None and len(els) > limit:
        raise CapExceeded(what, len(els), limit)
    return els


def normal_closure_tuples(
    ambient_gens: Sequence[tuple[int, ...]],
    seeds: Iterable[Sequence[int]],
    degree: int,
    limit: Optional[int] = None,
) -> set[tuple[int, ...]]:
    """Smallest subgroup containing `seeds` that the ambient generators normalize."""
    gens = [tuple(s) for s in seeds]
    els = mulclose(gens, degree, limit=limit, what="normal closure")
    while True:
        grown = False
        for s in list(gens):
            for g in ambient_gens:
                c = pconj(s, g)
                if c not in els:
                    gens.append(c)
                    els = mulclose(gens, degree, limit=limit, seed=els, what="normal closure")
                    grown = True
        if not grown:
            return els


def reduce_generators(elements: Iterable[tuple[int, ...]], degree: int) -> list[tuple[int, ...]]:
    """Greedy small generating set for a subgroup given as an element set."""
    ident = identity_tuple(degree)
    todo = sorted(e for e in elements if e != ident)
    gens: list[tuple[int, ...]] = []
    have: set[tuple[int, ...]] = {ident}
    for e in todo:
        if e not in have:
            gens.append(e)
            have = mulclose(gens, degree)
    return gens


class _ChainNode:
    """One level of a stabilizer chain: a base point, its orbit transversal,
    and the generators that reach this level.

    transversal[pt] is a group element u with u[point] = pt, so every group
    element factors as (something fixing point) * u_pt.
    """

    __slots__ = ("degree", "preferred", "point", "gens", "transversal", "stab")

    def __init__(self, degree: int, preferred: Optional[Sequence[int]] = None):
        self.degree = degree
        self.preferred = tuple(preferred) if preferred else ()
        self.point: Optional[int] = None
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {}
        self.stab: Optional[_ChainNode] = None

    def order(self) -> int:
        if self.point is None:
            return 1
        return len(self.transversal) * self.stab.order()

    def residue(self, p: tuple[int, ...]) -> tuple[int, ...]:
        """Sift p through the chain; identity result means membership."""
        node = self
        while node.point is not None:
            dest = p[node.point]
            u = node.transversal.get(dest)
            if u is None:
                return p
            p = pmul(p, pinv(u))
            node = node.stab
        return p

    def add_generator(self, p: tuple[int, ...]) -> None:
        r = self.residue(p)
        if all(i == v for i, v in enumerate(r)):
            return
        self._extend(r)

    def _point_rank(self, pt: int) -> int:
        try:
            return self.preferred.index(pt)
        except ValueError:
            return len(self.preferred) + pt

    def _best_point(self, gens: list[tuple[int, ...]]) -> int:
        moved = {pt for g in gens for pt in range(self.degree) if g[pt] != pt}
        if not moved:
            raise AssertionError("identity reached _best_point")
        return min(moved, key=self._point_rank)

    def _extend(self, gen: tuple[int, ...]) -> None:
        # The base point must be the best preferred point moved by ANY
        # generator at this level, not just the first to arrive; when a
        # later generator moves a better point, re-root the node (the
        # subtree is regenerated by the Schreier sift below).
        candidates = self.gens + [gen]
        best = self._best_point(candidates)
        if self.point is None or best != self.point:
            self.point = best
            self.stab = _ChainNode(self.degree, self.preferred)
            self.transversal = {self.point: identity_tuple(self.degree)}
        self.gens = candidates
        self._rebuild_orbit()

    def _rebuild_orbit(self) -> None:
        # Deterministic BFS orbit; every new transversal entry spawns Schreier
        # generators that are sifted into the stabilizer below.
        queue = [self.point]
        trans = {self.point: identity_tuple(self.degree)}
        i = 0
        while i < len(queue):
            a = queue[i]
            i += 1
            ua = trans[a]
            for g in self.gens:
                b = g[a]
                if b not in trans:
                    trans[b] = pmul(ua, g)
                    queue.append(b)
        self.transversal = trans
        for a in queue:
            ua = trans[a]
            for g in self.gens:
                c = pmul(ua, g)
                schreier = pmul(c, pinv(trans[c[self.point]]))
                if not all(i == v for i, v in enumerate(schreier)):
                    self.stab.add_generator(schreier)

    def base(self) -> list[int]:
        out = []
        node = self
        while node.point is not None:
            out.append(node.point)
            node = node.stab
        return out

    def nodes(self) -> list["_ChainNode"]:
        out = []
        node = self
        while node.point is not None:
            out.append(node)
            node = node.stab
        return out

    def strong_generators_below(self, keep: int) -> list[tuple[int, ...]]:
        """Generators of the pointwise stabilizer of the first `keep` base points."""
        node = self
        for _ in range(keep):
            if node.point is None:
                return []
            node = node.stab
        out: list[tuple[int, ...]] = []
        while node.point is not None:
            out.extend(node.gens)
            node = node.stab
        return out


def build_chain(
    gens: Sequence[tuple[int, ...]],
    degree: int,
    preferred: Optional[Sequence[int]] = None,
) -> _ChainNode:
    root = _ChainNode(degree, preferred)
    for g in gens:
        root.add_generator(tuple(g))
    return root


class FiniteGroup:
    """A permutation group of fixed degree with a stabilizer-chain backbone."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]]):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        gens = []
        for g in generators:
            p = g if isinstance(g, Permutation) else Permutation(g)
            if p.degree != degree:
                raise ValueError(f"generator degree {p.degree} != group degree {degree}")
            gens.append(p)
        if degree == 0 and gens:
            raise ValueError("degree 0 admits no nontrivial generators")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._gen_tuples: tuple[tuple[int, ...], ...] = tuple(tuple(g) for g in gens)
        self._chain = build_chain(self._gen_tuples, degree)
        self.order: int = self._chain.order()
        # lazy caches
        self._elements: Optional[frozenset[tuple[int, ...]]] = None
        self._sorted_elements: Optional[list[tuple[int, ...]]] = None
        self._ranks: Optional[dict[tuple[int, ...], int]] = None
        self._classes: Optional[list[list[tuple[int, ...]]]] = None
        self._abelian: Optional[bool] = None
        self._lattice_cache: dict = {}
        self._subgroups_cache: dict = {}
        self._minimal_normals: Optional[tuple["SubgroupHandle", ...]] = None

    # -- basics ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"<group deg={self.degree} order={self.order}>"

    @property
    def gen_tuples(self) -> tuple[tuple[int, ...], ...]:
        return self._gen_tuples

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, p: Sequence[int]) -> bool:
        t = tuple(p)
        if len(t) != self.degree:
            return False
        r = self._chain.residue(t)
        return all(i == v for i, v in enumerate(r))

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = all(
                pmul(a, b) == pmul(b, a)
                for i, a in enumerate(self._gen_tuples)
                for b in self._gen_tuples[i + 1:]
            )
        return self._abelian

    # -- element enumeration ---------------------------------------------

    def elements(self, limit: Optional[int] = None) -> frozenset[tuple[int, ...]]:
        """All elements as tuples.  Honors the cap (default: enumeration cap)."""
        lim = DEFAULT_CAPS.enumeration_cap if limit is None else limit
        if self.order > lim:
            raise CapExceeded("element enumeration", self.order, lim)
        if self._elements is None:
            self._elements = frozenset(mulclose(self._gen_tuples, self.degree))
        return self._elements

    def sorted_elements(self, limit: Optional[int] = None) -> list[tuple[int, ...]]:
        """Elements in the fixed canonical enumeration (lexicographic)."""
        if self._sorted_elements is None:
            self._sorted_elements = sorted(self.elements(limit))
        return self._sorted_elements

    def rank_table(self, limit: Optional[int] = None) -> dict[tuple[int, ...], int]:
        if self._ranks is None:
            self._ranks = {e: i for i, e in enumerate(self.sorted_elements(limit))}
        return self._ranks

    def conjugacy_classes(self, limit: Optional[int] = None) -> list[list[tuple[int, ...]]]:
        """Conjugacy classes, each sorted, ordered by least member."""
        if self._classes is not None:
            return self._classes
        els = self.sorted_elements(limit)
        if self.is_abelian():
            self._classes = [[e] for e in els]
            return self._classes
        seen: set[tuple[int, ...]] = set()
        classes = []
        for e in els:
            if e in seen:
                continue
            orbit = {e}
            queue = [e]
            while queue:
                x = queue.pop()
                for g in self._gen_tuples:
                    c = pconj(x, g)
                    if c not in orbit:
                        orbit.add(c)
                        queue.append(c)
            seen |= orbit
            classes.append(sorted(orbit))
        self._classes = classes
        return classes

    # -- subgroups --------------------------------------------------------

    def subgroup(
        self,
        gens: Iterable[Sequence[int]],
        elements: Optional[frozenset[tuple[int, ...]]] = None,
        order: Optional[int] = None,
    ) -> "SubgroupHandle":
        return SubgroupHandle(self, gens, elements=elements, order=order)

    def subgroup_from_elements(self, elements: Iterable[tuple[int, ...]]) -> "SubgroupHandle":
        els = frozenset(tuple(e) for e in elements)
        gens = reduce_generators(els, self.degree)
        return SubgroupHandle(self, gens, elements=els, order=len(els))

    def trivial_subgroup(self) -> "SubgroupHandle":
        return self.subgroup_from_elements([identity_tuple(self.degree)])

    def full_subgroup(self) -> "SubgroupHandle":
        try:
            els = self.elements()
        except CapExceeded:
            els = None
        return SubgroupHandle(self, self._gen_tuples, elements=els, order=self.order)

    def normal_closure(self, seeds: Iterable[Sequence[int]], limit: Optional[int] = None) -> "SubgroupHandle":
        els = normal_closure_tuples(self._gen_tuples, seeds, self.degree, limit=limit)
        return self.subgroup_from_elements(els)

    def minimal_normal_subgroups(self, limit: Optional[int] = None) -> tuple["SubgroupHandle", ...]:
        """Inclusion-minimal nontrivial normal subgroups.

        Every minimal normal subgroup is the normal closure of any one of its
        nontrivial elements, so the minimal members of the set of class-rep
        closures are exactly the minimal normal subgroups.
        """
        if self._minimal_normals is not None:
            return self._minimal_normals
        if self.order == 1:
            self._minimal_normals = ()
            return ()
        closures = _principal_closures(self, limit)
        sets = sorted({h.elements() for h in closures}, key=len)
        minimal = []
        for s in sets:
            if len(s) == 1:
                continue
            if not any(len(t) > 1 and t < s for t in sets):
                minimal.append(s)
        self._minimal_normals = tuple(
            sorted((self.subgroup_from_elements(s) for s in minimal), key=lambda h: h.canonical_key())
        )
        return self._minimal_normals


def _principal_closures(G: FiniteGroup, limit: Optional[int] = None) -> list["SubgroupHandle"]:
    """Normal closures of single class representatives, deduplicated.

    In the abelian case the closure of x is just the cyclic group it spans,
    which we recognize by order before recomputing.
    """
    out: list[SubgroupHandle] = []
    by_key: set[tuple] = set()
    abelian = G.is_abelian()
    cyclic_by_order: dict[int, list[frozenset]] = {}
    for cls in G.conjugacy_classes(limit):
        rep = cls[0]
        if all(i == v for i, v in enumerate(rep)):
            continue
        if abelian:
            from .perms import perm_order

            o = perm_order(rep)
            hit = next((s for s in cyclic_by_order.get(o, []) if rep in s), None)
            if hit is not None:
                continue
            els = frozenset(mulclose([rep], G.degree))
            cyclic_by_order.setdefault(o, []).append(els)
        else:
            els = frozenset(normal_closure_tuples(G.gen_tuples, [rep], G.degree, limit=limit))
        h = G.subgroup_from_elements(els)
        k = h.canonical_key()
        if k not in by_key:
            by_key.add(k)
            out.append(h)
    return out


class SubgroupHandle:
    """A subgroup of a fixed ambient FiniteGroup.

    Identity and ordering come from canonical_key(): the sorted ranks of the
    subgroup's elements in the ambient's canonical enumeration while the
    ambient is enumerable, otherwise the order plus a reduced generator list.
    """

    def __init__(
        self,
        ambient: FiniteGroup,
        gens: Iterable[Sequence[int]],
        elements: Optional[frozenset[tuple[int, ...]]] = None,
        order: Optional[int] = None,
    ):
        self.ambient = ambient
        gt = []
        for g in gens:
            t = tuple(g)
            if len(t) != ambient.degree:
                raise ValueError("subgroup generator degree mismatch")
            gt.append(t)
        self._gen_tuples = tuple(gt)
        self._elements = elements
        self._order = order if order is not None else (len(elements) if elements is not None else None)
        self._key: Optional[tuple] = None
        self._chain: Optional[_ChainNode] = None
        self._as_group: Optional[FiniteGroup] = None

    # -- structure --------------------------------------------------------

    @property
    def gen_tuples(self) -> tuple[tuple[int, ...], ...]:
        return self._gen_tuples

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation.__raw__(g) for g in self._gen_tuples)

    def chain(self) -> _ChainNode:
        if self._chain is None:
            self._chain = build_chain(self._gen_tuples, self.ambient.degree)
        return self._chain

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.chain().order()
        return self._order

    def elements(self, limit: Optional[int] = None) -> frozenset[tuple[int, ...]]:
        lim = DEFAULT_CAPS.enumeration_cap if limit is None else limit
        if self._elements is None:
            if self.order > lim:
                raise CapExceeded("subgroup element enumeration", self.order, lim)
            self._elements = frozenset(mulclose(self._gen_tuples, self.ambient.degree))
        return self._elements

    def contains(self, p: Sequence[int]) -> bool:
        t = tuple(p)
        if self._elements is not None:
            return t in self._elements
        r = self.chain().residue(t)
        return all(i == v for i, v in enumerate(r))

    def contains_subgroup(self, other: "SubgroupHandle") -> bool:
        return all(self.contains(g) for g in other.gen_tuples)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_full(self) -> bool:
        return self.order == self.ambient.order

    def is_normal(self) -> bool:
        """Normal in the ambient group."""
        for h in self._gen_tuples:
            for g in self.ambient.gen_tuples:
                if not self.contains(pconj(h, g)):
                    return False
        return True

    def canonical_key(self) -> tuple:
        if self._key is not None:
            return self._key
        try:
            ranks = self.ambient.rank_table()
            self._key = tuple(sorted(ranks[e] for e in self.elements()))
        except CapExceeded:
            reduced = reduce_generators_big(self)
            self._key = (self.order,) + tuple(sorted(reduced))
        return self._key

    def as_group(self) -> FiniteGroup:
        """This subgroup reinterpreted as a group in its own right."""
        if self._as_group is None:
            g = FiniteGroup(self.ambient.degree, self._gen_tuples)
            if self._elements is not None:
                g._elements = self._elements
            self._as_group = g
        return self._as_group

    def conjugate_by(self, g: Sequence[int]) -> "SubgroupHandle":
        gt = tuple(g)
        gens = [pconj(h, gt) for h in self._gen_tuples]
        els = None
        if self._elements is not None:
            els = frozenset(pconj(e, gt) for e in self._elements)
        return SubgroupHandle(self.ambient, gens, elements=els, order=self._order)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        if self.ambient is not other.ambient:
            return False
        if self._elements is not None and other._elements is not None:
            return self._elements == other._elements
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.canonical_key()))

    def __repr__(self) -> str:
        return f"<subgroup order={self.order} of deg-{self.ambient.degree} ambient>"


def reduce_generators_big(h: SubgroupHandle) -> list[tuple[int, ...]]:
    """Deterministic generator reduction when the ambient is too big to rank."""
    gens = sorted(set(h.gen_tuples))
    kept: list[tuple[int, ...]] = []
    for i, g in enumerate(gens):
        rest = kept + gens[i + 1:]
        if build_chain(rest, h.ambient.degree).order() == h.order:
            continue
        kept.append(g)
    return kept


def group_from_generators(gens: Sequence[Sequence[int]], degree: Optional[int] = None) -> FiniteGroup:
    """Build a FiniteGroup, inferring the degree from the generators if possible."""
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = len(tuple(gens[0]))
    return FiniteGroup(degree, gens)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H acting on the disjoint union of the two point sets."""
    gens = [pglue(g, identity_tuple(H.degree)) for g in G.gen_tuples]
    gens += [pglue(identity_tuple(G.degree), h) for h in H.gen_tuples]
    P = FiniteGroup(G.degree + H.degree, gens)
    assert P.order == G.order * H.order
    return P


def commutator_subgroup(A, B, within: Optional[FiniteGroup] = None) -> SubgroupHandle:
    """[A, B]: the normal closure of the generator commutators in <A, B>.

    A and B may be FiniteGroups or SubgroupHandles over the same degree.
    The result is a SubgroupHandle of `within` (default: A's ambient/group).
    """
    if within is None:
        within = A if isinstance(A, FiniteGroup) else A.ambient
    a_gens = A.gen_tuples
    b_gens = B.gen_tuples
    degree = within.degree
    seeds = [pcomm(a, b) for a in a_gens for b in b_gens]
    if not seeds:
        return within.trivial_subgroup()
    closure_gens = list(a_gens) + list(b_gens)
    els = normal_closure_tuples(closure_gens, seeds, degree)
    return within.subgroup_from_elements(els)


def _derived_series_reaches_trivial(G: FiniteGroup) -> bool:
    cur_gens: Sequence[tuple[int, ...]] = G.gen_tuples
    cur_order = G.order
    while cur_order > 1:
        seeds = [pcomm(a, b) for a in cur_gens for b in cur_gens]
        els = normal_closure_tuples(cur_gens, seeds or [identity_tuple(G.degree)], G.degree)
        nxt = len(els)
        if nxt == cur_order:
            return False
        cur_gens = reduce_generators(els, G.degree)
        cur_order = nxt
    return True


def _lower_central_reaches_trivial(G: FiniteGroup) -> bool:
    cur_gens: Sequence[tuple[int, ...]] = G.gen_tuples
    cur_order = G.order
    while cur_order > 1:
        seeds = [pcomm(a, b) for a in cur_gens for b in G.gen_tuples]
        els = normal_closure_tuples(G.gen_tuples, seeds or [identity_tuple(G.degree)], G.degree)
        nxt = len(els)
        if nxt == cur_order:
            return False
        cur_gens = reduce_generators(els, G.degree)
        cur_order = nxt
    return True


class StructureProfile:
    """Structural summary: perfect / soluble / nilpotent flags plus a
    characteristically-simple classification.

    classification is one of:
      ("not_char_simple",)
      ("elem_abelian", p, k)
      ("simple_power", simple_order, k, ambiguous)
    """

    __slots__ = ("order", "perfect", "soluble", "nilpotent", "classification")

    def __init__(self, order, perfect, soluble, nilpotent, classification):
        self.order = order
        self.perfect = perfect
        self.soluble = soluble
        self.nilpotent = nilpotent
        self.classification = classification

    @property
    def kind(self) -> str:
        return self.classification[0]

    def __repr__(self) -> str:
        return (
            f"<profile order={self.order} perfect={self.perfect} soluble={self.soluble} "
            f"nilpotent={self.nilpotent} {self.classification}>"
        )


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _is_prime_power(n: int) -> Optional[tuple[int, int]]:
    if n < 2:
        return None
    p = _smallest_prime_factor(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    mins = G.minimal_normal_subgroups()
    return len(mins) == 1 and mins[0].order == G.order


def structure_profile(G: FiniteGroup) -> StructureProfile:
    derived = commutator_subgroup(G, G)
    perfect = derived.order == G.order
    soluble = _derived_series_reaches_trivial(G)
    nilpotent = soluble and _lower_central_reaches_trivial(G)
    classification: tuple = ("not_char_simple",)
    if G.order > 1:
        if G.is_abelian():
            pk = _is_prime_power(G.order)
            if pk is not None:
                p, k = pk
                if all(_pow_is_identity(g, p, G.degree) for g in G.gen_tuples):
                    classification = ("elem_abelian", p, k)
        else:
            classification = _simple_power_classification(G)
    return StructureProfile(G.order, perfect, soluble, nilpotent, classification)


def _pow_is_identity(g: tuple[int, ...], p: int, degree: int) -> bool:
    cur = identity_tuple(degree)
    for _ in range(p):
        cur = pmul(cur, g)
    return cur == identity_tuple(degree)


def _simple_power_classification(G: FiniteGroup) -> tuple:
    """Check whether G is a direct power of one nonabelian simple group.

    For such a group the minimal normal subgroups are exactly the simple
    factors; we verify they pairwise commute, intersect trivially in products,
    and multiply out to the whole group.
    """
    mins = G.minimal_normal_subgroups()
    if not mins:
        return ("not_char_simple",)
    orders = {m.order for m in mins}
    if len(orders) != 1:
        return ("not_char_simple",)
    s = orders.pop()
    if s < 60:
        return ("not_char_simple",)
    total = 1
    for m in mins:
        total *= m.order
    if total != G.order:
        return ("not_char_simple",)
    for m in mins:
        if not is_simple(m.as_group()) or m.as_group().is_abelian():
            return ("not_char_simple",)
    for i, a in enumerate(mins):
        for b in mins[i + 1:]:
            for x in a.gen_tuples:
                for y in b.gen_tuples:
                    if pmul(x, y) != pmul(y, x):
                        return ("not_char_simple",)
    join = mulclose([g for m in mins for g in m.gen_tuples], G.degree)
    if len(join) != G.order:
        return ("not_char_simple",)
    return ("simple_power", s, len(mins), s >= AMBIGUOUS_SIMPLE_ORDER)
