"""Homomorphisms between permutation groups, and quotient realization.

A homomorphism f: G -> H is stored by its images on the generators of G.
Everything runs through the graph subgroup {(g, f(g))} of G x H acting on
the disjoint union of the two point sets: the generator images extend to a
homomorphism exactly when that subgroup has the same order as G.  A
stabilizer chain for the graph whose base points all lie in the source
block evaluates f; a chain whose base starts in the target block exposes
the kernel as the residual stabilizer.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .config import DEFAULT_CAPS, Caps, InvalidHom
from .groups import FiniteGroup, SubgroupHandle, _ChainNode, build_chain
from .perms import Permutation, identity_tuple, pglue, pinv, pmul


class GroupHom:
    """A homomorphism src -> tgt, validated at construction.

    Use hom_from_images to build one; the constructor trusts its inputs.
    """

    __slots__ = ("src", "tgt", "images", "_graph_gens", "_apply_chain", "_ker_chain", "_ker")

    def __init__(
        self,
        src: FiniteGroup,
        tgt: FiniteGroup,
        images: tuple[Permutation, ...],
        graph_gens: list[tuple[int, ...]],
        apply_chain: _ChainNode,
    ):
        self.src = src
        self.tgt = tgt
        self.images = images
        self._graph_gens = graph_gens
        self._apply_chain = apply_chain
        self._ker_chain: Optional[_ChainNode] = None
        self._ker: Optional[SubgroupHandle] = None

    def apply(self, x: Sequence[int]) -> Permutation:
        """Image of x, found by factoring x against the graph chain."""
        xt = tuple(x)
        nsrc = self.src.degree
        if len(xt) != nsrc:
            raise ValueError(f"element degree {len(xt)} != source degree {nsrc}")
        d = nsrc + self.tgt.degree
        # Only the source coordinates of cur are meaningful during the walk;
        # every base point of the apply chain lies in the source block.
        cur = xt + tuple(range(nsrc, d))
        us: list[tuple[int, ...]] = []
        node = self._apply_chain
        while node.point is not None:
            u = node.transversal.get(cur[node.point])
            if u is None:
                raise ValueError("element is not in the source group")
            us.append(u)
            cur = pmul(cur, pinv(u))
            node = node.stab
        graph_el = identity_tuple(d)
        for u in reversed(us):
            graph_el = pmul(graph_el, u)
        if graph_el[:nsrc] != xt:
            raise ValueError("element is not in the source group")
        return Permutation.__raw__(tuple(v - nsrc for v in graph_el[nsrc:]))

    def __call__(self, x: Sequence[int]) -> Permutation:
        return self.apply(x)

    def _kernel_chain(self) -> _ChainNode:
        if self._ker_chain is None:
            nsrc = self.src.degree
            d = nsrc + self.tgt.degree
            self._ker_chain = build_chain(self._graph_gens, d, preferred=range(nsrc, d))
        return self._ker_chain

    def kernel(self) -> SubgroupHandle:
        """The kernel, as a subgroup of src."""
        if self._ker is None:
            nsrc = self.src.degree
            chain = self._kernel_chain()
            # The chain stabilizes every moved target point before touching a
            # source point, so the residual below that prefix is ker x {1}.
            skip = 0
            for pt in chain.base():
                if pt < nsrc:
                    break
                skip += 1
            gens = chain.strong_generators_below(skip)
            ker_gens = [g[:nsrc] for g in gens]
            self._ker = self.src.subgroup(ker_gens or [identity_tuple(nsrc)])
        return self._ker

    def preimage(self, y: Sequence[int]) -> Permutation:
        """Some x with f(x) = y; raises ValueError if y is not in the image."""
        yt = tuple(y)
        nsrc = self.src.degree
        ntgt = self.tgt.degree
        if len(yt) != ntgt:
            raise ValueError(f"element degree {len(yt)} != target degree {ntgt}")
        d = nsrc + ntgt
        cur = tuple(range(nsrc)) + tuple(nsrc + v for v in yt)
        us: list[tuple[int, ...]] = []
        node = self._kernel_chain()
        while node.point is not None and node.point >= nsrc:
            u = node.transversal.get(cur[node.point])
            if u is None:
                raise ValueError("element is not in the image")
            us.append(u)
            cur = pmul(cur, pinv(u))
            node = node.stab
        graph_el = identity_tuple(d)
        for u in reversed(us):
            graph_el = pmul(graph_el, u)
        if tuple(v - nsrc for v in graph_el[nsrc:]) != yt:
            raise ValueError("element is not in the image")
        return Permutation.__raw__(graph_el[:nsrc])

    def image(self) -> SubgroupHandle:
        return self.tgt.subgroup(self.images)

    def is_surjective(self) -> bool:
        return self.image().order == self.tgt.order

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite x -> other(self(x)); self.tgt must sit inside other.src."""
        if self.tgt.degree != other.src.degree:
            raise ValueError("composition degree mismatch")
        imgs = [other.apply(h) for h in self.images]
        return hom_from_images(self.src, other.tgt, imgs)

    def __repr__(self) -> str:
        return f"GroupHom(|src|={self.src.order}, |tgt|={self.tgt.order})"


def hom_from_images(
    src: FiniteGroup,
    tgt: FiniteGroup,
    images: Sequence[Sequence[int]],
) -> GroupHom:
    """Build the homomorphism src -> tgt mapping src.generators[i] to images[i].

    Raises InvalidHom when the assignment does not extend to a homomorphism
    or an image lies outside tgt.
    """
    if len(images) != len(src.generators):
        raise InvalidHom(f"{len(src.generators)} generators but {len(images)} images")
    imgs = []
    for h in images:
        p = h if isinstance(h, Permutation) else Permutation(h)
        if p.degree != tgt.degree:
            raise InvalidHom(f"image degree {p.degree} != target degree {tgt.degree}")
        if not tgt.contains(p):
            raise InvalidHom("image is not an element of the target group")
        imgs.append(p)
    nsrc = src.degree
    d = nsrc + tgt.degree
    graph_gens = [pglue(g, h) for g, h in zip(src.gen_tuples, imgs)]
    chain = build_chain(graph_gens, d, preferred=range(nsrc))
    order = chain.order()
    if order != src.order:
        raise InvalidHom(
            f"generator images do not define a homomorphism "
            f"(graph order {order} != source order {src.order})"
        )
    return GroupHom(src, tgt, tuple(imgs), graph_gens, chain)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return hom_from_images(G, G, G.generators)


def trivial_hom(src: FiniteGroup, tgt: FiniteGroup) -> GroupHom:
    e = Permutation.identity(tgt.degree)
    return hom_from_images(src, tgt, [e] * len(src.generators))


def quotient_by(
    G: FiniteGroup,
    N: SubgroupHandle,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[FiniteGroup, GroupHom]:
    """Realize G/N as a permutation group together with the projection.

    N must be a normal subgroup of G.  The quotient acts on the right cosets
    of N, listed by their lexicographically least elements, so the result is
    determined by G's generator list alone.  A trivial N returns G itself
    with the identity map rather than a degree-|G| regular image.
    """
    if N.ambient is not G:
        raise ValueError("N must be a subgroup handle of G")
    if not N.is_normal():
        raise ValueError("quotient by a non-normal subgroup")
    if N.is_trivial():
        return G, identity_hom(G)
    if N.order == G.order:
        Q = FiniteGroup(1, [Permutation.identity(1)] * len(G.generators))
        return Q, hom_from_images(G, Q, Q.generators)

    els = G.sorted_elements(caps.enumeration_cap)
    n_els = N.elements(caps.enumeration_cap)
    coset_index: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    for g in els:
        if g in coset_index:
            continue
        idx = len(reps)
        reps.append(g)
        for n in n_els:
            coset_index[pmul(n, g)] = idx
    index = len(reps)
    action_gens = [
        Permutation.__raw__(tuple(coset_index[pmul(rep, x)] for rep in reps))
        for x in G.gen_tuples
    ]
    Q = FiniteGroup(index, action_gens)
    pi = hom_from_images(G, Q, action_gens)
    if Q.order * N.order != G.order:
        raise RuntimeError("coset action order mismatch")
    return Q, pi
