"""Wreath products in imprimitive representation, with the structural
bookkeeping that lets iterated towers be described symbolically.

A wreath product S ≀_X T acts on |X| blocks of S-points.  WreathData keeps
the per-block embeddings and the embedded top generators, which is what the
tower builders and the structured lattice machinery need.  A
StructuredWreathSpec describes an iterated construction level by level,
carrying exact big-integer orders so levels too large to materialize are
still reported honestly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .actions import GroupAction, action_profile, natural_action, regular_action
from .catalog import named_group
from .config import DEFAULT_CAPS, Caps, CapExceeded
from .groups import FiniteGroup, SubgroupHandle
from .homs import GroupHom, hom_from_images
from .perms import Permutation, identity_tuple


def _embed_block(s: Sequence[int], block: int, block_size: int, blocks: int) -> Permutation:
    images = list(range(block_size * blocks))
    off = block * block_size
    for i, v in enumerate(s):
        images[off + i] = off + v
    return Permutation.__raw__(tuple(images))


def _embed_top(sigma: Sequence[int], block_size: int) -> Permutation:
    images = [0] * (block_size * len(sigma))
    for j, tj in enumerate(sigma):
        for i in range(block_size):
            images[j * block_size + i] = tj * block_size + i
    return Permutation.__raw__(tuple(images))


class WreathData:
    """S ≀_X T together with its block structure.

    Generator order of .group: the S generators embedded in block 0, then
    block 1, …, then the embedded top generators.
    """

    __slots__ = ("group", "bottom", "top", "action", "blocks", "block_size",
                 "base_gens", "top_gens")

    def __init__(self, bottom: FiniteGroup, top: FiniteGroup, top_action: GroupAction):
        if top_action.group is not top:
            raise ValueError("top_action must act for the top group")
        m = top_action.degree
        d = bottom.degree
        self.bottom = bottom
        self.top = top
        self.action = top_action
        self.blocks = m
        self.block_size = d
        self.base_gens = [
            [_embed_block(s, j, d, m) for s in bottom.gen_tuples]
            for j in range(m)
        ]
        self.top_gens = [_embed_top(sigma, d) for sigma in top_action.images]
        gens = [g for block in self.base_gens for g in block] + self.top_gens
        self.group = FiniteGroup(d * m, gens)
        assert self.group.order == bottom.order ** m * top.order

    def embed_top_element(self, t: Sequence[int]) -> Permutation:
        """The canonical lift of a top element (trivial base part)."""
        return _embed_top(self.action.perm_of(t), self.block_size)

    def embed_base_vector(self, values: Sequence[Sequence[int]]) -> Permutation:
        """Base element with values[j] acting on block j."""
        images = []
        for j, s in enumerate(values):
            off = j * self.block_size
            images.extend(off + v for v in s)
        return Permutation.__raw__(tuple(images))

    def base_subgroup(self) -> SubgroupHandle:
        gens = [g for block in self.base_gens for g in block]
        order = self.bottom.order ** self.blocks
        if not gens:
            return self.group.trivial_subgroup()
        return self.group.subgroup(gens, order=order)

    def base_killing_hom(self) -> GroupHom:
        """The projection onto the top group, with the base as kernel."""
        e = Permutation.identity(self.top.degree)
        images = [e] * (self.blocks * len(self.bottom.generators))
        images += list(self.top.generators)
        return hom_from_images(self.group, self.top, images)


def wreath_data(bottom: FiniteGroup, top: FiniteGroup, top_action: GroupAction) -> WreathData:
    if top_action.degree < 1:
        raise ValueError("wreath product needs a nonempty point set")
    return WreathData(bottom, top, top_action)


def wreath_product(bottom: FiniteGroup, top: FiniteGroup, top_action: GroupAction) -> FiniteGroup:
    """S ≀_X top on (degree of S)·|X| points; order |S|^|X| · |top|."""
    return wreath_data(bottom, top, top_action).group


def product_action(wd: WreathData, caps: Caps = DEFAULT_CAPS) -> GroupAction:
    """The product action of S ≀_X T on (S-points)^X.

    Points are tuples of one S-point per block, ordered lexicographically;
    the base acts coordinatewise and the top permutes coordinates.
    """
    d, m = wd.block_size, wd.blocks
    n = d ** m
    if n > caps.enumeration_cap:
        raise CapExceeded("product action degree", n, caps.enumeration_cap)

    def encode(t: tuple[int, ...]) -> int:
        idx = 0
        for v in t:
            idx = idx * d + v
        return idx

    points = list(itertools.product(range(d), repeat=m))

    images = []
    for j in range(m):
        for s in wd.bottom.gen_tuples:
            img = [0] * n
            for t in points:
                u = list(t)
                u[j] = s[t[j]]
                img[encode(t)] = encode(tuple(u))
            images.append(tuple(img))
    for sigma in wd.action.images:
        img = [0] * n
        for t in points:
            u = [0] * m
            for j in range(m):
                u[sigma[j]] = t[j]
            img[encode(t)] = encode(tuple(u))
        images.append(tuple(img))
    return GroupAction(wd.group, n, images)


@dataclass(frozen=True)
class StructuredWreathSpec:
    """Symbolic description of an iterated wreath construction.

    recipe[0] = (seed descriptor, "seed"); recipe[i] = (bottom descriptor,
    action descriptor) with action one of "natural", "regular", "product",
    "supplied".  Level i is bottom_i ≀_{X_i} (level i-1) where X_i carries
    the named action of level i-1.  Orders and degrees are exact integers
    for every level, materialized or not.
    """

    recipe: tuple[tuple[str, str], ...]
    symbolic_orders: tuple[int, ...]
    symbolic_degrees: tuple[int, ...]
    action_degrees: tuple[int, ...]
    seed_generators: Optional[tuple[tuple[int, ...], ...]] = None
    supplied_actions: tuple[Optional[tuple[tuple[int, ...], ...]], ...] = field(default=())

    @property
    def levels(self) -> int:
        return len(self.recipe)


def _resolve_seed(spec: StructuredWreathSpec) -> FiniteGroup:
    name = spec.recipe[0][0]
    if name == "supplied":
        if not spec.seed_generators:
            raise ValueError("supplied seed without generators")
        return FiniteGroup(len(spec.seed_generators[0]), spec.seed_generators)
    return named_group(name)


def spec_for_seed(seed_name: str, seed: FiniteGroup) -> StructuredWreathSpec:
    gens = None
    if seed_name == "supplied":
        gens = tuple(seed.gen_tuples)
    return StructuredWreathSpec(
        recipe=((seed_name, "seed"),),
        symbolic_orders=(seed.order,),
        symbolic_degrees=(seed.degree,),
        action_degrees=(0,),
        seed_generators=gens,
        supplied_actions=(None,),
    )


SYMBOLIC_DIGIT_CAP = 10**6


def _guarded_power(base: int, exp: int, what: str) -> int:
    """base ** exp, refused while still cheap when the result could not
    even be written down (digit estimate over SYMBOLIC_DIGIT_CAP)."""
    if base > 1 and exp > 0:
        est = exp * len(str(base))
        if est > SYMBOLIC_DIGIT_CAP:
            raise CapExceeded(what, est, SYMBOLIC_DIGIT_CAP)
    return base**exp


def extend_spec(
    spec: StructuredWreathSpec,
    bottom_name: str,
    action_name: str,
    supplied_images: Optional[tuple[tuple[int, ...], ...]] = None,
) -> StructuredWreathSpec:
    """Append one wreath layer, updating the symbolic bookkeeping.

    Raises CapExceeded when the new level's order would run past
    SYMBOLIC_DIGIT_CAP digits; exact bookkeeping ends where the integers
    stop being writable.
    """
    bottom = named_group(bottom_name)
    prev_order = spec.symbolic_orders[-1]
    prev_degree = spec.symbolic_degrees[-1]
    if action_name == "natural":
        x = prev_degree
    elif action_name == "regular":
        x = prev_order
    elif action_name == "product":
        if spec.levels < 2:
            raise ValueError("product action needs a previous wreath layer")
        prev_bottom = named_group(spec.recipe[-1][0])
        x = _guarded_power(
            prev_bottom.degree, spec.action_degrees[-1], "symbolic action degree digits"
        )
    elif action_name == "supplied":
        if not supplied_images:
            raise ValueError("supplied action without images")
        x = len(supplied_images[0])
    else:
        raise ValueError(f"unknown action descriptor: {action_name!r}")
    order = _guarded_power(bottom.order, x, "symbolic order digits") * prev_order
    return StructuredWreathSpec(
        recipe=spec.recipe + ((bottom_name, action_name),),
        symbolic_orders=spec.symbolic_orders + (order,),
        symbolic_degrees=spec.symbolic_degrees + (bottom.degree * x,),
        action_degrees=spec.action_degrees + (x,),
        seed_generators=spec.seed_generators,
        supplied_actions=spec.supplied_actions + (supplied_images,),
    )


def materialize_levels(
    spec: StructuredWreathSpec,
    upto: Optional[int] = None,
    caps: Caps = DEFAULT_CAPS,
) -> list[tuple[FiniteGroup, Optional[WreathData]]]:
    """Materialize levels 0..upto (or all), checking caps level by level.

    Returns one (group, wreath_data) pair per level; the seed has no
    wreath data.  Raises CapExceeded at the first level over the cap.
    """
    last = spec.levels - 1 if upto is None else upto
    out: list[tuple[FiniteGroup, Optional[WreathData]]] = []
    prev_wd: Optional[WreathData] = None
    for i in range(last + 1):
        if spec.symbolic_orders[i] > caps.max_order:
            raise CapExceeded(f"level {i} order", spec.symbolic_orders[i], caps.max_order)
        if i == 0:
            g = _resolve_seed(spec)
            if g.order != spec.symbolic_orders[0]:
                raise ValueError("seed order does not match the spec")
            out.append((g, None))
            continue
        bottom_name, action_name = spec.recipe[i]
        bottom = named_group(bottom_name)
        prev = out[-1][0]
        if action_name == "natural":
            act = natural_action(prev)
        elif action_name == "regular":
            act = regular_action(prev, caps)
        elif action_name == "product":
            if prev_wd is None:
                raise ValueError("product action needs a previous wreath layer")
            act = product_action(prev_wd, caps)
        elif action_name == "supplied":
            images = spec.supplied_actions[i]
            if not images:
                raise ValueError("supplied action without images")
            act = GroupAction(prev, len(images[0]), images)
        else:
            raise ValueError(f"unknown action descriptor: {action_name!r}")
        wd = wreath_data(bottom, prev, act)
        if wd.group.order != spec.symbolic_orders[i]:
            raise ValueError("materialized order does not match the spec")
        prev_wd = wd
        out.append((wd.group, wd))
    return out
