"""Tower constructors.

Four families: cyclic p-towers (the smallest passing examples), iterated
wreath towers with base-killing quotients (the canonical failing
examples for basal indecomposability), the alternating simple/perfect
wreath family with symbolic deep levels, and the finite shadow of the
narrow-chain procedure.  wilson_relabel reindexes a fine tower onto its
even levels with composite maps.

Builders never assume an action is usable: every action employed while
a level is materialized is certified subprimitive and faithful first,
and a failed certification is a hard error naming the witness.
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

from .actions import (
    GroupAction,
    is_subprimitive,
    natural_action,
    regular_action,
)
from .catalog import named_group
from .chief import ChiefFactor, narrow_associated_to
from .config import DEFAULT_CAPS, Caps, CapExceeded
from .groups import FiniteGroup, SubgroupHandle, commutator_subgroup, structure_profile
from .homs import GroupHom, hom_from_images, quotient_by
from .lattice import is_prime, melnikov, normal_subgroups, obliquity
from .perms import identity_tuple
from .towers import Tower
from .wreathspec import (
    StructuredWreathSpec,
    extend_spec,
    product_action,
    spec_for_seed,
    wreath_data,
)

__all__ = [
    "build_cyclic_tower",
    "build_wreath_tower",
    "build_example64",
    "wilson_relabel",
    "chain_construct",
]


def build_cyclic_tower(
    p: int, levels: int, start_exponent: int = 2, caps: Caps = DEFAULT_CAPS
) -> Tower:
    """Cyclic groups of order p^start_exponent, p^(start_exponent+1), ...
    with generator-to-generator quotient maps; A_n is the subgroup of
    order p^2 whenever the level is big enough to have one."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if levels < 2:
        raise ValueError("a cyclic tower needs at least 2 levels")
    if start_exponent < 1:
        raise ValueError("start exponent must be at least 1")

    lv = []
    for n in range(levels):
        order = p ** (start_exponent + n)
        if order > caps.max_order:
            raise CapExceeded(f"cyclic level {n + 1} order", order, caps.max_order)
        lv.append(named_group(f"C{order}"))
    maps = [
        hom_from_images(lv[i + 1], lv[i], [lv[i].gen_tuples[0]])
        for i in range(levels - 1)
    ]
    designated = []
    for g in lv:
        if g.order < p * p:
            designated.append(None)
            continue
        x = identity_tuple(g.degree)
        gen = g.gen_tuples[0]
        for _ in range(g.order // (p * p)):
            x = tuple(gen[v] for v in x)
        designated.append(g.subgroup([x]))
    return Tower(lv, maps, designated)


def build_wreath_tower(
    bottom: FiniteGroup, levels: int, caps: Caps = DEFAULT_CAPS
) -> Tower:
    """bottom, bottom ≀ bottom, bottom ≀ (bottom ≀ bottom), ... in the
    imprimitive representation, with base-killing quotient maps.

    Designated subgroups are left empty; find_admissible_A can fill
    them.  The bottom group must be nontrivial and transitive on its
    points, so every level acts transitively.
    """
    if bottom.order == 1:
        raise ValueError("wreath tower needs a nontrivial bottom group")
    if levels < 1:
        raise ValueError("wreath tower needs at least 1 level")
    if len(natural_action(bottom).orbits()) != 1:
        raise ValueError("bottom group must act transitively on its points")

    lv = [bottom]
    maps: list[GroupHom] = []
    for n in range(1, levels):
        prev = lv[-1]
        order = bottom.order ** prev.degree * prev.order
        if order > caps.max_order:
            raise CapExceeded(f"wreath level {n + 1} order", order, caps.max_order)
        wd = wreath_data(bottom, prev, natural_action(prev))
        lv.append(wd.group)
        maps.append(wd.base_killing_hom())
    return Tower(lv, maps)


def _subprimitivity_witness(a: GroupAction, caps: Caps) -> Optional[SubgroupHandle]:
    """A normal subgroup violating orbit-faithfulness, if any."""
    k_els = a.kernel().elements()
    for h in normal_subgroups(a.group, caps).members:
        if h.is_trivial():
            continue
        els = h.elements(caps.enumeration_cap)
        perms = {e: tuple(a.perm_of(e)) for e in els}
        seen: set[int] = set()
        for start in range(a.degree):
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                pt = frontier.pop()
                for q in perms.values():
                    if q[pt] not in orbit:
                        orbit.add(q[pt])
                        frontier.append(q[pt])
            seen |= orbit
            fixers = sum(1 for e in els if all(perms[e][pt] == pt for pt in orbit))
            if fixers != len(els & k_els):
                return h
    return None


def _certify_action(a: GroupAction, role: str, caps: Caps) -> None:
    """Hard-error unless the action is faithful and subprimitive."""
    if not a.is_faithful():
        raise ValueError(
            f"{role} is not faithful: kernel has order {a.kernel().order}")
    if not is_subprimitive(a, caps=caps):
        w = _subprimitivity_witness(a, caps)
        detail = f"order-{w.order} normal subgroup" if w is not None else "witness scan"
        raise ValueError(f"{role} is not subprimitive ({detail})")


ActionStrategy = Union[str, Sequence[Sequence[Sequence[int]]]]


def build_example64(
    top_action: GroupAction,
    simples: Sequence[str],
    perfects: Sequence[str],
    action_strategy: ActionStrategy = "product",
    levels: int = 2,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[Tower, StructuredWreathSpec]:
    """Alternating wreath levels S_0 ≀ top, F_0 ≀ that, S_1 ≀ that, ...

    simples and perfects are catalog names; even steps take the next
    simple group, odd steps the next perfect one.  Every level is
    recorded symbolically with its exact order, for as long as that order
    stays writable (the symbolic tail stops at SYMBOLIC_DIGIT_CAP digits);
    a materialized prefix (orders within caps) is returned as a Tower
    with base-killing maps.  Each materialized level's wreathing action
    is certified subprimitive and faithful before use, including the
    action that would build the first symbolic level.  action_strategy
    is "regular", "product", or a list with one entry of generator image
    tuples per step after the first (the supplied escape hatch).
    """
    if levels < 1:
        raise ValueError("need at least one wreath level")
    need_s = (levels + 1) // 2
    need_f = levels // 2
    if len(simples) < need_s or len(perfects) < need_f:
        raise ValueError(
            f"{levels} levels need {need_s} simple and {need_f} perfect names")

    supplied: Optional[list] = None
    if not isinstance(action_strategy, str):
        supplied = [tuple(tuple(p) for p in entry) for entry in action_strategy]
        if len(supplied) < levels - 1:
            raise ValueError(
                f"{levels} levels need {levels - 1} supplied actions")
    elif action_strategy not in ("regular", "product"):
        raise ValueError(f"unknown action strategy: {action_strategy!r}")

    for name in simples[:need_s]:
        cls = structure_profile(named_group(name)).classification
        if cls[0] != "simple_power" or cls[2] != 1:
            raise ValueError(f"{name} is not a nonabelian simple group")
    for name in perfects[:need_f]:
        g = named_group(name)
        if g.order == 1 or commutator_subgroup(g, g).order != g.order:
            raise ValueError(f"{name} is not a nontrivial perfect group")

    top = top_action.group
    _certify_action(top_action, "top action", caps)

    spec = spec_for_seed("supplied", top)
    step_names = [
        simples[k // 2] if k % 2 == 0 else perfects[k // 2]
        for k in range(levels)
    ]
    top_images = tuple(tuple(p) for p in top_action.images)
    for k, name in enumerate(step_names):
        try:
            if k == 0:
                spec = extend_spec(spec, name, "supplied", top_images)
            elif supplied is not None:
                spec = extend_spec(spec, name, "supplied", supplied[k - 1])
            else:
                spec = extend_spec(spec, name, action_strategy)
        except CapExceeded:
            # Orders past this point could not even be written down; the
            # symbolic tail ends here.
            break

    lv: list[FiniteGroup] = [top]
    maps: list[GroupHom] = []
    prev_wd = None
    for k, name in enumerate(step_names[: spec.levels - 1]):
        prev = lv[-1]
        if k == 0:
            act = top_action
        else:
            if supplied is not None:
                imgs = supplied[k - 1]
                act = GroupAction(prev, len(imgs[0]), imgs)
            elif action_strategy == "regular":
                act = regular_action(prev, caps)
            else:
                act = product_action(prev_wd, caps)
            _certify_action(act, f"step {k} action", caps)
        if spec.symbolic_orders[k + 1] > caps.max_order:
            break
        wd = wreath_data(named_group(name), prev, act)
        lv.append(wd.group)
        maps.append(wd.base_killing_hom())
        prev_wd = wd
    return Tower(lv, maps), spec


def wilson_relabel(h_tower: Tower) -> Tower:
    """Reindex a fine tower onto its even levels.

    Counting the input levels as H_0, H_1, ... with maps φ_k, the output
    levels are H_2, H_4, H_6, ... with composite maps φ(2j+1)∘φ(2j+2)
    and designated subgroups ker(φ(2j-2)∘φ(2j-1)∘φ(2j)); the first
    output level has no triple composite, so its slot stays empty.
    Injective maps must be dropped by the caller first: each is rejected
    with its index.
    """
    n = h_tower.size
    if n < 6:
        raise ValueError(f"relabeling needs at least 6 levels, got {n}")
    for i in range(1, n):
        if h_tower.kernel(i).order == 1:
            raise ValueError(f"map {i} is injective; drop repeated levels first")

    out_count = (n - 1) // 2
    lv = [h_tower.group(2 * j + 1) for j in range(1, out_count + 1)]
    maps = [
        h_tower.rho(2 * j + 2).then(h_tower.rho(2 * j + 1))
        for j in range(1, out_count)
    ]
    designated: list[Optional[SubgroupHandle]] = [None]
    for j in range(2, out_count + 1):
        comp = (
            h_tower.rho(2 * j)
            .then(h_tower.rho(2 * j - 1))
            .then(h_tower.rho(2 * j - 2))
        )
        designated.append(comp.kernel())
    return Tower(lv, maps, designated)


def chain_construct(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> Tower:
    """The narrow-chain tower of quotients of G.

    Start with K_0 = G; each round emits the quotient of G by the
    intersection of the maximal normal subgroups below K_n (read as M(G)
    for the first round), designates the image of K_n there, and picks
    K_{n+1} as the canonically least narrow subgroup associated to a
    chief factor below the obliquity core of that intersection.  Stops
    when the core is trivial.  The intersections strictly decrease, so
    this terminates.
    """
    if G.order == 1:
        raise ValueError("chain construction needs a nontrivial group")

    levels: list[FiniteGroup] = []
    pis: list[GroupHom] = []
    designated: list[SubgroupHandle] = []
    K = G.full_subgroup()
    prev_m_order: Optional[int] = None
    while True:
        if K.order == G.order:
            m = melnikov(G, caps=caps)
        else:
            m = melnikov(K, ambient_relative=G, caps=caps)
        assert prev_m_order is None or m.order < prev_m_order
        prev_m_order = m.order
        q, pi = quotient_by(G, m, caps)
        levels.append(q)
        pis.append(pi)
        designated.append(q.subgroup([tuple(pi.apply(g)) for g in K.gen_tuples]))

        core = obliquity(G, m, caps=caps)
        if core.order == 1:
            break
        lat = normal_subgroups(G, caps)
        candidates = []
        for k in lat.members:
            if k.order == 1 or not core.contains_subgroup(k):
                continue
            for l in lat.maximal_below(k):
                candidates.append(
                    narrow_associated_to(ChiefFactor(G, k, l), caps))
        K = min(candidates, key=lambda h: h.canonical_key())

    maps = [
        hom_from_images(
            levels[i],
            levels[i - 1],
            [pis[i - 1].apply(g) for g in G.gen_tuples],
        )
        for i in range(1, len(levels))
    ]
    return Tower(levels, maps, designated)
