"""Lattice machinery against independent brute-force oracles.

Two oracles, both independent of the library: subgroup enumeration by
raw subset filtering (viable up to order ~16), and normal subgroups as
the closed unions of conjugacy classes (viable while the class count is
small).  Larger cases are pinned to frozen values cross-checked by the
structured wreath route, which shares no code with the generic path.
"""

from __future__ import annotations

import itertools

import pytest

from jitower.actions import natural_action
from jitower.catalog import named_group
from jitower.config import CapExceeded, Caps
from jitower.groups import FiniteGroup
from jitower.lattice import (
    NormalLattice,
    all_subgroups,
    is_narrow,
    is_prime,
    melnikov,
    normal_subgroups,
    obliquity,
    p_radicals,
    structured_normal_subgroups,
)
from jitower.wreathspec import extend_spec, spec_for_seed, wreath_data

from conftest import GENS, brute_close, compose


# -- oracles ------------------------------------------------------------------


def oracle_subgroups_by_subsets(elements: frozenset) -> set[frozenset]:
    """All subgroups by filtering every subset. Only sane for tiny groups."""
    els = sorted(elements)
    ident = tuple(range(len(els[0])))
    others = [e for e in els if e != ident]
    subs = set()
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            cand = frozenset(combo) | {ident}
            if all(compose(a, b) in cand for a in cand for b in cand):
                subs.add(cand)
    return subs


def oracle_normals_by_class_unions(elements: frozenset) -> set[frozenset]:
    """Normal subgroups as subgroup-forming unions of conjugacy classes."""
    els = sorted(elements)
    ident = tuple(range(len(els[0])))
    inv = {e: next(x for x in els if compose(e, x) == ident) for e in els}
    classes = []
    assigned = set()
    for e in els:
        if e in assigned:
            continue
        cls = frozenset(compose(compose(inv[g], e), g) for g in els)
        classes.append(cls)
        assigned |= cls
    nontrivial = [c for c in classes if c != frozenset({ident})]
    normals = set()
    for r in range(len(nontrivial) + 1):
        for combo in itertools.combinations(nontrivial, r):
            cand = frozenset({ident}).union(*combo) if combo else frozenset({ident})
            if all(compose(a, b) in cand for a in cand for b in cand):
                normals.add(cand)
    return normals


def grp(name: str) -> FiniteGroup:
    degree = len(GENS[name][0])
    return FiniteGroup(degree, GENS[name])


def w2_data():
    C2 = named_group("C2")
    return wreath_data(C2, C2, natural_action(C2))


# -- normal_subgroups ---------------------------------------------------------


class TestNormalSubgroups:
    def test_prime_order_group_has_two_members(self):
        lat = normal_subgroups(grp("C3"))
        assert [h.order for h in lat.members] == [1, 3]

    def test_w2_against_class_union_oracle(self):
        G = grp("W2")
        expected = oracle_normals_by_class_unions(brute_close(GENS["W2"], 4))
        lat = normal_subgroups(G)
        assert {h.elements() for h in lat.members} == expected
        assert sorted(h.order for h in lat.members) == [1, 2, 4, 4, 4, 8]

    @pytest.mark.parametrize("name", ["S3", "A4", "S4", "A5", "Q8", "klein", "C6"])
    def test_against_class_union_oracle(self, name):
        G = grp(name)
        expected = oracle_normals_by_class_unions(brute_close(GENS[name], G.degree))
        lat = normal_subgroups(G)
        assert {h.elements() for h in lat.members} == expected

    def test_a5_wr_c2_three_members(self):
        # nonabelian simple base: only 1, the base, and the whole group
        sp = spec_for_seed("C2", named_group("C2"))
        sp = extend_spec(sp, "A5", "natural")
        lat = structured_normal_subgroups(sp)
        brute = normal_subgroups(lat.ambient)
        assert sorted(h.order for h in brute.members) == [1, 3600, 7200]
        assert {h.canonical_key() for h in brute.members} == {
            h.canonical_key() for h in lat.members
        }

    def test_cap(self):
        with pytest.raises(CapExceeded):
            normal_subgroups(grp("W2"), caps=Caps(max_order=4))

    def test_members_sorted_and_deterministic(self):
        lat1 = NormalLattice(grp("S4"), list(normal_subgroups(grp("S4")).members))
        orders = [h.order for h in lat1.members]
        assert orders == sorted(orders)
        assert orders[0] == 1 and orders[-1] == 24


class TestLatticeType:
    def test_join_meet_closed(self):
        G = grp("W2")
        lat = normal_subgroups(G)
        for a in lat.members:
            for b in lat.members:
                j = lat.join(a, b)
                m = lat.meet(a, b)
                assert j.contains_subgroup(a) and j.contains_subgroup(b)
                assert a.contains_subgroup(m) and b.contains_subgroup(m)

    def test_every_member_normal(self):
        for name in ["S3", "S4", "W2", "Q8"]:
            for h in normal_subgroups(grp(name)).members:
                assert h.is_normal()

    def test_trivial_and_full_present(self):
        lat = normal_subgroups(grp("A4"))
        assert lat.trivial.order == 1
        assert lat.full.order == 12

    def test_maximal_below_full(self):
        # A4 has a unique maximal normal subgroup, the Klein four-group
        lat = normal_subgroups(grp("A4"))
        maxes = lat.maximal_below(lat.full)
        assert [h.order for h in maxes] == [4]

    def test_minimal_members(self):
        lat = normal_subgroups(grp("klein"))
        assert sorted(h.order for h in lat.minimal_members()) == [2, 2, 2]

    def test_agrees_with_subgroup_filter_small(self):
        # cross-check the two enumeration paths on everything tiny
        for name in ["C4", "klein", "S3", "D4", "W2", "Q8"]:
            G = grp(name)
            normal_keys = {h.canonical_key() for h in normal_subgroups(G).members}
            filtered = {
                h.canonical_key() for h in all_subgroups(G) if h.is_normal()
            }
            assert normal_keys == filtered


# -- melnikov -----------------------------------------------------------------


class TestMelnikov:
    def test_simple_group_gives_trivial(self):
        A5 = grp("A5")
        assert melnikov(A5).order == 1

    def test_c4(self):
        assert melnikov(grp("C4")).order == 2

    def test_relative_base_of_w2(self):
        wd = w2_data()
        m = melnikov(wd.base_subgroup(), ambient_relative=wd.group)
        # oracle: intersect the maximal normal subgroups below the base
        lat = normal_subgroups(wd.group)
        below = [
            h for h in lat.members
            if h.order < 4 and wd.base_subgroup().contains_subgroup(h)
        ]
        best = max(h.order for h in below)
        expected = frozenset.intersection(
            *[h.elements() for h in below if h.order == best]
        )
        assert m.elements() == expected
        assert m.order == 2

    def test_trivial_input_rejected(self):
        with pytest.raises(ValueError):
            melnikov(grp("S3").trivial_subgroup())

    def test_relative_needs_normal(self):
        G = grp("S3")
        refl = G.subgroup([GENS["S3"][0]])
        with pytest.raises(ValueError):
            melnikov(refl, ambient_relative=G)

    @pytest.mark.parametrize("name", ["S3", "S4", "W2", "Q8", "C6", "A4"])
    def test_ordering_property(self, name):
        # M(A) <= M_G(A) < A for every nontrivial normal A
        G = grp(name)
        for A in normal_subgroups(G).members:
            if A.is_trivial():
                continue
            ma = melnikov(A)
            mga = melnikov(A, ambient_relative=G)
            assert mga.contains_subgroup(ma)
            assert A.contains_subgroup(mga) and mga.order < A.order

    def test_proper_for_nontrivial(self):
        for name in ["C2", "C16", "S5", "Q8"]:
            G = grp(name)
            assert melnikov(G).order < G.order


# -- is_narrow ----------------------------------------------------------------


class TestIsNarrow:
    def test_w2_base_is_narrow(self):
        wd = w2_data()
        res = is_narrow(wd.group, wd.base_subgroup())
        assert res.narrow
        # the unique maximal invariant subgroup is the centre
        assert res.unique_max.order == 2
        assert res.unique_max.is_normal()

    def test_klein_not_narrow(self):
        G = grp("klein")
        res = is_narrow(G, G.full_subgroup())
        assert not res.narrow and res.unique_max is None
        assert len(normal_subgroups(G).maximal_below(G.full_subgroup())) == 3

    def test_a5_wr_c2_base_narrow_with_trivial_max(self):
        sp = spec_for_seed("C2", named_group("C2"))
        sp = extend_spec(sp, "A5", "natural")
        lat = structured_normal_subgroups(sp)
        base = [h for h in lat.members if h.order == 3600][0]
        res = is_narrow(lat.ambient, base)
        assert res.narrow and res.unique_max.order == 1

    def test_narrow_unique_max_is_melnikov(self):
        wd = w2_data()
        res = is_narrow(wd.group, wd.base_subgroup())
        m = melnikov(wd.base_subgroup(), ambient_relative=wd.group)
        assert res.unique_max.canonical_key() == m.canonical_key()

    @pytest.mark.parametrize("name", ["S3", "S4", "W2", "A4", "C6"])
    def test_quotient_characterization(self, name):
        # narrow implies: K * M_G(A) >= A iff K >= A, over the whole lattice
        G = grp(name)
        lat = normal_subgroups(G)
        for A in lat.members:
            if A.is_trivial():
                continue
            res = is_narrow(G, A)
            if not res.narrow:
                continue
            mga = res.unique_max
            for K in lat.members:
                prod = G.subgroup(tuple(K.gen_tuples) + tuple(mga.gen_tuples))
                assert prod.contains_subgroup(A) == K.contains_subgroup(A)

    def test_rejects_trivial_and_nonnormal(self):
        G = grp("S3")
        with pytest.raises(ValueError):
            is_narrow(G, G.trivial_subgroup())
        with pytest.raises(ValueError):
            is_narrow(G, G.subgroup([GENS["S3"][0]]))


# -- p_radicals ---------------------------------------------------------------


class TestPRadicals:
    def test_p_group(self):
        G = grp("C16")
        r = p_radicals(G, 2)
        assert r.Op_upper.order == 1
        assert r.Op_lower.order == 16

    def test_s3_both_primes(self):
        G = grp("S3")
        assert p_radicals(G, 3).Op_upper.order == 6
        assert p_radicals(G, 2).Op_upper.order == 3

    def test_w2_frattini_is_centre(self):
        wd = w2_data()
        r = p_radicals(wd.group, 2)
        assert r.frattini.order == 2
        assert r.frattini.is_normal()
        # oracle: intersect the maximal subgroups from the subset filter
        subs = oracle_subgroups_by_subsets(brute_close(GENS["W2"], 4))
        proper = [s for s in subs if len(s) < 8]
        top = max(len(s) for s in proper)
        expected = frozenset.intersection(*[s for s in proper if len(s) == top])
        assert r.frattini.elements() == expected

    def test_frattini_of_op(self):
        # O_2(S4) is the Klein group, which is elementary abelian
        r = p_radicals(grp("S4"), 2)
        assert r.Op_lower.order == 4
        assert r.frattini_of_Op.order == 1

    def test_op_upper_idempotent(self):
        for name in ["S3", "S4", "A4", "C6", "W2"]:
            G = grp(name)
            for p in [2, 3]:
                inner = p_radicals(G, p).Op_upper.as_group()
                again = p_radicals(inner, p).Op_upper
                assert again.order == inner.order

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            p_radicals(grp("S3"), 6)

    def test_is_prime(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


# -- all_subgroups ------------------------------------------------------------


class TestAllSubgroups:
    @pytest.mark.parametrize("name,count", [("C3", 2), ("klein", 5), ("W2", 10)])
    def test_counts(self, name, count):
        assert len(all_subgroups(grp(name))) == count

    @pytest.mark.parametrize("name", ["C4", "klein", "S3", "D4", "W2", "Q8"])
    def test_against_subset_oracle(self, name):
        G = grp(name)
        expected = oracle_subgroups_by_subsets(brute_close(GENS[name], G.degree))
        got = {h.elements() for h in all_subgroups(G)}
        assert got == expected

    def test_s4_count(self):
        # 30 subgroups of S4, a standard value recomputable by the oracle
        # at a stretch; the cyclic-extension result is self-consistent
        subs = all_subgroups(grp("S4"))
        assert len(subs) == 30
        assert sum(1 for h in subs if h.is_normal()) == 4

    def test_cap(self):
        with pytest.raises(CapExceeded):
            all_subgroups(grp("S4"), cap=10)


# -- obliquity ----------------------------------------------------------------


class TestObliquity:
    def test_full_subgroup_empty_intersection(self):
        G = grp("W2")
        assert obliquity(G, G.full_subgroup()).order == 8

    def test_w2_centre_unstarred(self):
        G = grp("W2")
        Z = [h for h in normal_subgroups(G).members if h.order == 2][0]
        assert obliquity(G, Z).canonical_key() == Z.canonical_key()

    def test_w2_centre_starred(self):
        # two commuting reflections both normalized by Z intersect in 1
        G = grp("W2")
        Z = [h for h in normal_subgroups(G).members if h.order == 2][0]
        assert obliquity(G, Z, starred=True).order == 1

    def test_starred_below_unstarred(self):
        G = grp("W2")
        for H in all_subgroups(G):
            ob = obliquity(G, H)
            obs = obliquity(G, H, starred=True)
            assert ob.contains_subgroup(obs)
            assert H.contains_subgroup(ob)


# -- structured lattice -------------------------------------------------------


class TestStructuredLattice:
    def c2_spec(self, layers: int):
        sp = spec_for_seed("C2", named_group("C2"))
        for _ in range(layers):
            sp = extend_spec(sp, "C2", "natural")
        return sp

    def test_w2_matches_brute(self):
        lat = structured_normal_subgroups(self.c2_spec(1))
        brute = normal_subgroups(lat.ambient)
        assert {h.canonical_key() for h in lat.members} == {
            h.canonical_key() for h in brute.members
        }
        assert sorted(h.order for h in lat.members) == [1, 2, 4, 4, 4, 8]

    def test_order_128_matches_brute(self):
        lat = structured_normal_subgroups(self.c2_spec(2))
        assert lat.ambient.order == 128
        brute = normal_subgroups(lat.ambient)
        assert {h.canonical_key() for h in lat.members} == {
            h.canonical_key() for h in brute.members
        }

    def test_a5_wr_c2(self):
        sp = spec_for_seed("C2", named_group("C2"))
        sp = extend_spec(sp, "A5", "natural")
        lat = structured_normal_subgroups(sp)
        assert sorted(h.order for h in lat.members) == [1, 3600, 7200]

    def test_unsupported_bottom_rejected(self):
        sp = spec_for_seed("C2", named_group("C2"))
        sp = extend_spec(sp, "S3", "natural")
        with pytest.raises(ValueError, match="supported shape"):
            structured_normal_subgroups(sp)

    def test_seed_only_spec(self):
        sp = spec_for_seed("S3", named_group("S3"))
        lat = structured_normal_subgroups(sp)
        assert sorted(h.order for h in lat.members) == [1, 3, 6]
