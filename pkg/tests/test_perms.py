import pytest
from hypothesis import given, strategies as st

from jitower.perms import (
    Permutation,
    cycles_of,
    identity_tuple,
    pcomm,
    pconj,
    perm_order,
    pglue,
    pinv,
    pmul,
)

from conftest import compose, cyc


perms = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.permutations(range(n)).map(tuple)
)


def same_degree_pairs(n_max=8):
    return st.integers(min_value=1, max_value=n_max).flatmap(
        lambda n: st.tuples(
            st.permutations(range(n)).map(tuple),
            st.permutations(range(n)).map(tuple),
        )
    )


def same_degree_triples(n_max=7):
    return st.integers(min_value=1, max_value=n_max).flatmap(
        lambda n: st.tuples(
            *(st.permutations(range(n)).map(tuple) for _ in range(3))
        )
    )


class TestRawOps:
    def test_mul_is_left_to_right(self):
        # p = (0 1), q = (1 2): applying p then q sends 0 -> 1 -> 2.
        p, q = (1, 0, 2), (0, 2, 1)
        assert pmul(p, q) == (2, 0, 1)
        assert pmul(p, q) == compose(p, q)

    def test_identity(self):
        assert identity_tuple(4) == (0, 1, 2, 3)
        assert identity_tuple(0) == ()

    @given(perms)
    def test_inverse(self, p):
        n = len(p)
        assert pmul(p, pinv(p)) == identity_tuple(n)
        assert pmul(pinv(p), p) == identity_tuple(n)

    @given(same_degree_triples())
    def test_associative(self, triple):
        a, b, c = triple
        assert pmul(pmul(a, b), c) == pmul(a, pmul(b, c))

    @given(same_degree_pairs())
    def test_inverse_of_product(self, pair):
        a, b = pair
        assert pinv(pmul(a, b)) == pmul(pinv(b), pinv(a))

    @given(same_degree_pairs())
    def test_conjugation_matches_definition(self, pair):
        x, g = pair
        assert pconj(x, g) == pmul(pmul(pinv(g), x), g)

    @given(same_degree_pairs())
    def test_commutator_matches_definition(self, pair):
        a, b = pair
        assert pcomm(a, b) == pmul(pmul(pinv(a), pinv(b)), pmul(a, b))

    @given(perms)
    def test_order_matches_brute_force(self, p):
        n = len(p)
        cur = p
        k = 1
        while cur != identity_tuple(n):
            cur = pmul(cur, p)
            k += 1
        assert perm_order(p) == k

    def test_glue(self):
        assert pglue((1, 0), (0, 2, 1)) == (1, 0, 2, 4, 3)


class TestPermutation:
    def test_validation(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))
        with pytest.raises(ValueError):
            Permutation((0, 3))
        with pytest.raises(ValueError):
            Permutation((1, -1, 0))

    def test_from_cycles(self):
        p = Permutation.from_cycles(5, (0, 1, 2))
        assert tuple(p) == (1, 2, 0, 3, 4)
        assert p == Permutation.from_cycles(5, (1, 2, 0))

    def test_from_cycles_rejects_overlap(self):
        with pytest.raises(ValueError):
            Permutation.from_cycles(4, (0, 1), (1, 2))

    def test_mul_and_pow(self):
        r = Permutation.from_cycles(4, (0, 1, 2, 3))
        assert r * r == Permutation.from_cycles(4, (0, 2), (1, 3))
        assert r ** 4 == Permutation.identity(4)
        assert r ** -1 == r.inverse()
        assert r ** 0 == Permutation.identity(4)
        assert r ** 7 == r ** 3

    def test_mul_degree_mismatch(self):
        with pytest.raises(ValueError):
            Permutation.identity(3) * Permutation.identity(4)

    def test_apply(self):
        p = Permutation.from_cycles(3, (0, 1, 2))
        assert [p.apply(i) for i in range(3)] == [1, 2, 0]

    def test_order_and_cycles(self):
        p = Permutation.from_cycles(6, (0, 1, 2), (3, 4))
        assert p.order() == 6
        assert p.cycles() == [(0, 1, 2), (3, 4)]
        assert Permutation.identity(6).cycles() == []
        assert Permutation.identity(6).is_identity

    @given(perms)
    def test_cycles_round_trip(self, t):
        p = Permutation(t)
        assert Permutation.from_cycles(len(t), *cycles_of(t)) == p

    def test_cycle_repr(self):
        p = Permutation.from_cycles(4, (0, 1, 2))
        assert "(0 1 2)" in repr(p)

    def test_cyc_helper_agrees(self):
        assert cyc(5, (0, 1, 2)) == tuple(Permutation.from_cycles(5, (0, 1, 2)))
