import pytest
from hypothesis import given, settings, strategies as st

from jitower.config import InvalidHom
from jitower.groups import FiniteGroup, direct_product
from jitower.homs import (
    hom_from_images,
    identity_hom,
    quotient_by,
    trivial_hom,
)
from jitower.perms import Permutation

from conftest import GENS, cyc


def grp(name: str) -> FiniteGroup:
    gens = GENS[name]
    return FiniteGroup(len(gens[0]), gens)


class TestValidation:
    def test_identity_assignment(self):
        for name in ("S3", "A5", "W2"):
            f = identity_hom(grp(name))
            assert f.kernel().is_trivial()
            assert f.is_surjective() and f.is_isomorphism()

    def test_c4_onto_c2(self):
        C4, C2 = grp("C4"), grp("C2")
        f = hom_from_images(C4, C2, [cyc(2, (0, 1))])
        assert f.is_surjective()
        assert f.kernel().order == 2
        assert not f.is_injective()

    def test_c4_to_s3_rejected(self):
        C4 = grp("C4")
        S3 = grp("S3")
        with pytest.raises(InvalidHom, match="12"):
            hom_from_images(C4, S3, [cyc(3, (0, 1, 2))])

    def test_wrong_image_count(self):
        with pytest.raises(InvalidHom):
            hom_from_images(grp("S3"), grp("C2"), [cyc(2, (0, 1))])

    def test_image_outside_target(self):
        C3 = grp("C3")
        A5 = grp("A5")
        with pytest.raises(InvalidHom):
            hom_from_images(C3, A5, [cyc(5, (0, 1))])  # odd, not in A5

    def test_image_degree_mismatch(self):
        with pytest.raises(InvalidHom):
            hom_from_images(grp("C2"), grp("C2"), [cyc(3, (0, 1))])

    def test_sign_map(self):
        S3, C2 = grp("S3"), grp("C2")
        f = hom_from_images(S3, C2, [cyc(2, (0, 1)), cyc(2, ())])
        assert f.kernel().order == 3


class TestApply:
    def test_homomorphism_property_sign_map(self):
        S3, C2 = grp("S3"), grp("C2")
        f = hom_from_images(S3, C2, [cyc(2, (0, 1)), cyc(2, ())])
        for x in S3.elements():
            for y in S3.elements():
                px, py = Permutation(x), Permutation(y)
                assert f.apply(px * py) == f.apply(px) * f.apply(py)

    def test_apply_rejects_non_members(self):
        C4, C2 = grp("C4"), grp("C2")
        f = hom_from_images(C4, C2, [cyc(2, (0, 1))])
        with pytest.raises(ValueError):
            f.apply(cyc(4, (0, 1)))  # not in C4

    def test_trivial_hom(self):
        f = trivial_hom(grp("A5"), grp("C2"))
        assert f.kernel().order == 60
        assert not f.is_surjective()
        assert f.apply(cyc(5, (0, 1, 2))).is_identity


class TestKernelImage:
    @pytest.mark.parametrize("name,images_name,images", [
        ("C4", "C2", [cyc(2, (0, 1))]),
        ("C6", "C3", [cyc(3, (0, 1, 2))]),
        ("S3", "C2", [cyc(2, (0, 1)), cyc(2, ())]),
        ("S4", "C2", [cyc(2, (0, 1)), cyc(2, (0, 1))]),
    ])
    def test_order_formula(self, name, images_name, images):
        src, tgt = grp(name), grp(images_name)
        f = hom_from_images(src, tgt, images)
        assert f.kernel().order * f.image().order == src.order

    def test_kernel_is_normal(self):
        S4, C2 = grp("S4"), grp("C2")
        f = hom_from_images(S4, C2, [cyc(2, (0, 1)), cyc(2, (0, 1))])
        k = f.kernel()
        assert k.is_normal()
        assert k.order == 12  # A4

    def test_kernel_elements_map_to_identity(self):
        S4, C2 = grp("S4"), grp("C2")
        f = hom_from_images(S4, C2, [cyc(2, (0, 1)), cyc(2, (0, 1))])
        for e in f.kernel().elements():
            assert f.apply(e).is_identity

    def test_projection_from_direct_product(self):
        S3, C2 = grp("S3"), grp("C2")
        P = direct_product(S3, C2)
        images = [g for g in S3.generators] + [Permutation.identity(3)]
        proj = hom_from_images(P, S3, images)
        assert proj.is_surjective()
        assert proj.kernel().order == 2


class TestPreimage:
    def test_round_trip(self):
        S4, C2 = grp("S4"), grp("C2")
        f = hom_from_images(S4, C2, [cyc(2, (0, 1)), cyc(2, (0, 1))])
        for y in C2.elements():
            x = f.preimage(y)
            assert f.apply(x) == Permutation(y)

    def test_not_in_image(self):
        C4, C2 = grp("C4"), grp("C2")
        f = trivial_hom(C4, C2)
        with pytest.raises(ValueError):
            f.preimage(cyc(2, (0, 1)))


class TestCompose:
    def test_chain_of_quotients(self):
        C8 = FiniteGroup(8, [cyc(8, tuple(range(8)))])
        C4, C2 = grp("C4"), grp("C2")
        f = hom_from_images(C8, C4, [cyc(4, (0, 1, 2, 3))])
        g = hom_from_images(C4, C2, [cyc(2, (0, 1))])
        fg = f.then(g)
        assert fg.kernel().order == 4
        x = cyc(8, tuple(range(8)))
        assert fg.apply(x) == g.apply(f.apply(x))

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            identity_hom(grp("C4")).then(identity_hom(grp("C3")))


class TestQuotient:
    def test_by_full_group(self):
        G = grp("S3")
        Q, pi = quotient_by(G, G.full_subgroup())
        assert Q.order == 1
        assert pi.kernel().order == 6

    def test_by_trivial(self):
        G = grp("S3")
        Q, pi = quotient_by(G, G.trivial_subgroup())
        assert Q is G
        assert pi.is_isomorphism()

    def test_w2_by_centre(self):
        G = grp("W2")
        z = G.subgroup([cyc(4, (0, 1), (2, 3))])
        Q, pi = quotient_by(G, z)
        assert Q.order == 4
        # exponent 2: the quotient is the Klein group
        for e in Q.elements():
            sq = Permutation(e)
            assert (sq * sq).is_identity
        assert pi.kernel() == z

    def test_s4_by_klein_is_s3_sized(self):
        S4 = grp("S4")
        v = S4.subgroup([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
        Q, pi = quotient_by(S4, v)
        assert Q.order == 6
        assert not Q.is_abelian()
        assert pi.kernel() == v

    def test_kernel_exactly_n(self):
        C16 = FiniteGroup(16, [cyc(16, tuple(range(16)))])
        g4 = Permutation(cyc(16, tuple(range(16)))) ** 4
        n = C16.subgroup([g4])  # order 4
        Q, pi = quotient_by(C16, n)
        assert Q.order == 4
        assert pi.kernel() == n

    def test_rejects_non_normal(self):
        S3 = grp("S3")
        h = S3.subgroup([cyc(3, (0, 1))])
        with pytest.raises(ValueError):
            quotient_by(S3, h)

    def test_quotient_deterministic(self):
        G1, G2 = grp("W2"), grp("W2")
        z1 = G1.subgroup([cyc(4, (0, 1), (2, 3))])
        z2 = G2.subgroup([cyc(4, (0, 1), (2, 3))])
        q1, _ = quotient_by(G1, z1)
        q2, _ = quotient_by(G2, z2)
        assert q1.gen_tuples == q2.gen_tuples


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_quotient_map_is_homomorphism(data):
    G = grp("S4")
    v = G.subgroup([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
    _, pi = quotient_by(G, v)
    els = G.sorted_elements()
    x = data.draw(st.sampled_from(els))
    y = data.draw(st.sampled_from(els))
    assert pi.apply(Permutation(x) * Permutation(y)) == pi.apply(x) * pi.apply(y)
