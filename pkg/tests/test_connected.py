import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ilocal import (
    DOWN,
    LinearCombination,
    LocalClass,
    NotInXForm,
    NotSimplified,
    Tower,
    UP,
    FUModule,
    connect_sum,
    connected_homology,
    decode,
    hf_conn,
    homology,
    place_towers,
    predict_mu_bar,
    predict_rokhlin_parity,
    reflect,
    representative,
    simplify,
)
from ilocal.suite import random_combination, random_even_d

T = Tower
LC = LinearCombination


def mod(*towers):
    return FUModule(tuple(towers))


class TestLinearCombination:
    def test_sorted_descending_with_plus_first(self):
        lc = LC(((-1, 4), (1, 5), (1, 4)))
        assert lc.terms == ((1, 5), (1, 4), (-1, 4))

    def test_simplified_flag(self):
        assert LC(((1, 3), (1, 3))).simplified
        assert not LC(((1, 3), (-1, 3))).simplified

    def test_rejects_bad_terms(self):
        with pytest.raises(ValueError):
            LC(((2, 3),))
        with pytest.raises(ValueError):
            LC(((1, 0),))

    def test_json_round_trip(self):
        lc = LC(((1, 5), (-1, 2)))
        assert LC.from_json(lc.to_json()) == lc
        cls = LocalClass(lc, F(-3, 2))
        assert LocalClass.from_json(cls.to_json()) == cls


class TestSimplify:
    def test_inverse_pair(self):
        assert simplify(LC(((1, 4), (-1, 4)))) == LC()

    def test_one_cancellation(self):
        lc = LC(((1, 5), (-1, 4), (1, 4), (1, 2)))
        assert simplify(lc) == LC(((1, 5), (1, 2)))

    def test_same_sign_untouched(self):
        lc = LC(((1, 3), (1, 3)))
        assert simplify(lc) == lc


class TestPlacement:
    def test_single_term(self):
        for i in (1, 4, 9):
            out = connected_homology(LC(((1, i),)))
            assert out.oriented_equal(mod(T(F(0), i, DOWN)))

    def test_alternating_example(self):
        out = connected_homology(LC(((1, 5), (-1, 4), (1, 2))))
        assert out.oriented_equal(
            mod(T(F(0), 5, DOWN), T(F(-2), 4, UP), T(F(-2), 2, DOWN))
        )

    def test_same_sign_example(self):
        out = connected_homology(LC(((1, 4), (1, 3), (1, 2))))
        assert out.oriented_equal(
            mod(T(F(0), 4, DOWN), T(F(-7), 3, DOWN), T(F(-12), 2, DOWN))
        )

    def test_all_negative(self):
        out = connected_homology(LC(((-1, 2), (-1, 1))))
        assert out.oriented_equal(mod(T(F(3), 2, UP), T(F(4), 1, UP)))

    def test_unsimplified_rejected(self):
        with pytest.raises(NotSimplified):
            connected_homology(LC(((1, 3), (-1, 3))))

    def test_cancelling_pair_still_places(self):
        out = place_towers(LC(((1, 3), (-1, 3))))
        assert out == mod(T(F(0), 3), T(F(0), 3))

    def test_negation_reflects(self):
        for terms in (((1, 5), (-1, 4), (1, 2)), ((1, 4), (1, 1)), ((-1, 6),)):
            lc = LC(terms)
            flipped = connected_homology(lc.negated())
            mirrored = reflect(connected_homology(lc))
            assert flipped.oriented_equal(mirrored)


class TestHfConn:
    def test_single_tower_shift(self):
        assert hf_conn(LC(((1, 1),)), F(0)).oriented_equal(mod(T(F(-1), 1, DOWN)))

    def test_empty(self):
        assert hf_conn(LC(), F(4)) == mod()

    def test_alternating_shifted(self):
        out = hf_conn(LC(((1, 5), (-1, 4), (1, 2))), F(0))
        assert out.oriented_equal(
            mod(T(F(-1), 5, DOWN), T(F(-3), 4, UP), T(F(-3), 2, DOWN))
        )


class TestRepresentative:
    def test_cell_count(self):
        for terms in (((1, 4), (1, 3), (1, 2)), ((1, 5), (-1, 4)), ()):
            assert len(representative(LC(terms))) == 2 * len(terms) + 1

    def test_ball_gradings(self):
        rep = representative(LC(((1, 4), (1, 3), (1, 2))))
        assert sorted({c.gr for c in rep.cells.values()}, reverse=True) == [
            F(0),
            F(-8),
            F(-14),
            F(-18),
        ]

    def test_alternating_homology(self):
        rep = representative(LC(((1, 5), (-1, 4))))
        assert homology(rep).module.torsion() == mod(T(F(0), 5), T(F(-2), 4))

    def test_matches_placement(self):
        rng = random.Random("representative")
        for _ in range(40):
            lc = random_combination(rng, 5, 7, allow_cancelling=rng.random() < 0.4)
            assert homology(representative(lc)).module.torsion() == place_towers(lc)


class TestDecode:
    def test_alternating(self):
        m = mod(T(F(-1), 5), T(F(-3), 4), T(F(-3), 2))
        assert decode(m, F(0)) == LC(((1, 5), (-1, 4), (1, 2)))

    def test_empty(self):
        assert decode(mod(), F(6)) == LC()

    def test_misordered_module_rejected(self):
        with pytest.raises(NotInXForm):
            decode(mod(T(F(-1), 1), T(F(-2), 2)), F(0))

    def test_wrong_d_rejected(self):
        m = hf_conn(LC(((1, 3),)), F(0))
        with pytest.raises(NotInXForm):
            decode(m, F(2))

    def test_off_coset_module_rejected(self):
        with pytest.raises(NotInXForm):
            decode(mod(T(F(1, 2), 3)), F(0))

    def test_broken_chain_rejected(self):
        # two towers of equal length at the wrong relative offset
        with pytest.raises(NotInXForm):
            decode(mod(T(F(-1), 2), T(F(-3), 2)), F(0))

    def test_free_tower_rejected(self):
        from ilocal import INFINITE

        with pytest.raises(ValueError):
            decode(mod(T(F(0), INFINITE)), F(0))

    def test_multiplicities(self):
        lc = LC(((1, 4), (1, 4), (-1, 2), (-1, 2), (-1, 2)))
        assert decode(hf_conn(lc, F(2)), F(2)) == lc

    def test_round_trip_randomized(self):
        rng = random.Random("roundtrip")
        for _ in range(200):
            lc = random_combination(rng, 6, 9)
            d = random_even_d(rng)
            assert decode(hf_conn(lc, d), d) == lc

    def test_round_trip_rational_d(self):
        lc = LC(((1, 3), (-1, 1)))
        for d in (F(1), F(-3), F(1, 2), F(-7, 2)):
            assert decode(hf_conn(lc, d), d) == lc


class TestConnectSum:
    def test_inverse_pair_cancels(self):
        a = (hf_conn(LC(((1, 3),)), F(0)), F(0))
        b = (hf_conn(LC(((-1, 3),)), F(0)), F(0))
        assert connect_sum(a, b) == (mod(), F(0))

    def test_recombination(self):
        a = (hf_conn(LC(((1, 5),)), F(0)), F(0))
        b = (hf_conn(LC(((-1, 4),)), F(0)), F(0))
        module, d = connect_sum(a, b)
        assert d == 0 and module == hf_conn(LC(((1, 5), (-1, 4))), F(0))

    def test_d_adds(self):
        a = (hf_conn(LC(((1, 4),)), F(2)), F(2))
        b = (hf_conn(LC(((1, 3),)), F(-2)), F(-2))
        module, d = connect_sum(a, b)
        assert d == 0
        assert module.oriented_equal(mod(T(F(-1), 4, DOWN), T(F(-8), 3, DOWN)))


class TestCorollaries:
    def test_mu_bar_example(self):
        assert predict_mu_bar(LC(((1, 5), (-1, 4), (1, 2))), F(2)) == 2

    def test_empty_class(self):
        assert predict_mu_bar(LC(), F(0)) == 0
        assert predict_rokhlin_parity(LC(), F(0)) == 0

    def test_parity_example(self):
        assert predict_rokhlin_parity(LC(((1, 4), (1, 3), (1, 2))), F(0)) == 1

    def test_parity_needs_even_d(self):
        with pytest.raises(ValueError):
            predict_rokhlin_parity(LC(((1, 2),)), F(1))

    def test_mu_bar_additive_over_connect_sum(self):
        rng = random.Random("mubar")
        for _ in range(50):
            lc1 = random_combination(rng, 4, 6)
            lc2 = random_combination(rng, 4, 6)
            d1, d2 = random_even_d(rng), random_even_d(rng)
            module, d = connect_sum(
                (hf_conn(lc1, d1), d1), (hf_conn(lc2, d2), d2)
            )
            recovered = decode(module, d)
            assert predict_mu_bar(recovered, d) == predict_mu_bar(lc1, d1) + predict_mu_bar(
                lc2, d2
            )


def test_towers_are_summands_of_the_naive_tensor():
    # every tower of the connected module occurs, with multiplicity, in the
    # torsion homology of the unreduced tensor of the signed factors
    from collections import Counter

    from ilocal import build_trivial, build_xi, dual, tensor

    rng = random.Random("summand4")
    for _ in range(25):
        lc = random_combination(rng, 4, 5)
        naive = build_trivial()
        for sign, i in lc:
            naive = tensor(naive, build_xi(i) if sign > 0 else dual(build_xi(i)))
        torsion = Counter((t.top, t.length) for t in homology(naive).module.torsion())
        wanted = Counter((t.top, t.length) for t in connected_homology(lc))
        assert all(torsion[k] >= v for k, v in wanted.items()), lc.to_json()


@st.composite
def combinations(draw):
    indices = draw(st.lists(st.integers(1, 9), max_size=6))
    signs = {i: draw(st.sampled_from((1, -1))) for i in set(indices)}
    return LC(tuple((signs[i], i) for i in indices))


@settings(max_examples=80, deadline=None)
@given(combinations(), st.integers(-5, 5))
def test_round_trip_property(lc, half_d):
    d = F(2 * half_d)
    assert decode(hf_conn(lc, d), d) == lc
