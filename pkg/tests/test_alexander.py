import warnings

import pytest

from linksgould import alexander as alex
from linksgould import braid
from linksgould.braid import BraidWord
from linksgould.errors import AsymmetricBreadth, ZeroPolynomial
from linksgould.poly2 import Laurent1

from conftest import random_words


def _identity(m):
    return alex._identity(m)


class TestBurau:
    def test_identity_word(self):
        assert alex.burau_rep(BraidWord(4)) == _identity(3)

    @pytest.mark.parametrize("b", random_words(21, 20, max_strands=5))
    def test_homomorphism(self, b):
        inv = braid.markov_move(b, "inverse")
        m = b.strands - 1
        assert alex._matmul(alex.burau_rep(b), alex.burau_rep(inv)) == _identity(m)

    def test_braid_relation(self):
        assert alex.burau_rep(braid.parse("3: 1 2 1")) == alex.burau_rep(braid.parse("3: 2 1 2"))

    def test_far_commutation(self):
        assert alex.burau_rep(braid.parse("4: 1 3")) == alex.burau_rep(braid.parse("4: 3 1"))

    def test_generator_determinant_is_unit(self):
        for g in (1, 2, 3, -2):
            d = alex._det(alex.burau_rep(BraidWord(4, (g,))))
            assert len(d) == 1 and abs(d.leading_coeff()) == 1


class TestClosure:
    def test_unknot(self):
        assert alex.alexander_closure(braid.parse("2: 1")) == Laurent1.const(1)
        assert alex.alexander_closure(BraidWord(1)) == Laurent1.const(1)

    def test_trefoil(self):
        assert alex.alexander_closure(braid.parse("2: 1 1 1")) == Laurent1.parse("t - 1 + t^-1")

    def test_figure_eight(self):
        assert alex.alexander_closure(braid.parse("3: 1 -2 1 -2")) == Laurent1.parse("-t + 3 - t^-1")

    def test_whitehead_knot(self, whitehead_knot):
        assert alex.alexander_closure(whitehead_knot) == Laurent1.const(1)

    def test_split_link(self):
        assert alex.alexander_closure(braid.parse("4: 1 3")).is_zero()

    def test_odd_breadth_link_warns(self):
        with pytest.warns(AsymmetricBreadth):
            d = alex.alexander_closure(braid.parse("2: 1 1"))
        assert d == Laurent1.parse("t - 1")
        with pytest.raises(AsymmetricBreadth):
            alex.alexander_closure(braid.parse("2: 1 1"), strict=True)

    @pytest.mark.parametrize("b", random_words(22, 40, knots_only=True))
    def test_knot_normalization(self, b):
        d = alex.alexander_closure(b)
        assert d.evaluate(1) == 1
        assert d.is_palindromic()

    @pytest.mark.parametrize("b", random_words(23, 40))
    def test_markov_invariance(self, b):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AsymmetricBreadth)
            d = alex.alexander_closure(b)
            assert alex.alexander_closure(braid.markov_move(b, "conjugate", 1)) == d
            assert alex.alexander_closure(braid.markov_move(b, "stabilize", 1)) == d
            assert alex.alexander_closure(braid.markov_move(b, "stabilize", -1)) == d


class TestBreadth:
    def test_examples(self):
        assert alex.breadth(Laurent1.const(1)) == 0
        d = Laurent1.parse("t - 1 + t^-1")
        assert alex.breadth(d) == 2
        assert alex.breadth(d.substitute_power(2)) == 2 * alex.breadth(d)

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            alex.breadth(Laurent1.const(0))


def test_match_up_to_unit():
    d = Laurent1.parse("t - 1")
    assert alex.match_up_to_unit(d.shift(3).scale(-1), d) == (-1, 3)
    assert alex.match_up_to_unit(d, Laurent1.parse("t + 1")) is None
