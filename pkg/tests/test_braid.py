import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linksgould import braid
from linksgould.braid import BraidWord
from linksgould.errors import BraidSyntaxError, IndexOutOfRange

from conftest import WHITEHEAD_KNOT, WHITEHEAD_PRINTED


@st.composite
def words(draw, max_strands=5, max_length=10):
    n = draw(st.integers(min_value=2, max_value=max_strands))
    letters = draw(st.lists(
        st.integers(min_value=1, max_value=n - 1).flatmap(lambda g: st.sampled_from((g, -g))),
        max_size=max_length,
    ))
    return BraidWord(n, tuple(letters))


class TestParse:
    def test_trefoil(self):
        assert braid.parse("2: 1 1 1") == BraidWord(2, (1, 1, 1))

    def test_whitehead_word(self):
        b = braid.parse(WHITEHEAD_PRINTED)
        assert b.strands == 6 and len(b) == 22

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            braid.parse("2: 3")

    @pytest.mark.parametrize("bad", ["2 1 1", "2: 1 a", "x: 1", "2: 0", "0:"])
    def test_syntax(self, bad):
        with pytest.raises(BraidSyntaxError):
            braid.parse(bad)

    def test_prefix_and_empty(self):
        assert braid.parse("braid:3:") == BraidWord(3)
        assert str(BraidWord(3)) == "3:"

    @given(words())
    def test_canonical_round_trip(self, b):
        assert braid.parse(str(b)) == b


class TestCombinatorics:
    def test_identity_components(self):
        assert braid.components(BraidWord(3)) == 3

    def test_sigma1(self):
        assert braid.components(braid.parse("2: 1")) == 1

    def test_printed_whitehead_components(self):
        # the printed word closes to two components (see the knot variant below)
        assert braid.components(braid.parse(WHITEHEAD_PRINTED)) == 2

    def test_whitehead_knot_components(self):
        assert braid.components(braid.parse(WHITEHEAD_KNOT)) == 1

    def test_writhe(self):
        assert braid.writhe(BraidWord(2)) == 0
        assert braid.writhe(braid.parse("2: 1 1 1")) == 3
        assert braid.writhe(braid.parse(WHITEHEAD_PRINTED)) == 6

    @given(words())
    def test_permutation_is_bijection(self, b):
        assert sorted(braid.permutation(b)) == list(range(1, b.strands + 1))


class TestMoves:
    def test_stabilize(self):
        assert str(braid.markov_move(braid.parse("2: 1"), "stabilize", 1)) == "3: 1 2"

    def test_conjugate(self):
        b = braid.markov_move(braid.parse("2: 1 1 1"), "conjugate", 1)
        assert str(b) == "2: 1 1 1 1 -1"

    def test_mirror(self):
        assert braid.markov_move(braid.parse("2: 1 1 1"), "mirror") == braid.parse("2: -1 -1 -1")

    def test_inverse(self):
        assert braid.markov_move(braid.parse("3: 1 -2"), "inverse") == braid.parse("3: 2 -1")

    def test_bad_conjugator(self):
        with pytest.raises(IndexOutOfRange):
            braid.markov_move(braid.parse("2: 1"), "conjugate", 2)

    @given(words(), st.integers(min_value=1, max_value=4), st.sampled_from((1, -1)))
    def test_components_invariant(self, b, g, sign):
        g = min(g, b.strands - 1)
        assert braid.components(braid.markov_move(b, "conjugate", g)) == braid.components(b)
        assert braid.components(braid.markov_move(b, "stabilize", sign)) == braid.components(b)

    @given(words())
    def test_mirror_laws(self, b):
        m = braid.markov_move(b, "mirror")
        assert braid.writhe(m) == -braid.writhe(b)
        assert braid.components(m) == braid.components(b)


class TestCompose:
    def test_connected_sum(self):
        t = braid.parse("2: 1 1 1")
        assert str(braid.compose(t, t, "connected_sum")) == "3: 1 1 1 2 2 2"

    def test_split_union(self):
        s = braid.parse("2: 1")
        assert str(braid.compose(s, s, "split_union")) == "4: 1 3"

    @given(words(max_strands=4), words(max_strands=4))
    def test_split_union_permutation(self, a, b):
        u = braid.compose(a, b, "split_union")
        pa, pb = braid.permutation(a), braid.permutation(b)
        assert braid.permutation(u) == pa + tuple(x + a.strands for x in pb)
        assert braid.components(u) == braid.components(a) + braid.components(b)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            braid.compose(BraidWord(2), BraidWord(2), "braid")


def test_random_word_ranges():
    rng = random.Random(4)
    for _ in range(100):
        b = braid.random_word(rng, max_strands=4, max_length=8)
        assert 2 <= b.strands <= 4 and len(b) <= 8
