import random

import pytest

from linksgould import braid
from linksgould.poly2 import Laurent2

# 22-letter word as printed alongside the golden polynomial
WHITEHEAD_PRINTED = "6: 4 3 2 -3 -4 5 3 2 1 -2 -3 5 4 3 -4 -5 3 2 -3 2 1 -2"
# the same word with sigma_2 doubled at position 3; its closure is a knot
WHITEHEAD_KNOT = "6: 4 3 2 2 -3 -4 5 3 2 1 -2 -3 5 4 3 -4 -5 3 2 -3 2 1 -2"

WHITEHEAD_LG_TEXT = (
    "3 - 4t_1 + 2t_1^2 - 4t_0 + 6t_1t_0 - 2t_1^2t_0 + 2t_0^2 - 2t_1t_0^2 - 2t_1^2t_0^2"
    " + 4t_1^3t_0^2 - 2t_1^4t_0^2 + 4t_1^2t_0^3 - 10t_1^3t_0^3 + 8t_1^4t_0^3 - 2t_1^5t_0^3"
    " - 2t_1^2t_0^4 + 8t_1^3t_0^4 - 8t_1^4t_0^4 + 2t_1^5t_0^4 - 2t_1^3t_0^5 + 2t_1^4t_0^5"
    " + 4t_1^5t_0^5 - 6t_1^6t_0^5 + 2t_1^7t_0^5 - 6t_1^5t_0^6 + 8t_1^6t_0^6 - 2t_1^7t_0^6"
    " + 2t_1^5t_0^7 - 2t_1^6t_0^7"
)


@pytest.fixture(scope="session")
def whitehead_lg():
    return Laurent2.parse(WHITEHEAD_LG_TEXT)


@pytest.fixture(scope="session")
def whitehead_knot():
    return braid.parse(WHITEHEAD_KNOT)


@pytest.fixture(scope="session")
def whitehead_printed():
    return braid.parse(WHITEHEAD_PRINTED)


def random_words(seed, count, max_strands=4, max_length=8, knots_only=False):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        b = braid.random_word(rng, max_strands=max_strands, max_length=max_length)
        if knots_only and braid.components(b) != 1:
            continue
        out.append(b)
    return out
