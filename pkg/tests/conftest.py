import random

import pytest

from subrep import Word

WP = "ababaabaaababab"
W1 = "ababababcababababab"
W5 = "a" * 9 + "b" + "a" * 12
WU = "aaaa"

DELTAS = ["1/10", "1/3", "1/2", "3/4"]


@pytest.fixture
def wp():
    return Word.from_text(WP)


@pytest.fixture
def w1():
    return Word.from_text(W1)


@pytest.fixture
def w5():
    return Word.from_text(W5)


@pytest.fixture
def wu():
    return Word.from_text(WU)


def block_word(rng: random.Random, max_blocks: int = 6, max_p: int = 5) -> list[int]:
    """Several runs sharing one root, separated by short random junk."""
    p = rng.randint(1, max_p)
    root = [rng.randrange(3) for _ in range(p)]
    out = []
    for _ in range(rng.randint(1, max_blocks)):
        rot = rng.randrange(p)
        length = rng.randint(p, 12 * p)
        out += (root * 40)[rot : rot + length]
        out += [rng.randrange(4) for _ in range(rng.randint(0, 3))]
    return out


def random_word(rng: random.Random, max_n: int, sigma: int | None = None) -> list[int]:
    sigma = sigma or rng.choice([2, 3, 4])
    return [rng.randrange(sigma) for _ in range(rng.randint(0, max_n))]
