import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from uncertainty_games.errors import InvalidGame, InvalidInput
from uncertainty_games.majorization import (
    first_violation, game_payoff, ky_fan, ky_fan_profile, majorizes, tensor_game_payoff,
)

from randgen import rand_prob, rand_sub

P = (F(1, 2), F(1, 2), F(0))
Q = (F(2, 3), F(1, 6), F(1, 6))


def brute_ky_fan(p, w):
    # best w-subset, no sorting involved
    return max(sum(c) for c in combinations(p, w))


def test_worked_example():
    assert ky_fan(Q, 1) == F(2, 3) and ky_fan(P, 1) == F(1, 2)
    assert ky_fan(P, 2) == 1 and ky_fan(Q, 2) == F(5, 6)
    assert not majorizes(P, Q) and not majorizes(Q, P)
    assert first_violation(P, Q) == 1
    assert first_violation(Q, P) == 2


def test_ky_fan_beyond_support():
    assert ky_fan(P, 7) == 1
    with pytest.raises(InvalidGame):
        ky_fan(P, 0)


def test_profile():
    assert ky_fan_profile(Q) == (F(2, 3), F(5, 6), 1)


def test_game_payoff_is_mixture():
    t = (F(1, 4), F(1, 2), F(1, 4))
    assert game_payoff(Q, t) == F(1, 4) * F(2, 3) + F(1, 2) * F(5, 6) + F(1, 4)


def test_rejects_unnormalised():
    with pytest.raises(InvalidInput):
        majorizes((F(1, 2), F(1, 3)), (1,))


def test_ky_fan_against_subsets():
    rng = random.Random(1)
    for _ in range(200):
        d = rng.randint(1, 6)
        p = rand_prob(rng, d)
        for w in range(1, d + 1):
            assert ky_fan(p, w) == brute_ky_fan(p, w)


def test_game_definition_on_1000_pairs():
    rng = random.Random(2)
    seen = {True: 0, False: 0}
    for _ in range(1000):
        d = rng.randint(2, 5)
        p, q = rand_prob(rng, d), rand_prob(rng, d)
        verdict = majorizes(p, q)
        seen[verdict] += 1
        if verdict:
            for _ in range(5):
                t = rand_sub(rng, d)
                assert game_payoff(p, t) >= game_payoff(q, t)
        else:
            w = first_violation(p, q)
            point = [F(0)] * d
            point[w - 1] = F(1)
            assert game_payoff(q, point) > game_payoff(p, point)
    assert seen[True] > 50 and seen[False] > 50


def test_unequal_lengths_are_padded():
    assert majorizes((1,), (F(1, 2), F(1, 2)))
    assert not majorizes((F(1, 2), F(1, 2)), (1,))


def test_tensor_payoff_matches_product_distribution():
    p = (F(1, 2), F(1, 3), F(1, 6))
    s = (F(3, 4), F(1, 4))
    prod = [a * b for a in p for b in s]
    for w in range(1, 7):
        assert tensor_game_payoff(p, s, w) == brute_ky_fan(prod, w)


probs = st.lists(st.integers(0, 20), min_size=1, max_size=6).filter(any).map(
    lambda v: tuple(F(x, sum(v)) for x in v))


@given(probs)
def test_reflexive_and_extremes(p):
    d = len(p)
    assert majorizes(p, p)
    point = (F(1),) + (F(0),) * (d - 1)
    assert majorizes(point, p)
    assert majorizes(p, (F(1, d),) * d)


@given(probs, st.randoms(use_true_random=False))
def test_permutation_invariance(p, rnd):
    shuffled = list(p)
    rnd.shuffle(shuffled)
    assert majorizes(p, shuffled) and majorizes(shuffled, p)
    for w in range(1, len(p) + 1):
        assert ky_fan(p, w) == ky_fan(shuffled, w)


@given(probs, probs, probs)
def test_transitive(p, q, r):
    if majorizes(p, q) and majorizes(q, r):
        assert majorizes(p, r)


@given(probs)
def test_ky_fan_concave_increments(p):
    prof = ky_fan_profile(p)
    inc = [prof[0]] + [b - a for a, b in zip(prof, prof[1:])]
    assert all(a >= b >= 0 for a, b in zip(inc, inc[1:]))
    assert prof[-1] == 1
