import random
from fractions import Fraction as F
from itertools import combinations, product

import pytest

from uncertainty_games.conditional import (
    CondWitness, DistinguishingCondGame, JointDistribution, cond_majorizes, cond_payoff,
    cond_strategy,
)
from uncertainty_games.errors import InvalidInput
from uncertainty_games.numerics import GameMatrix, Mat

from randgen import planted_cond_pair, rand_game, rand_joint


def brute_cond_payoff(P, T):
    """Best strategy over all maps x -> z, payoffs from best w-subsets."""
    rows = P.to_lists()
    cols = T.columns()

    def kf(row, w):
        return max(sum(c) for c in combinations(row, min(w, len(row))))

    def row_value(row, col):
        return sum(t * kf(row, w) for w, t in enumerate(col, 1))

    best = None
    for f in product(range(len(cols)), repeat=len(rows)):
        val = sum(row_value(row, cols[z]) for row, z in zip(rows, f))
        best = val if best is None else max(best, val)
    return best


def test_payoff_against_brute_force():
    rng = random.Random(20)
    for _ in range(150):
        m, n, k = rng.randint(1, 3), rng.randint(1, 4), rng.randint(1, 3)
        P = rand_joint(rng, m, n)
        T = rand_game(rng, rng.randint(1, 5), k)
        assert cond_payoff(JointDistribution(P), T) == brute_cond_payoff(P, T)


def test_strategy_attains_payoff():
    P = JointDistribution([[F(1, 4), F(1, 4)], [F(1, 2), 0]])
    T = GameMatrix([[1, 0], [0, 1]])
    f = cond_strategy(P, T)
    assert f == (1, 0)
    assert cond_payoff(P, T) == F(1, 2) + F(1, 2)


def test_joint_validation():
    with pytest.raises(InvalidInput):
        JointDistribution([[F(1, 2), F(1, 4)]])
    with pytest.raises(InvalidInput):
        JointDistribution([[F(3, 2), F(-1, 2)]])


def test_perfect_correlation_is_top():
    rng = random.Random(21)
    top = JointDistribution([[F(1, 2), 0], [0, F(1, 2)]])
    for _ in range(20):
        Q = JointDistribution(rand_joint(rng, 2, 2))
        ok, proof = cond_majorizes(top, Q)
        assert ok and proof.verify(top, Q)


def test_product_uniform_is_bottom_for_independent_sources():
    # uniform y independent of x loses to everything of the same size
    rng = random.Random(22)
    flat = JointDistribution([[F(1, 6)] * 3, [F(1, 6)] * 3])
    for _ in range(20):
        P = JointDistribution(rand_joint(rng, 2, 3))
        assert cond_majorizes(P, flat).verdict


def test_planted_pairs_hold_with_sound_witness():
    rng = random.Random(23)
    for _ in range(40):
        m, n = rng.randint(2, 3), rng.randint(2, 4)
        P, Q = planted_cond_pair(rng, m, n, parts=rng.randint(1, 3))
        P, Q = JointDistribution(P), JointDistribution(Q)
        ok, proof = cond_majorizes(P, Q)
        assert ok
        assert isinstance(proof, CondWitness)
        assert proof.channel().is_column_stochastic()
        assert proof.reconstruct(P) == Q.matrix


def test_single_permutation_plant():
    P = JointDistribution([[F(1, 2), F(1, 4)], [0, F(1, 4)]])
    Q = JointDistribution((P.matrix @ Mat.permutation((1, 0))).to_lists())
    ok, proof = cond_majorizes(P, Q)
    assert ok and len(proof.terms) == 1
    assert proof.verify(P, Q)


def test_failures_come_with_distinguishing_games():
    rng = random.Random(24)
    fails = 0
    for _ in range(60):
        P = JointDistribution(rand_joint(rng, 3, 3))
        Q = JointDistribution(rand_joint(rng, 3, 3))
        ok, proof = cond_majorizes(P, Q)
        if ok:
            assert proof.verify(P, Q)
            for _ in range(20):
                T = rand_game(rng, 3, rng.randint(1, 4))
                assert cond_payoff(P, T) >= cond_payoff(Q, T)
        else:
            fails += 1
            assert isinstance(proof, DistinguishingCondGame)
            pp, pq = proof.payoffs(P, Q)
            assert pq > pp
            assert brute_cond_payoff(Q.matrix, proof.game) == pq
    assert fails > 10


def test_shapes_are_padded():
    P = JointDistribution([[F(1, 2), F(1, 2)]])
    Q = JointDistribution([[F(1, 2)], [F(1, 2)]])
    # P has no side information and a flat y; Q reveals everything
    ok, proof = cond_majorizes(Q, P)
    assert ok and proof.verify(Q, P)
    ok, proof = cond_majorizes(P, Q)
    assert not ok and proof.verify(P, Q)


def test_reflexive():
    rng = random.Random(25)
    for _ in range(10):
        P = JointDistribution(rand_joint(rng, 3, 2))
        assert cond_majorizes(P, P).verdict
