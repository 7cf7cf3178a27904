import random
from fractions import Fraction as F
from itertools import combinations, permutations

from uncertainty_games.channel import (
    ChannelMatrix, ChanWitness, DistinguishingChanGame, chan_majorizes, chan_payoff,
    chan_strategy, f_monotone, monotone_as_game, output_permutation, single_column_games,
    vector_game_payoff,
)
from uncertainty_games.numerics import GameMatrix, Mat

from randgen import planted_chan_pair, rand_column_stochastic, rand_game


def kf(col, w):
    return max(sum(c) for c in combinations(col, min(w, len(col))))


def brute_chan_payoff(M, T):
    cols = M.columns()
    total = F(0)
    for t in T.columns():
        total += max(sum(tw * kf(c, w) for w, tw in enumerate(t, 1)) for c in cols)
    return total


def brute_f(N, P):
    # rearrangement: the best pairing of two columns over all relabellings
    total = F(0)
    for q in P.columns():
        total += max(
            max(sum(a * c[i] for a, i in zip(q, pi)) for pi in permutations(range(len(c))))
            for c in N.columns())
    return total


def test_payoff_against_brute_force():
    rng = random.Random(30)
    for _ in range(150):
        M = ChannelMatrix(rand_column_stochastic(rng, rng.randint(1, 4), rng.randint(1, 3)))
        T = rand_game(rng, rng.randint(1, 4), rng.randint(1, 3))
        assert chan_payoff(M, T) == brute_chan_payoff(M, T)


def test_strategy_picks_sharpest_input():
    M = ChannelMatrix([[F(1, 2), 1], [F(1, 2), 0]])
    T = GameMatrix([[1], [0]])
    assert chan_strategy(M, T) == (1,)
    assert chan_payoff(M, T) == 1


def test_single_column_split():
    rng = random.Random(31)
    for _ in range(30):
        M = ChannelMatrix(rand_column_stochastic(rng, 3, 2))
        T = rand_game(rng, 3, 3)
        parts = single_column_games(T)
        assert sum(c * vector_game_payoff(M, t) for c, t in parts) == chan_payoff(M, T)


def test_f_monotone_against_rearrangement():
    rng = random.Random(32)
    for _ in range(100):
        m = rng.randint(1, 4)
        N = ChannelMatrix(rand_column_stochastic(rng, m, rng.randint(1, 3)))
        P = ChannelMatrix(rand_column_stochastic(rng, m, rng.randint(1, 3)))
        assert f_monotone(N, P) == brute_f(N, P)
        scale, T = monotone_as_game(P)
        assert scale == sum(max(c) for c in P.columns())
        assert f_monotone(N, P) == scale * chan_payoff(N, T)


def test_named_channels():
    assert ChannelMatrix.identity(2).matrix == Mat.identity(2)
    assert ChannelMatrix.bsc(F(1, 4)).matrix == Mat([[F(3, 4), F(1, 4)], [F(1, 4), F(3, 4)]])
    R = ChannelMatrix.randomizing(3, 2)
    assert R.shape == (3, 2)
    assert ChannelMatrix.identity(2).tensor(R).shape == (6, 4)


def test_identity_and_randomizing_are_extremes():
    rng = random.Random(33)
    I = ChannelMatrix.identity(3)
    R = ChannelMatrix.randomizing(3)
    for _ in range(15):
        M = ChannelMatrix(rand_column_stochastic(rng, 3, rng.randint(1, 3)))
        ok, proof = chan_majorizes(M, I)
        assert ok and proof.verify(M, I)
        ok, proof = chan_majorizes(R, M)
        assert ok and proof.verify(R, M)


def test_planted_pairs():
    rng = random.Random(34)
    for _ in range(40):
        m, n, n2 = rng.randint(2, 4), rng.randint(1, 3), rng.randint(1, 3)
        M, N = planted_chan_pair(rng, m, n, n2, parts=rng.randint(1, 3))
        M, N = ChannelMatrix(M), ChannelMatrix(N)
        ok, proof = chan_majorizes(M, N)
        assert ok and isinstance(proof, ChanWitness)
        assert proof.preprocessing().is_column_stochastic()
        assert proof.reconstruct(N) == M.matrix


def test_each_input_needs_its_own_relabelling():
    # one shared output relabelling cannot serve both inputs of M here
    M = ChannelMatrix([[1, F(1, 2)], [0, F(1, 2)]])
    N = ChannelMatrix([[1], [0]])
    ok, proof = chan_majorizes(M, N)
    assert ok and proof.verify(M, N)
    assert proof.reconstruct(N) == M.matrix


def test_failures_and_vector_games():
    rng = random.Random(35)
    fails = 0
    for _ in range(60):
        M = ChannelMatrix(rand_column_stochastic(rng, 3, 2))
        N = ChannelMatrix(rand_column_stochastic(rng, 3, 2))
        ok, proof = chan_majorizes(M, N)
        if ok:
            for _ in range(20):
                T = rand_game(rng, 3, rng.randint(1, 3))
                assert chan_payoff(N, T) >= chan_payoff(M, T)
            continue
        fails += 1
        assert isinstance(proof, DistinguishingChanGame)
        pm, pn = proof.payoffs(M, N)
        assert pm > pn == brute_chan_payoff(N, proof.game)
        assert any(vector_game_payoff(M, t) > vector_game_payoff(N, t)
                   for _, t in single_column_games(proof.game))
    assert fails > 10


def test_output_permutation_matches_row_action():
    v = (2, 0, 1)
    col = (F(1, 2), F(1, 3), F(1, 6))
    moved = output_permutation(v) @ col
    assert all(moved[v[i]] == col[i] for i in range(3))
