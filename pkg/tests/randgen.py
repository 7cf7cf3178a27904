"""Random exact instances for the test batteries."""

from fractions import Fraction as F

from uncertainty_games.numerics import Mat


def rand_weights(rng, d, den=9, allow_zero=True):
    lo = 0 if allow_zero else 1
    v = [rng.randint(lo, den) for _ in range(d)]
    if not any(v):
        v[rng.randrange(d)] = 1
    return v


def rand_prob(rng, d, den=9):
    v = rand_weights(rng, d, den)
    s = sum(v)
    return [F(x, s) for x in v]


def rand_sub(rng, d, den=9):
    """Sub-distribution with mass in (0, 1]."""
    mass = F(rng.randint(1, 4), 4)
    return [mass * x for x in rand_prob(rng, d, den)]


def rand_joint(rng, m, n, den=9):
    flat = rand_prob(rng, m * n, den)
    return Mat.from_flat(m, n, flat)


def rand_column_stochastic(rng, rows, cols, den=9):
    return Mat.from_columns([rand_prob(rng, rows, den) for _ in range(cols)])


def rand_game(rng, rows, cols, den=9):
    return Mat.from_columns([rand_sub(rng, rows, den) for _ in range(cols)])


def rand_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def rand_doubly_stochastic(rng, n, k=3):
    weights = rand_prob(rng, k)
    acc = Mat.zeros(n, n)
    for w in weights:
        acc = acc + Mat.permutation(rand_perm(rng, n)).scale(w)
    return acc


def split(rng, S: Mat, parts: int):
    """Sub-stochastic matrices ``S_1..S_parts`` adding up to ``S`` entrywise."""
    pieces = [[[F(0)] * S.cols for _ in range(S.rows)] for _ in range(parts)]
    for i in range(S.rows):
        for j in range(S.cols):
            for z, c in enumerate(rand_prob(rng, parts)):
                pieces[z][i][j] = S[i, j] * c
    return [Mat(p) for p in pieces]


def planted_cond_pair(rng, m, n, parts=2):
    """``(P, Q)`` with ``Q = sum_z S_z P V_z``."""
    P = rand_joint(rng, m, n)
    S = rand_column_stochastic(rng, m, m)
    Q = Mat.zeros(m, n)
    for Sz in split(rng, S, parts):
        Q = Q + (Sz @ P) @ Mat.permutation(rand_perm(rng, n))
    return P, Q


def planted_chan_pair(rng, m, n, n2, parts=2):
    """``(M, N)`` with ``M = sum_z V_z N S_z``."""
    N = rand_column_stochastic(rng, m, n)
    S = rand_column_stochastic(rng, n, n2)
    M = Mat.zeros(m, n2)
    for Sz in split(rng, S, parts):
        M = M + Mat.permutation(rand_perm(rng, m)).T @ (N @ Sz)
    return M, N
