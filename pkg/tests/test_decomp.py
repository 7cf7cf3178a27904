import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from uncertainty_games.decomp import DoublyStochastic, birkhoff, check_majorized, hlp_transfer
from uncertainty_games.errors import InvariantViolation, NotMajorized
from uncertainty_games.numerics import Mat

from randgen import rand_doubly_stochastic, rand_prob


def test_hlp_worked_pair():
    a = (F(1, 2), F(1, 2), F(0))
    b = (F(1, 3), F(1, 3), F(1, 3))
    D = hlp_transfer(a, b)
    assert D.is_doubly_stochastic()
    assert a @ D == b


def test_hlp_refuses_non_majorized():
    with pytest.raises(NotMajorized) as info:
        hlp_transfer((F(1, 2), F(1, 2), 0), (F(2, 3), F(1, 6), F(1, 6)))
    assert info.value.index == 1
    with pytest.raises(NotMajorized):
        check_majorized((F(1, 3),) * 3, (F(1, 2), F(1, 2), 0))


def test_hlp_500_reconstructions():
    rng = random.Random(9)
    done = 0
    while done < 500:
        n = rng.randint(1, 6)
        a = rand_prob(rng, n)
        b = tuple(a @ rand_doubly_stochastic(rng, n))
        D = hlp_transfer(a, b)
        assert D.is_doubly_stochastic()
        assert a @ D == b
        done += 1


def test_birkhoff_500_reconstructions():
    rng = random.Random(10)
    for _ in range(500):
        n = rng.randint(1, 6)
        D = rand_doubly_stochastic(rng, n, k=rng.randint(1, 5))
        dec = birkhoff(D)
        assert dec.matrix() == D
        assert sum(c for c, _ in dec) == 1
        assert all(c > 0 for c, _ in dec)
        assert len(dec) <= (n - 1) ** 2 + 1


def test_birkhoff_dense_uniform():
    n = 5
    J = Mat([[F(1, n)] * n for _ in range(n)])
    dec = birkhoff(J)
    assert dec.matrix() == J
    assert len(dec) <= (n - 1) ** 2 + 1


def test_birkhoff_rejects_non_doubly_stochastic():
    with pytest.raises(InvariantViolation):
        DoublyStochastic([[1, 0], [1, 0]])
    with pytest.raises(InvariantViolation):
        birkhoff(Mat([[F(1, 2), F(1, 2)], [F(1, 3), F(2, 3)]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.randoms(use_true_random=False))
def test_birkhoff_term_bound(n, k, rnd):
    D = rand_doubly_stochastic(rnd, n, k)
    dec = birkhoff(D)
    assert dec.matrix() == D
    assert len(dec) <= (n - 1) ** 2 + 1
