"""Dice games and vector majorization.

A ``w``-game lets the player name ``w`` outcomes before the roll; the best
they can do is name the ``w`` most likely ones, winning with the Ky-Fan
norm ``||p||_(w)``.  A game drawn from a sub-distribution ``t`` over ``w``
pays ``sum_k t_k ||p||_(k) = (U t) . p_sorted``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InvalidGame
from .numerics import ZERO, ProbVector, SubDistribution, dot, kron_vec, sort_desc, u_apply


def _as_prob(p) -> ProbVector:
    return p if isinstance(p, ProbVector) else ProbVector(p)


def ky_fan(p: Sequence, w: int) -> Fraction:
    """Sum of the ``w`` largest entries of ``p`` (all of them if ``w > len(p)``)."""
    if w < 1:
        raise InvalidGame(f"a w-game needs w >= 1, got {w}")
    srt, _ = sort_desc(p)
    return sum(srt[:w], ZERO)


def ky_fan_profile(p: Sequence, length: int | None = None) -> tuple:
    """``(||p||_(1), ..., ||p||_(length))``, defaulting to ``length = len(p)``."""
    srt, _ = sort_desc(p)
    length = len(srt) if length is None else length
    out, acc = [], ZERO
    for x in range(length):
        if x < len(srt):
            acc += srt[x]
        out.append(acc)
    return tuple(out)


def game_payoff(p: Sequence, t: Sequence) -> Fraction:
    """Optimal win probability for dice ``p`` when ``w`` is drawn from ``t``."""
    t = t if isinstance(t, SubDistribution) else SubDistribution(t)
    srt, _ = sort_desc(_as_prob(p))
    return dot(u_apply(t), srt)


def first_violation(p: Sequence, q: Sequence) -> int | None:
    """Smallest ``w`` with ``||q||_(w) > ||p||_(w)``, or None if there is none."""
    d = max(len(p), len(q))
    for w, (a, b) in enumerate(zip(ky_fan_profile(p, d), ky_fan_profile(q, d)), start=1):
        if b > a:
            return w
    return None


def majorizes(p: Sequence, q: Sequence) -> bool:
    """True iff ``p`` majorizes ``q`` (``q`` is at least as uncertain).

    Payoffs are non-negative combinations of Ky-Fan norms, so sweeping the
    pure games ``w = 1..max(d_p, d_q)`` decides every mixed game too.
    """
    return first_violation(_as_prob(p), _as_prob(q)) is None


def tensor_game_payoff(p: Sequence, s: Sequence, w: int) -> Fraction:
    """Win probability of a ``w``-game played on the pair of dice ``p`` and ``s``."""
    return ky_fan(kron_vec(_as_prob(p), _as_prob(s)), w)
