"""Monte-Carlo host/player simulation of the three game families.

Randomness comes from SplitMix64 (64-bit state, golden-gamma increment,
Stafford variant-13 finalizer), which is counter based: output ``i`` of a
stream seeded with ``s`` is ``mix(s + i * GAMMA)``.  Trials are cut into
blocks of :data:`BLOCK` and block ``b`` reads its own stream seeded with
output ``b + 1`` of the root stream, so any block can be evaluated on its
own and the transcript depends only on ``(seed, trials)``.

Each trial consumes a fixed number of uniforms in ``[0, 1)``:
dice 2 (``w``, ``y``), correlated source 2 (``(x, y)``, ``w``), channel 3
(``z``, ``y``, ``w``).  A uniform is ``(u64 >> 11) * 2**-53``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .channel import ChannelMatrix, chan_payoff, chan_strategy
from .conditional import JointDistribution, cond_strategy
from .errors import InvalidInput
from .numerics import ZERO, GameMatrix, ProbVector, SubDistribution, sort_desc

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
BLOCK = 8192

_G = np.uint64(GAMMA)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def splitmix64_mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar reference generator."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return splitmix64_mix(self.state)


def splitmix64_block(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Outputs ``start+1 .. start+count`` of the stream seeded with ``seed``."""
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + _G * np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))


def uniforms(seed: int, trials: int, per_trial: int) -> np.ndarray:
    """``(trials, per_trial)`` array of uniforms following the block scheme."""
    out = np.empty((trials, per_trial), dtype=np.float64)
    nblocks = -(-trials // BLOCK)
    block_seeds = splitmix64_block(seed, nblocks)
    for b in range(nblocks):
        lo = b * BLOCK
        n = min(BLOCK, trials - lo)
        raw = splitmix64_block(int(block_seeds[b]), n * per_trial)
        out[lo:lo + n] = ((raw >> np.uint64(11)).astype(np.float64) * 2.0 ** -53).reshape(n, per_trial)
    return out


def parse_seed(text) -> int:
    """Decimal or ``0x``-prefixed hex, within 64 bits."""
    if isinstance(text, int) and not isinstance(text, bool):
        value = text
    else:
        s = str(text).strip().lower()
        try:
            value = int(s, 16) if s.startswith("0x") else int(s, 10)
        except ValueError as exc:
            raise InvalidInput(f"bad seed {text!r}") from exc
    if not 0 <= value <= MASK64:
        raise InvalidInput(f"seed {value} is outside 0..2**64-1")
    return value


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int = 0

    def __post_init__(self):
        if int(self.trials) < 1:
            raise InvalidInput(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "seed", parse_seed(self.seed))


@dataclass(frozen=True)
class SimResult:
    wins: int
    trials: int
    estimate: float
    std_error: float
    outcomes: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_outcomes(cls, outcomes: np.ndarray, keep: bool = False) -> SimResult:
        trials = len(outcomes)
        wins = int(outcomes.sum())
        est = wins / trials
        return cls(wins, trials, est, math.sqrt(est * (1 - est) / trials),
                   outcomes if keep else None)

    def z_score(self, target: float) -> float:
        if self.std_error == 0:
            return 0.0 if self.estimate == target else math.inf
        return abs(self.estimate - target) / self.std_error


def _cdf(weights: Sequence[Fraction]) -> np.ndarray:
    # cumulative sums are exact before rounding, so a full distribution ends at 1.0
    acc, out = ZERO, []
    for w in weights:
        acc += w
        out.append(float(acc))
    return np.array(out, dtype=np.float64)


def _draw(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Index per uniform; ``len(cdf)`` marks the residual (missing) mass."""
    return np.searchsorted(cdf, u, side="right")


def _draw_w(T: GameMatrix, z: np.ndarray, u: np.ndarray, normalize: bool) -> np.ndarray:
    """Guess count ``w`` (1-based) for each trial from column ``z``; 0 means no game."""
    w = np.zeros(len(u), dtype=np.int64)
    for col_idx, col in enumerate(T.columns()):
        mask = z == col_idx
        if not mask.any():
            continue
        mass = sum(col, ZERO)
        if mass == 0:
            continue
        weights = [v / mass for v in col] if normalize else list(col)
        k = _draw(_cdf(weights), u[mask])
        w[mask] = np.where(k < len(col), k + 1, 0)
    return w


def simulate_dice_game(p, t, cfg: SimConfig, keep_outcomes: bool = False) -> SimResult:
    """Host draws ``w`` from ``t``; player names the ``w`` likeliest faces of ``p``."""
    p = p if isinstance(p, ProbVector) else ProbVector(p)
    t = t if isinstance(t, SubDistribution) else SubDistribution(t)
    _, rank = sort_desc(p)
    u = uniforms(cfg.seed, cfg.trials, 2)
    k = _draw(_cdf(t), u[:, 0])
    w = np.where(k < len(t), k + 1, 0)
    y = np.minimum(_draw(_cdf(p), u[:, 1]), len(p) - 1)
    won = np.asarray(rank)[y] < w
    return SimResult.from_outcomes(won, keep_outcomes)


def simulate_cond_game(P, T, cfg: SimConfig, strategy: Sequence[int] | None = None,
                       keep_outcomes: bool = False) -> SimResult:
    """Host draws ``(x, y)`` from ``P`` and reveals ``x``; player answers ``z = f(x)``."""
    P = P if isinstance(P, JointDistribution) else JointDistribution(P)
    T = GameMatrix.of(T)
    f = np.asarray(cond_strategy(P, T) if strategy is None else strategy, dtype=np.int64)
    m, n = P.shape
    u = uniforms(cfg.seed, cfg.trials, 2)
    flat = np.minimum(_draw(_cdf(P.matrix.entries), u[:, 0]), m * n - 1)
    x, y = flat // n, flat % n
    ranks = np.asarray(P.perms, dtype=np.int64)
    w = _draw_w(T, f[x], u[:, 1], normalize=False)
    won = ranks[x, y] < w
    return SimResult.from_outcomes(won, keep_outcomes)


def chan_win_probability(M, T) -> Fraction:
    """Win probability the channel simulation converges to.

    ``z`` is drawn with weight ``|t_z|``; when the masses add up to more
    than one they are normalised, scaling the payoff down accordingly.
    """
    T = GameMatrix.of(T)
    total = T.total()
    return chan_payoff(M, T) / max(total, Fraction(1))


def simulate_chan_game(M, T, cfg: SimConfig, strategy: Sequence[int] | None = None,
                       keep_outcomes: bool = False) -> SimResult:
    """Host reveals ``z``; player sends ``x = f(z)``; host then draws ``w`` given ``z``."""
    M = M if isinstance(M, ChannelMatrix) else ChannelMatrix(M)
    T = GameMatrix.of(T)
    f = np.asarray(chan_strategy(M, T) if strategy is None else strategy, dtype=np.int64)
    masses = [sum(c, ZERO) for c in T.columns()]
    total = sum(masses, ZERO)
    if total > 1:
        masses = [v / total for v in masses]
    u = uniforms(cfg.seed, cfg.trials, 3)
    z = _draw(_cdf(masses), u[:, 0])
    played = z < T.cols
    zc = np.where(played, z, 0)
    x = f[zc]
    cols = M.matrix.columns()
    y = np.zeros(cfg.trials, dtype=np.int64)
    for xi, col in enumerate(cols):
        mask = x == xi
        if mask.any():
            y[mask] = np.minimum(_draw(_cdf(col), u[mask, 1]), M.outputs - 1)
    w = _draw_w(T, zc, u[:, 2], normalize=True)
    ranks = np.asarray(M.perms, dtype=np.int64)
    won = played & (ranks[x, y] < w)
    return SimResult.from_outcomes(won, keep_outcomes)
