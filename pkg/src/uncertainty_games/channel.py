"""Games played through a classical channel and channel majorization.

The host hands the player ``z`` drawn with weights ``|t_z|`` from a game
matrix ``T``; the player feeds an input ``x = f(z)`` into the channel and
then names the ``w`` most likely outputs, ``w`` drawn from column ``z``.
``M <= N`` (N majorizes M) when ``N`` wins every game at least as often
as ``M``, equivalently ``M = sum_z V_z N S_z`` for output permutations
``V_z`` and a pre-processing channel ``sum_z S_z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .conditional import Decision, best_responses
from .decomp import birkhoff, hlp_transfer
from .errors import InvalidInput
from .lp import LpFeasibilityProblem, Sense, solve_feasibility
from .numerics import (
    ONE, ZERO, GameMatrix, Mat, SubDistribution, compose_perm, invert_perm, mat_sum,
    prefix_sums, sort_desc, to_rat, u_apply,
)

ChanGameSpec = GameMatrix


class ChannelMatrix:
    """Column-stochastic transition matrix ``P = (p_{y|x})``.

    Columns are inputs, rows outputs.  ``sorted`` has each column in
    non-increasing order, with ``sorted[perms[x][y]][x] == matrix[y][x]``.
    """

    __slots__ = ("matrix", "sorted", "perms")

    def __init__(self, data):
        mat = data if isinstance(data, Mat) else Mat(data)
        if mat.rows == 0 or mat.cols == 0:
            raise InvalidInput("a channel needs at least one input and one output")
        for y, row in enumerate(mat):
            for x, v in enumerate(row):
                if v < 0:
                    raise InvalidInput(f"entry ({y}, {x}) is negative ({v})")
        for x, s in enumerate(mat.col_sums()):
            if s != 1:
                raise InvalidInput(f"column {x} sums to {s}, not 1")
        self.matrix = mat
        cols, perms = [], []
        for c in mat.columns():
            s, p = sort_desc(c)
            cols.append(s)
            perms.append(p)
        self.sorted = Mat.from_columns(cols)
        self.perms = tuple(perms)

    @property
    def outputs(self) -> int:
        return self.matrix.rows

    @property
    def inputs(self) -> int:
        return self.matrix.cols

    @property
    def shape(self):
        return self.matrix.shape

    def columns(self) -> list[tuple]:
        return self.matrix.columns()

    def padded(self, m: int) -> ChannelMatrix:
        return self if self.outputs == m else ChannelMatrix(self.matrix.pad(m, self.inputs))

    def tensor(self, other: ChannelMatrix) -> ChannelMatrix:
        return ChannelMatrix(self.matrix.kron(other.matrix))

    @classmethod
    def identity(cls, d: int) -> ChannelMatrix:
        return cls(Mat.identity(d))

    @classmethod
    def randomizing(cls, d: int, inputs: int | None = None) -> ChannelMatrix:
        return cls([[Fraction(1, d)] * (inputs or d) for _ in range(d)])

    @classmethod
    def bsc(cls, eps) -> ChannelMatrix:
        eps = to_rat(eps)
        return cls([[1 - eps, eps], [eps, 1 - eps]])

    def __eq__(self, other):
        return isinstance(other, ChannelMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ChannelMatrix({self.matrix!r})"


def _channel(M) -> ChannelMatrix:
    return M if isinstance(M, ChannelMatrix) else ChannelMatrix(M)


def _play(M, T):
    M = _channel(M)
    T = GameMatrix.of(T)
    rewards = [u_apply(t) for t in T.columns()]
    return best_responses(rewards, M.sorted.columns())


def chan_payoff(M, T) -> Fraction:
    """Optimal win probability ``sum_z max_x (U t_z) . p_x``."""
    return _play(M, T)[0]


def chan_strategy(M, T) -> tuple[int, ...]:
    """Optimal input ``x = f(z)`` per column of ``T``, smallest ``x`` on ties."""
    return _play(M, T)[1]


def vector_game_payoff(M, t: Sequence) -> Fraction:
    """Payoff of the single-column game ``t`` (no side information ``z``)."""
    return chan_payoff(M, GameMatrix.from_vector(SubDistribution(t)))


def single_column_games(T) -> list[tuple[Fraction, SubDistribution]]:
    """Split ``T`` into ``(|t_z|, t_z / |t_z|)`` pairs, skipping empty columns.

    ``chan_payoff(M, T) == sum(weight * vector_game_payoff(M, t))`` over
    the result.
    """
    out = []
    for col in GameMatrix.of(T).columns():
        mass = sum(col, ZERO)
        if mass:
            out.append((mass, SubDistribution(v / mass for v in col)))
    return out


def f_monotone(N, P) -> Fraction:
    """``sum_k max_x sum_y q_{y|k} p_{y|x}`` on sorted columns.

    ``q`` are the columns of the reference channel ``P``; ``p`` those of
    ``N``.  Shorter columns are zero-padded.
    """
    N, P = _channel(N), _channel(P)
    return best_responses(P.sorted.columns(), N.sorted.columns())[0]


def monotone_as_game(P) -> tuple[Fraction, GameMatrix]:
    """``(scale, T)`` with ``f_monotone(N, P) == scale * chan_payoff(N, T)``.

    Column ``k`` of ``T`` holds the consecutive differences of the sorted
    column ``q_k``, all divided by ``scale = sum_k q_{1|k}``.
    """
    P = _channel(P)
    cols = []
    for q in P.sorted.columns():
        cols.append([q[y] - (q[y + 1] if y + 1 < len(q) else ZERO) for y in range(len(q))])
    scale = sum((sum(c, ZERO) for c in cols), ZERO)
    return scale, GameMatrix.of(Mat.from_columns([[v / scale for v in c] for c in cols]))


def output_permutation(v: Sequence[int]) -> Mat:
    """Matrix of the output relabelling sending slot ``i`` to ``v[i]`` (acts on columns)."""
    return Mat.permutation(v).T


@dataclass(frozen=True)
class ChanWitness:
    """``M = sum_z V_z N S_z`` with ``sum_z S_z`` column stochastic.

    Terms are ``(V_z, S_z)``: ``V_z`` a permutation of output labels (see
    :func:`output_permutation`) and ``S_z`` an ``n x n'`` sub-stochastic
    matrix.  Outputs are zero-padded to the common size.
    """

    terms: tuple

    def preprocessing(self) -> Mat:
        s = self.terms[0][1]
        return mat_sum((t[1] for t in self.terms), s.rows, s.cols)

    def reconstruct(self, N) -> Mat:
        N = _channel(N)
        m = len(self.terms[0][0])
        Nm = N.matrix.pad(m, N.inputs)
        s = self.terms[0][1]
        return mat_sum((output_permutation(v) @ (Nm @ S) for v, S in self.terms), m, s.cols)

    def verify(self, M, N) -> bool:
        M, N = _channel(M), _channel(N)
        if not self.terms:
            return False
        m = len(self.terms[0][0])
        if M.outputs > m or N.outputs > m:
            return False
        for v, S in self.terms:
            if len(v) != m or S.shape != (N.inputs, M.inputs) or not S.is_nonnegative():
                return False
        if not self.preprocessing().is_column_stochastic():
            return False
        return self.reconstruct(N) == M.matrix.pad(m, M.inputs)


@dataclass(frozen=True)
class DistinguishingChanGame:
    """A game that the first channel ``M`` wins strictly more often than ``N``."""

    game: GameMatrix

    def payoffs(self, M, N) -> tuple[Fraction, Fraction]:
        return chan_payoff(M, self.game), chan_payoff(N, self.game)

    def verify(self, M, N) -> bool:
        pm, pn = self.payoffs(M, N)
        return pm > pn


def build_lp(M: ChannelMatrix, N: ChannelMatrix) -> LpFeasibilityProblem:
    """Variables ``s_{x|x'}`` (index ``x'*n + x``): ``U^T M <= U^T N S``, columns of S sum <= 1."""
    m, n, n2 = N.outputs, N.inputs, M.inputs
    nu = [prefix_sums(c) for c in N.sorted.columns()]
    mu = [prefix_sums(c) for c in M.sorted.columns()]
    rows, rhs, sense = [], [], []
    for xp in range(n2):
        for k in range(m):
            line = [ZERO] * (n * n2)
            for x in range(n):
                line[xp * n + x] = nu[x][k]
            rows.append(line)
            rhs.append(mu[xp][k])
            sense.append(Sense.GE)
    for xp in range(n2):
        line = [ZERO] * (n * n2)
        for x in range(n):
            line[xp * n + x] = -ONE
        rows.append(line)
        rhs.append(-ONE)
        sense.append(Sense.GE)
    return LpFeasibilityProblem(Mat(rows), tuple(rhs), tuple(sense))


def chan_majorizes(M, N) -> Decision:
    """Decide ``M <= N``: can ``N`` simulate ``M`` up to output relabellings?

    Returns ``(True, ChanWitness)`` or ``(False, DistinguishingChanGame)``,
    each re-verified exactly.  Output alphabets are padded to a common size.
    """
    M0, N0 = _channel(M), _channel(N)
    m = max(M0.outputs, N0.outputs)
    M, N = M0.padded(m), N0.padded(m)
    n, n2 = N.inputs, M.inputs
    out = solve_feasibility(build_lp(M, N))
    if out.feasible:
        s = [[out.primal[xp * n + x] for xp in range(n2)] for x in range(n)]
        proof = _witness(M, N, s)
        if not proof.verify(M0, N0):
            raise AssertionError("constructed channel witness failed exact re-verification")
        return Decision(True, proof)
    y = out.dual_certificate
    cols = [[y[xp * m + k] for k in range(m)] for xp in range(n2)]
    scale = max(sum(c, ZERO) for c in cols)
    game = GameMatrix.of(Mat.from_columns([[v / scale for v in c] for c in cols]))
    proof = DistinguishingChanGame(game)
    if not proof.verify(M0, N0):
        raise AssertionError("Farkas channel game failed exact re-verification")
    return Decision(False, proof)


def _witness(M: ChannelMatrix, N: ChannelMatrix, s) -> ChanWitness:
    m, n, n2 = N.outputs, N.inputs, M.inputs
    S = Mat(s)
    if N.matrix @ S == M.matrix:
        return ChanWitness(((tuple(range(m)), S),))

    ncols = N.sorted.columns()
    msorted = M.sorted.columns()
    grouped: dict[tuple, list[list[Fraction]]] = {}
    # one doubly stochastic D per input x' of M
    for xp in range(n2):
        mixed = [sum((s[x][xp] * ncols[x][k] for x in range(n)), ZERO) for k in range(m)]
        dec = birkhoff(hlp_transfer(mixed, msorted[xp]))
        back = invert_perm(M.perms[xp])
        for c, v in dec:
            for x in range(n):
                if not s[x][xp]:
                    continue
                perm = compose_perm(compose_perm(N.perms[x], v), back)
                acc = grouped.setdefault(perm, [[ZERO] * n2 for _ in range(n)])
                acc[x][xp] += c * s[x][xp]
    return ChanWitness(tuple((v, Mat(grouped[v])) for v in sorted(grouped)))
