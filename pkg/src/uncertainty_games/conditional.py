"""Games with a correlated source and conditional majorization.

The host draws ``(x, y)`` from a joint distribution ``P`` (rows indexed by
the revealed ``x``, columns by the hidden ``y``).  Seeing ``x`` the player
announces ``z``; the host then draws ``w`` from column ``z`` of a game
matrix ``T`` and the player wins if ``y`` is among their ``w`` guesses.

``Q`` is conditionally majorized by ``P`` when ``P`` wins every such game at
least as often.  That holds iff some column-stochastic ``S`` satisfies
``Q U <= S P U`` entrywise on row-sorted matrices, which is an LP; a
feasible ``S`` is turned into ``Q = sum_z S_z P V_z`` and an infeasible one
into a game that ``Q`` wins more often.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .decomp import birkhoff, hlp_transfer
from .errors import InvalidInput
from .lp import LpFeasibilityProblem, Sense, solve_feasibility
from .numerics import (
    ZERO, GameMatrix, Mat, compose_perm, dot, invert_perm, mat_sum, prefix_sums,
    sort_desc, u_apply,
)

CondGameSpec = GameMatrix


class JointDistribution:
    """An ``m x n`` probability matrix ``P = (p_xy)``.

    ``matrix`` keeps the caller's labels; ``sorted`` has every row in
    non-increasing order and ``perms[x]`` records where each entry of row
    ``x`` went (``sorted[x][perms[x][y]] == matrix[x][y]``).
    """

    __slots__ = ("matrix", "sorted", "perms")

    def __init__(self, data):
        mat = data if isinstance(data, Mat) else Mat(data)
        if mat.rows == 0 or mat.cols == 0:
            raise InvalidInput("a joint distribution needs at least one row and column")
        for x, row in enumerate(mat):
            for y, v in enumerate(row):
                if v < 0:
                    raise InvalidInput(f"entry ({x}, {y}) is negative ({v})")
        total = mat.total()
        if total != 1:
            raise InvalidInput(f"joint distribution has mass {total} != 1")
        self.matrix = mat
        srt, perms = [], []
        for row in mat:
            s, p = sort_desc(row)
            srt.append(s)
            perms.append(p)
        self.sorted = Mat(srt)
        self.perms = tuple(perms)

    @property
    def shape(self):
        return self.matrix.shape

    def padded(self, m: int, n: int) -> JointDistribution:
        return self if self.shape == (m, n) else JointDistribution(self.matrix.pad(m, n))

    def __eq__(self, other):
        return isinstance(other, JointDistribution) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"JointDistribution({self.matrix!r})"


def _joint(P) -> JointDistribution:
    return P if isinstance(P, JointDistribution) else JointDistribution(P)


def best_responses(vectors: Sequence[Sequence], rewards: Sequence[Sequence]):
    """For each vector pick the reward vector with the largest inner product.

    Returns ``(sum of maxima, choices)``; ties go to the smallest index.
    """
    total = ZERO
    choices = []
    for v in vectors:
        best_val, best_idx = None, 0
        for z, r in enumerate(rewards):
            val = dot(r, v)
            if best_val is None or val > best_val:
                best_val, best_idx = val, z
        total += best_val if best_val is not None else ZERO
        choices.append(best_idx)
    return total, tuple(choices)


def _play(P, T):
    P = _joint(P)
    T = GameMatrix.of(T)
    rewards = [u_apply(t) for t in T.columns()]
    return best_responses(P.sorted.rows_list(), rewards)


def cond_payoff(P, T) -> Fraction:
    """Optimal win probability ``sum_x max_z (U t_z) . p_x``."""
    return _play(P, T)[0]


def cond_strategy(P, T) -> tuple[int, ...]:
    """The optimal ``z = f(x)`` for each row ``x`` (smallest ``z`` on ties)."""
    return _play(P, T)[1]


@dataclass(frozen=True)
class CondWitness:
    """``Q = sum_z S_z P V_z`` with ``sum_z S_z`` column stochastic.

    Each term is ``(S_z, V_z)`` with ``V_z`` a permutation of the hidden
    labels in the :meth:`Mat.permutation` convention.  Both matrices are
    taken zero-padded to the common shape.
    """

    terms: tuple

    def channel(self) -> Mat:
        m = self.terms[0][0].rows
        return mat_sum((s for s, _ in self.terms), m, m)

    def reconstruct(self, P) -> Mat:
        P = P.matrix if isinstance(P, JointDistribution) else Mat(P)
        m, n = self.terms[0][0].rows, len(self.terms[0][1])
        P = P.pad(m, n)
        return mat_sum(((s @ P) @ Mat.permutation(v) for s, v in self.terms), m, n)

    def verify(self, P, Q) -> bool:
        P, Q = _joint(P), _joint(Q)
        if not self.terms:
            return False
        m, n = self.terms[0][0].rows, len(self.terms[0][1])
        if P.shape[0] > m or P.shape[1] > n or Q.shape[0] > m or Q.shape[1] > n:
            return False
        for s, v in self.terms:
            if s.shape != (m, m) or len(v) != n or not s.is_nonnegative():
                return False
        if not self.channel().is_column_stochastic():
            return False
        return self.reconstruct(P) == Q.matrix.pad(m, n)


@dataclass(frozen=True)
class DistinguishingCondGame:
    """A game that ``Q`` wins strictly more often than ``P``."""

    game: GameMatrix

    def payoffs(self, P, Q) -> tuple[Fraction, Fraction]:
        return cond_payoff(P, self.game), cond_payoff(Q, self.game)

    def verify(self, P, Q) -> bool:
        p, q = self.payoffs(P, Q)
        return q > p


class Decision(NamedTuple):
    verdict: bool
    proof: object


def common_shape(P: JointDistribution, Q: JointDistribution) -> tuple[int, int]:
    return max(P.shape[0], Q.shape[0]), max(P.shape[1], Q.shape[1])


def build_lp(P: JointDistribution, Q: JointDistribution) -> LpFeasibilityProblem:
    """Variables ``s_{w|x}`` (index ``w*m + x``): ``Q U <= S P U`` and ``sum_w s_{w|x} = 1``."""
    m, n = P.shape
    pu = [prefix_sums(row) for row in P.sorted]
    qu = [prefix_sums(row) for row in Q.sorted]
    rows, rhs, sense = [], [], []
    for w in range(m):
        for k in range(n):
            line = [ZERO] * (m * m)
            for x in range(m):
                line[w * m + x] = pu[x][k]
            rows.append(line)
            rhs.append(qu[w][k])
            sense.append(Sense.GE)
    for x in range(m):
        line = [ZERO] * (m * m)
        for w in range(m):
            line[w * m + x] = Fraction(1)
        rows.append(line)
        rhs.append(Fraction(1))
        sense.append(Sense.EQ)
    return LpFeasibilityProblem(Mat(rows), tuple(rhs), tuple(sense))


def cond_majorizes(P, Q) -> Decision:
    """Decide whether ``P`` conditionally majorizes ``Q`` (``Q <=_c P``).

    Returns ``(True, CondWitness)`` or ``(False, DistinguishingCondGame)``;
    the proof is checked exactly before it is returned.  Inputs of
    different shapes are padded with zero rows and columns.
    """
    P0, Q0 = _joint(P), _joint(Q)
    m, n = common_shape(P0, Q0)
    P, Q = P0.padded(m, n), Q0.padded(m, n)
    out = solve_feasibility(build_lp(P, Q))
    if out.feasible:
        s = [[out.primal[w * m + x] for x in range(m)] for w in range(m)]
        proof = _witness(P, Q, s)
        if not proof.verify(P0, Q0):
            raise AssertionError("constructed witness failed exact re-verification")
        return Decision(True, proof)
    y = out.dual_certificate
    cols = [[y[w * n + k] for k in range(n)] for w in range(m)]
    scale = max(sum(c, ZERO) for c in cols)
    game = GameMatrix.of(Mat.from_columns([[v / scale for v in c] for c in cols]))
    proof = DistinguishingCondGame(game)
    if not proof.verify(P0, Q0):
        raise AssertionError("Farkas game failed exact re-verification")
    return Decision(False, proof)


def _witness(P: JointDistribution, Q: JointDistribution, s) -> CondWitness:
    m, n = P.shape
    S = Mat(s)
    # shortcut: Q = S P already, no relabelling needed
    if S @ P.matrix == Q.matrix:
        return CondWitness(((S, tuple(range(n))),))

    psorted = P.sorted.rows_list()
    grouped: dict[tuple, list[list[Fraction]]] = {}
    for w in range(m):
        mixed = [sum((s[w][x] * psorted[x][k] for x in range(m)), ZERO) for k in range(n)]
        q = Q.sorted.row(w)
        # equal totals are forced by the LP (column sums of S are one)
        dec = birkhoff(hlp_transfer(mixed, q))
        back = invert_perm(Q.perms[w])
        for c, v in dec:
            for x in range(m):
                if not s[w][x]:
                    continue
                perm = compose_perm(compose_perm(P.perms[x], v), back)
                acc = grouped.setdefault(perm, [[ZERO] * m for _ in range(m)])
                acc[w][x] += c * s[w][x]
    return CondWitness(tuple((Mat(grouped[v]), v) for v in sorted(grouped)))
