"""Classical channel entropy ``H(N) = min_x H(N(x))`` in bits.

Values are floats computed from the exact entries; the pre-order checks
that feed the axiom report stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .channel import ChannelMatrix, chan_majorizes
from .errors import AxiomViolation, InvalidInput
from .numerics import ZERO, ProbVector

TOL = 1e-12


def shannon(p: Sequence) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    p = p if isinstance(p, ProbVector) else ProbVector(p)
    h = 0.0
    for v in p:
        if v:
            f = float(v)
            h -= f * math.log2(f)
    return max(h, 0.0)


def binary_entropy(eps: float) -> float:
    eps = float(eps)
    if eps <= 0.0 or eps >= 1.0:
        return 0.0
    return -eps * math.log2(eps) - (1 - eps) * math.log2(1 - eps)


def _channel(N) -> ChannelMatrix:
    return N if isinstance(N, ChannelMatrix) else ChannelMatrix(N)


def channel_entropy(N) -> tuple[float, int]:
    """``(bits, x)`` where input ``x`` (smallest on ties) attains the minimum."""
    N = _channel(N)
    best, arg = None, 0
    for x, col in enumerate(N.columns()):
        h = shannon(col)
        if best is None or h < best:
            best, arg = h, x
    return best, arg


@dataclass
class AxiomReport:
    pairs: int = 0
    comparable: int = 0
    max_monotonicity_gap: float = 0.0
    max_additivity_error: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_entropy_axioms(sample: Iterable[tuple], tol: float = TOL, raise_on_failure=True) -> AxiomReport:
    """Check monotonicity and additivity of :func:`channel_entropy` on ``sample``.

    For every pair ``(M, N)``: if ``M <= N`` then ``H(M) >= H(N) - tol``,
    and always ``|H(N (x) M) - H(N) - H(M)| <= tol``.  With
    ``raise_on_failure`` the first violation raises :class:`AxiomViolation`.
    """
    report = AxiomReport()
    for M, N in sample:
        M, N = _channel(M), _channel(N)
        report.pairs += 1
        hm, hn = channel_entropy(M)[0], channel_entropy(N)[0]
        if chan_majorizes(M, N).verdict:
            report.comparable += 1
            gap = hn - hm
            report.max_monotonicity_gap = max(report.max_monotonicity_gap, gap)
            if gap > tol:
                _fail(report, f"monotonicity: H(M)={hm} < H(N)={hn}", (M, N), raise_on_failure)
        err = abs(channel_entropy(N.tensor(M))[0] - hn - hm)
        report.max_additivity_error = max(report.max_additivity_error, err)
        if err > tol:
            _fail(report, f"additivity off by {err}", (M, N), raise_on_failure)
    return report


def _fail(report, msg, pair, raise_on_failure):
    report.failures.append((msg, pair))
    if raise_on_failure:
        raise AxiomViolation(msg, pair=pair)


def total_variation(p: Sequence, q: Sequence):
    return sum((abs(a - b) for a, b in zip(p, q)), ZERO) / 2


def fannes_audenaert(eps: float, m: int) -> float:
    """``eps log2(m-1) + h2(eps)``, capped at ``log2 m`` beyond ``eps = 1 - 1/m``."""
    if m <= 1:
        return 0.0
    if eps >= 1 - 1 / m:
        return math.log2(m)
    return eps * math.log2(m - 1) + binary_entropy(eps)


@dataclass(frozen=True)
class ContinuityReport:
    eps: float
    difference: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.difference <= self.bound + TOL


def continuity_bound_check(N, M) -> ContinuityReport:
    """Compare ``|H(N) - H(M)|`` with the Fannes-Audenaert bound.

    ``eps`` is the largest total-variation distance between matching
    columns.  Since ``|min f - min g| <= max |f - g|`` the per-column bound
    carries over to the channel entropy.
    """
    N, M = _channel(N), _channel(M)
    if N.shape != M.shape:
        raise InvalidInput(f"shape mismatch: {N.shape} vs {M.shape}")
    eps = max(total_variation(a, b) for a, b in zip(N.columns(), M.columns()))
    diff = abs(channel_entropy(N)[0] - channel_entropy(M)[0])
    return ContinuityReport(float(eps), diff, fannes_audenaert(float(eps), N.outputs))
