"""Constructive doubly stochastic matrices.

``hlp_transfer`` realises a majorization ``b < a`` as ``b = a D`` with ``D``
a product of T-transforms; ``birkhoff`` splits a doubly stochastic matrix
into a convex combination of permutation matrices.  Both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidDimension, InvariantViolation, NotMajorized
from .numerics import ONE, ZERO, Mat, mat_sum, pad_vector, prefix_sums, sort_desc, to_rat


class DoublyStochastic(Mat):
    """A square non-negative matrix whose rows and columns all sum to one."""

    __slots__ = ()

    def __init__(self, data=(), cols=None):
        super().__init__(data, cols)
        if not self.is_doubly_stochastic():
            raise InvariantViolation(f"{self.shape} matrix is not doubly stochastic")

    @classmethod
    def of(cls, mat: Mat) -> DoublyStochastic:
        if isinstance(mat, cls):
            return mat
        if not mat.is_doubly_stochastic():
            raise InvariantViolation(f"{mat.shape} matrix is not doubly stochastic")
        out = cls.__new__(cls)
        out.rows, out.cols, out._data = mat.rows, mat.cols, tuple(mat)
        return out


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """``sum(weight * Mat.permutation(perm))`` over ``terms``."""

    terms: tuple  # of (Fraction, tuple[int, ...])

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def size(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0

    def matrix(self) -> Mat:
        n = self.size
        return mat_sum((Mat.permutation(p).scale(w) for w, p in self.terms), n, n)


def check_majorized(a: Sequence, b: Sequence) -> None:
    """Raise :class:`NotMajorized` unless ``b`` is majorized by ``a``."""
    d = max(len(a), len(b))
    sa, _ = sort_desc(pad_vector(a, d))
    sb, _ = sort_desc(pad_vector(b, d))
    pa, pb = prefix_sums(sa), prefix_sums(sb)
    for k in range(d - 1):
        if pb[k] > pa[k]:
            raise NotMajorized(
                f"partial sum {k + 1} of the target ({pb[k]}) exceeds the source ({pa[k]})",
                index=k + 1)
    if d and pa[-1] != pb[-1]:
        raise NotMajorized(f"totals differ: source {pa[-1]}, target {pb[-1]}", index=d)


def hlp_transfer(a: Sequence, b: Sequence) -> DoublyStochastic:
    """Doubly stochastic ``D`` with ``b = a D`` (row vectors), for ``b < a``.

    The sorted vectors are joined by at most ``n - 1`` T-transforms; the two
    sorting permutations are folded in afterwards.  Shorter inputs are
    padded with zeros.
    """
    a = tuple(to_rat(v) for v in a)
    b = tuple(to_rat(v) for v in b)
    d = max(len(a), len(b))
    if d == 0:
        raise InvalidDimension("empty vectors")
    a, b = pad_vector(a, d), pad_vector(b, d)
    check_majorized(a, b)

    x, perm_a = sort_desc(a)
    y, perm_b = sort_desc(b)
    x = list(x)
    # D' accumulates T-transforms acting on sorted coordinates
    dm = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    while x != list(y):
        j = max(i for i in range(d) if x[i] > y[i])
        k = min(i for i in range(j + 1, d) if x[i] < y[i])
        delta = min(x[j] - y[j], y[k] - x[k])
        mu = delta / (x[j] - x[k])
        x[j] -= delta
        x[k] += delta
        for row in dm:
            cj, ck = row[j], row[k]
            row[j] = (1 - mu) * cj + mu * ck
            row[k] = mu * cj + (1 - mu) * ck

    # D = P_a D' P_b^T, where v @ P_perm sorts v
    out = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        src = dm[perm_a[i]]
        for j in range(d):
            out[i][j] = src[perm_b[j]]
    return DoublyStochastic(out)


def _perfect_matching(support: list[list[bool]]) -> list[int] | None:
    """Kuhn's augmenting paths; rows and columns tried in index order."""
    n = len(support)
    match_col = [-1] * n

    def augment(i, seen):
        for j in range(n):
            if support[i][j] and not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    perm = [0] * n
    for j, i in enumerate(match_col):
        perm[i] = j
    return perm


def _bottleneck_matching(mat: list[list[Fraction]]) -> list[int]:
    values = sorted({v for row in mat for v in row if v > 0}, reverse=True)
    lo, hi = 0, len(values) - 1
    best = None
    # largest threshold whose support still has a perfect matching
    while lo <= hi:
        mid = (lo + hi) // 2
        theta = values[mid]
        perm = _perfect_matching([[v >= theta for v in row] for row in mat])
        if perm is None:
            lo = mid + 1
        else:
            best = perm
            hi = mid - 1
    if best is None:
        raise InvariantViolation("support has no perfect matching")
    return best


def birkhoff(d: Mat) -> BirkhoffDecomposition:
    """Greedy Birkhoff-von Neumann decomposition of a doubly stochastic matrix.

    Each round peels off the bottleneck permutation (the perfect matching
    on the support whose smallest entry is largest) with that smallest
    entry as its weight.  Every round zeroes at least one entry, which
    keeps the term count within ``(n-1)^2 + 1``.
    """
    ds = DoublyStochastic.of(d if isinstance(d, Mat) else Mat(d))
    rest = ds.to_lists()
    terms = []
    remaining = ONE
    while remaining > 0:
        perm = _bottleneck_matching(rest)
        weight = min(rest[i][perm[i]] for i in range(len(perm)))
        for i, j in enumerate(perm):
            rest[i][j] -= weight
        remaining -= weight
        terms.append((weight, tuple(perm)))
    return BirkhoffDecomposition(tuple(terms))
