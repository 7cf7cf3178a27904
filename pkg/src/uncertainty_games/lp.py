"""Exact LP feasibility with Farkas certificates.

A problem is ``A x (>= | =) b`` with a per-variable non-negativity flag.
:func:`solve_feasibility` runs a phase-one simplex over Fractions using
Bland's rule, so it always terminates and is deterministic.  The answer is
either a primal point or a Farkas vector ``y`` with

* ``y_i >= 0`` on ``>=`` rows (free on ``=`` rows),
* ``(y^T A)_j <= 0`` for non-negative variables and ``== 0`` for free ones,
* ``y . b > 0``,

which together make ``A x >= b`` impossible.  Both kinds of answer are
re-checked exactly before they are returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidProblem
from .numerics import ZERO, Mat, to_rat


class Sense(str, enum.Enum):
    GE = ">="
    EQ = "="


class LpStatus(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpFeasibilityProblem:
    A: Mat
    b: tuple
    sense: tuple = None
    nonneg: tuple = None

    def __post_init__(self):
        A = self.A if isinstance(self.A, Mat) else Mat(self.A)
        object.__setattr__(self, "A", A)
        try:
            b = tuple(to_rat(v) for v in self.b)
        except TypeError as exc:
            raise InvalidProblem("b must be a sequence") from exc
        object.__setattr__(self, "b", b)
        sense = (Sense.GE,) * A.rows if self.sense is None else tuple(Sense(s) for s in self.sense)
        object.__setattr__(self, "sense", sense)
        nonneg = (True,) * A.cols if self.nonneg is None else tuple(bool(f) for f in self.nonneg)
        object.__setattr__(self, "nonneg", nonneg)
        if len(b) != A.rows:
            raise InvalidProblem(f"b has {len(b)} entries for {A.rows} rows")
        if len(sense) != A.rows:
            raise InvalidProblem(f"sense has {len(sense)} entries for {A.rows} rows")
        if len(nonneg) != A.cols:
            raise InvalidProblem(f"nonneg has {len(nonneg)} flags for {A.cols} variables")

    def is_satisfied_by(self, x: Sequence) -> bool:
        if len(x) != self.A.cols:
            return False
        if any(f and v < 0 for f, v in zip(self.nonneg, x)):
            return False
        for row, rhs, s in zip(self.A, self.b, self.sense):
            lhs = sum((a * v for a, v in zip(row, x) if a), ZERO)
            if (s is Sense.GE and lhs < rhs) or (s is Sense.EQ and lhs != rhs):
                return False
        return True

    def is_farkas_certificate(self, y: Sequence) -> bool:
        if len(y) != self.A.rows:
            return False
        if any(s is Sense.GE and v < 0 for s, v in zip(self.sense, y)):
            return False
        for j, free_ok in enumerate(self.nonneg):
            coeff = sum((v * row[j] for v, row in zip(y, self.A) if v and row[j]), ZERO)
            if coeff > 0 or (not free_ok and coeff != 0):
                return False
        return sum((v * r for v, r in zip(y, self.b)), ZERO) > 0


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    primal: tuple | None = None
    dual_certificate: tuple | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.FEASIBLE


def solve_feasibility(prob: LpFeasibilityProblem) -> LpOutcome:
    """Decide ``prob`` exactly; see the module docstring for the certificate."""
    if not isinstance(prob, LpFeasibilityProblem):
        raise InvalidProblem(f"expected LpFeasibilityProblem, got {type(prob).__name__}")
    A, b = prob.A, prob.b
    n = A.cols

    # every variable becomes one (x >= 0) or two (x = x+ - x-) columns
    var_cols: list[tuple[int, ...]] = []
    ncols = 0
    for flag in prob.nonneg:
        var_cols.append((ncols,) if flag else (ncols, ncols + 1))
        ncols += 1 if flag else 2

    # equality rows become a pair of >= rows
    rows: list[tuple[tuple, Fraction]] = []
    origin: list[tuple[int, int]] = []
    for i, (row, rhs, s) in enumerate(zip(A, b, prob.sense)):
        rows.append((row, rhs))
        origin.append((i, 1))
        if s is Sense.EQ:
            rows.append((tuple(-v for v in row), -rhs))
            origin.append((i, -1))

    k = len(rows)
    # columns: [structural | surplus (k) | artificial (k)] + rhs
    n_struct = ncols
    n_total = n_struct + 2 * k
    rhs_col = n_total
    tableau: list[list[Fraction]] = []
    signs: list[int] = []
    basis: list[int] = []
    init_basis: list[int] = []
    art_rows: list[int] = []
    for r, (row, rhs) in enumerate(rows):
        sign = 1 if rhs > 0 else -1
        line = [ZERO] * (n_total + 1)
        for j, a in enumerate(row):
            if not a:
                continue
            cols = var_cols[j]
            line[cols[0]] = sign * a
            if len(cols) == 2:
                line[cols[1]] = -sign * a
        line[n_struct + r] = Fraction(-sign)
        line[rhs_col] = sign * rhs
        if sign > 0:
            line[n_struct + k + r] = Fraction(1)
            basis.append(n_struct + k + r)
            art_rows.append(r)
        else:
            # surplus carries +1 here and starts basic at value -rhs >= 0
            basis.append(n_struct + r)
        init_basis.append(basis[-1])
        signs.append(sign)
        tableau.append(line)

    cost = [ZERO] * n_total
    for r in art_rows:
        cost[n_struct + k + r] = Fraction(1)
    obj = [ZERO] * (n_total + 1)
    for j in range(n_total):
        obj[j] = cost[j]
    for r in art_rows:
        line = tableau[r]
        for j in range(n_total + 1):
            if line[j]:
                obj[j] -= line[j]

    allowed = n_struct + k  # artificials never re-enter once they leave
    pivots = 0
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, line in enumerate(tableau):
            a = line[enter]
            if a > 0:
                ratio = line[rhs_col] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen in phase one: the objective is bounded below by 0
            raise AssertionError("phase-one simplex reported unbounded")
        _pivot(tableau, obj, leave, enter)
        basis[leave] = enter
        pivots += 1

    value = -obj[rhs_col]
    if value == 0:
        z = [ZERO] * n_total
        for i, j in enumerate(basis):
            z[j] = tableau[i][rhs_col]
        x = tuple(z[c[0]] - (z[c[1]] if len(c) == 2 else ZERO) for c in var_cols)
        if not prob.is_satisfied_by(x):
            raise AssertionError("simplex produced a point that fails re-substitution")
        return LpOutcome(LpStatus.FEASIBLE, primal=x, pivots=pivots)

    # y' = c_B B^{-1}; B^{-1} sits in the columns of the starting basis
    cb = [cost[j] for j in basis]
    y_internal = []
    for r in range(k):
        col = init_basis[r]
        y_internal.append(sum((c * line[col] for c, line in zip(cb, tableau) if c and line[col]),
                              ZERO))
    y = [ZERO] * A.rows
    for r, (i, flip) in enumerate(origin):
        y[i] += flip * signs[r] * y_internal[r]
    y = tuple(y)
    if not prob.is_farkas_certificate(y):
        raise AssertionError("simplex produced a Farkas vector that fails re-check")
    return LpOutcome(LpStatus.INFEASIBLE, dual_certificate=y, pivots=pivots)


def _pivot(tableau, obj, r, c):
    prow = tableau[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        prow = [v * inv if v else v for v in prow]
        tableau[r] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, line in enumerate(tableau):
        if i == r:
            continue
        f = line[c]
        if f:
            for j in nz:
                line[j] -= f * prow[j]
    f = obj[c]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
