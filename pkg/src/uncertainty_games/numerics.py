"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction` throughout.  Nothing in this module
rounds; floats handed in are converted through their shortest ``repr`` so
that ``0.1`` means ``1/10``.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import InvalidDimension, InvalidInput

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rat(x) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Accepts Fractions, ints, Decimals, strings such as ``"2/3"``, ``"0.25"``
    or ``"1e-3"``, and floats (read through ``repr``).
    """
    if isinstance(x, bool):
        raise InvalidInput(f"booleans are not numbers here: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, Decimal):
        if not x.is_finite():
            raise InvalidInput(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise InvalidInput(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot read {x!r} as a rational") from exc
    raise InvalidInput(f"cannot read {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    return str(x)


class ProbVector(tuple):
    """A finite probability distribution with exact entries."""

    def __new__(cls, entries: Iterable = ()):
        vals = tuple(to_rat(e) for e in entries)
        if not vals:
            raise InvalidDimension("a probability vector needs at least one entry")
        for i, v in enumerate(vals):
            if v < 0:
                raise InvalidInput(f"entry {i} is negative ({v})")
        total = sum(vals, ZERO)
        if total != 1:
            raise InvalidInput(f"mass {total} != 1")
        return super().__new__(cls, vals)

    def __repr__(self):
        return f"ProbVector({', '.join(map(str, self))})"

    @classmethod
    def uniform(cls, d: int) -> ProbVector:
        if d < 1:
            raise InvalidDimension(f"dimension must be >= 1, got {d}")
        return cls([Fraction(1, d)] * d)

    @classmethod
    def point(cls, d: int, k: int = 0) -> ProbVector:
        if not 0 <= k < d:
            raise InvalidDimension(f"index {k} outside 0..{d - 1}")
        return cls([ONE if i == k else ZERO for i in range(d)])


class SubDistribution(tuple):
    """Non-negative exact entries summing to at most one."""

    def __new__(cls, entries: Iterable = ()):
        vals = tuple(to_rat(e) for e in entries)
        for i, v in enumerate(vals):
            if v < 0:
                raise InvalidInput(f"entry {i} is negative ({v})")
        total = sum(vals, ZERO)
        if total > 1:
            raise InvalidInput(f"mass {total} exceeds 1")
        return super().__new__(cls, vals)

    def __repr__(self):
        return f"SubDistribution({', '.join(map(str, self))})"

    @property
    def mass(self) -> Fraction:
        return sum(self, ZERO)

    @classmethod
    def indicator(cls, w: int, m: int | None = None) -> SubDistribution:
        """The pure ``w``-game: all weight on ``w`` (1-based)."""
        m = w if m is None else m
        if not 1 <= w <= m:
            raise InvalidDimension(f"w={w} outside 1..{m}")
        return cls([ONE if k == w - 1 else ZERO for k in range(m)])


class Mat:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), cols: int | None = None):
        rows = tuple(tuple(to_rat(v) for v in row) for row in data)
        if rows:
            width = len(rows[0])
            for i, r in enumerate(rows):
                if len(r) != width:
                    raise InvalidDimension(f"row {i} has {len(r)} entries, expected {width}")
            if cols is not None and cols != width:
                raise InvalidDimension(f"declared {cols} columns, rows have {width}")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> Mat:
        m = cls.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        return m

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence) -> Mat:
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise InvalidDimension(f"{len(entries)} entries cannot fill {rows}x{cols}")
        vals = [to_rat(e) for e in entries]
        return cls._raw(tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Mat:
        columns = [list(c) for c in columns]
        if not columns:
            return cls._raw((), 0)
        return cls(zip(*columns)) if columns[0] else cls._raw((), len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n))
                              for i in range(n)), n)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> Mat:
        """Matrix with a one at ``(i, perm[i])``; ``v @ P`` sends slot i to perm[i]."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise InvalidInput(f"{list(perm)} is not a permutation")
        return cls._raw(tuple(tuple(ONE if perm[i] == j else ZERO for j in range(n))
                              for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        return tuple(v for row in self._data for v in row)

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def rows_list(self) -> list[tuple]:
        return list(self._data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Mat[{self.rows}x{self.cols}]({body})"

    @property
    def T(self) -> Mat:
        return Mat._raw(tuple(zip(*self._data)) if self.rows else
                        tuple(() for _ in range(self.cols)), self.rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise InvalidDimension(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return Mat._raw(tuple(tuple(_dot(r, c) for c in ocols) for r in self._data),
                            other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise InvalidDimension(f"cannot apply {self.shape} to a {len(vec)}-vector")
        return tuple(_dot(r, vec) for r in self._data)

    def __rmatmul__(self, other):
        # row vector times matrix
        vec = tuple(other)
        if len(vec) != self.rows:
            raise InvalidDimension(f"cannot apply a {len(vec)}-vector to {self.shape}")
        return tuple(_dot(vec, c) for c in self.columns())

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise InvalidDimension(f"cannot add {self.shape} and {other.shape}")
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s))
                              for r, s in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise InvalidDimension(f"cannot subtract {other.shape} from {self.shape}")
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s))
                              for r, s in zip(self._data, other._data)), self.cols)

    def scale(self, c) -> Mat:
        c = to_rat(c)
        return Mat._raw(tuple(tuple(c * v for v in r) for r in self._data), self.cols)

    def kron(self, other: Mat) -> Mat:
        return Mat._raw(tuple(tuple(a * b for a in r for b in s)
                              for r in self._data for s in other._data),
                        self.cols * other.cols)

    def pad(self, rows: int, cols: int) -> Mat:
        """Append zero rows/columns up to ``rows x cols``."""
        if rows < self.rows or cols < self.cols:
            raise InvalidDimension(f"cannot pad {self.shape} down to {(rows, cols)}")
        extra = (ZERO,) * (cols - self.cols)
        body = tuple(r + extra for r in self._data)
        body += tuple((ZERO,) * cols for _ in range(rows - self.rows))
        return Mat._raw(body, cols)

    def row_sums(self) -> tuple:
        return tuple(sum(r, ZERO) for r in self._data)

    def col_sums(self) -> tuple:
        return tuple(sum(c, ZERO) for c in self.columns())

    def total(self) -> Fraction:
        return sum(self.row_sums(), ZERO)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for r in self._data for v in r)

    def is_column_stochastic(self) -> bool:
        return self.is_nonnegative() and all(s == 1 for s in self.col_sums())

    def is_column_substochastic(self) -> bool:
        return self.is_nonnegative() and all(s <= 1 for s in self.col_sums())

    def is_doubly_stochastic(self) -> bool:
        return (self.rows == self.cols and self.is_column_stochastic()
                and all(s == 1 for s in self.row_sums()))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]


def _dot(a, b) -> Fraction:
    # accumulate an unreduced num/den pair and normalise once at the end
    num, den = 0, 1
    for x, y in zip(a, b):
        if x and y:
            d = x.denominator * y.denominator
            if den % d == 0:
                num += x.numerator * y.numerator * (den // d)
            else:
                num = num * d + x.numerator * y.numerator * den
                den *= d
    return Fraction(num, den)


def dot(a: Sequence, b: Sequence) -> Fraction:
    """Inner product; the shorter vector is implicitly zero-padded."""
    return _dot(a, b)


def mat_sum(mats: Iterable[Mat], rows: int, cols: int) -> Mat:
    acc = [[ZERO] * cols for _ in range(rows)]
    for m in mats:
        if m.shape != (rows, cols):
            raise InvalidDimension(f"expected {(rows, cols)}, got {m.shape}")
        for i, r in enumerate(m):
            row = acc[i]
            for j, v in enumerate(r):
                if v:
                    row[j] += v
    return Mat(acc)


def sort_desc(v: Sequence) -> tuple[tuple, tuple[int, ...]]:
    """Sort into non-increasing order, stable on ties.

    Returns ``(sorted, perm)`` where ``perm[i]`` is the sorted position of
    original entry ``i``, i.e. ``sorted[perm[i]] == v[i]``.
    """
    vals = tuple(to_rat(x) for x in v)
    order = sorted(range(len(vals)), key=lambda i: (-vals[i], i))
    perm = [0] * len(vals)
    for pos, i in enumerate(order):
        perm[i] = pos
    return tuple(vals[i] for i in order), tuple(perm)


def invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def compose_perm(first: Sequence[int], then: Sequence[int]) -> tuple[int, ...]:
    """Apply ``first`` and then ``then`` (both as index maps)."""
    return tuple(then[first[i]] for i in range(len(first)))


def u_matrix(m: int) -> Mat:
    """Upper-triangular all-ones matrix of size m."""
    if m < 1:
        raise InvalidDimension(f"m must be >= 1, got {m}")
    return Mat._raw(tuple(tuple(ONE if j >= i else ZERO for j in range(m))
                          for i in range(m)), m)


def u_inverse(m: int) -> Mat:
    """Bidiagonal inverse of :func:`u_matrix`: ones on the diagonal, -1 above."""
    if m < 1:
        raise InvalidDimension(f"m must be >= 1, got {m}")
    return Mat._raw(tuple(tuple(ONE if j == i else (-ONE if j == i + 1 else ZERO)
                                for j in range(m)) for i in range(m)), m)


def u_apply(t: Sequence) -> tuple:
    """Tail sums ``r_x = sum_{k >= x} t_k`` (that is, ``U @ t``)."""
    out = []
    acc = ZERO
    for v in reversed(tuple(to_rat(x) for x in t)):
        acc += v
        out.append(acc)
    return tuple(reversed(out))


def u_inverse_apply(r: Sequence) -> tuple:
    """Consecutive differences ``t_x = r_x - r_{x+1}`` with ``r_{m+1} = 0``."""
    r = tuple(to_rat(x) for x in r)
    return tuple(r[i] - (r[i + 1] if i + 1 < len(r) else ZERO) for i in range(len(r)))


def prefix_sums(v: Sequence) -> tuple:
    out = []
    acc = ZERO
    for x in v:
        acc += x
        out.append(acc)
    return tuple(out)


def pad_vector(v: Sequence, d: int) -> tuple:
    v = tuple(v)
    if len(v) > d:
        raise InvalidDimension(f"cannot pad a {len(v)}-vector down to {d}")
    return v + (ZERO,) * (d - len(v))


def kron_vec(a: Sequence, b: Sequence) -> tuple:
    return tuple(x * y for x in a for y in b)


class GameMatrix(Mat):
    """Column sub-stochastic matrix: each column is a (possibly incomplete)
    distribution over the number of guesses ``w``."""

    __slots__ = ()

    def __init__(self, data=(), cols=None):
        super().__init__(data, cols)
        _check_game(self)

    @classmethod
    def of(cls, mat) -> "GameMatrix":
        if isinstance(mat, cls):
            return mat
        if not isinstance(mat, Mat):
            return cls(mat)
        _check_game(mat)
        out = cls.__new__(cls)
        out.rows, out.cols, out._data = mat.rows, mat.cols, tuple(mat)
        return out

    @classmethod
    def from_vector(cls, t: Sequence) -> "GameMatrix":
        return cls([[to_rat(v)] for v in t], cols=1)


def _check_game(m: Mat) -> None:
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v < 0:
                raise InvalidInput(f"game entry ({i}, {j}) is negative ({v})")
    for j, s in enumerate(m.col_sums()):
        if s > 1:
            raise InvalidInput(f"game column {j} has mass {s} > 1")
