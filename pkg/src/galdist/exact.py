"""Exact arithmetic in Q and Q(delta), delta**2 = d, with Galois conjugation.

Rationals are :class:`fractions.Fraction`. Elements of the quadratic
extension are :class:`QuadScalar`; dense matrices over it are
:class:`QuadMatrix`. Nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, SingularMatrix

DEFAULT_D = Fraction(2)

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def format_rational(x: Fraction) -> str:
    """Always ``p/q``, so the wire format has one shape."""
    return f"{x.numerator}/{x.denominator}"


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    p, q = x.numerator, x.denominator
    return isqrt(p) ** 2 == p and isqrt(q) ** 2 == q


def check_nonsquare(d: RationalLike) -> Fraction:
    d = as_rational(d)
    if _is_rational_square(d):
        raise ValueError(f"d = {d} is a square in Q; Q(delta) would not be a field")
    return d


class QuadScalar:
    """The element ``a + b*delta`` with ``delta**2 = d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: RationalLike = DEFAULT_D):
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))
        object.__setattr__(self, "d", as_rational(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def delta(cls, d: RationalLike = DEFAULT_D) -> QuadScalar:
        return cls(0, 1, d)

    def _lift(self, other) -> QuadScalar:
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadScalar(other, 0, self.d)
        return NotImplemented

    # field operations ---------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadScalar(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + o.a * self.b,
            self.d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conj(self) -> QuadScalar:
        return QuadScalar(self.a, -self.b, self.d)

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(delta)")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    # comparisons --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadScalar):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"QuadScalar({self.a!s}, {self.b!s}, d={self.d!s})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}δ"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}δ"


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    return x * y


def quad_inv(x: QuadScalar) -> QuadScalar:
    return x.inverse()


class QuadMatrix:
    """Immutable dense matrix over Q(delta)."""

    __slots__ = ("rows", "cols", "entries", "d")

    def __init__(self, entries: Sequence[Sequence], d: RationalLike = DEFAULT_D, cols: int | None = None):
        d = as_rational(d)
        grid = tuple(
            tuple(e if isinstance(e, QuadScalar) else QuadScalar(e, 0, d) for e in row)
            for row in entries
        )
        ncols = len(grid[0]) if grid else (cols or 0)
        if any(len(r) != ncols for r in grid):
            raise DimensionMismatch("ragged matrix")
        for row in grid:
            for e in row:
                if e.d != d:
                    raise ValueError("entry lives in a different quadratic field")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadMatrix is immutable")

    @classmethod
    def identity(cls, n: int, d: RationalLike = DEFAULT_D) -> QuadMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], d)

    @classmethod
    def zeros(cls, rows: int, cols: int, d: RationalLike = DEFAULT_D) -> QuadMatrix:
        return cls([[0] * cols for _ in range(rows)], d, cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> QuadScalar:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return self.d == other.d and self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.entries, self.d))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"QuadMatrix([{body}], d={self.d})"

    def __matmul__(self, other: QuadMatrix) -> QuadMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.d != other.d:
            raise ValueError("mixing quadratic fields")
        zero = QuadScalar(0, 0, self.d)
        out = []
        for row in self.entries:
            new_row = []
            for j in range(other.cols):
                acc = zero
                for k, x in enumerate(row):
                    if x.a or x.b:
                        y = other.entries[k][j]
                        if y.a or y.b:
                            acc = acc + x * y
                new_row.append(acc)
            out.append(new_row)
        return QuadMatrix(out, self.d, cols=other.cols)

    def conj(self) -> QuadMatrix:
        return QuadMatrix([[e.conj() for e in row] for row in self.entries], self.d, cols=self.cols)

    def transpose(self) -> QuadMatrix:
        return QuadMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.d,
            cols=self.rows,
        )

    def columns(self, idx: Iterable[int]) -> QuadMatrix:
        idx = list(idx)
        return QuadMatrix([[row[j] for j in idx] for row in self.entries], self.d, cols=len(idx))

    def hstack(self, other: QuadMatrix) -> QuadMatrix:
        if self.rows != other.rows:
            raise DimensionMismatch(f"row counts differ: {self.rows} vs {other.rows}")
        return QuadMatrix(
            [a + b for a, b in zip(self.entries, other.entries)],
            self.d,
            cols=self.cols + other.cols,
        )

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            e == (1 if i == j else 0) for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    def rank(self) -> int:
        return _row_reduce(self)[0]

    def inverse(self) -> QuadMatrix:
        return mat_inverse(self)


def _row_reduce(m: QuadMatrix) -> tuple[int, list[list[QuadScalar]]]:
    """Gauss-Jordan in place on a copy; pivot = first nonzero entry."""
    rows = [list(r) for r in m.entries]
    rank = 0
    for col in range(m.cols):
        pivot = next((r for r in range(rank, m.rows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(m.rows):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == m.rows:
            break
    return rank, rows


def mat_inverse(m: QuadMatrix) -> QuadMatrix:
    if m.rows != m.cols:
        raise DimensionMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    augmented = m.hstack(QuadMatrix.identity(n, m.d))
    rank, rows = _row_reduce(augmented)
    # the left block is the identity iff every pivot landed in the first n columns
    if rank < n or any(not rows[i][i] == 1 for i in range(n)):
        raise SingularMatrix(f"matrix has rank < {n}")
    return QuadMatrix([row[n:] for row in rows], m.d, cols=n)


def subspace_intersect_dim(basis_a: QuadMatrix, basis_b: QuadMatrix) -> int:
    """dim(span A ∩ span B) for column bases A, B of subspaces of K^n."""
    if basis_a.rows != basis_b.rows:
        raise DimensionMismatch(f"ambient dimensions differ: {basis_a.rows} vs {basis_b.rows}")
    return basis_a.rank() + basis_b.rank() - basis_a.hstack(basis_b).rank()


def permutation_matrix(images: Sequence[int], d: RationalLike = DEFAULT_D) -> QuadMatrix:
    """0/1 matrix sending e_k to e_{images[k]} (images are 1-based)."""
    n = len(images)
    grid = [[0] * n for _ in range(n)]
    for k, img in enumerate(images):
        grid[img - 1][k] = 1
    return QuadMatrix(grid, d, cols=n)
