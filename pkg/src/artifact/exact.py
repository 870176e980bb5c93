"""Exact dense linear algebra over Python integers and fractions.

Matrices are immutable and indexed from 0.  Elimination is fraction-free
(Bareiss) so integer inputs never leave the integers until the final
division by the determinant.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _norm(x) -> Scalar:
    """Collapse integral fractions to ints so equality and printing are canonical."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"non-exact scalar {x!r}")


class Mat:
    """Immutable square matrix with int or Fraction entries."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        rows = tuple(tuple(_norm(v) for v in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self._rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "Mat":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "Mat":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def T(self) -> "Mat":
        return Mat(zip(*self._rows))

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def is_integer(self) -> bool:
        return all(isinstance(v, int) for r in self._rows for v in r)

    def is_upper_unitriangular(self) -> bool:
        n = self.n
        return all(self[i, i] == 1 for i in range(n)) and all(
            self[i, j] == 0 for i in range(n) for j in range(i)
        )

    def replace(self, updates: dict) -> "Mat":
        """Copy with entries {(i, j): value} overwritten."""
        rows = [list(r) for r in self._rows]
        for (i, j), v in updates.items():
            rows[i][j] = v
        return Mat(rows)

    def submatrix(self, idx: Sequence[int]) -> "Mat":
        return Mat([[self[i, j] for j in idx] for i in idx])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self) -> str:
        return f"Mat({self.tolist()!r})"

    def __neg__(self) -> "Mat":
        return Mat([[-v for v in r] for r in self._rows])

    def __add__(self, other: "Mat") -> "Mat":
        _check_same(self, other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        _check_same(self, other)
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            return mat_mul(self, c)
        return Mat([[c * v for v in r] for r in self._rows])

    __rmul__ = __mul__

    def __pow__(self, p: int) -> "Mat":
        if p < 0:
            return mat_inv(self) ** (-p)
        result = Mat.identity(self.n)
        base = self
        while p:
            if p & 1:
                result = result @ base
            base = base @ base
            p >>= 1
        return result


def _check_same(a: Mat, b: Mat) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def binomial(n: int, m: int) -> int:
    """C(n, m), zero outside 0 <= m <= n."""
    if m < 0 or n < 0 or m > n:
        return 0
    return math.comb(n, m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    _check_same(a, b)
    cols = b.T.rows
    return Mat([[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a.rows])


def _clear_denominators(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[int]], int]:
    """Scale rows to integers; returns (int rows, common denominator)."""
    den = 1
    for r in rows:
        for v in r:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
    return [[int(v * den) for v in r] for r in rows], den


def _gauss_jordan_ff(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int, int]:
    """Fraction-free Gauss-Jordan elimination over the first `ncols` columns.

    Returns (reduced rows, pivot columns, last pivot, swap parity).  Every
    pivot entry of the result equals the last pivot, and the quotient in
    each update is exact.
    """
    a = [list(r) for r in rows]
    m = len(a)
    prev = 1
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        pr = a[r]
        for i in range(m):
            if i == r:
                continue
            ai = a[i]
            f = ai[c]
            a[i] = [(piv * x - f * y) // prev for x, y in zip(ai, pr)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots, prev, sign


def det(a: Mat) -> Scalar:
    rows, den = _clear_denominators(a.rows)
    n = a.n
    if n == 0:
        return 1
    red, pivots, last, sign = _gauss_jordan_ff(rows, n)
    if len(pivots) < n:
        return 0
    return _norm(Fraction(sign * last, den**n))


def rank(a: Mat) -> int:
    rows, _ = _clear_denominators(a.rows)
    return len(_gauss_jordan_ff(rows, a.n)[1])


def mat_inv(a: Mat) -> Mat:
    """Exact inverse; raises ZeroDivisionError for singular input."""
    n = a.n
    rows, den = _clear_denominators(a.rows)
    aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    red, pivots, last, _ = _gauss_jordan_ff(aug, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    # red = [last * I | last * (den * A)^-1]
    return Mat([[Fraction(den * v, last) for v in r[n:]] for r in red])


def kernel_vector(a: Mat) -> tuple[int, ...] | None:
    """Primitive integer kernel vector when the nullity is exactly one.

    Returns None for invertible input and raises ValueError when the
    kernel has dimension two or more.  The sign is fixed so that the last
    nonzero coordinate is positive.
    """
    n = a.n
    rows, _ = _clear_denominators(a.rows)
    red, pivots, last, _ = _gauss_jordan_ff(rows, n)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    if len(free) > 1:
        raise ValueError(f"kernel has dimension {len(free)}, expected at most 1")
    f = free[0]
    v = [0] * n
    v[f] = last
    for i, c in enumerate(pivots):
        v[c] = -red[i][f]
    g = reduce(math.gcd, v)
    v = [x // g for x in v]
    tail = next(x for x in reversed(v) if x != 0)
    if tail < 0:
        v = [-x for x in v]
    return tuple(v)


def mat_vec(a: Mat, v: Sequence[Scalar]) -> tuple:
    return tuple(_norm(sum(x * y for x, y in zip(r, v))) for r in a.rows)


def permutation_matrix(order: Sequence[int]) -> Mat:
    """P with P[r][order[r] - 1] = 1 (order is 1-based)."""
    n = len(order)
    return Mat([[1 if c == order[r] - 1 else 0 for c in range(n)] for r in range(n)])


def anti_diagonal(n: int) -> Mat:
    return Mat([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])
