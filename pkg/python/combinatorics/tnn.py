"""
Exact rational model of the totally nonnegative Grassmannian.

A point is represented by an m x n matrix of Fractions; all maximal minors are
computed exactly, so every identity below is checked with zero tolerance.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from algebra.grassmann import shift_set, w0_set
from algebra.scalars import ContextError

# Configure logging
logger = logging.getLogger("qgr.tnn")


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ContextError("rows have different lengths")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int | Fraction | str]]) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]]) -> "RationalMatrix":
        if not columns:
            raise ContextError("matrix needs at least one column")
        return cls(tuple(tuple(col[i] for col in columns) for i in range(len(columns[0]))))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> tuple[Fraction, ...]:
        """Column j, 1-based."""
        return tuple(row[j - 1] for row in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(1, self.n + 1)]

    def scaled(self, c: Fraction | int) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]


@dataclass(frozen=True)
class SignMatrix:
    """Diagonal R_m: (-1)^[m/2] in the corner, 1 elsewhere."""

    diagonal: tuple[int, ...]

    @classmethod
    def for_size(cls, m: int) -> "SignMatrix":
        return cls(((-1) ** (m // 2),) + (1,) * (m - 1))

    def apply(self, A: RationalMatrix) -> RationalMatrix:
        return RationalMatrix(tuple(tuple(s * x for x in row) for s, row in zip(self.diagonal, A.rows)))

    def squared_is_identity(self) -> bool:
        return all(s * s == 1 for s in self.diagonal)


def determinant(square: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free (Bareiss) determinant."""
    a = [list(map(Fraction, row)) for row in square]
    size = len(a)
    if size == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[size - 1][size - 1]


def determinant_laplace(square: Sequence[Sequence[Fraction]]) -> Fraction:
    """Cofactor expansion along the first row."""
    size = len(square)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return Fraction(square[0][0])
    total = Fraction(0)
    for j, entry in enumerate(square[0]):
        if entry == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in square[1:]]
        total += (-1) ** j * Fraction(entry) * determinant_laplace(sub)
    return total


def _select(A: RationalMatrix, I: Iterable[int]) -> list[list[Fraction]]:
    cols = list(I)
    if len(cols) != A.m:
        raise ContextError(f"minor needs {A.m} columns, got {cols}")
    if any(not 1 <= j <= A.n for j in cols):
        raise ContextError(f"columns {cols} outside 1..{A.n}")
    return [[row[j - 1] for j in cols] for row in A.rows]


def minor_value(A: RationalMatrix, I: Iterable[int]) -> Fraction:
    return determinant(_select(A, I))


def minor_value_laplace(A: RationalMatrix, I: Iterable[int]) -> Fraction:
    return determinant_laplace(_select(A, I))


def maximal_minors(A: RationalMatrix) -> dict[tuple[int, ...], Fraction]:
    return {I: minor_value(A, I) for I in combinations(range(1, A.n + 1), A.m)}


def cyc_act(A: RationalMatrix) -> RationalMatrix:
    """((-1)^(m-1) v_n, v_1, ..., v_{n-1})."""
    cols = A.columns()
    sign = (-1) ** (A.m - 1)
    return RationalMatrix.from_columns([tuple(sign * x for x in cols[-1])] + cols[:-1])


def cyc_inverse_act(A: RationalMatrix) -> RationalMatrix:
    """(v_2, ..., v_n, (-1)^(m-1) v_1)."""
    cols = A.columns()
    sign = (-1) ** (A.m - 1)
    return RationalMatrix.from_columns(cols[1:] + [tuple(sign * x for x in cols[0])])


def w0_act(A: RationalMatrix) -> RationalMatrix:
    """R_m (v_n, ..., v_1)."""
    return SignMatrix.for_size(A.m).apply(RationalMatrix.from_columns(A.columns()[::-1]))


def dihedral_relation_check(A: RationalMatrix) -> bool:
    return w0_act(cyc_act(w0_act(A))) == cyc_inverse_act(A)


def minor_identities_check(A: RationalMatrix) -> bool:
    """Delta_I(A) == Delta_{c(I)}(c.A) == Delta_{w0(I)}(w0.A) for every I."""
    rotated, reflected = cyc_act(A), w0_act(A)
    for I in combinations(range(1, A.n + 1), A.m):
        value = minor_value(A, I)
        if minor_value(rotated, shift_set(I, 1, A.n)) != value:
            return False
        if minor_value(reflected, w0_set(I, A.n)) != value:
            return False
    return True


def cyc_power(A: RationalMatrix, k: int) -> RationalMatrix:
    for _ in range(k):
        A = cyc_act(A)
    return A


def rank(A: RationalMatrix) -> int:
    rows = [list(r) for r in A.rows]
    r = 0
    for c in range(A.n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def same_row_span(A: RationalMatrix, B: RationalMatrix) -> bool:
    if A.n != B.n:
        return False
    stacked = RationalMatrix(A.rows + B.rows)
    return rank(A) == rank(B) == rank(stacked)


def is_tnn(A: RationalMatrix) -> bool:
    return all(v >= 0 for v in maximal_minors(A).values())


def is_tp(A: RationalMatrix) -> bool:
    return all(v > 0 for v in maximal_minors(A).values())


def random_rational_matrix(rng: random.Random, m: int, n: int, bound: int = 5) -> RationalMatrix:
    """Entries p/q with p in -bound..bound and q in 1..bound."""
    return RationalMatrix.from_rows(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)] for _ in range(m)]
    )


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def _elementary(n: int, i: int, t: Fraction, lower: bool) -> list[list[Fraction]]:
    """I + t E_{i+1,i} (lower) or I + t E_{i,i+1} (upper), 0-based i."""
    e = _identity(n)
    if lower:
        e[i + 1][i] = t
    else:
        e[i][i + 1] = t
    return e


def _reduced_word(n: int) -> list[int]:
    """A reduced word of the longest permutation: 1, 2 1, 3 2 1, ..."""
    return [i for top in range(1, n) for i in range(top, 0, -1)]


def tnn_witness(rng: random.Random, m: int, n: int, steps: int | None = None) -> RationalMatrix:
    """First m rows of a product of nonnegative bidiagonal factors and a positive diagonal."""
    steps = steps if steps is not None else 2 * n
    product = [[Fraction(rng.randint(1, 3)) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i = rng.randrange(n - 1)
        t = Fraction(rng.randint(0, 3), rng.randint(1, 2))
        product = _matmul(product, _elementary(n, i, t, lower=rng.random() < 0.5))
    return RationalMatrix.from_rows(product[:m])


def tp_witness(rng: random.Random, m: int, n: int) -> RationalMatrix:
    """Totally positive: lower factors along a reduced word, positive diagonal, upper factors reversed."""
    word = _reduced_word(n)
    product = _identity(n)
    for i in word:
        product = _matmul(product, _elementary(n, i - 1, Fraction(rng.randint(1, 3)), lower=True))
    diagonal = [[Fraction(rng.randint(1, 3)) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    product = _matmul(product, diagonal)
    for i in reversed(word):
        product = _matmul(product, _elementary(n, i - 1, Fraction(rng.randint(1, 3)), lower=False))
    return RationalMatrix.from_rows(product[:m])


def identity_padded(m: int, n: int) -> RationalMatrix:
    """(I_m | 0)."""
    return RationalMatrix.from_rows([[Fraction(int(i == j)) for j in range(n)] for i in range(m)])
