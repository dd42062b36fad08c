"""
Index sets, quantum Plücker coordinates and their degree-2 relations.

A minor [I] of the m x n generic quantum matrix uses rows 1..m and the
column set I. Shifts of index sets are taken cyclically with
representatives in 1..n.
"""

import logging
import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from algebra.qmatrix import MatrixContext, NCPoly, Word, nc_mul, quantum_minor
from algebra.scalars import (
    ZERO,
    ContextError,
    LaurentScalar,
    RelationError,
    ScalarContext,
    ff_kernel,
)

# Configure logging
logger = logging.getLogger("qgr.grassmann")

ContentVector = tuple[int, ...]


class IndexSet(tuple):
    """Sorted tuple of distinct positive integers."""

    def __new__(cls, values: Iterable[int] = ()):
        items = [int(v) for v in values]
        if len(set(items)) != len(items):
            raise ContextError(f"index set has repeated entries: {items}")
        if any(v < 1 for v in items):
            raise ContextError(f"index set entries must be positive: {items}")
        return super().__new__(cls, sorted(items))

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self) + "]"

    def __repr__(self) -> str:
        return f"IndexSet({str(self)})"

    @classmethod
    def parse(cls, text: str) -> "IndexSet":
        """Accepts "[2,4]", "2,4" or "24" (single digits)."""
        body = text.strip().strip("[]{}() ")
        if not body:
            return cls()
        if re.fullmatch(r"\d+", body) and "," not in body:
            return cls(int(ch) for ch in body)
        return cls(int(part) for part in re.split(r"[,\s]+", body) if part)


def tilde(j: int, n: int) -> int:
    """Representative of j modulo n in 1..n."""
    return (j - 1) % n + 1


def shift_set(I: Iterable[int], a: int, n: int) -> IndexSet:
    return IndexSet(tilde(i + a, n) for i in I)


def w0_set(I: Iterable[int], n: int) -> IndexSet:
    return IndexSet(n - i + 1 for i in I)


def content(I: Iterable[int], n: int) -> ContentVector:
    vec = [0] * n
    for i in I:
        vec[i - 1] += 1
    return tuple(vec)


@dataclass(frozen=True)
class GrassmannContext:
    """Quantum Grassmannian of m-planes in n-space inside the m x n quantum matrices."""

    m: int
    n: int

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise ContextError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    @cached_property
    def scalars(self) -> ScalarContext:
        return ScalarContext(self.m, self.n)

    @cached_property
    def matrix(self) -> MatrixContext:
        return MatrixContext(self.m, self.n, self.scalars)

    @property
    def q(self) -> LaurentScalar:
        return self.scalars.q

    def subsets(self) -> list[IndexSet]:
        """All m-subsets in lexicographic order."""
        return [IndexSet(c) for c in combinations(range(1, self.n + 1), self.m)]

    def check_set(self, I: Iterable[int], size: int | None = None) -> IndexSet:
        I = IndexSet(I)
        expected = self.m if size is None else size
        if len(I) != expected:
            raise ContextError(f"{I} has {len(I)} entries, expected {expected}")
        if I and I[-1] > self.n:
            raise ContextError(f"{I} is not contained in 1..{self.n}")
        return I

    def __str__(self) -> str:
        return f"Gr({self.m},{self.n})"


def minor(ctx: GrassmannContext, I: Iterable[int]) -> NCPoly:
    """Quantum Plücker coordinate [I]."""
    return _minor(ctx, ctx.check_set(I))


@lru_cache(maxsize=None)
def _minor(ctx: GrassmannContext, I: IndexSet) -> NCPoly:
    return quantum_minor(ctx.matrix, range(1, ctx.m + 1), I)


@lru_cache(maxsize=None)
def product(ctx: GrassmannContext, I: IndexSet, J: IndexSet) -> NCPoly:
    """Normal form of [I][J]."""
    return nc_mul(_minor(ctx, I), _minor(ctx, J))


@dataclass(frozen=True)
class QuadRelation:
    """sum of coeff * [left][right] that vanishes in the quantum Grassmannian."""

    ctx: GrassmannContext
    terms: tuple[tuple[LaurentScalar, IndexSet, IndexSet], ...]

    def evaluate(self) -> NCPoly:
        acc = NCPoly(self.ctx.matrix)
        for coeff, left, right in self.terms:
            acc = acc + product(self.ctx, left, right).scale(coeff)
        return acc

    def holds(self) -> bool:
        return self.evaluate().is_zero()

    def index_sets(self) -> set[IndexSet]:
        return {s for _, left, right in self.terms for s in (left, right)}

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "left": list(left), "right": list(right)} for c, left, right in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0 = 0"
        body = " + ".join(f"({c}) {left}{right}" for c, left, right in self.terms)
        return f"{body} = 0"


def recode_q(coeff: LaurentScalar, m_from: int, m_to: int) -> LaurentScalar:
    """Rewrite a polynomial in q = u^m_from as the same polynomial in q = u^m_to."""
    out = {}
    for e, c in coeff.terms:
        if e % m_from:
            raise RelationError(f"coefficient {coeff} is not a polynomial in q = u^{m_from}")
        out[e // m_from * m_to] = c
    return LaurentScalar(out)


def muir_extend(rel: QuadRelation, P: Iterable[int]) -> QuadRelation:
    """Extend every index set of rel by the complement of P (Muir's law)."""
    ctx = rel.ctx
    P = IndexSet(P)
    if P and P[-1] > ctx.n:
        raise ContextError(f"{P} is not contained in 1..{ctx.n}")
    outside = [s for s in rel.index_sets() if not set(s) <= set(P)]
    if outside:
        raise ContextError(f"index sets {sorted(outside)} are not contained in {P}")
    complement = [i for i in range(1, ctx.n + 1) if i not in P]
    if not complement:
        return rel
    wide = GrassmannContext(ctx.m + len(complement), ctx.n)
    terms = tuple(
        (recode_q(c, ctx.m, wide.m), IndexSet((*left, *complement)), IndexSet((*right, *complement)))
        for c, left, right in rel.terms
    )
    extended = QuadRelation(wide, terms)
    if not extended.holds():
        raise RelationError(f"Muir extension of {rel} by {P} does not vanish in {wide}")
    logger.debug(f"[CHECK] Muir extension to {wide} verified ({len(terms)} terms)")
    return extended


def muir_window(rel: QuadRelation, target_m: int, rng: random.Random) -> IndexSet:
    """Random P holding every index of rel whose complement lifts rel to Gr(target_m, n)."""
    ctx = rel.ctx
    used = {i for s in rel.index_sets() for i in s}
    spare = [i for i in range(1, ctx.n + 1) if i not in used]
    extra = target_m - ctx.m
    if extra < 0 or extra > len(spare):
        raise ContextError(f"no window lifts {rel} from {ctx} to m={target_m}")
    dropped = set(rng.sample(spare, extra))
    return IndexSet(i for i in range(1, ctx.n + 1) if i not in dropped)


def evaluation_matrix(
    ctx: GrassmannContext, products: Sequence[tuple[IndexSet, IndexSet]] | None = None
) -> tuple[list[list[LaurentScalar]], list[tuple[IndexSet, IndexSet]], list[Word]]:
    """Normal-form coordinates: one row per normal word, one column per product."""
    if products is None:
        subsets = ctx.subsets()
        products = [(I, J) for I in subsets for J in subsets]
    values = [product(ctx, I, J) for I, J in products]
    words = sorted({w for v in values for w, _ in v.terms})
    index = {w: k for k, w in enumerate(words)}
    mat = [[ZERO] * len(products) for _ in words]
    for col, v in enumerate(values):
        for w, c in v.terms:
            mat[index[w]][col] = c
    return mat, list(products), words


def quadratic_relations(ctx: GrassmannContext) -> list[QuadRelation]:
    """Normalized basis of all linear relations among the products [I][J].

    The evaluation matrix is block diagonal in the total column content, so
    the kernel is computed block by block; products inside a block keep the
    lexicographic (left, right) order.
    """
    subsets = ctx.subsets()
    blocks: dict[ContentVector, list[tuple[IndexSet, IndexSet]]] = {}
    for I in subsets:
        for J in subsets:
            key = tuple(a + b for a, b in zip(content(I, ctx.n), content(J, ctx.n)))
            blocks.setdefault(key, []).append((I, J))

    relations: list[QuadRelation] = []
    for key in sorted(blocks):
        products = blocks[key]
        if len(products) == 1:
            continue
        mat, cols, _ = evaluation_matrix(ctx, products)
        basis = ff_kernel(mat, len(cols))
        for vec in basis.vectors:
            terms = tuple((c, I, J) for c, (I, J) in zip(vec, cols) if c)
            relations.append(QuadRelation(ctx, terms))
    logger.info(f"[KERNEL] {ctx}: {len(relations)} degree-2 relations from {len(subsets) ** 2} products")
    return relations


@dataclass(frozen=True)
class ConsecutiveData:
    """The consecutive set M_alpha with its row labels w and column labels z."""

    alpha: int
    M: IndexSet
    w: tuple[int, ...]
    z: tuple[int, ...]

    def w_at(self, i: int) -> int:
        return self.w[i - 1]

    def z_at(self, j: int) -> int:
        return self.z[j - 1]


def consecutive_set(ctx: GrassmannContext, alpha: int) -> IndexSet:
    return IndexSet(tilde(alpha + k, ctx.n) for k in range(ctx.m))


def consecutive_data(ctx: GrassmannContext, alpha: int) -> ConsecutiveData:
    m, n = ctx.m, ctx.n
    M = consecutive_set(ctx, alpha)
    w = tuple(tilde(alpha + m - i, n) for i in range(1, m + 1))
    z = tuple(tilde(j + alpha + m - 1, n) for j in range(1, n - m + 1))
    if not set(w) <= set(M) or set(z) & set(M):
        raise RelationError(f"consecutive data for alpha={alpha} is inconsistent")
    return ConsecutiveData(alpha=alpha, M=M, w=w, z=z)
