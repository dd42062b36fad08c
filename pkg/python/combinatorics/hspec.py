"""
Dihedral combinatorics on torus-invariant primes, modeled by vanishing patterns.

A pattern is the set of Plücker coordinates that vanish on a point of the
totally nonnegative Grassmannian; the augmentation pattern (every minor
vanishes) is carried separately by the ``full`` flag. Patterns are realized
by a grid search over exact rational matrices and counted against Le-diagrams.
"""

import logging
import random
from concurrent.futures import Executor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from algebra.grassmann import GrassmannContext, IndexSet, shift_set, w0_set
from algebra.scalars import ContextError, RelationError
from combinatorics.tnn import RationalMatrix, is_tnn, minor_value, rank, tnn_witness, tp_witness

# Configure logging
logger = logging.getLogger("qgr.hspec")


class Generator(str, Enum):
    C = "c"
    W0 = "w0"


@dataclass(frozen=True)
class VanishingPattern:
    vanishing: frozenset[IndexSet]
    full: bool = False

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], full: bool = False) -> "VanishingPattern":
        return cls(frozenset(IndexSet(s) for s in sets), full)

    @classmethod
    def augmentation(cls, ctx: GrassmannContext) -> "VanishingPattern":
        return cls(frozenset(ctx.subsets()), full=True)

    def sort_key(self) -> tuple:
        return (self.full, len(self.vanishing), sorted(self.vanishing))

    def to_json(self) -> list[list[int]] | str:
        if self.full:
            return "augmentation"
        return [list(s) for s in sorted(self.vanishing)]

    def __str__(self) -> str:
        if self.full:
            return "{all}"
        return "{" + ",".join("".join(str(i) for i in s) for s in sorted(self.vanishing)) + "}"


def act_on_set(ctx: GrassmannContext, g: Generator | str, I: Iterable[int]) -> IndexSet:
    g = Generator(g)
    return shift_set(I, 1, ctx.n) if g is Generator.C else w0_set(I, ctx.n)


def act_on_pattern(ctx: GrassmannContext, g: Generator | str, P: VanishingPattern) -> VanishingPattern:
    for s in P.vanishing:
        ctx.check_set(s)
    return VanishingPattern(frozenset(act_on_set(ctx, g, s) for s in P.vanishing), P.full)


def pattern_of(ctx: GrassmannContext, A: RationalMatrix) -> VanishingPattern:
    if (A.m, A.n) != (ctx.m, ctx.n):
        raise ContextError(f"{A.m}x{A.n} matrix does not represent a point of {ctx}")
    return VanishingPattern(frozenset(I for I in ctx.subsets() if minor_value(A, I) == 0))


def generator_relations_check(ctx: GrassmannContext, patterns: Iterable[VanishingPattern]) -> bool:
    """c^n == id, w0^2 == id and w0 c w0 == c^-1 on every pattern."""
    for P in patterns:
        rotated = P
        for _ in range(ctx.n):
            rotated = act_on_pattern(ctx, Generator.C, rotated)
        if rotated != P:
            return False
        if act_on_pattern(ctx, Generator.W0, act_on_pattern(ctx, Generator.W0, P)) != P:
            return False
        conj = act_on_pattern(
            ctx, Generator.W0, act_on_pattern(ctx, Generator.C, act_on_pattern(ctx, Generator.W0, P))
        )
        back = act_on_pattern(ctx, Generator.C, conj)
        if back != P:
            return False
    return True


# -- realizability oracle


def seed_witnesses(m: int, n: int, count: int = 8) -> list[RationalMatrix]:
    """Fixed totally positive and nonnegative witnesses, independent of the run seed."""
    rng = random.Random(m * 1000 + n)
    seeds = [tp_witness(rng, m, n)]
    seeds.extend(tnn_witness(rng, m, n) for _ in range(count))
    return seeds


def _scan_chunk(args: tuple[int, int, int, tuple[Fraction, ...]]) -> set[VanishingPattern]:
    """All grid matrices whose first row is ``head``."""
    m, n, bound, head = args
    ctx = GrassmannContext(m, n)
    grid = [Fraction(v) for v in range(-bound, bound + 1)]
    found: set[VanishingPattern] = set()
    for tail in product(grid, repeat=(m - 1) * n):
        rows = (head,) + tuple(tuple(tail[r * n:(r + 1) * n]) for r in range(m - 1))
        A = RationalMatrix(rows)
        if rank(A) != m or not is_tnn(A):
            continue
        found.add(pattern_of(ctx, A))
    return found


def enumerate_tnn_vanishing_patterns(
    ctx: GrassmannContext,
    grid_bound: int = 1,
    seed_witnesses_enabled: bool = True,
    pool: Executor | None = None,
) -> list[VanishingPattern]:
    """Vanishing patterns of rank-m TNN matrices over the grid {-G..G}, in canonical order.

    Grid chunks go through ``pool`` when one is given; the caller owns its lifetime.
    """
    if grid_bound < 1:
        raise ContextError(f"grid bound must be positive, got {grid_bound}")
    m, n = ctx.m, ctx.n
    grid = [Fraction(v) for v in range(-grid_bound, grid_bound + 1)]
    chunks = [(m, n, grid_bound, head) for head in product(grid, repeat=n)]

    found: set[VanishingPattern] = set()
    if pool is not None:
        for part in pool.map(_scan_chunk, chunks, chunksize=max(1, len(chunks) // 16)):
            found |= part
    else:
        for chunk in chunks:
            found |= _scan_chunk(chunk)
    logger.debug(f"[ORACLE] {ctx}: {len(found)} patterns from {len(grid) ** (m * n)} grid matrices")

    if seed_witnesses_enabled:
        for A in seed_witnesses(m, n):
            if rank(A) == m and is_tnn(A):
                found.add(pattern_of(ctx, A))

    patterns = sorted(found, key=VanishingPattern.sort_key)
    expected = count_le_diagrams(m, n)
    if len(patterns) != expected:
        logger.warning(f"[ORACLE] {ctx}: {len(patterns)} patterns realized, Le-diagram count is {expected}")
    else:
        logger.info(f"[ORACLE] {ctx}: {len(patterns)} patterns, matches Le-diagram count")
    return patterns


def h_spectrum(ctx: GrassmannContext, grid_bound: int = 1, seed_witnesses_enabled: bool = True,
               pool: Executor | None = None) -> list[VanishingPattern]:
    """TNN patterns followed by the augmentation pattern."""
    patterns = enumerate_tnn_vanishing_patterns(ctx, grid_bound, seed_witnesses_enabled, pool)
    return patterns + [VanishingPattern.augmentation(ctx)]


# -- Le-diagrams


@dataclass(frozen=True)
class LeDiagram:
    shape: tuple[int, ...]
    filling: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(a < b for a, b in zip(self.shape, self.shape[1:])):
            raise ContextError(f"shape {self.shape} is not a partition")
        if tuple(len(row) for row in self.filling) != self.shape:
            raise ContextError(f"filling does not match shape {self.shape}")

    def is_le(self) -> bool:
        """No 0 with a 1 above it in its column and a 1 left of it in its row."""
        for i, row in enumerate(self.filling):
            for j, cell in enumerate(row):
                if cell:
                    continue
                left = any(row[:j])
                above = any(self.filling[k][j] for k in range(i))
                if left and above:
                    return False
        return True

    def __str__(self) -> str:
        if not self.shape:
            return "()"
        return "/".join("".join(str(c) for c in row) for row in self.filling)


def shapes_in_box(rows: int, cols: int) -> list[tuple[int, ...]]:
    """Partitions with at most ``rows`` parts, each at most ``cols``, trailing zeros dropped."""
    out = []

    def grow(prefix: list[int], cap: int):
        if len(prefix) == rows:
            out.append(tuple(p for p in prefix if p))
            return
        for part in range(cap, -1, -1):
            grow(prefix + [part], part)

    grow([], cols)
    return sorted(set(out), key=lambda s: (sum(s), s))


def le_diagrams(m: int, n: int) -> list[LeDiagram]:
    if not 1 <= m <= n:
        raise ContextError(f"need 1 <= m <= n, got m={m}, n={n}")
    diagrams = []
    for shape in shapes_in_box(m, n - m):
        cells = sum(shape)
        for bits in product((0, 1), repeat=cells):
            rows, pos = [], 0
            for length in shape:
                rows.append(tuple(bits[pos:pos + length]))
                pos += length
            diagram = LeDiagram(shape, tuple(rows))
            if diagram.is_le():
                diagrams.append(diagram)
    return diagrams


def count_le_diagrams(m: int, n: int) -> int:
    return len(le_diagrams(m, n))


# -- orbits


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x: int) -> int:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass
class OrbitPartition:
    orbits: list[list[int]]
    generators: tuple[str, ...]
    sizes: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.sizes = [len(o) for o in self.orbits]

    def __len__(self) -> int:
        return len(self.orbits)

    def to_json(self, patterns: Sequence[VanishingPattern] | None = None) -> dict:
        body: dict = {"generators": list(self.generators), "count": len(self.orbits), "orbits": self.orbits}
        if patterns is not None:
            body["patterns"] = [[str(patterns[i]) for i in orbit] for orbit in self.orbits]
        return body


def dihedral_orbits(
    ctx: GrassmannContext,
    patterns: Sequence[VanishingPattern],
    generators: Sequence[Generator | str] = (Generator.C,),
) -> OrbitPartition:
    """Orbit partition of the patterns under the group the generators span."""
    gens = tuple(Generator(g) for g in generators)
    index = {P: k for k, P in enumerate(patterns)}
    if len(index) != len(patterns):
        raise ContextError("pattern list has duplicates")
    uf = UnionFind(range(len(patterns)))
    for g in gens:
        for k, P in enumerate(patterns):
            image = act_on_pattern(ctx, g, P)
            if image not in index:
                raise RelationError(f"pattern set is not closed under {g.value}: {P} -> {image}")
            uf.union(k, index[image])
    groups: dict[int, list[int]] = {}
    for k in range(len(patterns)):
        groups.setdefault(uf.find(k), []).append(k)
    orbits = sorted(groups.values(), key=lambda o: o[0])
    logger.debug(f"[CHECK] {ctx}: {len(orbits)} orbits under <{','.join(g.value for g in gens)}>")
    return OrbitPartition(orbits, tuple(g.value for g in gens))


# -- weak separability


def weakly_separated(I: Iterable[int], J: Iterable[int], n: int) -> bool:
    """No cyclically ordered a < b < c < d with a, c in I minus J and b, d in J minus I."""
    I, J = IndexSet(I), IndexSet(J)
    if len(I) != len(J):
        raise ContextError(f"{I} and {J} have different sizes")
    if (I and I[-1] > n) or (J and J[-1] > n):
        raise ContextError(f"{I}, {J} not contained in 1..{n}")
    only_i, only_j = set(I) - set(J), set(J) - set(I)
    labels = [x in only_i for x in sorted(only_i | only_j)]
    changes = sum(1 for k in range(len(labels)) if labels[k] != labels[k - 1])
    return changes <= 2


def single_minor_patterns(ctx: GrassmannContext) -> list[VanishingPattern]:
    return [VanishingPattern.of([I]) for I in ctx.subsets()]


def separability_invariance_check(ctx: GrassmannContext) -> bool:
    """Weak separability is preserved by c and w0."""
    for I, J in combinations(ctx.subsets(), 2):
        ws = weakly_separated(I, J, ctx.n)
        for g in Generator:
            if weakly_separated(act_on_set(ctx, g, I), act_on_set(ctx, g, J), ctx.n) != ws:
                return False
    return True
