"""
Cocycle twists of column-content graded algebras.

Two bicharacters on Z^n are used:

    Gamma(s, t) = p^(s_n * sum_{j != n} t_j)
    gamma(s, t) = p^(-s_1 * sum_{j != 1} t_j)

Level l > 0 is the gamma tower tau^l, level l < 0 the Gamma tower T^|l| and
level 0 the untwisted algebra. A level-l element is stored through its base
preimage; the product at level l picks up one cocycle factor per tower stage,
each evaluated at the grading of the algebra that stage twists.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from algebra.grassmann import ContentVector, GrassmannContext, content, minor, shift_set
from algebra.qmatrix import NCPoly, nc_mul
from algebra.scalars import ONE, ContextError, LaurentScalar, ScalarContext

# Configure logging
logger = logging.getLogger("qgr.twist")


class CocycleKind(str, Enum):
    BIG_GAMMA = "Gamma"
    SMALL_GAMMA = "gamma"


def _check_lengths(*vectors: Sequence[int]) -> int:
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise ContextError(f"content vectors have different lengths: {sorted(lengths)}")
    return lengths.pop()


def cocycle_exponent(kind: CocycleKind, s: Sequence[int], t: Sequence[int]) -> int:
    """Exponent of p in the cocycle value."""
    _check_lengths(s, t)
    if kind is CocycleKind.BIG_GAMMA:
        return s[-1] * sum(t[:-1])
    return -s[0] * sum(t[1:])


def eval_cocycle(ctx: ScalarContext, kind: CocycleKind, s: Sequence[int], t: Sequence[int]) -> LaurentScalar:
    return ctx.p_pow(cocycle_exponent(kind, s, t))


def cocycle_condition_check(kind: CocycleKind, s: Sequence[int], t: Sequence[int], v: Sequence[int]) -> bool:
    """chi(s, t+v) chi(t, v) == chi(s, t) chi(s+t, v)."""
    _check_lengths(s, t, v)
    t_plus_v = [a + b for a, b in zip(t, v)]
    s_plus_t = [a + b for a, b in zip(s, t)]
    lhs = cocycle_exponent(kind, s, t_plus_v) + cocycle_exponent(kind, t, v)
    rhs = cocycle_exponent(kind, s, t) + cocycle_exponent(kind, s_plus_t, v)
    return lhs == rhs


def rotate_content(s: Sequence[int], k: int) -> ContentVector:
    """content(I + k) from content(I)."""
    n = len(s)
    out = [0] * n
    for idx, value in enumerate(s):
        out[(idx + k) % n] = value
    return tuple(out)


def level_name(level: int) -> str:
    if level > 0:
        return f"tau^{level}"
    if level < 0:
        return f"T^{-level}"
    return "base"


def level_content(level: int, I: Iterable[int], n: int) -> ContentVector:
    """Grading of the level-l copy of [I]: content(I - l) on tau levels, content(I + |l|) on T levels."""
    return content(shift_set(I, -level, n), n)


def tower_exponent(level: int, s: Sequence[int], t: Sequence[int]) -> int:
    """p-exponent of the level-l structure constant for base contents s, t."""
    _check_lengths(s, t)
    if level > 0:
        return sum(
            cocycle_exponent(CocycleKind.SMALL_GAMMA, rotate_content(s, -k), rotate_content(t, -k))
            for k in range(level)
        )
    return sum(
        cocycle_exponent(CocycleKind.BIG_GAMMA, rotate_content(s, k), rotate_content(t, k))
        for k in range(-level)
    )


def tower_scalar(ctx: ScalarContext, level: int, s: Sequence[int], t: Sequence[int]) -> LaurentScalar:
    return ctx.p_pow(tower_exponent(level, s, t))


@dataclass(frozen=True)
class TwistedElement:
    """Element of a twist level, held as homogeneous base preimages."""

    level: int
    parts: tuple[tuple[ContentVector, NCPoly], ...]

    @classmethod
    def from_ncpoly(cls, level: int, value: NCPoly) -> "TwistedElement":
        return cls(level, tuple(value.homogeneous_parts().items()))

    @classmethod
    def generator(cls, ctx: GrassmannContext, level: int, I: Iterable[int]) -> "TwistedElement":
        I = ctx.check_set(I)
        return cls(level, ((content(I, ctx.n), minor(ctx, I)),))

    def base_value(self) -> NCPoly:
        if not self.parts:
            raise ValueError("empty twisted element has no context")
        acc = self.parts[0][1]
        for _, v in self.parts[1:]:
            acc = acc + v
        return acc

    def is_zero(self) -> bool:
        return all(v.is_zero() for _, v in self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedElement):
            return NotImplemented
        mine = {c: v for c, v in self.parts if v}
        theirs = {c: v for c, v in other.parts if v}
        return self.level == other.level and mine == theirs

    def __hash__(self) -> int:
        return hash((self.level, tuple(sorted(c for c, v in self.parts if v))))


def twisted_product(level: int, a: TwistedElement, b: TwistedElement) -> TwistedElement:
    """Multiplication in the level-l twist."""
    if a.level != level or b.level != level:
        raise ContextError(f"twist level mismatch: {a.level}, {b.level} at level {level}")
    parts: dict[ContentVector, NCPoly] = {}
    for s, x in a.parts:
        for t, y in b.parts:
            scalar = tower_scalar(x.ctx.scalars, level, s, t)
            key = tuple(i + j for i, j in zip(s, t))
            value = nc_mul(x, y).scale(scalar)
            parts[key] = parts[key] + value if key in parts else value
    return TwistedElement(level, tuple(sorted(parts.items())))


def gamma_Gamma_identity(ctx: GrassmannContext, I: Iterable[int], J: Iterable[int]) -> bool:
    """gamma(c(I+1), c(J+1)) * Gamma(c(I), c(J)) == 1."""
    return double_twist_constant(ctx, I, J) == ONE


def double_twist_constant(ctx: GrassmannContext, I: Iterable[int], J: Iterable[int]) -> LaurentScalar:
    """Structure constant of tau applied on top of T, relative to the base product."""
    I, J = ctx.check_set(I), ctx.check_set(J)
    n = ctx.n
    lower = eval_cocycle(ctx.scalars, CocycleKind.BIG_GAMMA, content(I, n), content(J, n))
    upper = eval_cocycle(
        ctx.scalars,
        CocycleKind.SMALL_GAMMA,
        content(shift_set(I, 1, n), n),
        content(shift_set(J, 1, n), n),
    )
    return lower * upper
