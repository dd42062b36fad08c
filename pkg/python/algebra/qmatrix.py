"""
Quantum matrix algebra as a confluent rewriting system.

Generators X[i,j] are ordered row-major; a word is in normal form when it is
nondecreasing in that order. Four rules sort a descending adjacent pair
(i < k, j < l):

    X[i,l] X[i,j] -> q^-1 X[i,j] X[i,l]
    X[k,j] X[i,j] -> q^-1 X[i,j] X[k,j]
    X[k,j] X[i,l] -> X[i,l] X[k,j]
    X[k,l] X[i,j] -> X[i,j] X[k,l] - (q - q^-1) X[i,l] X[k,j]
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from algebra.scalars import (
    ONE,
    ZERO,
    ContextError,
    LaurentScalar,
    ScalarContext,
    monomial_ratio,
)

# Configure logging
logger = logging.getLogger("qgr.qmatrix")


class GeneratorIndex(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"X[{self.row},{self.col}]"


Word = tuple[GeneratorIndex, ...]
RewriteRule = tuple[tuple[LaurentScalar, Word], ...]


@dataclass(frozen=True)
class MatrixContext:
    """Shape of the generic quantum matrix plus its scalar context."""

    rows: int
    cols: int
    scalars: ScalarContext

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ContextError(f"matrix shape must be positive, got {self.rows}x{self.cols}")

    @property
    def q(self) -> LaurentScalar:
        return self.scalars.q

    def generator(self, row: int, col: int) -> GeneratorIndex:
        if not (1 <= row <= self.rows and 1 <= col <= self.cols):
            raise ContextError(f"X[{row},{col}] outside {self.rows}x{self.cols}")
        return GeneratorIndex(row, col)

    def generators(self) -> list[GeneratorIndex]:
        return [GeneratorIndex(i, j) for i in range(1, self.rows + 1) for j in range(1, self.cols + 1)]

    def check_word(self, word: Iterable[GeneratorIndex]) -> Word:
        return tuple(self.generator(g.row, g.col) for g in word)


def is_normal(word: Word) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


@lru_cache(maxsize=None)
def rewrite_rule(ctx: MatrixContext, hi: GeneratorIndex, lo: GeneratorIndex) -> RewriteRule:
    """Right-hand side for the descending pair hi * lo (hi > lo)."""
    if not hi > lo:
        raise ValueError(f"{hi}{lo} is not a descending pair")
    q_inv = ctx.scalars.q_pow(-1)
    if hi.row == lo.row:
        return ((q_inv, (lo, hi)),)
    if hi.col == lo.col:
        return ((q_inv, (lo, hi)),)
    if hi.col < lo.col:
        return ((ONE, (lo, hi)),)
    cross = (GeneratorIndex(lo.row, hi.col), GeneratorIndex(hi.row, lo.col))
    return ((ONE, (lo, hi)), (-ctx.scalars.q_minus_q_inverse(), cross))


@lru_cache(maxsize=None)
def _reduce_word(ctx: MatrixContext, word: Word) -> tuple[tuple[Word, LaurentScalar], ...]:
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            break
    else:
        return ((word, ONE),)
    acc: dict[Word, LaurentScalar] = {}
    for coeff, pair in rewrite_rule(ctx, word[k], word[k + 1]):
        for w, c in _reduce_word(ctx, word[:k] + pair + word[k + 2:]):
            acc[w] = acc.get(w, ZERO) + coeff * c
    return tuple((w, c) for w, c in acc.items() if c)


class NCPoly:
    """Element of the quantum matrix algebra, stored in PBW normal form."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: MatrixContext, terms: Mapping[Word, LaurentScalar] | None = None):
        self.ctx = ctx
        self._terms: dict[Word, LaurentScalar] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, ctx: MatrixContext) -> "NCPoly":
        return cls(ctx, {(): ONE})

    @classmethod
    def generator(cls, ctx: MatrixContext, row: int, col: int) -> "NCPoly":
        return cls(ctx, {(ctx.generator(row, col),): ONE})

    @property
    def terms(self) -> list[tuple[Word, LaurentScalar]]:
        return sorted(self._terms.items())

    def coefficient(self, word: Word) -> LaurentScalar:
        return self._terms.get(word, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "NCPoly") -> None:
        if other.ctx != self.ctx:
            raise ContextError("quantum matrix context mismatch")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(self.ctx, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.ctx, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: LaurentScalar | int) -> "NCPoly":
        c = LaurentScalar.coerce(c)
        return NCPoly(self.ctx, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        return nc_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self._terms.items())))

    def content(self, word: Word) -> tuple[int, ...]:
        return word_content(word, self.ctx.cols)

    def homogeneous_parts(self) -> dict[tuple[int, ...], "NCPoly"]:
        """Split by column content."""
        parts: dict[tuple[int, ...], dict[Word, LaurentScalar]] = {}
        for w, c in self._terms.items():
            parts.setdefault(self.content(w), {})[w] = c
        return {k: NCPoly(self.ctx, v) for k, v in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len({self.content(w) for w in self._terms}) <= 1

    def specialize(self, value: int = 1) -> dict[Word, Fraction]:
        """Commutative image at u = value: sorted monomials to rational coefficients."""
        out: dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            key = tuple(sorted(w))
            out[key] = out.get(key, Fraction(0)) + c.evaluate(value)
        return {k: v for k, v in out.items() if v}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c}) * {format_word(w)}" for w, c in self.terms)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def word_content(word: Iterable[GeneratorIndex], cols: int) -> tuple[int, ...]:
    vec = [0] * cols
    for g in word:
        vec[g.col - 1] += 1
    return tuple(vec)


def format_word(word: Word) -> str:
    return "".join(str(g) for g in word) if word else "1"


_WORD_RE = re.compile(r"X\[(\d+),(\d+)\]")


def parse_word(ctx: MatrixContext, text: str) -> Word:
    """Parse "X[1,2]X[2,1]" ("1" is the empty word)."""
    compact = text.replace(" ", "")
    if compact in ("", "1"):
        return ()
    found = _WORD_RE.findall(compact)
    if "".join(f"X[{i},{j}]" for i, j in found) != compact:
        raise ValueError(f"Cannot parse word {text!r}")
    return tuple(ctx.generator(int(i), int(j)) for i, j in found)


_EXPR_RE = re.compile(r"^\s*(?:\((?P<paren>[^()]*)\)|(?P<bare>[-+]?\d+))\s*\*\s*(?P<word>.*)$")


def parse_expression(ctx: MatrixContext, line: str) -> tuple[LaurentScalar, Word]:
    """Parse "[coeff *] word", e.g. "(1 - 1*u^4) * X[2,2]X[1,1]" or "3 * X[1,1]"."""
    match = _EXPR_RE.match(line)
    if match is None:
        return ONE, parse_word(ctx, line)
    coeff = LaurentScalar.parse(match.group("paren") or match.group("bare"))
    return coeff, parse_word(ctx, match.group("word"))


def normal_form(ctx: MatrixContext, word: Iterable[GeneratorIndex], coeff: LaurentScalar | int = 1) -> NCPoly:
    """Unique PBW normal form of coeff * word."""
    checked = ctx.check_word(word)
    coeff = LaurentScalar.coerce(coeff)
    if not coeff:
        return NCPoly(ctx)
    return NCPoly(ctx, {w: coeff * c for w, c in _reduce_word(ctx, checked)})


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    if a.ctx != b.ctx:
        raise ContextError("quantum matrix context mismatch")
    ctx = a.ctx
    acc: dict[Word, LaurentScalar] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            c = c1 * c2
            for w, r in _reduce_word(ctx, w1 + w2):
                acc[w] = acc.get(w, ZERO) + c * r
    return NCPoly(ctx, acc)


def proportionality(a: NCPoly, b: NCPoly) -> LaurentScalar | None:
    """Scalar c with a == c * b, or None."""
    if b.is_zero():
        raise ZeroDivisionError("proportionality needs a nonzero reference")
    if a.is_zero():
        return ZERO
    if set(a._terms) != set(b._terms):
        return None
    word = min(b._terms)
    try:
        c = a._terms[word].divexact(b._terms[word])
    except ArithmeticError:
        return None
    return c if b.scale(c) == a else None


def quasi_commutation_exponent(a: NCPoly, b: NCPoly) -> int | None:
    """r with b*a == q^r * a*b, or None."""
    if a.is_zero() or b.is_zero():
        raise ValueError("quasi-commutation needs nonzero inputs")
    ab = nc_mul(a, b)
    ba = nc_mul(b, a)
    if set(ab._terms) != set(ba._terms):
        return None
    word = min(ab._terms)
    r = monomial_ratio(ab._terms[word], ba._terms[word], a.ctx.scalars)
    if r is None:
        return None
    return r if ab.scale(a.ctx.scalars.q_pow(r)) == ba else None


def permutation_length(perm: tuple[int, ...]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def quantum_minor(ctx: MatrixContext, rows: Iterable[int], cols: Iterable[int]) -> NCPoly:
    """Sum over permutations s of (-q)^l(s) X[r1,c_s(1)] ... X[rt,c_s(t)]."""
    rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
    if len(rows) != len(cols):
        raise ContextError(f"minor needs equal row and column counts, got {rows} and {cols}")
    if not rows:
        return NCPoly.one(ctx)
    minus_q = -ctx.q
    acc = NCPoly(ctx)
    for perm in itertools.permutations(range(len(cols))):
        coeff = minus_q ** permutation_length(perm)
        word = [GeneratorIndex(r, cols[s]) for r, s in zip(rows, perm)]
        acc = acc + normal_form(ctx, word, coeff)
    return acc


def clear_caches() -> None:
    _reduce_word.cache_clear()
    rewrite_rule.cache_clear()
    logger.debug("Cleared rewriting caches")
