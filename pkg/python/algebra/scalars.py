"""
Exact Laurent scalars and fraction-free linear algebra.

Every coefficient lives in Z[u, u^-1]. A Grassmannian context (m, n) fixes
q := u^m and p := u^2, so p^m == q^2 holds identically.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import sympy

# Configure logging
logger = logging.getLogger("qgr.scalars")

_U = sympy.Symbol("u")


class QgrError(Exception):
    """Base class for every error raised by the toolkit."""


class ContextError(QgrError, ValueError):
    """Index out of bounds, wrong cardinality or mismatched contexts."""


class RelationError(QgrError):
    """An identity that must hold exactly does not."""


class InexactDivisionError(QgrError, ArithmeticError):
    """Exact division was requested but the quotient is not a Laurent polynomial."""


class LaurentScalar:
    """Immutable Laurent polynomial in u with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {int(e): int(c) for e, c in (terms or {}).items() if c}
        self._terms: dict[int, int] = dict(sorted(clean.items()))
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentScalar":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value: "LaurentScalar | int") -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"Cannot use {type(value).__name__} as a Laurent scalar")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return tuple(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return next(iter(self._terms))

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return next(reversed(self._terms))

    def unit_exponent(self) -> int | None:
        """Exponent e when the value is exactly u^e, else None."""
        if len(self._terms) == 1:
            ((e, c),) = self._terms.items()
            if c == 1:
                return e
        return None

    def integer_content(self) -> int:
        return math.gcd(*self._terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentScalar | int") -> "LaurentScalar":
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentScalar | int") -> "LaurentScalar":
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "LaurentScalar | int") -> "LaurentScalar":
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other: "LaurentScalar | int") -> "LaurentScalar":
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by u^k."""
        return LaurentScalar({e + k: c for e, c in self._terms.items()})

    def inverse(self) -> "LaurentScalar":
        """Inverse of a unit (±u^e); anything else is not invertible."""
        if len(self._terms) == 1:
            ((e, c),) = self._terms.items()
            if c in (1, -1):
                return LaurentScalar({-e: c})
        raise InexactDivisionError(f"{self} is not a unit of Z[u, u^-1]")

    def divexact(self, divisor: "LaurentScalar | int") -> "LaurentScalar":
        """Exact quotient self / divisor, by long division on the top degree."""
        divisor = LaurentScalar.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero Laurent scalar")
        if self.is_zero():
            return ZERO
        if divisor.is_monomial():
            ((de, dc),) = divisor._terms.items()
            out = {}
            for e, c in self._terms.items():
                if c % dc:
                    raise InexactDivisionError(f"({self}) / ({divisor}) is not exact")
                out[e - de] = c // dc
            return LaurentScalar(out)

        lo_d, hi_d = divisor.min_exponent(), divisor.max_exponent()
        lead = divisor._terms[hi_d]
        rem = dict(self._terms)
        quotient: dict[int, int] = {}
        while rem:
            hi_r = max(rem)
            lo_r = min(rem)
            if hi_r - hi_d < lo_r - lo_d:
                raise InexactDivisionError(f"({self}) / ({divisor}) is not exact")
            c = rem[hi_r]
            if c % lead:
                raise InexactDivisionError(f"({self}) / ({divisor}) is not exact")
            k, f = hi_r - hi_d, c // lead
            quotient[k] = f
            for e, dc in divisor._terms.items():
                v = rem.get(e + k, 0) - f * dc
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        return LaurentScalar(quotient)

    def evaluate(self, value: int | Fraction) -> Fraction:
        """Exact value at u = value (value must be nonzero if negative exponents occur)."""
        v = Fraction(value)
        return sum((c * v**e for e, c in self._terms.items()), Fraction(0))

    # -- comparison and hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentScalar.coerce(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for idx, (e, c) in enumerate(self._terms.items()):
            mag = abs(c) if idx else c
            body = str(mag) if e == 0 else f"{mag}*u^{e}"
            if idx:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Parse the text form, e.g. "-1*u^-2 + 3 + 2*u^4"."""
        compact = text.replace(" ", "")
        if not compact:
            raise ValueError("empty Laurent scalar")
        pos = 0
        out: dict[int, int] = {}
        while pos < len(compact):
            match = _TERM_RE.match(compact, pos)
            if not match or match.end() == pos:
                raise ValueError(f"Cannot parse Laurent scalar {text!r} at offset {pos}")
            sign, digits, has_u, exp = match.groups()
            if digits is None and not has_u:
                raise ValueError(f"Cannot parse Laurent scalar {text!r} at offset {pos}")
            coeff = int(digits) if digits is not None else 1
            if sign == "-":
                coeff = -coeff
            e = (int(exp) if exp is not None else 1) if has_u else 0
            out[e] = out.get(e, 0) + coeff
            pos = match.end()
        return cls(out)

    # -- sympy bridge -------------------------------------------------------

    def to_poly(self, shift: int = 0) -> sympy.Poly:
        """u^shift * self as a sympy polynomial (exponents must end up nonnegative)."""
        return sympy.Poly.from_dict({(e + shift,): c for e, c in self._terms.items()}, _U)

    @classmethod
    def from_poly(cls, poly: sympy.Poly, shift: int = 0) -> "LaurentScalar":
        return cls({e + shift: int(c) for (e,), c in poly.terms()})


_TERM_RE = re.compile(r"([+-])?(\d+)?(?:\*?(u)(?:\^(-?\d+))?)?")


ZERO = LaurentScalar()
ONE = LaurentScalar({0: 1})


@dataclass(frozen=True)
class ScalarContext:
    """Scalar context of the Grassmannian of m-planes in n-space.

    m == n is accepted for the degenerate single-minor case.
    """

    m: int
    n: int

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise ContextError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def q(self) -> LaurentScalar:
        return LaurentScalar.monomial(self.m)

    @property
    def p(self) -> LaurentScalar:
        return LaurentScalar.monomial(2)

    def q_pow(self, k: int) -> LaurentScalar:
        return LaurentScalar.monomial(self.m * k)

    def p_pow(self, k: int) -> LaurentScalar:
        return LaurentScalar.monomial(2 * k)

    def q_minus_q_inverse(self) -> LaurentScalar:
        return LaurentScalar({self.m: 1, -self.m: -1})

    def constraint_holds(self) -> bool:
        return self.p ** self.m - self.q ** 2 == ZERO


def scalar_arith(a: LaurentScalar, b: LaurentScalar | None, kind: str) -> LaurentScalar:
    """Dispatch one of add | mul | neg."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    raise ValueError(f"Unknown scalar operation: {kind}")


def monomial_ratio(a: LaurentScalar, b: LaurentScalar, ctx: ScalarContext) -> int | None:
    """r with b == q^r * a, or None when b/a is not a power of q."""
    if a.is_zero():
        raise ZeroDivisionError("monomial_ratio needs a nonzero reference scalar")
    if b.is_zero() or len(a.terms) != len(b.terms):
        return None
    try:
        ratio = b.divexact(a)
    except InexactDivisionError:
        return None
    e = ratio.unit_exponent()
    if e is None or e % ctx.m:
        return None
    return e // ctx.m


# -- fraction-free linear algebra ---------------------------------------------

Matrix = Sequence[Sequence[LaurentScalar]]


@dataclass(frozen=True)
class KernelBasis:
    """Normalized basis of the right kernel of a Laurent matrix."""

    ncols: int
    vectors: tuple[tuple[LaurentScalar, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def annihilates(self, mat: Matrix) -> bool:
        for vec in self.vectors:
            for row in mat:
                acc = ZERO
                for a, v in zip(row, vec):
                    if a and v:
                        acc = acc + a * v
                if acc:
                    return False
        return True


def _clear_negative_exponents(row: Sequence[LaurentScalar]) -> list[LaurentScalar]:
    lows = [x.min_exponent() for x in row if x]
    low = min(lows) if lows else 0
    return [x.shift(-low) if low < 0 else x for x in row]


def ff_eliminate(
    mat: Matrix, ncols: int | None = None
) -> tuple[list[list[LaurentScalar]], list[int], LaurentScalar]:
    """Fraction-free Gauss-Jordan elimination.

    Returns the reduced rows, the pivot columns and the common pivot value d:
    row i has d in its pivot column and zeros in every other pivot column.
    """
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    work = [_clear_negative_exponents(list(r)) for r in mat if any(r)]
    for r in work:
        if len(r) != ncols:
            raise ContextError("matrix is not rectangular")
    pivots: list[int] = []
    prev = ONE
    rank = 0
    for c in range(ncols):
        if rank == len(work):
            break
        found = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if found is None:
            continue
        work[rank], work[found] = work[found], work[rank]
        piv_row = work[rank]
        piv = piv_row[c]
        for i in range(len(work)):
            if i == rank:
                continue
            row = work[i]
            f = row[c]
            work[i] = [(piv * a - f * b).divexact(prev) if (a or (f and b)) else ZERO
                       for a, b in zip(row, piv_row)]
        prev = piv
        pivots.append(c)
        rank += 1
    return work[:rank], pivots, prev


def ff_rank(mat: Matrix, ncols: int | None = None) -> int:
    return len(ff_eliminate(mat, ncols)[1])


def normalize_vector(vec: Sequence[LaurentScalar]) -> tuple[LaurentScalar, ...]:
    """Primitive part, lowest exponent 0, leading coefficient of first entry positive."""
    nonzero = [x for x in vec if x]
    if not nonzero:
        return tuple(vec)
    low = min(x.min_exponent() for x in nonzero)
    polys = [x.to_poly(-low) for x in nonzero]
    g = reduce(sympy.gcd, polys)
    out: list[LaurentScalar] = []
    for x in vec:
        if x:
            out.append(LaurentScalar.from_poly(x.to_poly(-low).exquo(g)))
        else:
            out.append(ZERO)
    content = math.gcd(*(x.integer_content() for x in out if x))
    if content > 1:
        out = [x.divexact(content) if x else x for x in out]
    low = min(x.min_exponent() for x in out if x)
    out = [x.shift(-low) if x else x for x in out]
    first = next(x for x in out if x)
    if first.coefficient(first.max_exponent()) < 0:
        out = [-x for x in out]
    return tuple(out)


def ff_kernel(mat: Matrix, ncols: int | None = None) -> KernelBasis:
    """Normalized basis of the right kernel over the fraction field."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    rows, pivots, d = ff_eliminate(mat, ncols)
    pivot_set = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[f] = d
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][f]
        vectors.append(normalize_vector(vec))
    logger.debug(f"[KERNEL] {len(mat)}x{ncols} matrix: rank {len(pivots)}, kernel {len(vectors)}")
    return KernelBasis(ncols=ncols, vectors=tuple(vectors))


def same_span(a: KernelBasis, b: KernelBasis) -> bool:
    """True when both bases span the same subspace (cross-membership by rank)."""
    if a.ncols != b.ncols or a.dimension != b.dimension:
        return False
    if a.dimension == 0:
        return True
    stacked = list(a.vectors) + list(b.vectors)
    return ff_rank(stacked, a.ncols) == a.dimension == ff_rank(list(a.vectors), a.ncols)


def specialized_rank(mat: Matrix, value: int) -> int:
    """Rank over Q after substituting u = value; an independent rank oracle."""
    if not mat:
        return 0
    entries = []
    for row in mat:
        values = [x.evaluate(value) for x in row]
        entries.append([sympy.Rational(v.numerator, v.denominator) for v in values])
    return sympy.Matrix(entries).rank()


def transpose(mat: Matrix, ncols: int) -> list[list[LaurentScalar]]:
    return [[row[j] for row in mat] for j in range(ncols)]


def dot(row: Iterable[LaurentScalar], vec: Iterable[LaurentScalar]) -> LaurentScalar:
    acc = ZERO
    for a, b in zip(row, vec):
        if a and b:
            acc = acc + a * b
    return acc
