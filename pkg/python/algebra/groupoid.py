"""
Quantum rotations Theta_l and reflections Omega_l on generators.

Theta_l goes from twist level l-1 to level l and sends [I] to
lambda_I [I+1]; Omega_l goes from level -l to level l, reverses products and
sends [I] to Lambda_I(l) Lambda_{w0(I+l)}(l) [w0(I)]. Maps are checked by
transporting the degree-2 relation basis.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from algebra.grassmann import (
    GrassmannContext,
    IndexSet,
    QuadRelation,
    content,
    product,
    shift_set,
    w0_set,
)
from algebra.qmatrix import NCPoly
from algebra.scalars import ONE, LaurentScalar, RelationError, monomial_ratio
from algebra.twist import tower_scalar

# Configure logging
logger = logging.getLogger("qgr.groupoid")


class MapKind(str, Enum):
    THETA = "theta"
    OMEGA = "omega"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class GeneratorImage:
    scalar: LaurentScalar
    target_set: IndexSet
    target_level: int

    def q_exponent(self, ctx: GrassmannContext) -> int:
        r = monomial_ratio(ONE, self.scalar, ctx.scalars)
        if r is None:
            raise RelationError(f"image scalar {self.scalar} is not a power of q")
        return r

    def to_json(self, ctx: GrassmannContext) -> dict:
        return {
            "scalar": str(self.scalar),
            "q_exponent": self.q_exponent(ctx),
            "set": list(self.target_set),
            "level": self.target_level,
        }


@dataclass(frozen=True)
class MapSpec:
    """A rotation, reflection or run of consecutive rotations, given on generators."""

    name: str
    kind: MapKind
    index: int
    source_level: int
    target_level: int
    anti: bool
    count: int = 1
    drop_lambda: bool = False
    untwisted: bool = False

    def __post_init__(self):
        if self.anti != (self.kind is MapKind.OMEGA):
            raise ValueError(f"{self.name}: only reflections reverse products")

    def image(self, ctx: GrassmannContext, I: Iterable[int]) -> GeneratorImage:
        I = ctx.check_set(I)
        if self.kind is MapKind.OMEGA:
            img = omega_image(ctx, self.index, I)
        elif self.kind is MapKind.THETA:
            img = theta_image(ctx, self.index, I)
        else:
            img = compose_theta(ctx, self.index, self.count, I)
        if self.drop_lambda:
            img = replace(img, scalar=ONE)
        return img

    def corrupted(self) -> "MapSpec":
        """Negative control: the bare set map, without scalars and into the untwisted algebra.

        Dropping only the scalars is not a control: lambda_I depends on the
        content alone, so on homogeneous relations it is a torus rescaling.
        """
        return replace(self, name=f"{self.name}_corrupted", drop_lambda=True, untwisted=True)


def theta_map(level: int) -> MapSpec:
    return MapSpec(f"Theta_{level}", MapKind.THETA, level, level - 1, level, anti=False)


def omega_map(level: int) -> MapSpec:
    if level < 0:
        raise ValueError(f"reflections are indexed by l >= 0, got {level}")
    return MapSpec(f"Omega_{level}", MapKind.OMEGA, level, -level, level, anti=True)


def theta_run(start: int, count: int) -> MapSpec:
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    return MapSpec(
        f"Theta_{start}..{start + count - 1}",
        MapKind.COMPOSITE,
        start,
        start - 1,
        start + count - 1,
        anti=False,
        count=count,
    )


_MAP_RE = re.compile(r"^(theta|omega)_?(-?\d+)$", re.IGNORECASE)


def parse_map(text: str) -> MapSpec:
    """"theta1", "Theta_-2", "omega0"."""
    match = _MAP_RE.match(text.strip())
    if not match:
        raise ValueError(f"Unknown map {text!r}; expected theta<l> or omega<l>")
    kind, level = match.group(1).lower(), int(match.group(2))
    return theta_map(level) if kind == "theta" else omega_map(level)


def lambda_I(ctx: GrassmannContext, I: Iterable[int]) -> LaurentScalar:
    I = ctx.check_set(I)
    return ctx.scalars.q_pow(-2) if I[-1] == ctx.n else ONE


def Lambda(ctx: GrassmannContext, I: Iterable[int], r: int) -> LaurentScalar:
    """Product of lambda over I, I+1, ..., I+r-1."""
    if r < 0:
        raise ValueError(f"Lambda needs r >= 0, got {r}")
    I = ctx.check_set(I)
    acc = ONE
    for s in range(r):
        acc = acc * lambda_I(ctx, shift_set(I, s, ctx.n))
    return acc


def theta_image(ctx: GrassmannContext, level: int, I: Iterable[int]) -> GeneratorImage:
    I = ctx.check_set(I)
    return GeneratorImage(lambda_I(ctx, I), shift_set(I, 1, ctx.n), level)


def compose_theta(ctx: GrassmannContext, start: int, count: int, I: Iterable[int]) -> GeneratorImage:
    """Theta_{start+count-1} o ... o Theta_start on the level start-1 generator [I]."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    I = ctx.check_set(I)
    return GeneratorImage(Lambda(ctx, I, count), shift_set(I, count, ctx.n), start + count - 1)


def omega_image(ctx: GrassmannContext, level: int, I: Iterable[int]) -> GeneratorImage:
    if level < 0:
        raise ValueError(f"reflections are indexed by l >= 0, got {level}")
    I = ctx.check_set(I)
    partner = w0_set(shift_set(I, level, ctx.n), ctx.n)
    scalar = Lambda(ctx, I, level) * Lambda(ctx, partner, level)
    return GeneratorImage(scalar, w0_set(I, ctx.n), level)


def window_scalar(ctx: GrassmannContext, start: int, I: Iterable[int]) -> GeneratorImage:
    """n consecutive rotations starting at Theta_start."""
    return compose_theta(ctx, start, ctx.n, I)


def classical_limit(image: GeneratorImage) -> tuple[IndexSet, Fraction]:
    return image.target_set, image.scalar.evaluate(1)


def dihedral_scalar_check(ctx: GrassmannContext, level: int, I: Iterable[int]) -> bool:
    """Rotate up from level -l to 0, reflect, rotate up to level l; compare with Omega_l."""
    I = ctx.check_set(I)
    lower = compose_theta(ctx, -level + 1, level, I)
    reflected = w0_set(lower.target_set, ctx.n)
    upper = compose_theta(ctx, 1, level, reflected)
    expected = omega_image(ctx, level, I)
    return (
        lower.scalar * upper.scalar == expected.scalar
        and upper.target_set == expected.target_set
        and upper.target_level == expected.target_level
    )


def set_action_check(ctx: GrassmannContext) -> bool:
    """w0 c w0 == c^-1 and w0^2 == id on every m-subset."""
    n = ctx.n
    for I in ctx.subsets():
        if w0_set(w0_set(I, n), n) != I:
            return False
        if w0_set(shift_set(w0_set(I, n), 1, n), n) != shift_set(I, -1, n):
            return False
    return True


@dataclass
class TransportReport:
    map_name: str
    residuals: list[NCPoly] = field(default_factory=list)
    relations: list[QuadRelation] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.residuals)

    @property
    def nonzero(self) -> int:
        return sum(1 for r in self.residuals if r)

    @property
    def passed(self) -> bool:
        return self.nonzero == 0

    def first_failure(self) -> tuple[QuadRelation, NCPoly] | None:
        for rel, res in zip(self.relations, self.residuals):
            if res:
                return rel, res
        return None


def transport_residual(ctx: GrassmannContext, spec: MapSpec, rel: QuadRelation) -> NCPoly:
    """Image of the relation at the target level, pulled back to base normal forms."""
    n = ctx.n
    acc = NCPoly(ctx.matrix)
    for coeff, I, J in rel.terms:
        source = tower_scalar(ctx.scalars, spec.source_level, content(I, n), content(J, n))
        gi, gj = spec.image(ctx, I), spec.image(ctx, J)
        first, second = (gj, gi) if spec.anti else (gi, gj)
        target = tower_scalar(
            ctx.scalars,
            0 if spec.untwisted else spec.target_level,
            content(first.target_set, n),
            content(second.target_set, n),
        )
        scalar = coeff * source.inverse() * gi.scalar * gj.scalar * target
        acc = acc + product(ctx, first.target_set, second.target_set).scale(scalar)
    return acc


def verify_transport(ctx: GrassmannContext, spec: MapSpec, rels: Sequence[QuadRelation]) -> TransportReport:
    report = TransportReport(spec.name)
    for rel in rels:
        report.relations.append(rel)
        report.residuals.append(transport_residual(ctx, spec, rel))
    log = logger.info if report.passed else logger.warning
    log(f"[CHECK] {spec.name} on {ctx}: {report.nonzero}/{report.total} nonzero residuals")
    return report
