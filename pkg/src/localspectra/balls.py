"""Balls, spheres and compact open sets (finite unions of equal balls)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidSetError, ModelMismatchError, PrecisionError
from .field import INF, FieldModel, LocalFieldElement, Vector, as_element, as_vector


def _component_exponent(x: LocalFieldElement, n: int):
    """``log_p |x|``, or raise when x is known only modulo a ball larger than radius p^n."""
    if x.is_zero():
        if x.precision < -n:
            raise PrecisionError(f"cannot resolve |x| against radius p^{n}: precision {x.precision}")
        return -INF
    return -x.valuation


def within(diff: Vector, n: int) -> bool:
    """``|diff| <= p^n``."""
    return all(_component_exponent(c, n) <= n for c in diff)


def sphere_contains(c, n: int, x, model: FieldModel | None = None) -> bool:
    """``|x - c| == p^n`` exactly."""
    model = model or _model_of(c, x)
    diff = as_vector(model, x) - as_vector(model, c)
    exps = [_component_exponent(comp, n - 1) for comp in diff]
    return max(exps) == n


def _model_of(*objs) -> FieldModel:
    for o in objs:
        if isinstance(o, (Vector, LocalFieldElement)):
            return o.model
    raise ValueError("model required for plain numbers")


def coset_representatives(model: FieldModel, outer: int, inner: int, dimension: int = 1) -> list[Vector]:
    """Canonical representatives of ``B(0, p^outer) / B(0, p^inner)``.

    In one dimension these are ``P^{-outer} * r(k)`` for ``k = 0 .. p^(outer-inner) - 1``
    where ``r(k)`` is the integer k (Q_p) or the polynomial with the base-p
    digits of k (F_p((T))).  Higher dimensions use the lexicographic product.
    """
    if inner > outer:
        raise ValueError("inner radius exceeds outer radius")
    count = model.p ** (outer - inner)
    line = [model.from_integer_digits(k, -outer, outer - inner) for k in range(count)]
    if dimension == 1:
        return [Vector((x,)) for x in line]
    return [Vector(combo) for combo in itertools.product(line, repeat=dimension)]


@dataclass(frozen=True, eq=False)
class Ball:
    """The closed ball ``{y : |y - center| <= p^radius_exp}``."""

    center: Vector
    radius_exp: int

    @classmethod
    def of(cls, model: FieldModel, center, radius_exp: int) -> "Ball":
        return cls(as_vector(model, center), radius_exp)

    @property
    def model(self) -> FieldModel:
        return self.center.model

    @property
    def dimension(self) -> int:
        return self.center.dimension

    def key(self) -> tuple:
        """Hashable identity: radius plus the center reduced modulo the ball."""
        parts = []
        for c in self.center:
            r = c.with_precision(-self.radius_exp) if c.precision >= -self.radius_exp else None
            if r is None:
                raise PrecisionError("center known too coarsely for its ball")
            parts.append((r.valuation, r.digits))
        return (self.model, self.radius_exp, tuple(parts))

    def __eq__(self, other) -> bool:
        return isinstance(other, Ball) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def contains(self, x) -> bool:
        return within(as_vector(self.model, x) - self.center, self.radius_exp)

    def measure(self) -> Fraction:
        return Fraction(self.model.p) ** (self.dimension * self.radius_exp)

    def intersect(self, other: "Ball") -> "Ball | None":
        small, big = (self, other) if self.radius_exp <= other.radius_exp else (other, self)
        return small if big.contains(small.center) else None

    def translate(self, t) -> "Ball":
        return Ball(self.center + as_vector(self.model, t), self.radius_exp)

    def scale(self, a) -> "Ball":
        a = as_element(self.model, a)
        if a.is_zero():
            raise ValueError("scaling by zero")
        return Ball(self.center.scale(a), self.radius_exp - int(a.valuation))

    def refine(self, radius_exp: int) -> list["Ball"]:
        """Split into the ``p^{d(n - m)}`` sub-balls of radius ``p^m``."""
        if radius_exp > self.radius_exp:
            raise ValueError("refinement radius must not exceed the ball radius")
        reps = coset_representatives(self.model, self.radius_exp, radius_exp, self.dimension)
        return [Ball(self.center + r, radius_exp) for r in reps]

    def __repr__(self) -> str:
        return f"Ball({self.center!r}, {self.model.p}^{self.radius_exp})"


@dataclass(frozen=True, eq=False)
class CompactOpenSet:
    """A finite disjoint union of balls of common radius ``p^scale``."""

    scale: int
    balls: tuple[Ball, ...]

    def __post_init__(self):
        if self.balls:
            m = self.balls[0].model
            d = self.balls[0].dimension
            for b in self.balls:
                if b.model != m or b.dimension != d:
                    raise ModelMismatchError("balls from different spaces")
                if b.radius_exp != self.scale:
                    raise InvalidSetError(f"ball {b} is not of radius p^{self.scale}")
            keys = [b.key() for b in self.balls]
            if len(set(keys)) != len(keys):
                raise InvalidSetError("balls are not pairwise disjoint")

    @classmethod
    def from_centers(cls, model: FieldModel, scale: int, centers: Iterable) -> "CompactOpenSet":
        return cls(scale, tuple(Ball(as_vector(model, c), scale) for c in centers))

    @classmethod
    def ball(cls, model: FieldModel, center, radius_exp: int) -> "CompactOpenSet":
        return cls.from_centers(model, radius_exp, [center])

    @property
    def model(self) -> FieldModel:
        if not self.balls:
            raise ValueError("empty set has no model")
        return self.balls[0].model

    @property
    def dimension(self) -> int:
        return self.balls[0].dimension if self.balls else 1

    @property
    def centers(self) -> list[Vector]:
        return [b.center for b in self.balls]

    def __len__(self) -> int:
        return len(self.balls)

    def measure(self) -> Fraction:
        if not self.balls:
            return Fraction(0)
        return len(self.balls) * self.balls[0].measure()

    def contains(self, x) -> bool:
        return any(b.contains(x) for b in self.balls)

    def refine(self, radius_exp: int) -> "CompactOpenSet":
        return CompactOpenSet(radius_exp, tuple(s for b in self.balls for s in b.refine(radius_exp)))

    def translate(self, t) -> "CompactOpenSet":
        return CompactOpenSet(self.scale, tuple(b.translate(t) for b in self.balls))

    def scale_by(self, a) -> "CompactOpenSet":
        scaled = tuple(b.scale(a) for b in self.balls)
        scale = scaled[0].radius_exp if scaled else self.scale
        return CompactOpenSet(scale, scaled)

    def key(self) -> frozenset:
        return frozenset(b.key() for b in self.balls)

    def same_set(self, other: "CompactOpenSet") -> bool:
        """Set equality, refining both to the finer scale first."""
        m = min(self.scale, other.scale)
        return self.refine(m).key() == other.refine(m).key()

    def issubset(self, other: "CompactOpenSet") -> bool:
        m = min(self.scale, other.scale)
        return self.refine(m).key() <= other.refine(m).key()

    def union(self, other: "CompactOpenSet") -> "CompactOpenSet":
        m = min(self.scale, other.scale)
        a, b = self.refine(m), other.refine(m)
        if a.key() & b.key():
            raise InvalidSetError("union of overlapping sets")
        return CompactOpenSet(m, a.balls + b.balls)

    def split(self, indices: Sequence[int]) -> tuple["CompactOpenSet", "CompactOpenSet"]:
        """Partition the ball list into (chosen balls, remaining balls)."""
        chosen = set(indices)
        first = tuple(b for i, b in enumerate(self.balls) if i in chosen)
        rest = tuple(b for i, b in enumerate(self.balls) if i not in chosen)
        return CompactOpenSet(self.scale, first), CompactOpenSet(self.scale, rest)

    def __repr__(self) -> str:
        return "CompactOpenSet(" + " ⊔ ".join(repr(b) for b in self.balls) + ")"
