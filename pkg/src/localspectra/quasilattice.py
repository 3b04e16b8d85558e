"""Standard quasi-lattices and finite-scale Beurling density counts."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .balls import Ball, coset_representatives
from .field import FieldModel, Vector, as_vector


def shell_numerators(p: int, m: int) -> list[int]:
    """``V_m = {1 <= k < p^m : p does not divide k}`` (``V_0`` is ``{0}``)."""
    if m == 0:
        return [0]
    return [k for k in range(1, p**m) if k % p]


@dataclass(frozen=True)
class QuasiLattice:
    """Canonical representatives of ``K^d / B(0, 1)``.

    One dimension: ``{0}`` followed by the shells ``P^{-m} r(V_m)``, m = 1, 2, ...
    where ``r(k)`` is k itself in Q_p and the polynomial with the base-p
    digits of k in F_p((T)).  Higher dimensions take the product set.
    """

    model: FieldModel
    dimension: int = 1

    def shell(self, m: int) -> list[Vector]:
        """Points of absolute value exactly ``p^m`` (one dimension)."""
        ks = shell_numerators(self.model.p, m)
        return [Vector((self.model.from_integer_digits(k, -m, m),)) for k in ks]

    def enumerate(self, radius_exp: int) -> list[Vector]:
        """``L ∩ B(0, p^n)``: exactly ``p^{dn}`` points in deterministic order."""
        if radius_exp < 0:
            raise ValueError("radius exponent must be >= 0")
        line = [pt for m in range(radius_exp + 1) for pt in self.shell(m)]
        if self.dimension == 1:
            return line
        comps = [v[0] for v in line]
        return [Vector(c) for c in itertools.product(comps, repeat=self.dimension)]

    def point_for(self, x) -> Vector:
        """The unique lattice point in ``B(x, 1)``."""
        x = as_vector(self.model, x)
        n = max(0, int(max(x.norm_exponent(), 0)))
        for pt in self.enumerate(n):
            if Ball(pt, 0).contains(x):
                return pt
        raise AssertionError("no representative found")


def separation(points: Sequence) -> Fraction:
    """Minimum pairwise distance of a finite set."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("separation needs at least two points")
    best = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            e = (pts[i] - pts[j]).norm_exponent()
            best = e if best is None or e < best else best
    p = pts[0].model.p
    return Fraction(0) if best == float("-inf") else Fraction(p) ** int(best)


def count_in_ball(points: Iterable, x, n: int, model: FieldModel | None = None) -> int:
    pts = list(points)
    if not pts:
        return 0
    model = model or pts[0].model
    ball = Ball(as_vector(model, x), n)
    return sum(1 for s in pts if ball.contains(s))


def scale_points(points: Iterable[Vector], a) -> list[Vector]:
    return [v.scale(a) for v in points]


def perturb(points: Sequence[Vector], etas: Sequence) -> list[Vector]:
    return [v + e for v, e in zip(points, etas)]


@dataclass(frozen=True)
class DensityReport:
    scale: int
    sup_count: int
    inf_count: int
    upper_density: Fraction
    lower_density: Fraction

    def __post_init__(self):
        if self.inf_count > self.sup_count:
            raise ValueError("inf_count exceeds sup_count")

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "sup_count": self.sup_count,
            "inf_count": self.inf_count,
            "upper_density": str(self.upper_density),
            "lower_density": str(self.lower_density),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DensityReport":
        return cls(
            int(data["scale"]),
            int(data["sup_count"]),
            int(data["inf_count"]),
            Fraction(data["upper_density"]),
            Fraction(data["lower_density"]),
        )


def window_centers(window: Ball, n: int) -> list[Vector]:
    """Canonical centers of the radius-``p^n`` balls inside ``window``."""
    reps = coset_representatives(window.model, window.radius_exp, n, window.dimension)
    return [window.center + r for r in reps]


def density_profile(
    points: Sequence,
    window,
    scales: Iterable[int],
    model: FieldModel | None = None,
    dimension: int | None = None,
) -> list[DensityReport]:
    """Per-scale sup/inf point counts over a window of balls.

    ``window`` is either a bounding :class:`Ball` (all sub-balls of each scale
    are used) or an explicit list of centers.
    """
    pts = list(points)
    if isinstance(window, Ball):
        model = window.model
        d = window.dimension
    else:
        centers_fixed = list(window)
        model = model or (pts[0].model if pts else centers_fixed[0].model)
        centers_fixed = [as_vector(model, c) for c in centers_fixed]
        d = dimension or (pts[0].dimension if pts else centers_fixed[0].dimension)
    p = model.p
    out = []
    for n in scales:
        centers = window_centers(window, n) if isinstance(window, Ball) else centers_fixed
        hist = Counter(Ball(s, n).key() for s in pts)
        counts = [hist.get(Ball(c, n).key(), 0) for c in centers]
        hi, lo = max(counts, default=0), min(counts, default=0)
        vol = Fraction(p) ** (d * n)
        out.append(DensityReport(n, hi, lo, hi / vol, lo / vol))
    return out
