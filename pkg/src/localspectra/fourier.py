"""Exact Fourier transforms of compact open indicators and probability measures.

Convention throughout: ``mu_hat(xi) = integral of conj(chi(xi . x)) dmu(x)``.
Values are :class:`FourierValue` objects, a rational scalar times an exact
cyclotomic sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .balls import CompactOpenSet, within
from .characters import character, chi
from .cyclotomic import CyclotomicSum
from .errors import InvalidSetError, PrecisionError
from .field import FieldModel, LocalFieldElement, Vector, as_vector, p_valuation


@dataclass(frozen=True)
class FourierValue:
    """``scalar * phase_sum``, normalized so the phase sum has denominator 1."""

    scalar: Fraction
    phase_sum: CyclotomicSum

    def __post_init__(self):
        s = Fraction(self.scalar)
        ps = self.phase_sum
        if ps.is_zero() or s == 0:
            ps, s = CyclotomicSum.rational(ps.p, 0), Fraction(0)
        elif ps.den != 1:
            s = s / ps.den
            ps = ps * ps.den
        object.__setattr__(self, "scalar", s)
        object.__setattr__(self, "phase_sum", ps)

    @classmethod
    def of(cls, value: CyclotomicSum) -> "FourierValue":
        return cls(Fraction(1), value)

    @classmethod
    def rational(cls, p: int, r) -> "FourierValue":
        return cls(Fraction(r), CyclotomicSum.rational(p, 1))

    @property
    def p(self) -> int:
        return self.phase_sum.p

    def value(self) -> CyclotomicSum:
        return self.phase_sum * self.scalar

    def is_zero(self) -> bool:
        return self.scalar == 0

    def conjugate(self) -> "FourierValue":
        return FourierValue(self.scalar, self.phase_sum.conjugate())

    def abs_squared(self) -> CyclotomicSum:
        return self.phase_sum.abs_squared() * (self.scalar * self.scalar)

    def __mul__(self, other: "FourierValue") -> "FourierValue":
        return FourierValue(self.scalar * other.scalar, self.phase_sum * other.phase_sum)

    def __eq__(self, other) -> bool:
        if isinstance(other, FourierValue):
            return self.value() == other.value()
        return self.value() == other

    def __hash__(self) -> int:
        return hash(self.value())

    def __complex__(self) -> complex:
        return complex(self.phase_sum) * float(self.scalar)

    def to_json(self) -> dict:
        c = complex(self)
        return {
            "scalar": str(self.scalar),
            "phases": [[k, m, str(coef)] for k, m, coef in self.phase_sum.terms()],
            "float_approx": [round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0],
        }

    @classmethod
    def from_json(cls, p: int, data: dict) -> "FourierValue":
        from .serialize import cyclotomic_from_json

        return cls(Fraction(data["scalar"]), cyclotomic_from_json(p, {"phases": data["phases"]}))

    def __repr__(self) -> str:
        return f"FourierValue({self.scalar} * {self.phase_sum!r})"


# -- measures -----------------------------------------------------------


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely supported probability measure ``sum w_s delta_s``."""

    points: tuple[Vector, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("need matching nonempty points and weights")
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        if sum(ws) != 1:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def uniform(cls, model: FieldModel, points: Sequence) -> "AtomicMeasure":
        pts = tuple(as_vector(model, x) for x in points)
        return cls(pts, tuple(Fraction(1, len(pts)) for _ in pts))

    @property
    def model(self) -> FieldModel:
        return self.points[0].model

    @property
    def dimension(self) -> int:
        return self.points[0].dimension


@dataclass(frozen=True)
class UniformCompactOpen:
    """Normalized Haar measure on a compact open set."""

    set: CompactOpenSet

    def __post_init__(self):
        if not self.set.balls:
            raise InvalidSetError("empty set carries no probability measure")

    @property
    def model(self) -> FieldModel:
        return self.set.model

    @property
    def dimension(self) -> int:
        return self.set.dimension


@dataclass(frozen=True)
class SelfSimilarMeasure:
    """Invariant measure of the maps ``x -> P^s x + r(c)`` with uniform weights.

    ``r(c)`` is the canonical representative of the digit ``c`` (the integer
    itself in Q_p).  The attractor lies in the unit ball.
    """

    model: FieldModel
    s: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("ratio exponent s must be >= 1")
        ds = tuple(int(c) for c in self.digits)
        if not ds:
            raise ValueError("empty digit set")
        if len(set(ds)) != len(ds) or any(not 0 <= c < self.model.p**self.s for c in ds):
            raise InvalidSetError("digits must be distinct residues modulo p^s")
        object.__setattr__(self, "digits", ds)

    @property
    def dimension(self) -> int:
        return 1

    def digit_points(self) -> list[LocalFieldElement]:
        return [self.model.from_integer_digits(c, 0, self.s) for c in self.digits]


Measure = Union[AtomicMeasure, UniformCompactOpen, SelfSimilarMeasure]


# -- transforms ---------------------------------------------------------


def ft_ball_indicator(model: FieldModel, a: int, xi) -> FourierValue:
    """Transform of the indicator of ``B(0, p^a)`` in K^d (d from ``xi``)."""
    xv = as_vector(model, xi)
    if within(xv, -a):
        return FourierValue.rational(model.p, Fraction(model.p) ** (xv.dimension * a))
    return FourierValue.rational(model.p, 0)


def ft_compact_open(O: CompactOpenSet, xi) -> FourierValue:
    """``p^{da} 1(|xi| <= p^{-a}) sum_j conj chi(xi . tau_j)``."""
    model = O.model
    p = model.p
    if not O.balls:
        return FourierValue.rational(p, 0)
    xv = as_vector(model, xi)
    if not within(xv, -O.scale):
        return FourierValue.rational(p, 0)
    phases = [character(xv, c).conjugate() for c in O.centers]
    return FourierValue(Fraction(p) ** (O.dimension * O.scale), CyclotomicSum.from_phases(p, phases))


def ft_atomic(mu: AtomicMeasure, xi) -> FourierValue:
    model = mu.model
    xv = as_vector(model, xi)
    phases = [character(xv, s).conjugate() for s in mu.points]
    return FourierValue(Fraction(1), CyclotomicSum.from_phases(model.p, phases, mu.weights))


def digit_factor(mu: SelfSimilarMeasure, eta: LocalFieldElement) -> FourierValue:
    """``M(eta) = (1/|C|) sum_c conj chi(eta r(c))``."""
    phases = [chi(eta * c).conjugate() for c in mu.digit_points()]
    return FourierValue(Fraction(1, len(phases)), CyclotomicSum.from_phases(mu.model.p, phases))


def selfsimilar_factor_count(xi: LocalFieldElement, s: int) -> int:
    """Least J with ``|P^{sJ} xi| <= 1``."""
    if xi.is_zero():
        if xi.precision < 0:
            raise PrecisionError("xi is not known well enough to bound |xi|")
        return 0
    v = int(xi.valuation)
    return 0 if v >= 0 else -(v // s)


def ft_selfsimilar(mu: SelfSimilarMeasure, xi) -> FourierValue:
    """Finite product ``prod_{j<J} M(P^{sj} xi)`` from the invariance equation."""
    x = as_vector(mu.model, xi)
    if x.dimension != 1:
        raise ValueError("self-similar measures are one-dimensional")
    xi = x[0]
    J = selfsimilar_factor_count(xi, mu.s)
    out = FourierValue.rational(mu.model.p, 1)
    eta = xi
    for _ in range(J):
        f = digit_factor(mu, eta)
        if f.is_zero():
            return f
        out = out * f
        eta = eta.shift(mu.s)
    return out


def fourier_transform(mu, xi) -> FourierValue:
    """Dispatch on the measure variant."""
    if isinstance(mu, AtomicMeasure):
        return ft_atomic(mu, xi)
    if isinstance(mu, UniformCompactOpen):
        f = ft_compact_open(mu.set, xi)
        return FourierValue(f.scalar / mu.set.measure(), f.phase_sum)
    if isinstance(mu, SelfSimilarMeasure):
        return ft_selfsimilar(mu, xi)
    if isinstance(mu, CompactOpenSet):
        return ft_compact_open(mu, xi)
    raise TypeError(f"unsupported measure {type(mu).__name__}")


def zero_set_contains(mu, xi) -> bool:
    return fourier_transform(mu, xi).is_zero()


# -- the double integral --------------------------------------------------


def double_integral_identity(a: int, b: int, p: int) -> Fraction:
    """Closed form of ``int int_{|xi|,|eta| <= p^a} |1_hat_{B(0,p^b)}(xi - eta)|^2``."""
    if a + b >= 0:
        return Fraction(p) ** (a + b)
    return Fraction(p) ** (2 * (a + b))


def double_integral_numeric_check(a: int, b: int, p: int, model: FieldModel | None = None) -> Fraction:
    """The same integral by exact summation over a cell decomposition.

    ``B(0, p^a)`` is cut into cells of radius ``p^R``, ``R = min(a, -b)``, on
    which the integrand is constant in each variable.  Cell representatives
    ``x_k = P^{-a} r(k)`` for ``0 <= k < N = p^(a - R)``; the integrand at a
    pair depends only on ``x_k - x_k'``, whose absolute value is fixed by the
    p-adic valuation of ``k - k'``.  Ordered pairs with integer difference
    ``d`` number ``N - |d|``, so the sum over ``d`` is exact and linear in N.
    """
    model = model or FieldModel.padic(p)
    R = min(a, -b)
    N = p ** (a - R)
    cell = Fraction(p) ** R
    cache: dict = {}

    def integrand(val: int) -> Fraction:
        if val not in cache:
            # any difference with this valuation has the same absolute value
            x = model.from_integer_digits(p**val if val >= 0 else 0, -a, a - R)
            f = ft_ball_indicator(model, b, x)
            cache[val] = f.abs_squared().as_fraction()
        return cache[val]

    total = N * integrand(-1)  # diagonal pairs: difference zero
    for d in range(1, N):
        total += 2 * (N - d) * integrand(p_valuation(d, p))
    return total * cell * cell
