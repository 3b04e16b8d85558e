"""Finite-precision elements of Q_p and F_p((T)).

An element is a digit window ``a_v, ..., a_{N-1}``: it is known modulo
``P^N`` where ``P`` is the prime element (``p`` in Q_p, ``T`` in F_p((T))).
Q_p digits add and multiply with carries; F_p((T)) digits are polynomial
coefficients over F_p (no carries, Cauchy products).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ModelMismatchError, PrecisionError

DEFAULT_PRECISION = 32
MIN_RELATIVE_PRECISION = 16

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def base_p_digits(k: int, p: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        k, r = divmod(k, p)
        out.append(r)
    return tuple(out)


class Kind(enum.Enum):
    PADIC = "padic"
    LAURENT = "laurent"


@dataclass(frozen=True)
class FieldModel:
    """Which local field: Q_p or F_p((T)), with residue field F_p."""

    kind: Kind
    p: int

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")

    @classmethod
    def padic(cls, p: int) -> "FieldModel":
        return cls(Kind.PADIC, p)

    @classmethod
    def laurent(cls, p: int) -> "FieldModel":
        return cls(Kind.LAURENT, p)

    @property
    def q(self) -> int:
        """Cardinality of the residue field (always p here)."""
        return self.p

    @property
    def is_padic(self) -> bool:
        return self.kind is Kind.PADIC

    def __str__(self) -> str:
        return f"Q_{self.p}" if self.is_padic else f"F_{self.p}((T))"

    # -- element factories --------------------------------------------

    def zero(self, precision: int = DEFAULT_PRECISION) -> "LocalFieldElement":
        return LocalFieldElement(self, INF, (), precision)

    def one(self, precision: int = DEFAULT_PRECISION) -> "LocalFieldElement":
        return LocalFieldElement.from_window(self, 0, (1,), precision)

    def uniformizer_power(self, k: int, relative_precision: int = DEFAULT_PRECISION) -> "LocalFieldElement":
        """The exact power ``P^k`` of the prime element, known to relative precision."""
        return LocalFieldElement.from_window(self, k, (1,), k + relative_precision)

    def from_digits(self, digits: Sequence[int], valuation: int, precision: int | None = None):
        """Element ``sum_i digits[i] P^(valuation + i)``, known modulo P^precision."""
        if precision is None:
            precision = valuation + len(digits)
        return LocalFieldElement.from_window(self, valuation, tuple(digits), precision)

    def from_integer_digits(self, k: int, start: int, length: int) -> "LocalFieldElement":
        """``P^start`` times the canonical residue representative of ``k``.

        The representative of ``k`` modulo ``P^length`` is the integer itself in
        Q_p and the polynomial with the base-p digits of ``k`` in F_p((T)).
        Precision is set to ``start + length + DEFAULT_PRECISION``.
        """
        digits = base_p_digits(k, self.p, length)
        return LocalFieldElement.from_window(self, start, digits, start + length + DEFAULT_PRECISION)

    def element(self, value, precision: int | None = None) -> "LocalFieldElement":
        """Coerce ints, Fractions, rational strings and elements into this field."""
        if isinstance(value, LocalFieldElement):
            if value.model != self:
                raise ModelMismatchError(f"{value.model} element used in {self}")
            return value
        if isinstance(value, str):
            from .grammar import parse_element

            return parse_element(value, self)
        if isinstance(value, Mapping):
            return self.laurent_poly(value, precision)
        if isinstance(value, (int, Rational)):
            return self._from_rational(Fraction(value), precision)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def _from_rational(self, r: Fraction, precision: int | None) -> "LocalFieldElement":
        p = self.p
        if r == 0:
            return self.zero(DEFAULT_PRECISION if precision is None else precision)
        if not self.is_padic:
            if r.denominator % p == 0:
                raise ValueError(f"{r} has no image in F_{p}")
            c = r.numerator * pow(r.denominator, -1, p) % p
            prec = DEFAULT_PRECISION if precision is None else precision
            return LocalFieldElement.from_window(self, 0, (c,), prec) if c else self.zero(prec)
        num, den = r.numerator, r.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        if precision is None:
            precision = max(DEFAULT_PRECISION, v + MIN_RELATIVE_PRECISION)
        if precision <= v:
            return self.zero(precision)
        mod = p ** (precision - v)
        unit = num * pow(den, -1, mod) % mod
        return LocalFieldElement.from_window(self, v, base_p_digits(unit, p, precision - v), precision)

    def laurent_poly(self, coeffs: Mapping[int, int], precision: int | None = None) -> "LocalFieldElement":
        """F_p((T)) element ``sum coeffs[e] T^e`` (coefficients reduced mod p)."""
        if self.is_padic:
            raise ModelMismatchError("laurent_poly needs a Laurent model")
        live = {e: c % self.p for e, c in coeffs.items() if c % self.p}
        if precision is None:
            top = max(live, default=0)
            precision = max(DEFAULT_PRECISION, top + 1)
        if not live:
            return self.zero(precision)
        lo = min(live)
        digits = tuple(live.get(e, 0) for e in range(lo, max(precision, lo)))
        return LocalFieldElement.from_window(self, lo, digits, precision)

    def vector(self, *components) -> "Vector":
        return Vector(tuple(self.element(c) for c in components))


@dataclass(frozen=True, eq=True)
class LocalFieldElement:
    """A canonical digit window ``(a_v, ..., a_{N-1})`` with ``a_v != 0``.

    ``valuation`` is ``math.inf`` for the zero element, whose digit tuple is
    empty.  Use :meth:`from_window` (or a :class:`FieldModel` factory) to
    build elements from arbitrary windows.
    """

    model: FieldModel
    valuation: Union[int, float]
    digits: tuple[int, ...]
    precision: int

    def __post_init__(self):
        if self.valuation == INF:
            if self.digits:
                raise ValueError("zero element carries no digits")
            return
        if not self.digits or self.digits[0] == 0:
            raise ValueError("leading digit must be nonzero; use from_window")
        if len(self.digits) != self.precision - self.valuation:
            raise ValueError("digit count must equal precision - valuation")
        if any(not 0 <= a < self.model.p for a in self.digits):
            raise ValueError("digits must lie in 0..p-1")

    @classmethod
    def from_window(
        cls, model: FieldModel, start: int, digits: Sequence[int], precision: int
    ) -> "LocalFieldElement":
        """Canonicalize the window starting at exponent ``start``.

        Digits at exponents ``>= precision`` are discarded; missing digits
        below ``precision`` are zero.
        """
        p = model.p
        keep = max(0, precision - start)
        window = [d % p for d in digits[:keep]] + [0] * max(0, keep - len(digits))
        for i, d in enumerate(window):
            if d:
                return cls(model, start + i, tuple(window[i:]), precision)
        return cls(model, INF, (), precision)

    # -- basic views ------------------------------------------------

    @property
    def p(self) -> int:
        return self.model.p

    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def relative_precision(self) -> int:
        return len(self.digits)

    def __abs__(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def abs_exponent(self) -> Union[int, float]:
        """``log_p |x|``, i.e. ``-valuation`` (``-inf`` for zero)."""
        return -self.valuation

    def digit(self, i: int) -> int:
        if i >= self.precision:
            raise PrecisionError(f"digit {i} unknown (precision {self.precision})")
        if self.is_zero() or i < self.valuation:
            return 0
        return self.digits[i - self.valuation]

    @cached_property
    def _unit(self) -> int:
        # Q_p: x = P^v * unit (mod P^N), unit as an integer in [0, p^(N-v))
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    def _window_from(self, start: int) -> list[int]:
        """Digits from exponent ``start`` up to precision - 1."""
        n = self.precision - start
        if self.is_zero():
            return [0] * n
        lead = int(self.valuation - start)
        return ([0] * lead + list(self.digits))[:n]

    def truncated_rational(self) -> Fraction:
        """The canonical representative ``sum a_i p^i`` (Q_p only)."""
        if not self.model.is_padic:
            raise ModelMismatchError("truncated_rational is defined for Q_p")
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self._unit

    # -- arithmetic -------------------------------------------------

    def _check(self, other) -> "LocalFieldElement":
        if not isinstance(other, LocalFieldElement):
            other = self.model.element(other)
        if other.model != self.model:
            raise ModelMismatchError(f"{self.model} vs {other.model}")
        return other

    def __add__(self, other) -> "LocalFieldElement":
        other = self._check(other)
        prec = min(self.precision, other.precision)
        if self.is_zero():
            return other.with_precision(prec)
        if other.is_zero():
            return self.with_precision(prec)
        start = min(self.valuation, other.valuation)
        if start >= prec:
            return self.model.zero(prec)
        p = self.p
        if self.model.is_padic:
            mod = p ** (prec - start)
            total = (
                self._unit * p ** (self.valuation - start) + other._unit * p ** (other.valuation - start)
            ) % mod
            return LocalFieldElement.from_window(self.model, start, base_p_digits(total, p, prec - start), prec)
        a = self._window_from(start)
        b = other._window_from(start)
        return LocalFieldElement.from_window(
            self.model, start, [(x + y) % p for x, y in zip(a, b)], prec
        )

    __radd__ = __add__

    def __neg__(self) -> "LocalFieldElement":
        if self.is_zero():
            return self
        p = self.p
        if self.model.is_padic:
            mod = p ** len(self.digits)
            return LocalFieldElement.from_window(
                self.model, self.valuation, base_p_digits(-self._unit % mod, p, len(self.digits)), self.precision
            )
        return LocalFieldElement.from_window(
            self.model, self.valuation, [(-d) % p for d in self.digits], self.precision
        )

    def __sub__(self, other) -> "LocalFieldElement":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "LocalFieldElement":
        return self._check(other) + (-self)

    def __mul__(self, other) -> "LocalFieldElement":
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                prec = self.precision + other.precision
            elif self.is_zero():
                prec = self.precision + other.valuation
            else:
                prec = other.precision + self.valuation
            return self.model.zero(prec)
        v = self.valuation + other.valuation
        rel = min(len(self.digits), len(other.digits))
        p = self.p
        if self.model.is_padic:
            mod = p**rel
            digits = base_p_digits(self._unit * other._unit % mod, p, rel)
        else:
            out = [0] * rel
            for i, a in enumerate(self.digits[:rel]):
                if a:
                    for j, b in enumerate(other.digits[: rel - i]):
                        out[i + j] = (out[i + j] + a * b) % p
            digits = out
        return LocalFieldElement.from_window(self.model, v, digits, v + rel)

    __rmul__ = __mul__

    def inverse(self) -> "LocalFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rel = len(self.digits)
        p = self.p
        if self.model.is_padic:
            mod = p**rel
            digits = base_p_digits(pow(self._unit, -1, mod), p, rel)
        else:
            a = self.digits
            inv0 = pow(a[0], -1, p)
            b = [inv0] + [0] * (rel - 1)
            for n in range(1, rel):
                s = sum(a[k] * b[n - k] for k in range(1, n + 1)) % p
                b[n] = (-s * inv0) % p
            digits = b
        v = -self.valuation
        return LocalFieldElement.from_window(self.model, v, digits, v + rel)

    def __truediv__(self, other) -> "LocalFieldElement":
        return self * self._check(other).inverse()

    def shift(self, k: int) -> "LocalFieldElement":
        """Exact multiplication by ``P^k``."""
        if self.is_zero():
            return self.model.zero(self.precision + k)
        return LocalFieldElement(self.model, self.valuation + k, self.digits, self.precision + k)

    def with_precision(self, precision: int) -> "LocalFieldElement":
        """Forget digits at exponents ``>= precision`` (never adds digits)."""
        if precision > self.precision:
            raise PrecisionError("cannot raise precision")
        if self.is_zero():
            return self.model.zero(precision)
        return LocalFieldElement.from_window(self.model, self.valuation, self.digits, precision)

    def congruent(self, other, precision: int | None = None) -> bool:
        """Equality modulo ``P^precision`` (default: the shared precision)."""
        other = self._check(other)
        diff = self - other
        if precision is None:
            return diff.is_zero()
        if precision > diff.precision:
            raise PrecisionError("comparison beyond known precision")
        return diff.is_zero() or diff.valuation >= precision

    # -- character coordinates --------------------------------------

    def fractional_part(self) -> Fraction:
        """``{x} = sum_{i<0} a_i p^i`` for x in Q_p, a rational in [0, 1)."""
        if not self.model.is_padic:
            raise ModelMismatchError("fractional_part is defined on Q_p; use laurent_residue_coordinate")
        if not self.is_zero() and self.valuation >= 0:
            return Fraction(0)
        if self.precision < 0:
            raise PrecisionError("fractional part needs digits up to exponent -1")
        if self.is_zero():
            return Fraction(0)
        neg = self.digits[: int(-self.valuation)]
        return sum((Fraction(d, self.p ** (-self.valuation - i)) for i, d in enumerate(neg)), Fraction(0))

    def laurent_residue_coordinate(self) -> int:
        """The coefficient ``a_{-1}`` of an F_p((T)) element."""
        if self.model.is_padic:
            raise ModelMismatchError("laurent_residue_coordinate is defined on F_p((T))")
        if not self.is_zero() and self.valuation > -1:
            return 0
        return self.digit(-1)

    # -- display -----------------------------------------------------

    def __repr__(self) -> str:
        p = self.p
        if self.model.is_padic:
            body = "0" if self.is_zero() else str(self.truncated_rational())
            return f"<Q_{p}: {body} + O({p}^{self.precision})>"
        if self.is_zero():
            body = "0"
        else:
            terms = []
            for i, d in enumerate(self.digits):
                if d:
                    e = self.valuation + i
                    mono = "1" if e == 0 else ("T" if e == 1 else f"T^{e}")
                    terms.append(mono if d == 1 else f"{d}*{mono}" if e else str(d))
            body = " + ".join(terms)
        return f"<F_{p}((T)): {body} + O(T^{self.precision})>"


@dataclass(frozen=True)
class Vector:
    """A point of K^d with the max norm."""

    components: tuple[LocalFieldElement, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty vector")
        m = self.components[0].model
        if any(c.model != m for c in self.components):
            raise ModelMismatchError("mixed models in one vector")

    @property
    def model(self) -> FieldModel:
        return self.components[0].model

    @property
    def dimension(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[LocalFieldElement]:
        return iter(self.components)

    def __getitem__(self, i: int) -> LocalFieldElement:
        return self.components[i]

    def _check(self, other: "Vector") -> "Vector":
        other = as_vector(self.model, other)
        if other.dimension != self.dimension:
            raise ValueError(f"dimension mismatch: {self.dimension} vs {other.dimension}")
        return other

    def __add__(self, other) -> "Vector":
        other = self._check(other)
        return Vector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other) -> "Vector":
        other = self._check(other)
        return Vector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self))

    def scale(self, a) -> "Vector":
        a = self.model.element(a)
        return Vector(tuple(a * c for c in self))

    def shift(self, k: int) -> "Vector":
        return Vector(tuple(c.shift(k) for c in self))

    def dot(self, other) -> LocalFieldElement:
        other = self._check(other)
        total = self.components[0] * other.components[0]
        for a, b in zip(self.components[1:], other.components[1:]):
            total = total + a * b
        return total

    def norm(self) -> Fraction:
        return max(abs(c) for c in self)

    def norm_exponent(self) -> Union[int, float]:
        """``log_p |x|`` with the max norm (``-inf`` for the zero vector)."""
        return max(c.abs_exponent() for c in self)

    def __repr__(self) -> str:
        if self.dimension == 1:
            return repr(self.components[0])
        return "Vector(" + ", ".join(repr(c) for c in self) + ")"


def as_element(model: FieldModel, x) -> LocalFieldElement:
    if isinstance(x, Vector):
        if x.dimension != 1:
            raise ValueError("expected a scalar")
        return x.components[0]
    return model.element(x)


def as_vector(model: FieldModel, x) -> Vector:
    """Accept a Vector, a scalar-like value, or a tuple/list of scalars."""
    if isinstance(x, Vector):
        if x.model != model:
            raise ModelMismatchError(f"{x.model} vector used in {model}")
        return x
    if isinstance(x, (tuple, list)):
        return Vector(tuple(model.element(c) for c in x))
    return Vector((model.element(x),))


def same_point(x: Vector, y: Vector) -> bool:
    return (x - y).norm_exponent() == -INF


def points(model: FieldModel, values: Iterable) -> list[Vector]:
    return [as_vector(model, v) for v in values]
