"""Exact arithmetic with p-power roots of unity.

Every character value in this package is a root of unity of p-power order,
so every Fourier coefficient of a finitely supported or locally constant
object is an element of a cyclotomic field Q(zeta_{p^M}).  Elements are kept
in the canonical basis ``1, zeta, ..., zeta^{phi-1}`` where
``phi = (p - 1) p^{M-1}``; the reduction uses

    Phi_{p^M}(x) = sum_{j=0}^{p-1} x^{j p^{M-1}}

so that ``zeta^{(p-1)P + r} = -sum_{j<p-1} zeta^{jP + r}`` with ``P = p^{M-1}``.
A sum is zero exactly when its reduced coefficients all vanish.  Floating
point is only ever used for display and for sign decisions that carry a
rigorous error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

_INT64_SAFE = 2**62


def _as_array(values) -> np.ndarray:
    """1-D integer array: int64 when every entry is safely small, else Python ints.

    Goes through Python ints because numpy would pick uint64 for values in
    [2^63, 2^64) and the cast to int64 would wrap silently.
    """
    if isinstance(values, np.ndarray) and values.dtype == np.int64:
        return values
    items = [int(v) for v in np.asarray(values, dtype=object).ravel()]
    if all(abs(v) < _INT64_SAFE for v in items):
        return np.array(items, dtype=np.int64)
    return np.array(items, dtype=object)


def _l1(arr: np.ndarray) -> int:
    return int(sum(abs(int(v)) for v in arr[arr != 0]))


def reduce_cyclic(coeffs: np.ndarray, p: int) -> np.ndarray:
    """Reduce a length-``p^M`` cyclic coefficient vector modulo Phi_{p^M}.

    Returns the coordinates in the basis ``zeta^0 .. zeta^{phi-1}``.
    """
    n = len(coeffs)
    if n == 1:
        return coeffs.copy()
    block = n // p
    rows = coeffs.reshape(p, block)
    return (rows[:-1] - rows[-1]).ravel()


def vanishes(counts: Sequence[int], p: int) -> bool:
    """Decide whether ``sum_k counts[k] zeta^k`` is zero, zeta of order ``len(counts)``."""
    return not reduce_cyclic(_as_array(counts), p).any()


def _cyclic_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    exact64 = a.dtype != object and b.dtype != object and _l1(a) * _l1(b) < _INT64_SAFE
    if len(ia) * len(ib) <= (1 << 20):
        idx = (ia[:, None] + ib[None, :]) % n
        if exact64:
            vals = a[ia][:, None] * b[ib][None, :]
            out = np.zeros(n, dtype=np.int64)
            np.add.at(out, idx.ravel(), vals.ravel())
            return out
        out = [0] * n
        av = [int(v) for v in a[ia]]
        bv = [int(v) for v in b[ib]]
        for i, x in zip(ia.tolist(), av):
            for j, y in zip(ib.tolist(), bv):
                out[(i + j) % n] += x * y
        return _as_array(np.array(out, dtype=object))
    dtype = np.int64 if exact64 else object
    full = np.convolve(a.astype(dtype), b.astype(dtype))
    out = full[:n].copy()
    out[: len(full) - n] += full[n:]
    return out


def _phi(p: int, level: int) -> int:
    return 1 if level == 0 else (p - 1) * p ** (level - 1)


@dataclass(frozen=True)
class RootOfUnityPhase:
    """The number ``exp(2 pi i numerator / p^level)`` in lowest terms.

    Build instances with :meth:`of`; it reduces the numerator modulo
    ``p^level`` and strips common factors of ``p`` so that either
    ``level == 0`` (the phase 1) or ``p`` does not divide ``numerator``.
    """

    p: int
    numerator: int
    level: int

    @classmethod
    def of(cls, p: int, numerator: int, level: int) -> "RootOfUnityPhase":
        if level < 0:
            raise ValueError("level must be non-negative")
        k = numerator % p**level
        m = level
        while m > 0 and k % p == 0:
            k //= p
            m -= 1
        if m == 0:
            k = 0
        return cls(p, k, m)

    @classmethod
    def from_fraction(cls, p: int, t: Fraction) -> "RootOfUnityPhase":
        """Phase ``exp(2 pi i t)`` for a rational ``t`` whose denominator is a power of p."""
        t = Fraction(t)
        den = t.denominator
        m = 0
        while den % p == 0:
            den //= p
            m += 1
        if den != 1:
            raise ValueError(f"{t} is not a p-power fraction for p={p}")
        return cls.of(p, t.numerator, m)

    @property
    def turns(self) -> Fraction:
        """The phase as a fraction of a full turn, in ``[0, 1)``."""
        return Fraction(self.numerator, self.p**self.level)

    def __mul__(self, other: "RootOfUnityPhase") -> "RootOfUnityPhase":
        if not isinstance(other, RootOfUnityPhase):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("phases over different primes")
        return RootOfUnityPhase.from_fraction(self.p, self.turns + other.turns)

    def conjugate(self) -> "RootOfUnityPhase":
        return RootOfUnityPhase.of(self.p, -self.numerator, self.level)

    def __complex__(self) -> complex:
        return complex(np.exp(2j * np.pi * float(self.turns)))

    def to_cyclotomic(self) -> "CyclotomicSum":
        return CyclotomicSum.from_phases(self.p, [self])

    def __repr__(self) -> str:
        if self.level == 0:
            return "Phase(1)"
        return f"Phase({self.numerator}/{self.p}^{self.level})"


Scalar = Union[int, Fraction]


class CyclotomicSum:
    """An element ``(1/den) sum_k num[k] zeta^k`` of Q(zeta_{p^level}).

    Instances are immutable and always canonical: coefficients are reduced
    modulo the cyclotomic polynomial, the level is the smallest one
    containing the element, and ``gcd(num, den) == 1`` with ``den > 0``.
    Equality and hashing are therefore structural.
    """

    __slots__ = ("p", "level", "_num", "den", "_hash")

    def __init__(self, p: int, level: int, num: Sequence[int], den: int = 1):
        # direct construction expects reduced coordinates of length phi
        arr = _as_array(list(num) if not isinstance(num, np.ndarray) else num)
        if len(arr) != _phi(p, level):
            raise ValueError("coefficient vector has the wrong length for its level")
        self._set(p, level, arr, int(den))

    def _set(self, p: int, level: int, arr: np.ndarray, den: int) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            arr, den = -arr, -den
        while level > 0:
            idx = np.arange(len(arr))
            if arr[idx % p != 0].any():
                break
            arr = arr[::p].copy()
            level -= 1
        nz = arr[arr != 0]
        if len(nz) == 0:
            den = 1
        else:
            g = reduce(math.gcd, (int(v) for v in nz), den)
            if g > 1:
                arr = arr // g
                den //= g
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "_num", arr)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicSum is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def _from_cyclic(cls, p: int, level: int, cyclic: np.ndarray, den: int = 1) -> "CyclotomicSum":
        obj = cls.__new__(cls)
        obj._set(p, level, reduce_cyclic(_as_array(cyclic), p), den)
        return obj

    @classmethod
    def from_exponents(
        cls, p: int, level: int, coeffs: Union[Mapping[int, int], Sequence[int]], den: int = 1
    ) -> "CyclotomicSum":
        """Build ``(1/den) sum coeffs[k] zeta^k`` with zeta a primitive p^level-th root."""
        n = p**level
        if isinstance(coeffs, Mapping):
            cyc = [0] * n
            for k, c in coeffs.items():
                cyc[k % n] += c
        else:
            if len(coeffs) != n:
                raise ValueError(f"expected {n} coefficients, got {len(coeffs)}")
            cyc = list(coeffs)
        return cls._from_cyclic(p, level, np.array(cyc, dtype=object), den)

    @classmethod
    def from_phases(
        cls, p: int, phases: Iterable[RootOfUnityPhase], weights: Iterable[Scalar] | None = None
    ) -> "CyclotomicSum":
        """Sum of phases with optional rational weights."""
        phases = list(phases)
        ws = [Fraction(1)] * len(phases) if weights is None else [Fraction(w) for w in weights]
        if not phases:
            return cls.rational(p, 0)
        level = max(ph.level for ph in phases)
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (w.denominator for w in ws), 1)
        n = p**level
        cyc = [0] * n
        for ph, w in zip(phases, ws):
            if ph.p != p:
                raise ValueError("phase over a different prime")
            cyc[(ph.numerator * p ** (level - ph.level)) % n] += w.numerator * (den // w.denominator)
        return cls._from_cyclic(p, level, np.array(cyc, dtype=object), den)

    @classmethod
    def rational(cls, p: int, value: Scalar) -> "CyclotomicSum":
        value = Fraction(value)
        return cls(p, 0, [value.numerator], value.denominator)

    @classmethod
    def sum(cls, p: int, items: Iterable["CyclotomicSum"]) -> "CyclotomicSum":
        """Exact sum of many elements, accumulated at a common level."""
        items = list(items)
        if not items:
            return cls.rational(p, 0)
        level = max(x.level for x in items)
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (x.den for x in items), 1)
        n = p**level
        acc = np.zeros(n, dtype=object)
        for x in items:
            acc = acc + x._cyclic(level).astype(object) * (den // x.den)
        return cls._from_cyclic(p, level, acc, den)

    # -- views --------------------------------------------------------

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Reduced integer numerators (divide by :attr:`den`)."""
        return tuple(int(v) for v in self._num)

    def _cyclic(self, level: int) -> np.ndarray:
        """Unreduced cyclic coefficient vector of length ``p^level``."""
        if level < self.level:
            raise ValueError("cannot lower the level")
        base = np.zeros(self.p**self.level, dtype=self._num.dtype)
        base[: len(self._num)] = self._num
        if level == self.level:
            return base
        out = np.zeros(self.p**level, dtype=self._num.dtype)
        out[:: self.p ** (level - self.level)] = base
        return out

    def terms(self) -> list[tuple[int, int, Fraction]]:
        """Nonzero terms as ``(k, level, coefficient)`` meaning coefficient * zeta_{p^level}^k."""
        return [
            (k, self.level, Fraction(int(c), self.den))
            for k, c in enumerate(self._num)
            if c != 0
        ]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "CyclotomicSum | None":
        if isinstance(other, CyclotomicSum):
            if other.p != self.p:
                if other.level == 0:
                    return CyclotomicSum.rational(self.p, other.as_fraction())
                if self.level == 0:
                    return other
                raise ValueError("cyclotomic sums over different primes")
            return other
        if isinstance(other, (int, Rational)):
            return CyclotomicSum.rational(self.p, Fraction(other))
        if isinstance(other, RootOfUnityPhase):
            return other.to_cyclotomic()
        return None

    def _binary_add(self, other: "CyclotomicSum", sign: int) -> "CyclotomicSum":
        p = self.p if self.level > 0 or other.level == 0 else other.p
        level = max(self.level, other.level)
        den = self.den * other.den // math.gcd(self.den, other.den)
        a = self._cyclic(level).astype(object) * (den // self.den)
        b = other._cyclic(level).astype(object) * (den // other.den)
        return CyclotomicSum._from_cyclic(p, level, a + sign * b, den)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._binary_add(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._binary_add(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._binary_add(self, -1)

    def __neg__(self) -> "CyclotomicSum":
        obj = CyclotomicSum.__new__(CyclotomicSum)
        obj._set(self.p, self.level, -self._num, self.den)
        return obj

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p if self.level > 0 or o.level == 0 else o.p
        if o.level == 0 or self.level == 0:
            scal, vec = (o, self) if o.level == 0 else (self, o)
            obj = CyclotomicSum.__new__(CyclotomicSum)
            c = int(scal._num[0])
            arr = vec._num * c if abs(c) * max(_l1(vec._num), 1) < _INT64_SAFE else vec._num.astype(object) * c
            obj._set(p, vec.level, _as_array(arr), vec.den * scal.den)
            return obj
        level = max(self.level, o.level)
        prod = _cyclic_mul(self._cyclic(level), o._cyclic(level))
        return CyclotomicSum._from_cyclic(p, level, prod, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def conjugate(self) -> "CyclotomicSum":
        """Complex conjugate: exponent k goes to -k."""
        if self.level == 0:
            return self
        cyc = self._cyclic(self.level)
        n = len(cyc)
        flipped = cyc[(-np.arange(n)) % n]
        return CyclotomicSum._from_cyclic(self.p, self.level, flipped, self.den)

    def abs_squared(self) -> "CyclotomicSum":
        return self * self.conjugate()

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self._num.any()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.level == 0

    def is_real(self) -> bool:
        return self == self.conjugate()

    def as_fraction(self) -> Fraction | None:
        """The value as a Fraction when the element is rational, else None."""
        if self.level != 0:
            return None
        return Fraction(int(self._num[0]), self.den)

    def __eq__(self, other) -> bool:
        o = other if isinstance(other, CyclotomicSum) else self._coerce(other)
        if o is None:
            return NotImplemented
        if self.level == 0 and o.level == 0:
            return self.as_fraction() == o.as_fraction()
        return (
            self.p == o.p
            and self.level == o.level
            and self.den == o.den
            and np.array_equal(self._num, o._num)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            key = (self.level, self.den, tuple(int(v) for v in self._num))
            if self.level != 0:
                key = (self.p,) + key
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    # -- numerics -----------------------------------------------------

    def __complex__(self) -> complex:
        n = self.p**self.level
        k = np.arange(len(self._num))
        vals = self._num.astype(float) * np.exp(2j * np.pi * k / n)
        return complex(vals.sum() / self.den)

    def to_complex(self) -> complex:
        return complex(self)

    def sign(self) -> int:
        """Exact sign of a real element (-1, 0 or 1).

        A float evaluation decides whenever its rigorous error bound is
        smaller than the value.  Otherwise the algebraic-integer norm bound
        ``|beta| >= A^{-(phi/2 - 1)}`` fixes how many digits an mpmath
        evaluation needs.
        """
        if self.is_zero():
            return 0
        if self.level == 0:
            return 1 if self._num[0] > 0 else -1
        if not self.is_real():
            raise ValueError("sign of a non-real cyclotomic number")
        n = self.p**self.level
        coeffs = [int(v) for v in self._num]
        l1 = sum(abs(c) for c in coeffs)
        approx = math.fsum(c * math.cos(2 * math.pi * k / n) for k, c in enumerate(coeffs) if c)
        err = l1 * 1e-12
        if abs(approx) > err:
            return 1 if approx > 0 else -1
        import mpmath

        phi = len(coeffs)
        digits = int((phi // 2) * math.log10(max(l1, 2))) + 30
        with mpmath.workdps(digits):
            val = mpmath.fsum(
                c * mpmath.cos(2 * mpmath.pi * k / n) for k, c in enumerate(coeffs) if c
            )
        return 1 if val > 0 else -1

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self) -> str:
        if self.level == 0:
            return f"CyclotomicSum({self.as_fraction()})"
        parts = [f"{c}*z^{k}" for k, c in enumerate(self.coefficients) if c]
        body = " + ".join(parts) or "0"
        den = f"/{self.den}" if self.den != 1 else ""
        return f"CyclotomicSum(({body}){den}, z=zeta_{self.p}^{self.level})"
