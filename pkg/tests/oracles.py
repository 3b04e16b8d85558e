"""Independent reference computations used to cross-check the library.

Nothing here goes through the digit-level field arithmetic or the exact
cyclotomic code paths it checks: rationals are handled with Fraction,
transforms are summed numerically with cmath.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction


def padic_valuation(x: Fraction, p: int) -> float:
    if x == 0:
        return float("inf")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def padic_abs(x: Fraction, p: int) -> Fraction:
    v = padic_valuation(Fraction(x), p)
    return Fraction(0) if v == float("inf") else Fraction(p) ** (-v)


def padic_fractional_part(x: Fraction, p: int) -> Fraction:
    """``{x}_p`` for rational x: write x = a / (b p^k) with p not dividing b."""
    x = Fraction(x)
    v = padic_valuation(x, p)
    if v >= 0:
        return Fraction(0)
    k = int(-v)
    a, b = x.numerator, x.denominator // p**k
    return Fraction(a * pow(b, -1, p**k) % p**k, p**k)


def chi_rational(x: Fraction, p: int) -> complex:
    return cmath.exp(2j * cmath.pi * float(padic_fractional_part(x, p)))


def ball_transform(a: int, xi: Fraction, p: int) -> complex:
    """``int_{B(0,p^a)} conj chi(x xi) dx`` as a sum over cells one step finer
    than the scale on which the character is constant."""
    e = -padic_valuation(Fraction(xi), p)
    r = (a if e == float("-inf") else min(a, -int(e))) - 1
    # representatives of B(0,p^a) / B(0,p^r) are j p^{-a}, 0 <= j < p^{a-r}
    total = 0j
    for j in range(p ** (a - r)):
        c = Fraction(j) * Fraction(p) ** (-a)
        total += chi_rational(-c * Fraction(xi), p)
    return total * float(Fraction(p) ** r)


def atomic_transform(points, weights, xi: Fraction, p: int) -> complex:
    return sum(float(w) * chi_rational(-Fraction(s) * Fraction(xi), p) for s, w in zip(points, weights))


def is_tile_exhaustive(T, N: int) -> bool:
    """Search over all complements of the right size containing 0."""
    T = sorted(set(t % N for t in T))
    k = len(T)
    if N % k:
        return False
    m = N // k
    for rest in itertools.combinations(range(1, N), m - 1):
        A = (0,) + rest
        if len({(a + t) % N for a in A for t in T}) == N:
            return True
    return False


def is_spectral_exhaustive(T, N: int, tol: float = 1e-9) -> bool:
    """Search over all candidate spectra containing 0, numerically."""
    T = sorted(set(t % N for t in T))
    k = len(T)

    def vanishes(d):
        return abs(sum(cmath.exp(2j * cmath.pi * d * t / N) for t in T)) < tol

    Z = [d for d in range(1, N) if vanishes(d)]
    for rest in itertools.combinations(Z, k - 1):
        L = (0,) + rest
        if all(vanishes(a - b) for a, b in itertools.combinations(L, 2)):
            return True
    return False


def is_homogeneous_tree(T, p: int, n: int) -> bool:
    """Uniform branching: every node of the residue tree at a level has the
    same number of children, 1 or p."""
    T = sorted(set(t % p**n for t in T))
    for i in range(1, n + 1):
        parents: dict = {}
        for t in T:
            parents.setdefault(t % p ** (i - 1), set()).add(t % p**i)
        sizes = {len(v) for v in parents.values()}
        if len(sizes) != 1 or sizes.pop() not in (1, p):
            return False
    return True
