import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localspectra.characters import character, chi
from localspectra.cyclotomic import CyclotomicSum, RootOfUnityPhase, vanishes
from localspectra.field import FieldModel

from oracles import chi_rational

PRIMES = st.sampled_from([2, 3, 5])


def test_roots_of_unity_sum_to_zero():
    for p in (2, 3, 5):
        for level in (1, 2, 3):
            n = p**level
            prim = CyclotomicSum.from_exponents(p, level, {k: 1 for k in range(0, n, n // p)})
            assert prim.is_zero()
    assert not CyclotomicSum.from_exponents(2, 2, {0: 1, 1: 1}).is_zero()


def test_vanishing_counts():
    # a count vector vanishes iff it is constant along cosets of the order-p subgroup
    assert vanishes([1, 1], 2)
    assert not vanishes([1, 0], 2)
    assert vanishes([2, 1, 0, 2, 1, 0, 2, 1, 0], 3)
    assert not vanishes([2, 1, 0, 2, 1, 0, 2, 0, 1], 3)
    assert vanishes([1, 0, 3, 0, 1, 0, 3, 0], 2)
    assert not vanishes([1, 0, 3, 0, 3, 0, 1, 0], 2)


@given(PRIMES, st.integers(1, 3), st.data())
def test_vanishing_matches_numeric(p, level, data):
    n = p**level
    counts = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    numeric = sum(c * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(counts))
    assert vanishes(counts, p) == (abs(numeric) < 1e-9)


def test_large_coefficients_do_not_wrap():
    big = 2**63 + 12345
    x = CyclotomicSum.rational(2, big) - CyclotomicSum.rational(2, big - 1)
    assert x == 1
    z = CyclotomicSum.from_exponents(3, 1, {0: big, 1: big, 2: big})
    assert z.is_zero()


@given(PRIMES, st.integers(1, 3), st.lists(st.integers(-3, 3), min_size=1, max_size=30))
def test_zero_test_matches_numeric(p, level, coeffs):
    n = p**level
    cs = coeffs[:n] + [0] * max(0, n - len(coeffs))
    s = CyclotomicSum.from_exponents(p, level, cs)
    numeric = sum(c * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(cs))
    assert s.is_zero() == (abs(numeric) < 1e-9)
    assert abs(complex(s) - numeric) < 1e-9


@given(PRIMES, st.integers(1, 3), st.data())
def test_field_operations(p, level, data):
    n = p**level
    a = [data.draw(st.integers(-4, 4)) for _ in range(n)]
    b = [data.draw(st.integers(-4, 4)) for _ in range(n)]
    x = CyclotomicSum.from_exponents(p, level, a)
    y = CyclotomicSum.from_exponents(p, level, b, den=3)
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-8
    assert abs(complex(x + y) - complex(x) - complex(y)) < 1e-9
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < 1e-9
    sq = x.abs_squared()
    assert sq.is_real()
    assert abs(complex(sq) - abs(complex(x)) ** 2) < 1e-8
    assert sq >= 0


@given(PRIMES, st.integers(1, 3), st.data())
def test_sign_is_exact_for_real_elements(p, level, data):
    n = p**level
    a = [data.draw(st.integers(-3, 3)) for _ in range(n)]
    x = CyclotomicSum.from_exponents(p, level, a)
    real = x + x.conjugate()
    val = complex(real).real
    if abs(val) > 1e-6:
        assert real.sign() == (1 if val > 0 else -1)
    assert (real - real).sign() == 0


def test_near_cancellation_sign():
    # zeta_8 + zeta_8^{-1} = sqrt(2); compare against decimal truncations
    root2 = CyclotomicSum.from_exponents(2, 3, {1: 1, 7: 1})
    below = Fraction(14142135623730950488, 10**19)
    above = Fraction(14142135623730950489, 10**19)
    assert (root2 - below).sign() == 1
    assert (root2 - above).sign() == -1
    assert root2 * root2 == 2


def test_phase_normalisation():
    assert RootOfUnityPhase.of(2, 4, 3) == RootOfUnityPhase.of(2, 1, 1)
    assert RootOfUnityPhase.of(3, 9, 2).level == 0
    assert RootOfUnityPhase.from_fraction(2, Fraction(5, 4)).turns == Fraction(1, 4)
    with pytest.raises(ValueError):
        RootOfUnityPhase.from_fraction(2, Fraction(1, 3))


def test_character_examples():
    Q2 = FieldModel.padic(2)
    assert chi(Q2.element(Fraction(1, 2))).turns == Fraction(1, 2)
    assert chi(Q2.element(5)).turns == 0
    assert chi(Q2.element(Fraction(3, 4))).turns == Fraction(3, 4)
    L3 = FieldModel.laurent(3)
    assert chi(L3.laurent_poly({-1: 2, 0: 1})).turns == Fraction(2, 3)
    assert chi(L3.laurent_poly({-2: 1})).turns == 0


@given(PRIMES, st.integers(-500, 500), st.integers(0, 4), st.integers(1, 30))
def test_padic_character_matches_oracle(p, num, k, den):
    if den % p == 0:
        den += 1
    x = Fraction(num, den * p**k)
    got = chi(FieldModel.padic(p).element(x))
    assert abs(complex(got) - chi_rational(x, p)) < 1e-12


@given(PRIMES, st.data())
def test_character_is_a_homomorphism(p, data):
    for model in (FieldModel.padic(p), FieldModel.laurent(p)):
        def draw():
            digits = data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=6))
            return model.from_digits(digits, data.draw(st.integers(-4, 2)), 20)

        x, y = draw(), draw()
        assert chi(x + y) == chi(x) * chi(y)
        assert chi(-x) == chi(x).conjugate()


def test_character_is_trivial_on_integers_only():
    for model in (FieldModel.padic(3), FieldModel.laurent(3)):
        unit_ball = [model.from_digits([d, 1], 0, 20) for d in range(3)]
        assert all(chi(x).level == 0 for x in unit_ball)
        assert any(chi(x).level > 0 for x in (model.uniformizer_power(-1) * model.element(k) for k in (1, 2)))


def test_character_in_two_dimensions():
    Q2 = FieldModel.padic(2)
    y = Q2.vector(Fraction(1, 2), Fraction(1, 4))
    x = Q2.vector(1, 1)
    assert character(y, x).turns == Fraction(3, 4)
