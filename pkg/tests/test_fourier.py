from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localspectra.balls import CompactOpenSet
from localspectra.field import FieldModel
from localspectra.fourier import (
    AtomicMeasure,
    SelfSimilarMeasure,
    UniformCompactOpen,
    double_integral_identity,
    double_integral_numeric_check,
    fourier_transform,
    ft_atomic,
    ft_ball_indicator,
    ft_compact_open,
    ft_selfsimilar,
    zero_set_contains,
)

from oracles import atomic_transform, ball_transform

Q2 = FieldModel.padic(2)
Q3 = FieldModel.padic(3)


def test_ball_indicator_examples():
    assert ft_ball_indicator(Q2, 0, Fraction(1, 4) * 4) == 1
    assert ft_ball_indicator(Q2, 0, 4) == 1
    assert ft_ball_indicator(Q2, 0, Fraction(1, 2)) == 0
    assert ft_ball_indicator(Q3, 2, 0) == 9
    assert ft_ball_indicator(Q2, 1, Q2.vector(1, Fraction(1, 2))) == 0
    assert ft_ball_indicator(Q2, 1, Q2.vector(4, 2)) == 4


@given(st.sampled_from([2, 3, 5]), st.integers(-3, 3), st.integers(-300, 300), st.integers(0, 5), st.integers(1, 20))
def test_ball_indicator_matches_cell_sum(p, a, num, k, den):
    if den % p == 0:
        den += 1
    xi = Fraction(num, den * p**k)
    got = ft_ball_indicator(FieldModel.padic(p), a, xi)
    assert abs(complex(got) - ball_transform(a, xi, p)) < 1e-9


def test_compact_open_examples():
    # B(0,1/2) ⊔ B(3,1/2) is Z_2: the two phases cancel at 1/2
    Z2 = CompactOpenSet.from_centers(Q2, -1, [0, 3])
    assert ft_compact_open(Z2, Fraction(1, 2)).is_zero()
    assert ft_compact_open(Z2, Fraction(1, 4)) == 0
    assert ft_compact_open(Z2, 1) == 1
    O = CompactOpenSet.from_centers(Q2, 0, [0, Fraction(1, 2)])
    assert ft_compact_open(O, 0) == 2
    assert ft_compact_open(O, Fraction(1, 2)) == 0
    assert ft_compact_open(CompactOpenSet.ball(Q2, 0, 0), 7) == 1


@given(st.sampled_from([2, 3]), st.integers(-2, 1), st.lists(st.integers(0, 26), min_size=1, max_size=4, unique=True), st.data())
def test_compact_open_is_sum_of_translated_balls(p, a, ks, data):
    model = FieldModel.padic(p)
    centers = sorted({Fraction(k, p**3) for k in ks})
    try:
        O = CompactOpenSet.from_centers(model, a, centers)
    except Exception:
        return
    xi = Fraction(data.draw(st.integers(-50, 50)), p ** data.draw(st.integers(0, 4)))
    want = sum(ball_transform(a, xi, p) * complex(_phase(c, xi, p)) for c in O.centers)
    assert abs(complex(ft_compact_open(O, xi)) - want) < 1e-8


def _phase(c, xi, p):
    from oracles import chi_rational
    from localspectra.serialize import element_rational

    return chi_rational(-element_rational(c[0]) * xi, p)


def test_atomic_examples():
    mu = AtomicMeasure.uniform(Q2, [0, Fraction(1, 2)])
    assert ft_atomic(mu, 1).is_zero()
    assert ft_atomic(mu, 0) == 1
    nu = AtomicMeasure.uniform(Q3, [0, Fraction(1, 3), Fraction(2, 3)])
    assert ft_atomic(nu, 1).is_zero()
    assert zero_set_contains(mu, 1)
    assert not zero_set_contains(mu, 0)
    assert zero_set_contains(UniformCompactOpen(CompactOpenSet.ball(Q2, 0, 0)), Fraction(1, 2))


@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(-40, 40), min_size=1, max_size=5, unique=True),
    st.integers(0, 3),
    st.integers(-30, 30),
    st.integers(0, 4),
)
def test_atomic_matches_numeric_sum(p, nums, k, xnum, xk):
    model = FieldModel.padic(p)
    pts = [Fraction(n, p**k) for n in nums]
    mu = AtomicMeasure.uniform(model, pts)
    xi = Fraction(xnum, p**xk)
    want = atomic_transform(pts, [Fraction(1, len(pts))] * len(pts), xi, p)
    assert abs(complex(ft_atomic(mu, xi)) - want) < 1e-9


def test_selfsimilar_examples():
    mu = SelfSimilarMeasure(Q2, 3, (0, 3, 4, 7))
    assert ft_selfsimilar(mu, 5) == 1
    assert ft_selfsimilar(mu, Fraction(1, 8)).is_zero()
    assert ft_selfsimilar(mu, Fraction(1, 2)).is_zero()
    assert ft_selfsimilar(mu, Fraction(1, 64)).is_zero()
    assert not ft_selfsimilar(mu, Fraction(1, 4)).is_zero()


@given(st.integers(-600, 600), st.integers(0, 6))
def test_selfsimilar_agrees_with_truncated_atoms(num, k):
    # for |xi| <= 2^6 only two factors of the product matter
    mu = SelfSimilarMeasure(Q2, 3, (0, 3, 4, 7))
    C2 = [a + 8 * b for a in (0, 3, 4, 7) for b in (0, 3, 4, 7)]
    xi = Fraction(num, 2**k)
    assert ft_selfsimilar(mu, xi) == ft_atomic(AtomicMeasure.uniform(Q2, C2), xi)


def test_dispatch_normalises_uniform_sets():
    O = CompactOpenSet.from_centers(Q2, 0, [0, Fraction(1, 2)])
    assert fourier_transform(UniformCompactOpen(O), 0) == 1
    assert fourier_transform(O, 0) == 2
    with pytest.raises(TypeError):
        fourier_transform(object(), 0)


def test_double_integral_examples():
    assert double_integral_identity(1, 0, 2) == 2
    assert double_integral_identity(-2, 0, 2) == Fraction(1, 16)
    assert double_integral_identity(0, 0, 3) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_double_integral_cell_sums(p):
    for a in range(-4, 5):
        for b in range(-4, 5):
            assert double_integral_numeric_check(a, b, p) == double_integral_identity(a, b, p)
