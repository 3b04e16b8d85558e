import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localspectra.balls import Ball, CompactOpenSet, coset_representatives, sphere_contains, within
from localspectra.errors import InvalidSetError
from localspectra.field import FieldModel
from localspectra.grammar import (
    GrammarError,
    parse_element,
    parse_point,
    parse_radius_exponent,
    parse_residues,
    parse_set,
)
from localspectra.serialize import dumps, element_rational, format_element

from oracles import padic_abs

Q2 = FieldModel.padic(2)
L2 = FieldModel.laurent(2)


def test_ball_basics():
    B = Ball.of(Q2, 0, 1)
    assert B.measure() == 2
    assert B.contains(Q2.vector(Fraction(1, 2)))
    assert not B.contains(Q2.vector(Fraction(1, 4)))
    assert len(B.refine(-1)) == 4
    assert B.scale(Q2.element(2)).radius_exp == 0
    assert sphere_contains(0, 1, Fraction(1, 2), Q2)
    assert not sphere_contains(0, 1, 1, Q2)


def test_ball_keys_identify_equal_balls():
    assert Ball.of(Q2, 0, 0) == Ball.of(Q2, 1, 0) == Ball.of(Q2, 3, 0)
    assert Ball.of(Q2, 0, 0) != Ball.of(Q2, Fraction(1, 2), 0)
    assert len({Ball.of(Q2, k, 0) for k in range(10)}) == 1


def test_intersections_are_nested_or_empty():
    big = Ball.of(Q2, 0, 2)
    small = Ball.of(Q2, Fraction(1, 2), 0)
    assert big.intersect(small) == small
    assert small.intersect(big) == small
    assert Ball.of(Q2, 0, 0).intersect(small) is None


@given(st.sampled_from([2, 3, 5]), st.integers(-2, 2), st.integers(0, 3))
def test_coset_representatives_partition(p, inner, extra):
    model = FieldModel.padic(p)
    outer = inner + extra
    reps = coset_representatives(model, outer, inner)
    assert len(reps) == p**extra
    balls = {Ball(r, inner).key() for r in reps}
    assert len(balls) == len(reps)
    assert all(within(r, outer) for r in reps)


def test_compact_open_sets():
    O = CompactOpenSet.from_centers(Q2, 0, [0, Fraction(1, 2)])
    assert O.measure() == 2
    assert O.same_set(CompactOpenSet.ball(Q2, 0, 1))
    assert O.refine(-1).measure() == 2
    assert CompactOpenSet.ball(Q2, 0, 0).issubset(O)
    with pytest.raises(InvalidSetError):
        CompactOpenSet.from_centers(Q2, 0, [0, 3])
    # B(0,1/2) ⊔ B(3,1/2) is the unit ball
    Z2 = CompactOpenSet.from_centers(Q2, -1, [0, 3])
    assert Z2.same_set(CompactOpenSet.ball(Q2, 0, 0))


def test_parse_elements():
    assert parse_element("3/4", Q2).congruent(Q2.element(Fraction(3, 4)))
    assert parse_element('padic(p=2, "1011", v=-1)', Q2).congruent(Q2.element(Fraction(13, 2)), 3)
    a = parse_element("T^-1 + 1 + T^2", L2)
    assert a.congruent(L2.laurent_poly({-1: 1, 0: 1, 2: 1}))
    with pytest.raises(GrammarError):
        parse_element("1/0", Q2)


def test_parse_points_and_radii():
    v = parse_point("(1/2; 3)", Q2)
    assert v.dimension == 2
    assert parse_radius_exponent("2^-1", 2) == -1
    assert parse_radius_exponent("p^3", 2) == 3
    assert parse_radius_exponent("1/4", 2) == -2
    with pytest.raises(GrammarError):
        parse_radius_exponent("3", 2)
    assert parse_residues("0,3,4,7") == [0, 3, 4, 7]


def test_parse_sets():
    O = parse_set("ball(0,1) ∪ ball(1/2,1)", Q2)
    assert O.measure() == 2
    mixed = parse_set("ball(0,1/2) + ball(1/2,1)", Q2)
    assert mixed.scale == -1 and mixed.measure() == Fraction(3, 2)
    with pytest.raises(GrammarError):
        parse_set("ball(0,1) ∪ ball(1,1)", Q2)
    with pytest.raises(GrammarError):
        parse_set("bal(0,1)", Q2)


@given(st.integers(-40_000, 40_000), st.integers(0, 499), st.integers(0, 6))
def test_small_rationals_display_as_rationals(num, half, k):
    x = Fraction(num, (2 * half + 1) * 2**k)
    e = Q2.element(x)
    assert element_rational(e) == x
    assert parse_element(format_element(e), Q2).congruent(e)
    assert abs(e) == padic_abs(x, 2)


@given(st.integers(-10**12, 10**12), st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_display_always_round_trips(num, half, p):
    model = FieldModel.padic(p)
    den = half * p + 1
    e = model.element(Fraction(num, den))
    r = element_rational(e)
    assert r is None or model.element(r).congruent(e)
    assert parse_element(format_element(e), model).congruent(e)


def test_dumps_is_canonical():
    a = dumps({"b": [Fraction(1, 2), 3], "a": Q2.element(Fraction(1, 4))})
    b = dumps({"a": Q2.element(Fraction(1, 4)), "b": [Fraction(1, 2), 3]})
    assert a == b
    assert json.loads(a) == {"a": "1/4", "b": ["1/2", 3]}
