from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localspectra.balls import Ball
from localspectra.field import FieldModel
from localspectra.quasilattice import (
    DensityReport,
    QuasiLattice,
    count_in_ball,
    density_profile,
    perturb,
    scale_points,
    separation,
    shell_numerators,
)
from localspectra.serialize import element_rational

Q2 = FieldModel.padic(2)
Q3 = FieldModel.padic(3)


def _rationals(points):
    return sorted(element_rational(v[0]) for v in points)


def test_enumerate_examples():
    assert _rationals(QuasiLattice(Q2).enumerate(2)) == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert _rationals(QuasiLattice(Q3).enumerate(1)) == [0, Fraction(1, 3), Fraction(2, 3)]
    for p in (2, 3, 5):
        assert len(QuasiLattice(FieldModel.padic(p)).enumerate(0)) == 1
    assert shell_numerators(3, 2) == [1, 2, 4, 5, 7, 8]
    with pytest.raises(ValueError):
        QuasiLattice(Q2).enumerate(-1)


@pytest.mark.parametrize("model", [Q2, Q3, FieldModel.laurent(2), FieldModel.laurent(3)])
@pytest.mark.parametrize("d", [1, 2])
def test_counts_and_partition(model, d):
    p = model.p
    n = 2 if d == 2 else 3
    pts = QuasiLattice(model, d).enumerate(n)
    assert len(pts) == p ** (d * n)
    # one point in every unit ball of B(0, p^n)
    keys = {Ball(v, 0).key() for v in pts}
    assert len(keys) == len(pts)


def test_separation_examples():
    assert separation(QuasiLattice(Q2).enumerate(3)) == 2
    assert separation(QuasiLattice(Q3).enumerate(2)) == 3
    for n in (2, 3, 4):
        a = Q2.vector(Fraction(1, 2**n))
        b = Q2.vector(Fraction(2 ** (n - 1) + 1, 2**n))
        assert separation([a, b]) == 2
    with pytest.raises(ValueError):
        separation([Q2.vector(0)])


@pytest.mark.parametrize("p", [2, 3])
def test_mixed_shell_distances(p):
    L = QuasiLattice(FieldModel.padic(p))
    for n in range(1, 3):
        for m in range(n + 1, 4):
            for a in L.shell(n):
                for b in L.shell(m):
                    assert (a - b).norm() == Fraction(p) ** m


def test_count_in_ball_examples():
    pts = QuasiLattice(Q2).enumerate(4)
    assert count_in_ball(pts, 0, 2) == 4
    assert count_in_ball(pts, Fraction(1, 2), 0) == 1
    assert count_in_ball([Q2.vector(0)], Fraction(1, 4), 5) == 1
    assert count_in_ball([], 0, 3) == 0


@given(st.sampled_from([2, 3]), st.integers(0, 3), st.integers(-200, 200), st.integers(0, 3))
def test_every_ball_in_range_has_p_to_the_n_points(p, n, num, k):
    model = FieldModel.padic(p)
    pts = QuasiLattice(model).enumerate(4)
    x = Fraction(num % p**4, p**k)
    if model.element(x).abs_exponent() > 4:
        return
    assert count_in_ball(pts, x, n) == p**n


def test_density_profile_examples():
    L = QuasiLattice(Q2)
    pts = L.enumerate(5)
    reports = density_profile(pts, Ball.of(Q2, 0, 5), range(0, 5))
    assert all(r.upper_density == r.lower_density == 1 for r in reports)
    empty = density_profile([], Ball.of(Q2, 0, 3), range(0, 3))
    assert all(r.upper_density == 0 for r in empty)
    # scaling by 2 halves distances: two points per unit ball
    doubled = scale_points(L.enumerate(4), Q2.element(2))
    reports = density_profile(doubled, Ball.of(Q2, 0, 3), range(0, 3))
    assert all(r.upper_density == r.lower_density == 2 for r in reports)


@given(st.sampled_from([2, 3]), st.integers(1, 2))
def test_scaled_lattice_counts(p, k):
    model = FieldModel.padic(p)
    pts = scale_points(QuasiLattice(model).enumerate(3 + k), model.element(p**k))
    for n in range(0, 3):
        reports = density_profile(pts, Ball.of(model, 0, 3), [n])
        assert reports[0].sup_count == reports[0].inf_count == p ** (n + k)


@given(st.data())
def test_perturbation_keeps_one_point_per_unit_ball(data):
    pts = QuasiLattice(Q3).enumerate(2)
    etas = [Q3.vector(data.draw(st.integers(-50, 50))) for _ in pts]
    moved = perturb(pts, etas)
    assert len({Ball(v, 0).key() for v in moved}) == len(pts)
    reports = density_profile(moved, Ball.of(Q3, 0, 2), [0, 1, 2])
    assert all(r.sup_count == r.inf_count for r in reports)


def test_point_for_finds_the_representative():
    L = QuasiLattice(Q2)
    v = L.point_for(Fraction(13, 4))
    assert Ball(v, 0).contains(Q2.vector(Fraction(13, 4)))
    assert element_rational(v[0]) == Fraction(1, 4)


def test_density_report_json_round_trip():
    r = DensityReport(2, 5, 3, Fraction(5, 4), Fraction(3, 4))
    assert DensityReport.from_json(r.to_json()) == r
    with pytest.raises(ValueError):
        DensityReport(0, 1, 2, Fraction(1), Fraction(2))
