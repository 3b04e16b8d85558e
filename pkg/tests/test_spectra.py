import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localspectra.balls import CompactOpenSet
from localspectra.characters import character
from localspectra.field import FieldModel
from localspectra.fourier import AtomicMeasure, UniformCompactOpen
from localspectra.quasilattice import QuasiLattice
from localspectra.spectra import (
    CandidateSpectrum,
    SpectralVerdict,
    check_jp_criterion,
    check_orthogonality,
    check_spectral_set,
    frame_bounds,
    gram_matrix,
    is_hadamard,
)

Q2 = FieldModel.padic(2)
Q3 = FieldModel.padic(3)
HALF = AtomicMeasure.uniform(Q2, [0, Fraction(1, 2)])


def test_orthogonality_examples():
    assert check_orthogonality(HALF, [0, 1])
    res = check_orthogonality(HALF, [0, 2])
    assert not res
    d = res.witness[0] - res.witness[1]
    assert abs(d[0]) == Fraction(1, 2)
    assert check_orthogonality(HALF, [5])


def test_jp_examples():
    v = check_jp_criterion(HALF, [0, 1], samples=[0, Fraction(1, 2), Fraction(1, 4)])
    assert v.passed
    assert all(s == 1 for _, s in v.criterion_sums)
    v = check_jp_criterion(HALF, [0])
    assert v.orthogonal and not v.complete_at_samples
    sums = {str(xi): s for xi, s in v.criterion_sums}
    assert any(s == 0 for s in sums.values())
    with pytest.raises(ValueError):
        check_jp_criterion(HALF, [0, 1], samples=[])


def test_unit_ball_with_quasi_lattice():
    D = CompactOpenSet.ball(Q2, 0, 0)
    lam = QuasiLattice(Q2).enumerate(3)
    v = check_jp_criterion(UniformCompactOpen(D), lam, samples=[Fraction(k, 8) for k in range(8)] + [Fraction(3, 16)])
    assert v.orthogonal
    # |3/16| = 16, so no lattice point of B(0, 8) lies within 1 of it
    sums = [s for _, s in v.criterion_sums]
    assert sums[:8] == [1] * 8 and sums[8] == 0


def test_spectral_set_examples():
    Z2 = CompactOpenSet.from_centers(Q2, -1, [0, 3])
    v = check_spectral_set(Z2, [0, Fraction(1, 2)], samples=[0, Fraction(1, 2)])
    assert v.passed and v.target == 1
    two = CompactOpenSet.from_centers(Q2, 0, [0, Fraction(1, 2)])
    v = check_spectral_set(two, [0, Fraction(1, 2)], samples=[0, Fraction(1, 2), 2, Fraction(5, 2)])
    assert v.orthogonal and v.target == 4
    assert all(s == 4 for _, s in v.criterion_sums)
    v = check_spectral_set(Z2, [], samples=[0, Fraction(1, 2)])
    assert not v.complete_at_samples and all(s == 0 for _, s in v.criterion_sums)


def test_full_residue_check_decides_small_pairs():
    # B(0, 2) has spectrum 2L, the points 0, 1/2, 1, 3/2 within B(0, 2)
    B = CompactOpenSet.ball(Q2, 0, 1)
    assert check_spectral_set(B, [0, Fraction(1, 2), 1, Fraction(3, 2)]).passed
    v = check_spectral_set(B, [0, Fraction(1, 2)])
    assert v.orthogonal and not v.complete_at_samples
    assert not check_spectral_set(B, [0, 2]).orthogonal


def test_hadamard_examples():
    assert is_hadamard([0, Fraction(1, 2)], [0, 1], Q2)
    assert is_hadamard([Fraction(s, 8) for s in (0, 3, 4, 7)], [0, 1, 4, 5], Q2)
    assert not is_hadamard([0, Fraction(1, 2)], [0, 2], Q2)
    with pytest.raises(ValueError):
        is_hadamard([0], [0, 1], Q2)


@settings(max_examples=40)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_hadamard_iff_spectral(p, size, data):
    model = FieldModel.padic(p)
    S = data.draw(st.lists(st.integers(0, p**2 - 1), min_size=size, max_size=size, unique=True))
    L = data.draw(st.lists(st.integers(0, p**2 - 1), min_size=size, max_size=size, unique=True))
    S = [Fraction(s, p**2) for s in S]
    mu = AtomicMeasure.uniform(model, S)
    assert is_hadamard(S, L, model) == check_jp_criterion(mu, L).passed


@settings(max_examples=40)
@given(st.sampled_from([2, 3]), st.data())
def test_completeness_implies_orthogonality(p, data):
    model = FieldModel.padic(p)
    S = data.draw(st.lists(st.integers(0, p**2 - 1), min_size=1, max_size=4, unique=True))
    L = data.draw(st.lists(st.integers(0, p**2 - 1), min_size=1, max_size=5, unique=True))
    mu = AtomicMeasure.uniform(model, [Fraction(s, p**2) for s in S])
    v = check_jp_criterion(mu, L)
    if v.complete_at_samples:
        assert v.orthogonal
    if v.orthogonal:
        # Bessel bound
        assert all(s <= 1 for _, s in v.criterion_sums)


def test_frame_bound_examples():
    a, b = frame_bounds(HALF, [0, 1])
    assert abs(a - 1) < 1e-10 and abs(b - 1) < 1e-10
    a, b = frame_bounds(HALF, [0, 1, 0, 1])
    assert abs(a - 2) < 1e-10 and abs(b - 2) < 1e-10
    a, b = frame_bounds(HALF, [0])
    assert abs(a) < 1e-10 and abs(b - 1) < 1e-10


@settings(max_examples=30)
@given(st.data())
def test_gram_matrix_is_additive_over_partitions(data):
    S = data.draw(st.lists(st.integers(0, 15), min_size=1, max_size=4, unique=True))
    mu = AtomicMeasure.uniform(Q2, [Fraction(s, 4) for s in S])
    L = data.draw(st.lists(st.integers(-20, 20), min_size=2, max_size=6, unique=True))
    cut = data.draw(st.integers(1, len(L) - 1))
    G = gram_matrix(mu, L)
    G1, G2 = gram_matrix(mu, L[:cut]), gram_matrix(mu, L[cut:])
    assert np.allclose(G, G1 + G2, atol=1e-10)
    assert frame_bounds(mu, L)[1] <= frame_bounds(mu, L[:cut])[1] + frame_bounds(mu, L[cut:])[1] + 1e-10


@settings(max_examples=30)
@given(st.data())
def test_frame_bounds_invariant_under_scaling(data):
    S = data.draw(st.lists(st.integers(0, 7), min_size=1, max_size=4, unique=True))
    L = data.draw(st.lists(st.integers(0, 31), min_size=1, max_size=5, unique=True))
    k = data.draw(st.integers(1, 3))
    mu = AtomicMeasure.uniform(Q2, [Fraction(s, 8) for s in S])
    scaled = AtomicMeasure.uniform(Q2, [Fraction(s * 2**k, 8) for s in S])
    L_scaled = [Fraction(x, 2**k) for x in L]
    a, b = frame_bounds(mu, L)
    a2, b2 = frame_bounds(scaled, L_scaled)
    assert abs(a - a2) < 1e-10 and abs(b - b2) < 1e-10


@given(st.integers(-100, 100), st.integers(0, 3), st.integers(-50, 50))
def test_phases_ignore_integer_perturbation(num, k, eta):
    # atoms in the unit ball see lambda and lambda + eta alike for |eta| <= 1
    lam = Q2.vector(Fraction(num, 2**k))
    moved = lam + Q2.vector(eta)
    for s in (0, 1, 3, 7, 12):
        x = Q2.vector(s)
        assert character(lam, x) == character(moved, x)


def test_candidate_spectrum_validation():
    c = CandidateSpectrum.of(Q2, [0, Fraction(1, 2)])
    assert len(c) == 2 and len(c.without(0)) == 1
    with pytest.raises(ValueError):
        CandidateSpectrum.of(Q2, [1, 1])


def test_verdict_json_round_trip():
    v = check_jp_criterion(HALF, [0])
    w = SpectralVerdict.from_json(v.to_json(), Q2)
    assert w.to_json() == v.to_json()
    assert [s for _, s in w.criterion_sums] == [s for _, s in v.criterion_sums]


def test_three_point_orbit_in_q3():
    mu = AtomicMeasure.uniform(Q3, [0, Fraction(1, 3), Fraction(2, 3)])
    assert check_jp_criterion(mu, [0, 1, 2]).passed
    for lam in itertools.combinations(range(-4, 5), 3):
        if check_jp_criterion(mu, lam).passed:
            assert len({x % 3 for x in lam}) == 3
