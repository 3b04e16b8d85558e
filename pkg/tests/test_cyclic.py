import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localspectra._sweep import classify_masks, k_subsets, sweep
from localspectra.cyclic import (
    HadamardCertificate,
    TileCertificate,
    TriadReport,
    find_spectrum_bruteforce,
    from_mask,
    homogeneity_profile,
    is_tile_bruteforce,
    to_mask,
    triad,
    zero_set_residues,
)
from localspectra.errors import CertificateError, SearchBudgetExceeded

from oracles import is_homogeneous_tree, is_spectral_exhaustive, is_tile_exhaustive


def test_homogeneity_examples():
    h = homogeneity_profile([0, 3, 4, 7], 2, 3)
    assert h.cards == (2, 2, 4) and h.exponents == (1, 1, 2) and h.homogeneous
    h = homogeneity_profile([0, 1, 2], 2, 2)
    assert h.cards == (2, 3) and not h.homogeneous
    assert homogeneity_profile(range(27), 3, 3).cards == (3, 9, 27)


def test_tile_examples():
    assert is_tile_bruteforce([0, 3, 4, 7], 2, 3).complement == (0, 2)
    assert is_tile_bruteforce([0, 1, 2], 2, 2) is None
    assert is_tile_bruteforce([0], 3, 2).complement == tuple(range(9))


def test_spectrum_examples():
    assert find_spectrum_bruteforce([0, 3, 4, 7], 2, 3).spectrum == (0, 1, 4, 5)
    assert zero_set_residues([0, 1, 2], 2, 2) == []
    assert find_spectrum_bruteforce([0, 1, 2], 2, 2) is None
    assert find_spectrum_bruteforce([5], 2, 3).spectrum == (0,)
    assert find_spectrum_bruteforce([0, 3, 4, 7], 2, 3, required=[4]).spectrum == (0, 1, 4, 5)
    assert find_spectrum_bruteforce([0, 3, 4, 7], 2, 3, required=[2]) is None


def test_certificates_verify_on_construction():
    with pytest.raises(CertificateError):
        TileCertificate((0, 1), (0, 1), 2, 2)
    with pytest.raises(CertificateError):
        HadamardCertificate((0, 1), (0, 1), 2, 2)


def test_budget():
    with pytest.raises(SearchBudgetExceeded):
        triad(range(0, 32, 2), 2, 5, budget=1)


def test_triad_report_round_trip():
    r = triad([0, 3, 4, 7], 2, 3)
    assert r.consistent
    assert TriadReport.from_json(r.to_json()).to_json() == r.to_json()
    bad = r.to_json()
    bad["spectrum"] = [0, 1, 2, 3]
    with pytest.raises(CertificateError):
        TriadReport.from_json(bad)


def test_masks():
    assert from_mask(to_mask([0, 3, 4, 7], 8)) == [0, 3, 4, 7]


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_search_matches_exhaustive_oracles(p, n):
    N = p**n
    for k in range(1, N + 1):
        for T in itertools.combinations(range(N), k):
            r = triad(T, p, n)
            assert (r.tile is not None) == is_tile_exhaustive(T, N)
            assert (r.spectrum is not None) == is_spectral_exhaustive(T, N)
            assert r.profile.homogeneous == is_homogeneous_tree(T, p, n)


@settings(max_examples=80)
@given(st.sampled_from([(2, 4), (3, 2)]), st.data())
def test_search_matches_oracles_on_random_sets(pn, data):
    p, n = pn
    N = p**n
    T = data.draw(st.lists(st.integers(0, N - 1), min_size=1, max_size=6, unique=True))
    r = triad(T, p, n)
    assert (r.tile is not None) == is_tile_exhaustive(T, N)
    assert (r.spectrum is not None) == is_spectral_exhaustive(T, N)
    assert r.profile.homogeneous == is_homogeneous_tree(T, p, n)
    assert r.consistent


@pytest.mark.parametrize("p,n", [(2, 2), (3, 1), (2, 3), (3, 2)])
def test_compiled_sweep_matches_reference_search(p, n):
    N = p**n
    res = sweep(p, n)
    assert res["subsets"] == 2**N - 1
    assert res["discrepancies"] == 0
    for mask, row in zip(res["masks"], res["table"]):
        T = from_mask(int(mask))
        r = triad(T, p, n)
        assert tuple(bool(x) for x in row) == (
            r.profile.homogeneous,
            r.tile is not None,
            r.spectrum is not None,
        )


def test_sweep_thread_count_does_not_change_output():
    masks = k_subsets(16, 4)
    a = classify_masks(masks, 2, 4, threads=1)
    b = classify_masks(masks, 2, 4, threads=4)
    assert (a == b).all()
