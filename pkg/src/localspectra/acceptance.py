"""The acceptance suite: ten finite-scale criteria, each returning a
:class:`CriterionResult`.  Used by the CLI and by tests/test_acceptance.py."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .balls import Ball, CompactOpenSet, coset_representatives
from .characters import character
from .cyclic import TileCertificate, find_spectrum_bruteforce, from_mask, triad
from .cyclotomic import CyclotomicSum
from .field import FieldModel, Vector, as_vector
from .fourier import (
    AtomicMeasure,
    FourierValue,
    double_integral_identity,
    double_integral_numeric_check,
    ft_ball_indicator,
)
from .landau import LandauProblem, eigenprojection_check, eigenvalues, landau_eigenvalues, same_spectrum, verify_properties
from .quasilattice import QuasiLattice, density_profile, separation
from .spectra import check_jp_criterion, frame_bounds, is_hadamard

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d}: {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


# -- 1. Fourier identities ------------------------------------------------------


def ball_transform_by_cells(model: FieldModel, a: int, xi) -> FourierValue:
    """``int_{B(0,p^a)} conj chi(x xi) dx`` by summing over cells on which the
    character is constant."""
    p = model.p
    x = as_vector(model, xi)
    e = x.norm_exponent()
    r = a if e == float("-inf") else min(a, -int(e))
    cells = coset_representatives(model, a, r)
    phases = [character(x, c).conjugate() for c in cells]
    return FourierValue(Fraction(p) ** r, CyclotomicSum.from_phases(p, phases))


def _xi_grid(model: FieldModel, a: int, rng: random.Random) -> list:
    p = model.p
    out = [model.zero()]
    for e in range(-a - 2, -a + 3):
        for _ in range(3):
            unit = model.from_digits([rng.randrange(1, p)] + [rng.randrange(p) for _ in range(4)], 0, 40)
            out.append(unit.shift(-e))
    return out


def criterion_fourier(seed: int = SEED) -> CriterionResult:
    rng = random.Random(seed)
    checked = 0
    branches = set()
    bad = []
    for p in (2, 3, 5):
        for model in (FieldModel.padic(p), FieldModel.laurent(p)):
            for a in range(-4, 5):
                for xi in _xi_grid(model, a, rng):
                    got = ft_ball_indicator(model, a, xi)
                    want = ball_transform_by_cells(model, a, xi)
                    branches.add(not got.is_zero())
                    checked += 1
                    if got != want:
                        bad.append({"p": p, "a": a, "field": model.kind.name})
    values = set()
    for p in (2, 3, 5):
        for a in range(-4, 5):
            for b in range(-4, 5):
                v = double_integral_identity(a, b, p)
                values.add("q^(a+b)" if v == Fraction(p) ** (a + b) else "q^(2(a+b))")
                checked += 1
                if v != double_integral_numeric_check(a, b, p):
                    bad.append({"p": p, "a": a, "b": b, "kind": "double integral"})
    ok = not bad and branches == {True, False} and len(values) == 2
    return CriterionResult(1, "Fourier identities", ok, {"checked": checked, "failures": bad[:5]})


# -- 2. quasi-lattice ------------------------------------------------------------


def criterion_quasilattice() -> CriterionResult:
    detail = {}
    ok = True
    for p in (2, 3):
        for model in (FieldModel.padic(p), FieldModel.laurent(p)):
            pts = QuasiLattice(model).enumerate(5)
            sep = separation(pts)
            window = Ball(Vector((model.zero(),)), 5)
            prof = density_profile(pts, window, range(0, 5))
            exact = all(r.sup_count == r.inf_count == p**r.scale for r in prof)
            good = len(pts) == p**5 and sep == p and exact
            ok &= good
            detail[f"{model.kind.name}{p}"] = {"points": len(pts), "separation": str(sep), "uniform_counts": exact}
    return CriterionResult(2, "Quasi-lattice separation and density", ok, detail)


# -- 3. triad sweep ------------------------------------------------------------------


def criterion_triad(threads: int | None = None, crosscheck_limit: int = 9) -> CriterionResult:
    from . import _sweep

    jobs = [(2, 4, None), (2, 3, None), (2, 2, None), (3, 2, None), (3, 3, (3, 9))]
    detail = {}
    ok = True
    for p, n, sizes in jobs:
        t0 = time.perf_counter()
        r = _sweep.sweep(p, n, sizes, threads)
        mismatch = 0
        if p**n <= crosscheck_limit:
            for mask, row in zip(r["masks"], r["table"]):
                rep = triad(from_mask(int(mask)), p, n)
                py = (rep.profile.homogeneous, rep.tile is not None, rep.spectrum is not None)
                mismatch += py != tuple(bool(x) for x in row)
        key = f"Z/{p**n}" + ("" if sizes is None else f" sizes {list(sizes)}")
        detail[key] = {
            "subsets": r["subsets"],
            "homogeneous": r["homogeneous"],
            "tiles": r["tiles"],
            "spectral": r["spectral"],
            "discrepancies": r["discrepancies"],
            "crosscheck_mismatches": mismatch,
            "seconds": round(time.perf_counter() - t0, 2),
        }
        ok &= r["discrepancies"] == 0 and mismatch == 0
    return CriterionResult(3, "Homogeneous, tile and spectral agree", ok, detail)


# -- 4. the {0,3,4,7} example ------------------------------------------------------


def criterion_example() -> CriterionResult:
    T = [0, 3, 4, 7]
    rep = triad(T, 2, 3)
    model = FieldModel.padic(2)
    ok = rep.profile.cards == (2, 2, 4) and rep.tile is not None and rep.spectrum is not None
    detail = {"profile": list(rep.profile.cards)}
    if ok:
        lam = [Fraction(x, 8) for x in rep.spectrum.spectrum]
        had = is_hadamard([model.element(t) for t in T], [model.element(x) for x in lam], model)
        TileCertificate(rep.tile.T, rep.tile.complement, 2, 3)
        detail.update(complement=list(rep.tile.complement), spectrum=list(rep.spectrum.spectrum), hadamard=had)
        ok = had
    return CriterionResult(4, "Example set {0,3,4,7} in Z/8", ok, detail)


# -- 5. finite spectral pairs --------------------------------------------------------


def random_homogeneous_set(p: int, n: int, rng: random.Random) -> list[int]:
    """Residue tree with full branching on a random set of levels and random
    (prefix-dependent) digits elsewhere."""
    full = [rng.random() < 0.5 for _ in range(n)]
    if not any(full):
        full[rng.randrange(n)] = True
    pts = [0]
    for i in range(n):
        nxt = []
        for x in pts:
            digits = range(p) if full[i] else [rng.randrange(p)]
            nxt.extend(x + d * p**i for d in digits)
        pts = nxt
    shift = rng.randrange(p**n)
    return sorted((x + shift) % p**n for x in pts)


def spectral_pairs(count: int = 100, seed: int = SEED) -> list[tuple[int, int, list[int], list[int]]]:
    """``(p, n, T, Lambda)`` with Lambda found by the Hadamard search."""
    rng = random.Random(seed)
    out = []
    seen = set()
    shapes = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (2, 5)]
    while len(out) < count:
        p, n = rng.choice(shapes)
        T = random_homogeneous_set(p, n, rng)
        if (p, n, tuple(T)) in seen:
            continue
        seen.add((p, n, tuple(T)))
        cert = find_spectrum_bruteforce(T, p, n)
        if cert is not None:
            out.append((p, n, T, list(cert.spectrum)))
    return out


def _pair_objects(p: int, n: int, T: list[int], lam: list[int], model: FieldModel | None = None):
    model = model or FieldModel.padic(p)
    mu = AtomicMeasure.uniform(model, T)
    pts = [Vector((model.element(Fraction(x, p**n)),)) for x in lam]
    return mu, pts


def criterion_jp(pairs=None) -> CriterionResult:
    pairs = pairs or spectral_pairs()
    rng = random.Random(SEED + 5)
    ok = True
    bad = []
    for p, n, T, lam in pairs:
        mu, pts = _pair_objects(p, n, T, lam)
        v = check_jp_criterion(mu, pts)
        good = v.passed and all(s == 1 for _, s in v.criterion_sums)
        i = rng.randrange(len(pts))
        w = check_jp_criterion(mu, pts[:i] + pts[i + 1 :])
        deficient = any(s < 1 for _, s in w.criterion_sums) and all(s <= 1 for _, s in w.criterion_sums)
        if not (good and deficient):
            ok = False
            bad.append({"p": p, "n": n, "T": T, "spectrum": lam})
    return CriterionResult(5, "Completeness criterion on 100 spectral pairs", ok, {"pairs": len(pairs), "failures": bad[:3]})


# -- 6. Landau ball case ------------------------------------------------------------------


def criterion_landau_balls() -> CriterionResult:
    ok = True
    cases = 0
    bad = []
    for q in (2, 3):
        model = FieldModel.padic(q)
        for a in range(-2, 4):
            for b in range(-2, 4):
                if not 0 <= a + b <= 3:
                    continue
                cases += 1
                prob = LandauProblem(CompactOpenSet.ball(model, 0, b), CompactOpenSet.ball(model, 0, a))
                rep = eigenvalues(prob)
                mult = rep.multiplicity_of_one == q ** (a + b)
                rest = all(abs(x) < rep.tolerance for x in rep.eigenvalues if abs(x - 1) > rep.tolerance)
                vec = eigenprojection_check(a, b, q)
                if not (mult and rest and vec):
                    ok = False
                    bad.append({"q": q, "a": a, "b": b})
    return CriterionResult(6, "Landau operator on balls", ok, {"cases": cases, "failures": bad})


# -- 7. Landau property suite ---------------------------------------------------------------


def ball_union_corpus(count: int = 24, seed: int = SEED) -> list[LandauProblem]:
    """Random unions of balls with ``a + b >= 0``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice((2, 3))
        model = FieldModel.padic(p)
        b = rng.randint(-1, 2)
        a = rng.randint(-b, -b + 1)

        def centers(r, k):
            # distinct balls of radius p^r inside B(0, p^{r+2})
            reps = coset_representatives(model, r + 2, r)
            return [c[0] for c in rng.sample(reps, min(k, len(reps)))]

        omega = CompactOpenSet.from_centers(model, b, centers(b, rng.randint(1, 2)))
        delta = CompactOpenSet.from_centers(model, a, centers(a, rng.randint(2, 3)))
        out.append(LandauProblem(omega, delta))
    return out


def criterion_landau_properties(count: int = 24) -> CriterionResult:
    corpus = ball_union_corpus(count)
    ok = True
    bad = []
    for prob in corpus:
        rep = verify_properties(prob)
        ev = eigenvalues(prob)
        ones = Fraction(ev.multiplicity_of_one) == prob.omega.measure() * prob.delta.measure()
        dual = same_spectrum(ev.eigenvalues, landau_eigenvalues(prob))
        refined = same_spectrum(ev.eigenvalues, eigenvalues(prob, ev.grid_scale + 1).eigenvalues)
        if not (rep.passed and ev.dichotomy() and ones and dual and refined):
            ok = False
            failed = [k for k, v in rep.results.items() if not v["ok"]]
            bad.append({"problem": prob.to_json(), "failed": failed, "dichotomy": ev.dichotomy(), "ones": ones, "dual": dual})
    return CriterionResult(7, "Landau property suite", ok, {"problems": len(corpus), "failures": bad[:3]})


# -- 8. perturbation exactness -------------------------------------------------------------


def _random_integer(model: FieldModel, rng: random.Random, v_min: int = 0):
    digits = [rng.randrange(model.p) for _ in range(12)]
    return model.from_digits(digits, rng.randint(v_min, v_min + 3), v_min + 40)


def criterion_perturbation(trials: int = 1000, pairs=None) -> CriterionResult:
    rng = random.Random(SEED + 8)
    pairs = pairs or spectral_pairs()
    phases_ok = True
    frames_ok = True
    for i in range(trials):
        p = (2, 3, 5)[i % 3]
        model = FieldModel.padic(p) if i % 2 == 0 else FieldModel.laurent(p)
        lam = _random_integer(model, rng, -rng.randint(0, 6))
        eta = _random_integer(model, rng)
        x = _random_integer(model, rng)
        if character(lam + eta, x) != character(lam, x):
            phases_ok = False
        if i % 10 == 0:
            q, n, T, spec = pairs[(i // 10) % len(pairs)]
            mu, pts = _pair_objects(q, n, T, spec)
            moved = [v + Vector((_random_integer(mu.model, rng),)) for v in pts]
            if frame_bounds(mu, pts) != frame_bounds(mu, moved):
                frames_ok = False
    detail = {"trials": trials, "phases_identical": phases_ok, "frame_bounds_identical": frames_ok}
    return CriterionResult(8, "Perturbation by integers is invisible", phases_ok and frames_ok, detail)


# -- 9. self-similar measure ---------------------------------------------------------------


def criterion_selfsimilar(depth: int = 3) -> CriterionResult:
    from .selfsimilar import IfsSpec, dimension_ratio, run_depths

    spec = IfsSpec(2, 3, (0, 3, 4, 7))
    ratio = dimension_ratio(spec)
    ok = ratio.exact() == Fraction(2, 3)
    detail: dict = {"dimension": str(ratio.exact()), "depths": []}
    for rep in run_depths(spec, depth):
        detail["depths"].append(
            {
                "depth": rep.depth,
                "homogeneous": rep.homogeneous,
                "spectrum_found": rep.spectrum is not None,
                "complete": bool(rep.verdict and rep.verdict.passed),
                "limit_orthogonal": rep.limit_orthogonal,
                "bessel_bounded": rep.bessel_ok,
            }
        )
        ok &= rep.passed
    return CriterionResult(9, "Self-similar measure with digits {0,3,4,7}", ok, detail)


# -- 10. frame bounds -------------------------------------------------------------------------


def criterion_frames(pairs=None) -> CriterionResult:
    pairs = pairs or spectral_pairs()
    tol = 1e-10
    ok = True
    worst = 0.0
    for p, n, T, lam in pairs:
        mu, pts = _pair_objects(p, n, T, lam)
        A, B = frame_bounds(mu, pts)
        worst = max(worst, abs(A - 1), abs(B - 1))
        ok &= abs(A - 1) <= tol and abs(B - 1) <= tol
    p, n, T, lam = pairs[0]
    mu, pts = _pair_objects(p, n, T, lam)
    one = Vector((mu.model.one(),))
    A2, B2 = frame_bounds(mu, pts + [v + one for v in pts])
    ok &= abs(A2 - 2) <= tol and abs(B2 - 2) <= tol
    return CriterionResult(10, "Frame bounds of spectra", ok, {"pairs": len(pairs), "max_deviation": worst, "duplicated": [A2, B2]})


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_fourier,
    2: criterion_quasilattice,
    3: criterion_triad,
    4: criterion_example,
    5: criterion_jp,
    6: criterion_landau_balls,
    7: criterion_landau_properties,
    8: criterion_perturbation,
    9: criterion_selfsimilar,
    10: criterion_frames,
}


def run_criterion(k: int, **kwargs) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[k](**kwargs)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(only=None, threads: int | None = None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for k in sorted(CRITERIA):
        if only and k not in only:
            continue
        res = run_criterion(k, threads=threads) if k == 3 else run_criterion(k)
        if echo:
            echo(res.line())
        out.append(res)
    return out
