"""Uniform self-similar measures on Q_p for the maps ``x -> p^s x + c``.

The attractor is ``{sum_j c_j p^{sj}}``; its depth-n truncation is the
integer set ``C_n`` of sums with n digits, read in ``Z/p^{sn}Z``.  A spectrum
``Lambda`` of the uniform measure on ``C_n`` in that group becomes the dual
point set ``Lambda / p^{sn}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import find_spectrum_bruteforce, homogeneity_profile
from .cyclotomic import CyclotomicSum
from .errors import InvalidSetError
from .field import FieldModel, as_vector
from .fourier import AtomicMeasure, SelfSimilarMeasure
from .spectra import SpectralVerdict, _TransformCache, check_jp_criterion, check_orthogonality, residue_samples

MAX_POINTS = 256


@dataclass(frozen=True)
class IfsSpec:
    p: int
    s: int
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(c) for c in self.digits))
        # validation lives in SelfSimilarMeasure
        self.measure()

    def model(self) -> FieldModel:
        return FieldModel.padic(self.p)

    def measure(self) -> SelfSimilarMeasure:
        return SelfSimilarMeasure(self.model(), self.s, self.digits)


def cylinder_set(spec: IfsSpec, n: int) -> list[int]:
    """``C_n = {c_0 + p^s c_1 + ... + p^{s(n-1)} c_{n-1}}`` as sorted residues mod ``p^{sn}``."""
    if n < 1:
        raise ValueError("depth must be >= 1")
    q = spec.p**spec.s
    pts = [0]
    for j in range(n):
        pts = [x + q**j * c for x in pts for c in spec.digits]
    if len(set(pts)) != len(pts):
        raise InvalidSetError("digit expansions collide")
    return sorted(pts)


def _minimal_root(n: int) -> tuple[int, int]:
    """``(r, k)`` with ``n = r^k`` and k as large as possible."""
    for k in range(n.bit_length(), 1, -1):
        r = round(n ** (1 / k))
        for c in (r - 1, r, r + 1):
            if c > 1 and c**k == n:
                return c, k
    return n, 1


@dataclass(frozen=True)
class LogRatio:
    """``log(num) / log(den)``, kept symbolic."""

    num: int
    den: int

    def exact(self) -> Fraction | None:
        """The ratio as a rational when num and den are powers of a common base."""
        if self.num == 1:
            return Fraction(0)
        r1, k1 = _minimal_root(self.num)
        r2, k2 = _minimal_root(self.den)
        return Fraction(k1, k2) if r1 == r2 else None

    def __float__(self) -> float:
        return math.log(self.num) / math.log(self.den)

    def __str__(self) -> str:
        return f"log {self.num}/log {self.den}"


def dimension_ratio(spec: IfsSpec) -> LogRatio:
    return LogRatio(len(spec.digits), spec.p**spec.s)


def dimension(spec: IfsSpec) -> float:
    """Similarity dimension ``log|C| / (s log p)``."""
    return float(dimension_ratio(spec))


def truncated_spectrum(
    spec: IfsSpec,
    n: int,
    previous: list[int] | None = None,
    budget: int | None = None,
    max_points: int = MAX_POINTS,
) -> list[int] | None:
    """Spectrum of the uniform measure on ``C_n`` inside ``Z/p^{sn}Z``.

    Tries first to extend ``p^s * previous`` (a depth ``n-1`` spectrum), then
    searches without constraint.  Returns integers; divide by ``p^{sn}`` for
    the dual points.
    """
    C = cylinder_set(spec, n)
    if len(C) > max_points:
        raise ValueError(f"|C_n| = {len(C)} exceeds {max_points}")
    q = spec.p**spec.s
    if previous:
        cert = find_spectrum_bruteforce(C, spec.p, spec.s * n, required=[q * x for x in previous], budget=budget)
        if cert is not None:
            return list(cert.spectrum)
    cert = find_spectrum_bruteforce(C, spec.p, spec.s * n, budget=budget)
    return None if cert is None else list(cert.spectrum)


def dual_points(spec: IfsSpec, n: int, lam: list[int]) -> list:
    model = spec.model()
    N = spec.p ** (spec.s * n)
    return [as_vector(model, Fraction(x, N)) for x in lam]


@dataclass
class DepthReport:
    depth: int
    cylinder_size: int
    homogeneous: bool
    spectrum: list[int] | None
    verdict: SpectralVerdict | None
    limit_orthogonal: bool | None
    bessel_max: CyclotomicSum | None
    bessel_ok: bool | None
    dimension: float
    bessel_samples: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.homogeneous and self.verdict and self.verdict.passed and self.limit_orthogonal and self.bessel_ok)

    def to_json(self, modulus: int | None = None) -> dict:
        spec = None
        if self.spectrum is not None:
            spec = [str(Fraction(x, modulus)) if modulus else x for x in self.spectrum]
        return {
            "depth": self.depth,
            "cylinder_size": self.cylinder_size,
            "homogeneous": self.homogeneous,
            "spectrum": spec,
            "verdict": None
            if self.verdict is None
            else {
                "orthogonal": self.verdict.orthogonal,
                "complete": self.verdict.complete_at_samples,
                "samples": len(self.verdict.criterion_sums),
                "label": self.verdict.label,
                "witnesses": self.verdict.witnesses,
            },
            "limit_orthogonal": self.limit_orthogonal,
            "bessel": None
            if self.bessel_max is None
            else {"max_sum": round(complex(self.bessel_max).real, 12), "bounded": self.bessel_ok, "samples": self.bessel_samples},
            "dimension": self.dimension,
        }


def bessel_sums(spec: IfsSpec, n: int, lam: list[int], outer: int | None = None) -> tuple[CyclotomicSum, bool, int]:
    """Largest ``sum_lambda |mu_hat(lambda - xi)|^2`` for the limit measure over
    ``xi`` in ``B(0, p^outer) / B(0, 1)``, and whether every sum is <= 1."""
    mu = spec.measure()
    model = mu.model
    outer = spec.s * n if outer is None else outer
    pts = dual_points(spec, n, lam)
    cache = _TransformCache(mu)
    best = None
    ok = True
    samples = residue_samples(model, outer, 0)
    for xi in samples:
        total = CyclotomicSum.sum(model.p, [cache.abs2(x - xi) for x in pts])
        if total > 1:
            ok = False
        if best is None or total > best:
            best = total
    return best, ok, len(samples)


def verify_depth(spec: IfsSpec, n: int, lam: list[int] | None = None, bessel_outer: int | None = None) -> DepthReport:
    """Exact checks of a depth-n truncated spectrum.

    * the uniform measure on ``C_n`` with ``Lambda / p^{sn}`` passes the
      completeness criterion at every residue;
    * ``Lambda / p^{sn}`` is orthogonal for the limit measure;
    * the limit-measure sums are bounded by 1 on sampled xi.
    """
    C = cylinder_set(spec, n)
    homogeneous = homogeneity_profile(C, spec.p, spec.s * n).homogeneous
    if lam is None:
        lam = truncated_spectrum(spec, n)
    dim = dimension(spec)
    if lam is None:
        return DepthReport(n, len(C), homogeneous, None, None, None, None, None, dim)
    model = spec.model()
    atoms = AtomicMeasure.uniform(model, C)
    pts = dual_points(spec, n, lam)
    verdict = check_jp_criterion(atoms, pts)
    limit = check_orthogonality(spec.measure(), pts).orthogonal
    best, ok, count = bessel_sums(spec, n, lam, bessel_outer)
    return DepthReport(n, len(C), homogeneous, lam, verdict, limit, best, ok, dim, count)


def run_depths(spec: IfsSpec, depth: int, budget: int | None = None) -> list[DepthReport]:
    """Nested spectra and verification for depths 1..depth."""
    out = []
    prev = None
    for n in range(1, depth + 1):
        lam = truncated_spectrum(spec, n, prev, budget)
        out.append(verify_depth(spec, n, lam))
        prev = lam
    return out
