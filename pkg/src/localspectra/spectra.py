"""Spectral-pair verification: orthogonality, the completeness criterion
``sum_lambda |mu_hat(lambda - xi)|^2 = 1``, Hadamard matrices and frame bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .balls import Ball, CompactOpenSet, coset_representatives
from .characters import character
from .cyclotomic import CyclotomicSum
from .errors import ModelMismatchError
from .field import INF, FieldModel, Vector, as_vector
from .fourier import (
    AtomicMeasure,
    SelfSimilarMeasure,
    UniformCompactOpen,
    fourier_transform,
)
from .serialize import format_point


@dataclass(frozen=True)
class CandidateSpectrum:
    """Finitely many pairwise distinct dual points."""

    points: tuple[Vector, ...]
    scale: int | None = None

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if pts:
            m, d = pts[0].model, pts[0].dimension
            if any(v.model != m or v.dimension != d for v in pts):
                raise ModelMismatchError("spectrum points from different spaces")
            keys = {_point_key(v) for v in pts}
            if len(keys) != len(pts):
                raise ValueError("spectrum points must be pairwise distinct")

    @classmethod
    def of(cls, model: FieldModel, points: Iterable, scale: int | None = None) -> "CandidateSpectrum":
        return cls(tuple(as_vector(model, x) for x in points), scale)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def without(self, i: int) -> "CandidateSpectrum":
        return CandidateSpectrum(self.points[:i] + self.points[i + 1 :], self.scale)


def _point_key(v: Vector) -> tuple:
    return tuple((c.valuation, c.digits) if not c.is_zero() else (INF, ()) for c in v)


def _as_points(model: FieldModel, lam) -> tuple[Vector, ...]:
    if isinstance(lam, CandidateSpectrum):
        return lam.points
    return tuple(as_vector(model, x) for x in lam)


def _cyclo_json(x: CyclotomicSum) -> Any:
    f = x.as_fraction()
    if f is not None:
        return str(f)
    c = complex(x)
    return {
        "phases": [[k, m, str(coef)] for k, m, coef in x.terms()],
        "float_approx": [round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0],
    }


@dataclass
class SpectralVerdict:
    orthogonal: bool
    criterion_sums: list[tuple[Vector, CyclotomicSum]]
    complete_at_samples: bool
    witnesses: list[dict] = field(default_factory=list)
    label: str = ""
    target: Fraction = Fraction(1)

    @property
    def passed(self) -> bool:
        return self.orthogonal and self.complete_at_samples

    def to_json(self) -> dict:
        return {
            "orthogonal": self.orthogonal,
            "complete_at_samples": self.complete_at_samples,
            "sums": [{"xi": format_point(xi), "value": _cyclo_json(v)} for xi, v in self.criterion_sums],
            "witnesses": self.witnesses,
            "label": self.label,
            "target": str(self.target),
        }

    @classmethod
    def from_json(cls, data: dict, model: FieldModel) -> "SpectralVerdict":
        from .grammar import parse_point
        from .serialize import cyclotomic_from_json

        sums = [
            (parse_point(str(s["xi"]), model), cyclotomic_from_json(model.p, s["value"]))
            for s in data["sums"]
        ]
        return cls(
            data["orthogonal"],
            sums,
            data["complete_at_samples"],
            list(data["witnesses"]),
            data["label"],
            Fraction(data["target"]),
        )


@dataclass(frozen=True)
class Orthogonality:
    orthogonal: bool
    witness: tuple[Vector, Vector] | None = None

    def __bool__(self) -> bool:
        return self.orthogonal

    def to_json(self) -> dict:
        w = None if self.witness is None else [format_point(x) for x in self.witness]
        return {"orthogonal": self.orthogonal, "witness": w}


# -- local constancy -------------------------------------------------------


def dual_period(mu) -> int:
    """n such that mu_hat is constant on cosets of ``B(0, p^n)``."""
    if isinstance(mu, AtomicMeasure):
        r = max(v.norm_exponent() for v in mu.points)
        return 0 if r == -INF else -int(r)
    if isinstance(mu, (UniformCompactOpen, CompactOpenSet)):
        O = mu.set if isinstance(mu, UniformCompactOpen) else mu
        r = max([O.scale] + [v.norm_exponent() for v in O.centers if v.norm_exponent() != -INF])
        return -int(r)
    if isinstance(mu, SelfSimilarMeasure):
        return 0
    raise TypeError(f"unsupported measure {type(mu).__name__}")


def _model(mu) -> FieldModel:
    return mu.set.model if isinstance(mu, UniformCompactOpen) else mu.model


def _dimension(mu) -> int:
    return mu.dimension


def default_sample_exponent(mu, points: Sequence[Vector]) -> int:
    """Outer radius exponent M of the default residue samples.

    Covers the spectrum and, for atomic measures, is large enough that the
    sampled characters separate the atoms (so they span L^2(mu)); the sample set
    ``B(0, p^M) / B(0, p^n)`` then decides spectrality of a finite pair.
    """
    n = dual_period(mu)
    M = max([n] + [int(v.norm_exponent()) for v in points if v.norm_exponent() != -INF])
    if isinstance(mu, AtomicMeasure) and len(mu.points) > 1:
        sep = min(
            (mu.points[i] - mu.points[j]).norm_exponent()
            for i in range(len(mu.points))
            for j in range(i + 1, len(mu.points))
        )
        M = max(M, 1 - int(sep))
    return M


def residue_samples(model: FieldModel, outer: int, inner: int, dimension: int = 1) -> list[Vector]:
    return coset_representatives(model, outer, inner, dimension)


class _TransformCache:
    """|mu_hat|^2 memoized on residues modulo the dual period."""

    def __init__(self, mu):
        self.mu = mu
        self.n = dual_period(mu)
        self.values: dict = {}
        self.squares: dict = {}

    def key(self, x: Vector):
        return Ball(x, self.n).key()

    def ft(self, x: Vector):
        k = self.key(x)
        hit = self.values.get(k)
        if hit is None:
            hit = self.values[k] = fourier_transform(self.mu, x)
        return hit

    def abs2(self, x: Vector) -> CyclotomicSum:
        k = self.key(x)
        hit = self.squares.get(k)
        if hit is None:
            hit = self.squares[k] = self.ft(x).abs_squared()
        return hit


# -- checks -------------------------------------------------------------------


def check_orthogonality(mu, lam, cache: _TransformCache | None = None) -> Orthogonality:
    """True iff mu_hat vanishes at every nonzero difference of ``lam``."""
    model = _model(mu)
    pts = _as_points(model, lam)
    cache = cache or _TransformCache(mu)
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i != j and not cache.ft(pts[i] - pts[j]).is_zero():
                return Orthogonality(False, (pts[i], pts[j]))
    return Orthogonality(True)


def _criterion(mu, pts, samples, target, label, scale_sq: Fraction) -> SpectralVerdict:
    model = _model(mu)
    p = model.p
    cache = _TransformCache(mu)
    orth = check_orthogonality(mu, pts, cache)
    sums = []
    witnesses: list[dict] = []
    if not orth:
        witnesses.append({"kind": "pair", "pair": [format_point(x) for x in orth.witness]})
    complete = True
    for xi in samples:
        terms = [cache.abs2(lam - xi) for lam in pts]
        total = CyclotomicSum.sum(p, terms) * scale_sq
        sums.append((xi, total))
        if total != target:
            if complete:
                witnesses.append({"kind": "xi", "xi": format_point(xi), "sum": _cyclo_json(total)})
            complete = False
    return SpectralVerdict(orth.orthogonal, sums, complete, witnesses, label, Fraction(target))


def check_jp_criterion(mu, lam, samples: Sequence | None = None, label: str | None = None) -> SpectralVerdict:
    """Exact sums ``sum_lambda |mu_hat(lambda - xi)|^2`` at each sample xi.

    Without explicit samples every residue of ``B(0, p^M) / B(0, p^n)`` is
    used (``n`` the dual period, ``M`` from :func:`default_sample_exponent`),
    which for an atomic measure with a finite candidate makes the check a
    complete decision.
    """
    model = _model(mu)
    pts = _as_points(model, lam)
    if samples is None:
        n = dual_period(mu)
        M = default_sample_exponent(mu, pts)
        samples = residue_samples(model, M, n, _dimension(mu))
        label = label or f"all residues of B(0,{model.p}^{M}) mod B(0,{model.p}^{n})"
    else:
        samples = [as_vector(model, x) for x in samples]
        if not samples:
            raise ValueError("samples must be nonempty")
        label = label or "at given samples"
    return _criterion(mu, pts, samples, Fraction(1), label, Fraction(1))


def check_spectral_set(O: CompactOpenSet, lam, samples: Sequence | None = None) -> SpectralVerdict:
    """Sums ``sum_lambda |1_hat_O(lambda - xi)|^2`` compared with ``m(O)^2``."""
    mu = UniformCompactOpen(O) if O.balls else None
    model = O.model if O.balls else None
    if mu is None:
        raise ValueError("empty set")
    pts = _as_points(model, lam)
    if samples is None:
        n = dual_period(mu)
        M = default_sample_exponent(mu, pts)
        samples = residue_samples(model, M, n, O.dimension)
        label = f"all residues of B(0,{model.p}^{M}) mod B(0,{model.p}^{n})"
    else:
        samples = [as_vector(model, x) for x in samples]
        label = "at given samples"
    m = O.measure()
    return _criterion(mu, pts, samples, m * m, label, m * m)


def hadamard_matrix(S: Sequence, lam: Sequence, model: FieldModel | None = None):
    model = model or next(x.model for x in list(S) + list(lam) if isinstance(x, Vector))
    S = [as_vector(model, s) for s in S]
    lam = [as_vector(model, x) for x in lam]
    return [[character(l, s) for s in S] for l in lam]


def is_hadamard(S: Sequence, lam: Sequence, model: FieldModel | None = None) -> bool:
    """Exact test of ``H H^* = n I`` for ``H = (chi(lambda . s))``."""
    S, lam = list(S), list(lam)
    if len(S) != len(lam):
        raise ValueError("need |S| == |Lambda|")
    H = hadamard_matrix(S, lam, model)
    p = H[0][0].p if H else 2
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            row = [a * b.conjugate() for a, b in zip(H[i], H[j])]
            if not CyclotomicSum.from_phases(p, row).is_zero():
                return False
    return True


def gram_matrix(mu: AtomicMeasure, lam: Sequence) -> np.ndarray:
    """``G = sum_lambda v_lambda v_lambda^*`` with ``v[s] = sqrt(w_s) conj chi(lambda . s)``."""
    pts = _as_points(mu.model, lam)
    n = len(mu.points)
    w = np.sqrt(np.array([float(x) for x in mu.weights]))
    G = np.zeros((n, n), dtype=complex)
    for l in pts:
        v = w * np.array([complex(character(l, s).conjugate()) for s in mu.points])
        G += np.outer(v, v.conj())
    return G


def frame_bounds(mu: AtomicMeasure, lam: Sequence) -> tuple[float, float]:
    """Optimal frame bounds (A, B) of ``{chi_lambda}`` in ``L^2(mu)``."""
    if not len(mu.points):
        raise ValueError("empty measure")
    ev = np.linalg.eigvalsh(gram_matrix(mu, lam))
    return float(ev[0]), float(ev[-1])
