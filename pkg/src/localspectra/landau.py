"""Landau operators for compact open sets in one dimension.

For ``Omega`` in A_b with centers y_j and ``Delta`` in A_a:

* ``L# = P_Delta T_Omega P_Delta`` has kernel ``1_hat_Omega(xi - t)`` on
  ``Delta x Delta``.  On functions constant on cells of radius ``p^{-m}``,
  ``m >= max(b, -a, log_p |y_j|)``, that kernel is constant on cell pairs,
  so the matrix ``p^{-m} 1_hat_Omega(c - c')`` carries the whole nonzero
  spectrum (the operator vanishes on functions with zero cell means).
* ``L = T_Omega P_Delta T_Omega`` has kernel
  ``K(eta, xi) = int 1_Delta(t) 1_hat_Omega(eta - t) conj(1_hat_Omega(xi - t)) dt``,
  supported on ``Delta + B(0, p^{-b})``; it is assembled on that set.

Eigenvalues come from a dense Hermitian eigensolver; traces and Frobenius
norms are computed in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .balls import Ball, CompactOpenSet, within
from .characters import character
from .cyclotomic import CyclotomicSum
from .errors import InvalidSetError
from .field import INF, FieldModel, Vector, as_element, as_vector
from .fourier import FourierValue, ft_compact_open

TOL = 1e-9


@dataclass(frozen=True)
class LandauProblem:
    omega: CompactOpenSet
    delta: CompactOpenSet

    def __post_init__(self):
        if not self.omega.balls:
            raise InvalidSetError("Omega must be nonempty")
        if self.delta.balls and self.omega.model != self.delta.model:
            raise InvalidSetError("Omega and Delta live over different fields")
        if self.omega.dimension != 1 or self.delta.dimension != 1:
            raise InvalidSetError("Landau operators are implemented for d = 1")

    @property
    def model(self) -> FieldModel:
        return self.omega.model

    @property
    def p(self) -> int:
        return self.model.p

    @property
    def a(self) -> int:
        return self.delta.scale

    @property
    def b(self) -> int:
        return self.omega.scale

    @property
    def empty(self) -> bool:
        """Delta is empty: every operator is the zero map on a zero space."""
        return not self.delta.balls

    def swapped(self) -> "LandauProblem":
        return LandauProblem(self.delta, self.omega)

    def to_json(self) -> dict:
        from .serialize import format_point

        return {
            "omega": {"scale": self.b, "centers": [format_point(c) for c in self.omega.centers]},
            "delta": {"scale": self.a, "centers": [format_point(c) for c in self.delta.centers]},
        }


@dataclass(frozen=True)
class CellGrid:
    """Decomposition of a compact open set into balls of radius ``p^{-m}``."""

    m: int
    cells: tuple[Vector, ...]

    @property
    def size(self) -> int:
        return len(self.cells)


def minimal_grid_scale(problem: LandauProblem) -> int:
    ys = [int(v.norm_exponent()) for v in problem.omega.centers if v.norm_exponent() != -INF]
    lower = [] if problem.empty else [-problem.a]
    return max([problem.b] + lower + ys)


def cell_grid(problem: LandauProblem, m: int | None = None, region: CompactOpenSet | None = None) -> CellGrid:
    m0 = minimal_grid_scale(problem)
    if m is None:
        m = m0
    if m < m0:
        raise InvalidSetError(f"grid scale {m} is too coarse; need m >= {m0}")
    region = region or problem.delta
    if not region.balls:
        return CellGrid(m, ())
    if -m > region.scale:
        raise InvalidSetError("cells must not exceed the region's balls")
    return CellGrid(m, tuple(region.refine(-m).centers))


# -- exact kernel ------------------------------------------------------------


def kernel(problem: LandauProblem, eta, xi) -> FourierValue:
    """``K(eta, xi)`` in closed form.

    Expanding 1_hat_Omega by its ball formula gives
    ``p^{2b} sum_{j,k} chi(xi y_k - eta y_j) int_D chi(t (y_j - y_k)) dt`` with
    ``D = Delta ∩ B(eta, p^{-b}) ∩ B(xi, p^{-b})``; each ball ``B(c, p^r)`` of D
    contributes ``chi(c w) p^r 1(|w| <= p^{-r})``.
    """
    model = problem.model
    p = problem.p
    eta = as_vector(model, eta)
    xi = as_vector(model, xi)
    b = problem.b
    if problem.empty or not within(eta - xi, -b):
        return FourierValue.rational(p, 0)
    window = Ball(eta, -b)
    pieces = [d for d in (window.intersect(B) for B in problem.delta.balls) if d is not None]
    if not pieces:
        return FourierValue.rational(p, 0)
    ys = problem.omega.centers
    terms = []
    for yj in ys:
        for yk in ys:
            w = yj - yk
            outer = character(xi, yk) * character(eta, yj).conjugate()
            for D in pieces:
                r = D.radius_exp
                if within(w, -r):
                    terms.append((outer * character(D.center, w), Fraction(p) ** r))
    if not terms:
        return FourierValue.rational(p, 0)
    # common radius: all pieces share min(a, -b)
    weights = [wt for _, wt in terms]
    s = CyclotomicSum.from_phases(p, [ph for ph, _ in terms], weights)
    return FourierValue(Fraction(p) ** (2 * b), s)


def kernel_by_cells(problem: LandauProblem, eta, xi, m: int | None = None) -> FourierValue:
    """``K(eta, xi)`` by summing the integrand over cells of Delta (cross-check)."""
    grid = cell_grid(problem, m)
    model = problem.model
    eta = as_vector(model, eta)
    xi = as_vector(model, xi)
    vals = []
    for t in grid.cells:
        f = ft_compact_open(problem.omega, eta - t)
        g = ft_compact_open(problem.omega, xi - t)
        vals.append((f * g.conjugate()).value())
    total = CyclotomicSum.sum(problem.p, vals) * (Fraction(problem.p) ** (-grid.m))
    return FourierValue.of(total)


# -- assembly ----------------------------------------------------------------


class _OmegaHat:
    """Memoized ``1_hat_Omega`` on residues modulo ``B(0, p^{-m})``."""

    def __init__(self, omega: CompactOpenSet, m: int):
        self.omega = omega
        self.m = m
        self.cache: dict = {}

    def __call__(self, w: Vector) -> FourierValue:
        k = Ball(w, -self.m).key()
        v = self.cache.get(k)
        if v is None:
            v = self.cache[k] = ft_compact_open(self.omega, w)
        return v


def assemble_exact(problem: LandauProblem, m: int | None = None) -> tuple[CellGrid, list[list[FourierValue]]]:
    """Exact matrix of ``L#`` on the cell grid of Delta."""
    grid = cell_grid(problem, m)
    hat = _OmegaHat(problem.omega, grid.m)
    cell = Fraction(problem.p) ** (-grid.m)
    M = [[FourierValue(f.scalar * cell, f.phase_sum) for f in (hat(c - d) for d in grid.cells)] for c in grid.cells]
    return grid, M


def _to_complex(M) -> np.ndarray:
    n = len(M)
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            if not v.is_zero():
                out[i, j] = complex(v)
    return out


def assemble_matrix(problem: LandauProblem, m: int | None = None) -> np.ndarray:
    """Hermitian matrix of ``L# = P_Delta T_Omega P_Delta`` on locally constant functions."""
    return _to_complex(assemble_exact(problem, m)[1])


def support_region(problem: LandauProblem) -> CompactOpenSet:
    """``Delta + B(0, p^{-b})``, where the kernel K lives."""
    if problem.empty:
        return problem.delta
    r = max(problem.a, -problem.b)
    balls = {}
    for B in problem.delta.balls:
        big = Ball(B.center, r)
        balls.setdefault(big.key(), big)
    return CompactOpenSet(r, tuple(balls.values()))


def assemble_landau_matrix(problem: LandauProblem, m: int | None = None) -> tuple[CellGrid, np.ndarray]:
    """Matrix of ``L = T_Omega P_Delta T_Omega`` from the kernel K on ``Delta + B(0, p^{-b})``."""
    region = support_region(problem)
    grid = cell_grid(problem, m, region)
    cell = float(Fraction(problem.p) ** (-grid.m))
    n = grid.size
    out = np.zeros((n, n), dtype=complex)
    for i, c in enumerate(grid.cells):
        for j in range(i, n):
            v = complex(kernel(problem, c, grid.cells[j])) * cell
            out[i, j] = v
            out[j, i] = v.conjugate()
    return grid, out


# -- reports -----------------------------------------------------------------


def trace_exact(problem: LandauProblem) -> Fraction:
    """Trace of L# from its exact diagonal."""
    grid, M = assemble_exact(problem)
    return sum((M[i][i].value().as_fraction() for i in range(grid.size)), Fraction(0))


def frobenius_exact(problem: LandauProblem, m: int | None = None) -> CyclotomicSum:
    """``sum |M_ij|^2`` of the L# matrix, exactly."""
    grid, M = assemble_exact(problem, m)
    return CyclotomicSum.sum(problem.p, [v.abs_squared() for row in M for v in row if not v.is_zero()])


def autocorrelation_integral(problem: LandauProblem) -> CyclotomicSum:
    """``int_Delta int_Delta |1_hat_Omega(u - v)|^2 du dv`` as
    ``int |1_hat_Omega(w)|^2 m(Delta ∩ (Delta - w)) dw`` over cells of ``B(0, p^{-b})``.
    """
    p = problem.p
    if problem.empty:
        return CyclotomicSum.rational(p, 0)
    m = minimal_grid_scale(problem)
    model = problem.model
    support = Ball(Vector((model.zero(),)), -problem.b)
    delta_keys = {B.key() for B in problem.delta.balls}
    ball_measure = Fraction(p) ** problem.a
    cell = Fraction(p) ** (-m)
    parts = []
    for w in support.refine(-m):
        shifted = problem.delta.translate(-w.center)
        overlap = sum(1 for B in shifted.balls if B.key() in delta_keys) * ball_measure
        if overlap:
            f = ft_compact_open(problem.omega, w.center)
            parts.append(f.abs_squared() * (overlap * cell))
    return CyclotomicSum.sum(p, parts)


@dataclass
class EigenReport:
    eigenvalues: list[float]
    trace: Fraction
    frobenius_sq: CyclotomicSum
    grid_scale: int
    tolerance: float = TOL

    @property
    def multiplicity_of_one(self) -> int:
        return sum(1 for x in self.eigenvalues if abs(x - 1) <= self.tolerance)

    def in_unit_interval(self) -> bool:
        return all(-self.tolerance <= x <= 1 + self.tolerance for x in self.eigenvalues)

    def dichotomy(self) -> bool:
        return all(abs(x) <= self.tolerance or abs(x - 1) <= self.tolerance for x in self.eigenvalues)

    def to_json(self) -> dict:
        from .spectra import _cyclo_json

        return {
            "eigenvalues": [round(x, 12) + 0.0 for x in self.eigenvalues],
            "multiplicity_of_one": self.multiplicity_of_one,
            "trace": str(self.trace),
            "frobenius_sq": _cyclo_json(self.frobenius_sq),
            "grid_scale": self.grid_scale,
            "tolerance": self.tolerance,
        }

    @classmethod
    def from_json(cls, p: int, data: dict) -> "EigenReport":
        from .serialize import cyclotomic_from_json

        return cls(
            [float(x) for x in data["eigenvalues"]],
            Fraction(data["trace"]),
            cyclotomic_from_json(p, data["frobenius_sq"]),
            int(data["grid_scale"]),
            float(data["tolerance"]),
        )


def _sorted_eigs(H: np.ndarray) -> list[float]:
    if H.shape[0] == 0:
        return []
    return sorted((float(x) for x in np.linalg.eigvalsh(H)), reverse=True)


def eigenvalues(problem: LandauProblem, m: int | None = None) -> EigenReport:
    grid, M = assemble_exact(problem, m)
    H = _to_complex(M)
    trace = sum((M[i][i].value().as_fraction() for i in range(grid.size)), Fraction(0))
    frob = CyclotomicSum.sum(problem.p, [v.abs_squared() for row in M for v in row if not v.is_zero()])
    return EigenReport(_sorted_eigs(H), trace, frob, grid.m)


def landau_eigenvalues(problem: LandauProblem, m: int | None = None) -> list[float]:
    """Spectrum of L (kernel K) on its support grid."""
    return _sorted_eigs(assemble_landau_matrix(problem, m)[1])


def same_spectrum(x: Sequence[float], y: Sequence[float], tol: float = TOL) -> bool:
    """Compare sorted spectra after padding the shorter one with zeros."""
    n = max(len(x), len(y))
    a = sorted(list(x) + [0.0] * (n - len(x)), reverse=True)
    b = sorted(list(y) + [0.0] * (n - len(y)), reverse=True)
    return all(abs(u - v) <= tol for u, v in zip(a, b))


def eigenprojection_check(a: int, b: int, p: int, model: FieldModel | None = None, refine: int = 1) -> bool:
    """Every indicator of a radius-``p^{-b}`` ball inside ``B(0, p^a)`` is fixed by L#.

    Works on a grid ``refine`` steps finer than the balls, in exact arithmetic.
    """
    if a + b < 0:
        raise ValueError("eigenprojection check needs a + b >= 0")
    model = model or FieldModel.padic(p)
    problem = LandauProblem(CompactOpenSet.ball(model, 0, b), CompactOpenSet.ball(model, 0, a))
    grid, M = assemble_exact(problem, minimal_grid_scale(problem) + refine)
    n = grid.size
    for B in Ball(Vector((model.zero(),)), a).refine(-b):
        vec = [1 if B.contains(c) else 0 for c in grid.cells]
        for i in range(n):
            acc = CyclotomicSum.sum(p, [M[i][j].value() for j in range(n) if vec[j]])
            if acc != vec[i]:
                return False
    return True


# -- property suite -------------------------------------------------------------


@dataclass
class Transforms:
    sigma: object = None
    tau: object = None
    scalar: object = None
    subset: CompactOpenSet | None = None
    partition: tuple[CompactOpenSet, CompactOpenSet] | None = None


@dataclass
class PropertyReport:
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v["ok"] for v in self.results.values())

    def to_json(self) -> dict:
        return self.results


def default_transforms(problem: LandauProblem) -> Transforms:
    model = problem.model
    p = model.p
    delta = problem.delta if len(problem.delta) > 1 else problem.delta.refine(problem.a - 1)
    half = len(delta) // 2
    d1, d2 = delta.split(range(half))
    return Transforms(
        sigma=model.element(Fraction(1, p)),
        tau=model.element(1 + Fraction(1, p**2)),
        scalar=model.element(p),
        subset=d1,
        partition=(d1, d2),
    )


def verify_properties(problem: LandauProblem, transforms: Transforms | None = None, tol: float = TOL) -> PropertyReport:
    """Translation, scaling, symmetry, monotonicity, trace, Frobenius and superadditivity."""
    if problem.empty:
        raise InvalidSetError("property checks need a nonempty Delta")
    tr = transforms or default_transforms(problem)
    rep = PropertyReport()
    base = eigenvalues(problem)
    ev = base.eigenvalues

    def put(name, ok, **detail):
        rep.results[name] = {"ok": bool(ok), **detail}

    if tr.sigma is not None or tr.tau is not None:
        sig = tr.sigma if tr.sigma is not None else 0
        tau = tr.tau if tr.tau is not None else 0
        moved = LandauProblem(problem.omega.translate(sig), problem.delta.translate(tau))
        put("a_translation", same_spectrum(ev, eigenvalues(moved).eigenvalues, tol))
    if tr.scalar is not None:
        s = as_element(problem.model, tr.scalar)
        scaled = LandauProblem(problem.omega.scale_by(s), problem.delta.scale_by(s.inverse()))
        put("b_scaling", same_spectrum(ev, eigenvalues(scaled).eigenvalues, tol))
    put("c_symmetry", same_spectrum(ev, eigenvalues(problem.swapped()).eigenvalues, tol))
    if tr.subset is not None:
        if not tr.subset.issubset(problem.delta):
            raise InvalidSetError("subset transform is not contained in Delta")
        small = eigenvalues(LandauProblem(problem.omega, tr.subset)).eigenvalues
        n = max(len(small), len(ev))
        big = ev + [0.0] * (n - len(ev))
        sm = small + [0.0] * (n - len(small))
        put("d_monotonicity", all(x <= y + tol for x, y in zip(sm, big)))
    target = problem.omega.measure() * problem.delta.measure()
    put(
        "e_trace",
        base.trace == target and abs(sum(ev) - float(target)) <= tol * max(1, len(ev)),
        trace=str(base.trace),
        expected=str(target),
    )
    integral = autocorrelation_integral(problem)
    put(
        "f_frobenius",
        base.frobenius_sq == integral and abs(sum(x * x for x in ev) - float(complex(integral).real)) <= tol * max(1, len(ev)),
        frobenius_sq=str(complex(base.frobenius_sq).real),
    )
    if tr.partition is not None:
        d1, d2 = tr.partition
        if not d1.union(d2).same_set(problem.delta):
            raise InvalidSetError("partition transform does not partition Delta")
        f1 = eigenvalues(LandauProblem(problem.omega, d1)).frobenius_sq
        f2 = eigenvalues(LandauProblem(problem.omega, d2)).frobenius_sq
        put("g_superadditivity", base.frobenius_sq >= f1 + f2)
    return rep
