"""The canonical additive characters of Q_p and F_p((T)).

Q_p:      chi(x) = exp(2 pi i {x})           with {x} the p-adic fractional part
F_p((T)): chi(x) = exp(2 pi i a_{-1}(x) / p)

Both are trivial on the unit ball and non-trivial on P^{-1} D.  Values are
returned as exact :class:`RootOfUnityPhase` objects.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import RootOfUnityPhase
from .field import FieldModel, LocalFieldElement, Vector, as_vector


def fractional_part(x: LocalFieldElement) -> Fraction:
    return x.fractional_part()


def laurent_residue_coordinate(x: LocalFieldElement) -> int:
    return x.laurent_residue_coordinate()


def chi(x: LocalFieldElement) -> RootOfUnityPhase:
    """chi(x) for a single field element."""
    p = x.p
    if x.model.is_padic:
        return RootOfUnityPhase.from_fraction(p, x.fractional_part())
    return RootOfUnityPhase.of(p, x.laurent_residue_coordinate(), 1)


def character(y, x, model: FieldModel | None = None) -> RootOfUnityPhase:
    """chi_y(x) = chi(y . x) for points of K^d.

    ``y`` and ``x`` may be Vectors or scalars; plain numbers need ``model``.
    """
    if model is None:
        for v in (y, x):
            if isinstance(v, (Vector, LocalFieldElement)):
                model = v.model
                break
        else:
            raise ValueError("model required for plain numbers")
    yv = as_vector(model, y)
    xv = as_vector(model, x)
    return chi(yv.dot(xv))
