"""
Landau operators of compact open sets
=====================================

For compact open Omega and Delta the operator "restrict to Omega in space,
then to Delta in frequency" is a finite matrix once functions are taken
constant on small enough cells.  Over a non-archimedean field it is often an
honest projection: the eigenvalues are exactly 0 and 1.
"""

from fractions import Fraction

from localspectra import FieldModel
from localspectra.balls import CompactOpenSet
from localspectra.landau import LandauProblem, eigenvalues, verify_properties

Q3 = FieldModel.padic(3)


def ball(r, c=0):
    return CompactOpenSet.ball(Q3, c, r)


# %%
# Ball against ball: with radii 3^b and 3^a, a + b >= 0, the eigenvalue 1
# appears 3^(a+b) times and everything else is 0.
for a, b in [(0, 0), (1, 0), (1, 1), (2, -1)]:
    rep = eigenvalues(LandauProblem(ball(b), ball(a)))
    print(f"a={a}, b={b}: {rep.multiplicity_of_one} ones among {len(rep.eigenvalues)} eigenvalues")

# %%
# When a + b < 0 the sets are too small for each other and a single
# eigenvalue 3^(a+b) survives.
rep = eigenvalues(LandauProblem(ball(0), ball(-1)))
print("a=-1, b=0:", [round(x, 12) for x in rep.eigenvalues if x > 1e-12])

# %%
# Unions of balls behave the same way: the trace m(Omega) m(Delta) counts the ones.
omega = CompactOpenSet.from_centers(Q3, 0, [0, Fraction(1, 3)])
problem = LandauProblem(omega, ball(1))
rep = eigenvalues(problem)
print("union of two unit balls against B(0,3): trace", rep.trace, "ones", rep.multiplicity_of_one)

# %%
# Translation, scaling, symmetry, monotonicity, trace, Frobenius norm and
# superadditivity, all checked on this problem.
for name, res in verify_properties(problem).results.items():
    print(f"  {name:20s} {'ok' if res['ok'] else 'FAILED'}")
