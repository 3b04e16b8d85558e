"""
Fourier transforms on Q_p and the standard quasi-lattice
========================================================

The transform of a ball indicator is another ball indicator, so spectra of
balls are sets with one point per dual ball.  The quasi-lattice is such a set.
"""

from fractions import Fraction

from localspectra import FieldModel
from localspectra.balls import Ball, CompactOpenSet
from localspectra.fourier import ft_ball_indicator, ft_compact_open
from localspectra.quasilattice import QuasiLattice, density_profile, separation
from localspectra.spectra import check_spectral_set

Q2 = FieldModel.padic(2)

# %%
# The transform of 1_{B(0,2^a)} is 2^a on B(0,2^-a) and zero outside.
for a in (-1, 0, 1):
    row = [complex(ft_ball_indicator(Q2, a, Fraction(2) ** -k)).real for k in range(-2, 3)]
    print(f"a={a:+d}  xi=4,2,1,1/2,1/4 ->", row)

# %%
# A union of two half-size balls: the phases of the two centers cancel at 1/2.
Z2 = CompactOpenSet.from_centers(Q2, -1, [0, 3])
print("1_hat(1/2) for B(0,1/2) u B(3,1/2):", complex(ft_compact_open(Z2, Fraction(1, 2))))

# %%
# The quasi-lattice {0} u 2^-1 V_1 u 2^-2 V_2 u ... has separation 2 and one
# point in every unit ball, hence density 1 at every scale.
L = QuasiLattice(Q2)
pts = L.enumerate(4)
print("points in B(0,16):", len(pts), " separation:", separation(pts))
for r in density_profile(pts, Ball.of(Q2, 0, 4), range(4)):
    print(f"  scale 2^{r.scale}: counts between {r.inf_count} and {r.sup_count}")

# %%
# Those points form a spectrum of the unit ball: every criterion sum equals 1.
verdict = check_spectral_set(CompactOpenSet.ball(Q2, 0, 0), L.enumerate(2))
print("unit ball with L cap B(0,4):", "spectral" if verdict.passed else "not spectral", "-", verdict.label)
