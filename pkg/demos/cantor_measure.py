"""
A spectral Cantor measure on Q_2
================================

The maps x -> 8x + c, c in {0,3,4,7}, contract Q_2 by 1/8.  Their invariant
measure lives on a Cantor set of dimension log 4 / log 8 = 2/3.  Truncating
at depth n gives the uniform measure on 4^n residues mod 8^n, and each
truncation has a spectrum that extends the previous one.
"""

from fractions import Fraction

from localspectra.fourier import ft_selfsimilar
from localspectra.selfsimilar import IfsSpec, cylinder_set, dimension_ratio, run_depths

spec = IfsSpec(2, 3, (0, 3, 4, 7))
print("dimension:", dimension_ratio(spec).exact())

# %%
# The transform is a finite product; it vanishes wherever one factor does.
mu = spec.measure()
for num, den in [(1, 8), (1, 4), (1, 2), (1, 64), (3, 64)]:
    value = ft_selfsimilar(mu, Fraction(num, den))
    print(f"mu_hat({num}/{den}) = {complex(value):.4f}")

# %%
# Depth by depth: cylinder residues, a nested spectrum, the exact completeness
# check, orthogonality under the limit measure and the Bessel bound.
for rep in run_depths(spec, 2):
    C = cylinder_set(spec, rep.depth)
    print(
        f"depth {rep.depth}: |C_n| = {len(C)}, spectrum size {len(rep.spectrum)}, "
        f"complete {rep.verdict.complete_at_samples}, limit-orthogonal {rep.limit_orthogonal}, "
        f"Bessel sums <= 1 {rep.bessel_ok}"
    )
print("depth-1 spectrum (times 8):", run_depths(spec, 1)[0].spectrum)
