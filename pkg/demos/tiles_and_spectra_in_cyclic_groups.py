"""
Tiles, spectra and homogeneous trees in Z/p^nZ
==============================================

In a cyclic p-group a set tiles exactly when it is spectral, and both happen
exactly when its residue tree branches uniformly.  This script checks the three
conditions one set at a time and then for every subset of a small group.
"""

import time

from localspectra._sweep import sweep
from localspectra.cyclic import triad

# %%
# The digit set {0,3,4,7}: residues mod 2 are {0,1}, mod 4 {0,3}... each level
# has 1 or 2 children per node.
report = triad([0, 3, 4, 7], 2, 3)
print("cards mod 2, 4, 8:", report.profile.cards)
print("tiling complement:", report.tile.complement)
print("spectrum:", report.spectrum.spectrum)

# %%
# {0,1,2} in Z/4Z has three elements, so it can neither tile nor carry a
# spectrum, and its tree has a node with three children.
bad = triad([0, 1, 2], 2, 2)
print("{0,1,2}:", bad.profile.homogeneous, bad.tile, bad.spectrum)

# %%
# Every nonempty subset of Z/16Z, classified three ways by the compiled sweep.
t0 = time.perf_counter()
res = sweep(2, 4)
print(
    f"Z/16Z: {res['subsets']} subsets, {res['homogeneous']} homogeneous, "
    f"{res['tiles']} tiles, {res['spectral']} spectral, "
    f"{res['discrepancies']} disagreements ({time.perf_counter() - t0:.1f}s)"
)
