"""The qubit stabilizer MUB: six states on the Bloch octahedron, and the
regular groups that generate all six from any one of them."""

import numpy as np

from mubforge.covariance import sharp_search
from mubforge.mub import bloch_vectors, build_mub
from mubforge.spreads import enumerate_spreads

spread = enumerate_spreads(2, 1)[0]
mub = build_mub(spread)
print("bases:", len(mub.bases), " max bias:", f"{mub.max_bias():.1e}")
for v in bloch_vectors(mub):
    print("  bloch", np.round(v, 6))

v = sharp_search(2, 1, antiunitary=True)
print("status:", v.status)
print("unitary regular groups:", len(v.unitary_regular_groups))
print("antiunitary regular groups:", len(v.antiunitary_regular_groups))
R = v.unitary_regular_groups[0]
for g in R.labels(v.symmetry):
    print("  F =", g.F.tolist(), " order", g.order())
