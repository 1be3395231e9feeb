"""Eigenvalues of Zsigmondy unitaries in dimensions 4 and 16 after fixing the
phase so that U^r = 1."""

import numpy as np

from mubforge.numtheory import zsigmondy_primes
from mubforge.suites import canonical_zsigmondy_matrix

for p, n in [(2, 2), (2, 4)]:
    print(f"{p}^{2 * n} - 1:", zsigmondy_primes(p, 2 * n).primes)
    U, r = canonical_zsigmondy_matrix(p, n)
    k = np.rint(np.angle(np.linalg.eigvals(U)) * r / (2 * np.pi)).astype(int) % r
    print(f"  r = {r}, exponent multiplicities {np.bincount(k, minlength=r).tolist()}, tr U = {np.trace(U):.6f}")
