"""Dimension 4: the six stabilizer MUBs form one Clifford orbit, the symmetry
group acts on the five bases as S5, and the regular subgroups of order 20 form
a single conjugacy class."""

from mubforge.covariance import SymmetryGroup, clifford_orbit_on_spreads, sharp_search
from mubforge.spreads import enumerate_spreads
from mubforge.suites import verify_order20_group

print("spreads:", len(enumerate_spreads(2, 2)))
print("orbits:", clifford_orbit_on_spreads(2, 2).orbit_sizes)

sym = SymmetryGroup(enumerate_spreads(2, 2)[0])
print("symmetry group:", sym.order, " mod displacements:", sym.quotient_order(),
      " on bases:", sym.basis_action_order())

v = sharp_search(2, 2, antiunitary=True)
print(v.status, len(v.unitary_regular_groups), "unitary,", len(v.antiunitary_regular_groups), "antiunitary")
print("unitary classes:", [len(c) for c in v.unitary_classes])

print(verify_order20_group())
