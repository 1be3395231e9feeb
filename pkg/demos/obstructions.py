"""Why the stabilizer MUBs in dimensions 8 and 16 are not sharply covariant,
and why the trace bound rules out the other large dimensions.

The dimension 8 search takes about ten seconds on one core.
"""

from mubforge.certificates import trace_bound_certificate
from mubforge.suites import dimension8_suite, dimension16_suite

for q, n in [(4, 2), (8, 3), (9, 2), (16, 4), (25, 2), (32, 5)]:
    c = trace_bound_certificate(q, n, variant="strengthened")
    a = trace_bound_certificate(q, n, variant="antiunitary_strengthened")
    print(f"q={q:3d}  unitary bound {str(c.value):>8} fires={c.fires!s:5}  "
          f"antiunitary bound {str(a.value):>9} fires={a.fires}")

print()
print(dimension16_suite())
print()
rep = dimension8_suite()
print(rep)
print(rep.data)
