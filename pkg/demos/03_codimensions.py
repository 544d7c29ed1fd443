"""Codimension sequences, identities and a degree-bounded containment test."""

from piexp import codimension, containment_at_degree, full_matrix, grassmann_truncated, is_identity, ut
from piexp.constructions import matrix_algebra
from piexp.identities import commutator, standard_polynomial, variable

print("c_m(UT2), m = 1..5:      ", [codimension(ut(2), m) for m in range(1, 6)])
print("c_m(Grassmann), m = 1..4:", [codimension(grassmann_truncated(m), m, ordinary=True) for m in range(1, 5)])
print("graded c_m(UT2), m = 1..4:", [codimension(ut(2, elementary=(0, 1)), m) for m in range(1, 5)])
print("star c_m(M2, transpose):  ", [codimension(full_matrix(2, involution="transpose"), m) for m in range(1, 4)])

# The sampled strategy gives a lower bound; with enough points it is exact.
print("sampled c_4(UT2), three seeds:", [codimension(ut(2), 4, "sampled", seed=s) for s in range(3)])

x = variable()
cc = commutator(x, x) * commutator(x, x)
print("\ns4 on M2:", is_identity(standard_polynomial(4), full_matrix(2)).holds)
print(f"{cc} on UT2:", is_identity(cc, ut(2)).holds)
M = matrix_algebra(ut(2), 2)
res = is_identity(cc, M)
print("on M2(UT2):", res.holds, "witness", [M.algebra.label(v) for v in res.witness])

# UT2 embeds in M2(UT2) as a corner, so identities pass down but not up.
for m in (2, 3, 4):
    down = containment_at_degree(M, ut(2), m)
    up = containment_at_degree(ut(2), M, m)
    print(f"m={m}: Id(M2(UT2)) in Id(UT2): {down.holds}; reverse: {up.holds}",
          "" if up.holds else f"(fails on {up.counterexample})")
