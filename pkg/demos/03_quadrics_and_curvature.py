"""Isotropy algebras on the quadrics, and formal g2 curvature at a point.

The last block shows that the containment R(p-perp, p-perp) p-perp in p-perp
holds only on part of the 77-dim curvature space.
"""

from exholo import exact, quadric

for case in ("i", "ii", "iii"):
    cert = quadric.prop21_check(case)
    print(f"case {case}: {cert.check}: {'pass' if cert.passed else 'FAIL'}")

k7 = quadric.g2_curvature_7()
print("formal g2 curvature tensors on V7:", k7.dim, "(Bianchi rank", k7.bianchi_rank, ")")
print("algebraic curvature tensors of so(7):", quadric.so7_curvature().dim)

v7 = quadric.vector_space()
v0 = exact.identity(7)[quadric.null_basis_points(v7)["null"][0]]
perp = v7.orthogonal(quadric.W_of(v0))
print("p-perp dimension:", perp.dim)
print("tensors compatible with the containment:", quadric.compatible_dimension(k7, perp), "of", k7.dim)
print("first violating (basis index, x, y, z):", quadric.containment_witness(k7, perp))
