"""g2 as the stabiliser of a spinor, and the cross product as torsion of so(7) = g2 + p."""

from exholo import holo, lie

spin = holo.spin_rep()
print("spin representation of (2.1.1): dim", spin.dim, "commutant", lie.commutant_dimension(spin))

g2 = holo.g2_subalgebra()
print("non-null spinor:", [str(x) for x in g2.spinor])
print("stabiliser: dim", g2.subspace.dim, "rank", lie.rank(g2.algebra), "simple", lie.is_simple(g2.algebra))

cx = holo.cayley_cross()
lam, _ = cx.composition_constant()
print("cross product: antisymmetric", cx.is_antisymmetric(), "orthogonal", cx.is_orthogonal(), "lambda", lam)
print("nonzero structure constants:", len(cx.to_json()["entries"]))

cert = holo.thm17_check()
for c in cert.checks:
    print(f"  [{c.status}] {c.name}")
