"""Build every simple symmetric decomposition h + p with h = sl(2)^k and name it.

The bracket on p x p is a combination of Clebsch-Gordan projections; Jacobi
reduces to a linear (Bianchi) condition on the coefficients, solved exactly.
"""

from exholo import lie, symdec

print("searching p_dim <= 32, k <= 4, n <= 8 ...")
for entry in symdec.classify(32, 4, 8):
    mi = entry.multi_index
    sd = symdec.standard_model(next(k for k, v in symdec.MODEL_INDICES.items() if v == mi))
    l = sd.algebra
    print(f"  ({mi}): c = {[str(x) for x in sd.coefficients]}, dim {l.dim}, rank {lie.rank(l)}, "
          f"simple {lie.is_simple(l)} -> {symdec.identify(l)}")

# a coefficient vector off the solution line breaks Jacobi
bad = symdec.build("3.1", [1, 1])
print("(3.1) with c = [1, 1]: Jacobi failures on", len(lie.jacobi_defect(bad)), "basis triples")
