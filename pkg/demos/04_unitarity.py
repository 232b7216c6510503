"""Which modules carry an inner product with (a^-)^dagger = a^+ and K^dagger = K^-1."""
import mpmath

from pbq import AlgebraParams, classify_unitarizable, is_unitarizable, orthonormal_matrices, unitarity_ratios, verify_unitarity
from pbq.classify import admissible_pairs

print("unitarizable irreps (dim >= 2), integers and halves in each window:")
for m, k in admissible_pairs(12):
    found = classify_unitarizable(AlgebraParams(m, k))
    if found:
        print(f"  (m={m:>2}, k={k:>2}): " + ", ".join(f"p={d.p} dim {d.dimension}" for d in found))

# The decision is a sign pattern along the normalization ladder.
for p in (1, 2, "5/2"):
    v = is_unitarizable((1, 3), p, 2)
    print(f"\n(m=1, k=3, p={p}, L=2): {v.status.value}, witnesses {v.witnesses}")

ladder = unitarity_ratios((3, 10), 27, 3)
print("\nladder at (m=3, k=10, p=27):", [mpmath.nstr(r, 8) for r in ladder.alphas(30)])

rep = orthonormal_matrices((3, 10), 27, 3, precision=40)
print("A_minus in the orthonormal basis:")
for row in rep.A_minus:
    print("  ", [mpmath.nstr(x.value.real, 10) for x in row])
report = verify_unitarity(rep, 40)
print(f"adjoint residual {mpmath.nstr(report.adjoint_residual, 3)}, contract holds: {report.passed}")
