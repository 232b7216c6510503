"""Fock modules at a root of unity: where a^- vanishes, and what survives the cut."""
from fractions import Fraction

from pbq import ModuleSpec, is_irreducible, module_matrices, quotient_module, singular_vectors, verify_relations
from pbq.fockrep import verma_action

# At q = exp(i*pi/4) a generic weight meets a singular vector every 2k = 4 steps.
print("p = 1/3, k = 2:", singular_vectors(1, 2, Fraction(1, 3), 12).indices)
# An integer weight can add one more.
report = singular_vectors(1, 2, 2, 8)
print("p = 2,   k = 2:", report.indices, " vanishing factors:", report.factors)

# Cutting at the first singular vector gives a simple module.
big = ModuleSpec(1, 2, 2, 0, 3)
small = quotient_module(big, 3)
print(f"\n{big} simple? {is_irreducible(big)}")
print(f"{small} simple? {is_irreducible(small)}")

# The action itself, one basis vector at a time.
for g in ("a+", "a-", "K"):
    coeff, target = verma_action(small, g, 1)
    print(f"{g:>2} |p;1> = ({coeff}) |p;{target}>" if target is not None else f"{g:>2} |p;1> = 0")

rep = module_matrices(small)
print("\nA_minus on the quotient:\n", rep.A_minus)
print("relations hold exactly:", verify_relations(rep).passed)

# The same module with decimal weight drops to 64-digit arithmetic.
approx = module_matrices(ModuleSpec(1, 2, "0.37", 0, 3))
res = verify_relations(approx)
print(f"\np = 0.37 (approximate): residual {float(res.max_residual):.1e}, passed: {res.passed}")
