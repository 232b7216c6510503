"""Simple vacuum modules, their equivalences, and the Casimir that cannot tell some apart."""
import itertools
from fractions import Fraction

from pbq import AlgebraParams, canonicalize, casimir_eigenvalue, find_intertwiner, vacuum_irreps
from pbq.classify import ModuleSpec, casimir_matrix, is_scalar_matrix, quadruple_modules
from pbq.exactnum import to_complex

for m, k in [(1, 2), (1, 3), (2, 3)]:
    params = AlgebraParams(m, k)
    descs = vacuum_irreps(params, p_grid=[])
    print(f"{params} [{params.case.value}]: " + ", ".join(f"p={d.p}:L={d.L}" for d in descs))

# A translated copy of the 4-dim module sits two periods up the Fock ladder.
src = ModuleSpec(1, 2, Fraction(1, 2), 0, 3)
tgt = ModuleSpec(1, 2, Fraction(1, 2) + 8, 4, 7)
cert = find_intertwiner(src, tgt)
print(f"\n{src} ~ {tgt}: shift {cert.shift}, weight shift {cert.weight_shift}")

# Four modules with one Casimir value, pairwise inequivalent.
params = AlgebraParams(1, 4)
quad = quadruple_modules(params, 2)
print("\nquadruple at (m=1, k=4), p=2:")
for spec in quad:
    scalar, value = is_scalar_matrix(casimir_matrix(spec), spec.qparam())
    print(f"  {spec}: dim {spec.dimension}, C2 = {to_complex(value, 20).value.real}")
print("  equivalent pairs:", sum(find_intertwiner(a, b) is not None for a, b in itertools.combinations(quad, 2)))
# The tabulated closed form sits 2 above the matrix value; see README, known gaps.
print("  closed-form value:",to_complex(casimir_eigenvalue(params, 2), 20).value.real)

# Any root of unity reduces to an admissible one.
for raw in [(3, 2), (11, 4), (15, 4)]:
    c = canonicalize(*raw)
    print(f"\nraw {raw} -> {c.params}; generators {c.generator_map.as_dict()}; relations hold: {c.verify().passed}")
