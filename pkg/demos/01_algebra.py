"""Working with pB_q elements: parsing, normal ordering, the antiinvolution and the Casimir."""
from pbq import ParaBoseAlgebra, casimir_element, grade, normal_order, omega, parse_expression

alg = ParaBoseAlgebra.at_root(1, 3)  # q = exp(i*pi/6)
print(f"algebra: {alg}\n")

# Juxtaposition is the product; every result comes back in the
# (a+)^i (a-)^j K^s basis.
for text in ("a- a+", "a+ a- + a- a+", "K a+ K^-1", "(a- a+)^2"):
    print(f"{text:>16}  =  {parse_expression(text, alg)}")

# The rewriting system gives the same answer no matter which redex it picks.
word = ["a-", "K", "a-", "a+", "K^-1", "a+"]
forms = {s: normal_order(word, alg, strategy=s) for s in ("leftmost", "rightmost", "random")}
print(f"\nword {' '.join(word)} rewrites to\n  {forms['leftmost']}")
print(f"all strategies agree: {len(set(map(str, forms.values()))) == 1}")

x = parse_expression("zeta(12) a+ a- K", alg)
print(f"\nomega({x}) = {omega(x)}")
print(f"omega is an involution here: {omega(omega(x)) == x}")

c2 = casimir_element(alg)
print(f"\nC2 has {len(c2)} terms and grade {grade(c2).value}")
print("C2 commutes with a+, a- and K:", all(c2 * g == g * c2 for g in (alg.a_plus, alg.a_minus, alg.K)))
