"""A differential operator of order N is the same thing as a linear map out of N-jets.

We take an operator on Q[x, y], record its values on the jet monomials dx^a dy^b,
rebuild the operator from those values, and check that applying it directly agrees
with taking the N-jet of a polynomial first and then applying the linear map.
"""

from jetmodules import AlgebraPresentation, factor_through_jets, hom_to_op, op_to_hom, parse_operator, parse_poly
from jetmodules.diffop import FactorizationError

R = AlgebraPresentation(("x", "y"))
D = parse_operator("x*y*d(x)*d(y) + d(y)^2 - y", R)
print(f"D = {D}   (order {D.order()})")

H = op_to_hom(D)
print("\nvalues on jet monomials (coefficient times a factorial):")
for (I, _), value in sorted(H.values.items()):
    print(f"  dx^{I[0]} dy^{I[1]}  ->  {value[0]}")

assert hom_to_op(H) == D
print("\nrebuilt from its values:", hom_to_op(H))

f = parse_poly("x^3*y^2 + x*y^3 - 4*y", R.variables)
print("\nD(f) directly:   ", D.apply([f])[0])
print("D(f) through J^2:", H.compose_d([f])[0])

# a plain function is accepted as an operator of order N exactly when it factors through N-jets
P = parse_operator("d(x)^3", R)
for N in (2, 3):
    try:
        found = hom_to_op(factor_through_jets(P.apply, R, 1, 1, N))
        print(f"\nd(x)^3 factors through J^{N}: recovered {found}")
    except FactorizationError as exc:
        print(f"\nd(x)^3 does not factor through J^{N}: {exc}")
