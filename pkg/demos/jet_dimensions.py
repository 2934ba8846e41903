"""How big are jet algebras?

For a polynomial ring in n variables the N-th jets form a free module of rank
C(n+N, n).  For an artinian ring like Q[x]/(x^2) the jet algebras grow for a while
and then stop, because the ring has no room for higher-order information.
"""

from math import comb

from jetmodules import AlgebraPresentation, JetAlgebra, graded_piece, parse_poly

for n in (1, 2, 3):
    R = AlgebraPresentation(("x", "y", "z")[:n])
    origin = {v: 0 for v in R.variables}
    ranks = [JetAlgebra(R, N).fiber_dimension(origin) for N in range(5)]
    print(f"Q[{', '.join(R.variables)}]: fiber ranks {ranks}, binomials {[comb(n + N, n) for N in range(5)]}")

A = AlgebraPresentation(("x",), [parse_poly("x^2", ("x",))])
print("\nQ[x]/(x^2):")
for N in range(5):
    J = JetAlgebra(A, N)
    line = f"  N={N}: dim {J.dimension()}"
    if N:
        line += f", new graded piece of dim {graded_piece(J).dimension()}"
    print(line)

# dx is the jet of x minus x itself; the relations say x^2 and its jet both vanish
print("\nJ^1 of Q[x]/(x^2) has relations:", ", ".join(str(g) for g in JetAlgebra(A, 1).relations))
