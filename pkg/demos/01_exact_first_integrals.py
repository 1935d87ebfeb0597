"""First integrals, exactly.

A vector field on C^3 can conserve two independent quantities.  The field

    X = 2xy d/dx + (x^3 + 2y^2) d/dy - 2yz d/dz

annihilates both xz and (y^2 - x^3) z^2, and the computation below is exact
rational arithmetic, not numerics.  When two integrals share an irreducible
factor, their powers combine into a meromorphic quantity on the factor's
zero set; the classic model is xy / xz = y/z on {x = 0}.
"""

from foliations.algebra import Poly
from foliations.corpus import diagonal_two_integrals_field, two_integrals_field
from foliations.fields import directional_derivative
from foliations.integrals import (
    FactoredFunction,
    formal_first_integral,
    independence_check,
    meromorphic_quotient,
    verify_first_integral,
)
from foliations.expressions import parse_expression

V3 = ("x", "y", "z")

x = two_integrals_field()
f = parse_expression("x*z", V3)
g = parse_expression("(y^2 - x^3)*z^2", V3)

print("field:", x.render())
print("X.(xz) =", directional_derivative(x, f).render())
print("X.((y^2-x^3)z^2) =", directional_derivative(x, g).render())
print("independent:", independence_check(f, g))

# Products and sums of first integrals are first integrals again (exactly).
print("X.(f*g) = 0:", verify_first_integral(x, f * g))
print("X.(f+g) = 0:", verify_first_integral(x, f + g))

# The meromorphic quotient on a shared zero set.
diag = diagonal_two_integrals_field()
print("\ndiagonal field:", diag.render())
ff = FactoredFunction.make([(Poly.variable(V3, "x"), 1), (Poly.variable(V3, "y"), 1)])
gg = FactoredFunction.make([(Poly.variable(V3, "x"), 1), (Poly.variable(V3, "z"), 1)])
q = meromorphic_quotient(ff, gg)
print("xy/xz restricted to {x=0}:",
      q.restricted[0].render(), "/", q.restricted[1].render())

# Formal first integrals: jets of conserved quantities solved degree by
# degree for the diagonal saddle x d/dx - y d/dy.
from foliations.fields import Chart, VectorField

saddle = VectorField.make(Chart.root(("x", "y")), [
    parse_expression("x", ("x", "y")), parse_expression("-y", ("x", "y"))])
space = formal_first_integral(saddle, 4)
print("\nsaddle jet solutions up to degree 4:",
      [b.render() for b in space.basis])
