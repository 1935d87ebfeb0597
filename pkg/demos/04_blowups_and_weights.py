"""Blow-up transforms: multiplicities, dicriticality, weighted charts.

Blowing up a singular point multiplies the field by a power of the divisor
coordinate: a field with first nonzero homogeneous part of degree k picks
up multiplicity k-1, or k when that part is radial (and then the divisor is
not invariant: the blow-up is dicritical).

Weighted blow-ups can destroy holomorphy of the *field* (the foliation
survives).  The weight-2 chart (x, t, z) -> (x^2, tx, z) applied to a field
whose d/dx component is y produces a -t^2/(2x) term: strictly meromorphic,
pole order one.
"""

from foliations.blowup import BlowupSpec, all_charts, curve_center, weighted_blowup
from foliations.corpus import cusp_hamiltonian, meromorphic_transform_example, radial

print("radial field blow-up (k = 1, radial):")
for result in all_charts(radial(2)):
    print(f"  chart {result.divisor_var}: multiplicity",
          result.divisor_multiplicity, "dicritical", result.dicritical,
          "->", result.representative.render())

print("\ncusp field blow-up (k = 1, not radial):")
for result in all_charts(cusp_hamiltonian(1)):
    print(f"  chart {result.divisor_var}: multiplicity",
          result.divisor_multiplicity, "dicritical", result.dicritical,
          "->", result.representative.render())

field = meromorphic_transform_example()
print("\nweight-2 transform of", field.render(), "along the z-axis:")
result = weighted_blowup(field, BlowupSpec(curve_center("z"), (2, 1), 0))
print("  raw transform:", result.field.render())
print("  pole order:", result.pole_order)
print("  holomorphic representative:", result.representative.render())
