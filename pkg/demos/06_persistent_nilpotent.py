"""A nilpotent point that standard blow-ups cannot remove.

The three-parameter family below keeps producing a nilpotent singular point
under every admissible standard blow-up: the probe follows the chain and
matches the normal form

    (y + f) d/dx + g d/dy + z^n d/dz,   ord f, ord g >= 2,  n >= 2.

A single blow-up of weight 2, centered on the distinguished invariant axis,
removes it: the only singular point of the transform is an elementary
saddle-node with spectrum (0, 1, -1).
"""

from foliations.corpus import sancho_sanz_field
from foliations.resolve import detect_persistent_nilpotent, emit_tree, resolve3

field = sancho_sanz_field()
print("germ:", field.render())

standard = resolve3(field, max_steps=12, allow_weighted=False)
print("\nstandard blow-ups only, budget 12:", standard.status)
print("  steps used:", standard.steps)
print("  last diagnostics:", standard.diagnostics[-2:])

probe = detect_persistent_nilpotent(field, probe_budget=6)
print("\nnormal-form probe: matched =", probe.matched, "n =", probe.n)
print("  roles:", probe.witness["roles"])
print("  axis orders exceed 2n:", probe.witness["z_orders_exceed_2n"])

weighted = resolve3(field, max_steps=12, allow_weighted=True)
print("\nwith the weight-2 escape:", weighted.status,
      "| weighted blow-ups used:", weighted.weighted_steps)
for node, point in weighted.final_points():
    if point.report is not None and point.report.klass != "regular":
        print("  final point:", point.report.klass,
              [e["value"] for e in point.report.eigen.to_json()])
