"""Resolving cuspidal singularities by iterated blow-ups.

The Hamiltonian field of y^2 - x^3 has a nilpotent singular point.  Three
point blow-ups produce a chain of exceptional components with
self-intersections -3, -2, -1, and every singular point of the transformed
foliation is elementary.  The eigenvalue ratios on the -1 component are
-1/3, -1/2, -1/6: their sum is the self-intersection, the index theorem at
work, and the first two ratios are the holonomy generators of orders 3 and
2 around the corner points.

The next cusp y^2 - x^5 needs four blow-ups and its -1 component carries
holonomy orders 2 and 5 instead.
"""

from foliations.corpus import cusp_hamiltonian
from foliations.resolve import emit_tree, seidenberg_resolve

for n in (1, 2):
    field = cusp_hamiltonian(n)
    print(f"\ncusp with separatrix y^2 = x^{2*n+1}:", field.render())
    tree = seidenberg_resolve(field)
    print("status:", tree.status, "after", tree.steps, "blow-ups")
    for comp in sorted(tree.components.values(), key=lambda c: c.id):
        total = tree.component_index_sum(comp.id)
        print(f"  component {comp.id}: weight {comp.weight}, "
              f"index sum {total.text() if total else 'n/a'}")
    for node, point in tree.final_points():
        if point.report is None or point.report.klass == "regular":
            continue
        ratios = {k: v.text() for k, v in sorted(point.cs_indices.items())}
        print(f"  point on {point.on_components} -> {point.report.klass}, "
              f"ratios {ratios}")

print("\nDOT output of the first chain:")
print(emit_tree(seidenberg_resolve(cusp_hamiltonian(1)), "dot"))
