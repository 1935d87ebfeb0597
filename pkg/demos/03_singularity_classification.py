"""Classifying singular points: exact spectra, resonances, hull position.

The classifier computes the exact characteristic polynomial of the linear
part, finds eigenvalues in Q(i) exactly or as certified rectangles, counts
zero eigenvalues (saddle-node rank), computes the integer-relation lattice
rank of the spectrum, and places the spectrum relative to the convex hull
of its values.
"""

from foliations.classify import classify_singularity, resonant_relations, siegel_test
from foliations.algebra import gr
from foliations.corpus import (
    airy_model_field,
    saddle_node_family,
    sancho_sanz_field,
    strict_siegel_diagonal,
)

for name, field in [
    ("saddle-node family (a=b=c=1)", saddle_node_family(1, 1, 1)),
    ("persistent nilpotent germ", sancho_sanz_field()),
    ("Airy-model saddle-node", airy_model_field()),
    ("strict Siegel diagonal", strict_siegel_diagonal()),
]:
    report = classify_singularity(field)
    print(f"\n{name}: {field.render()}")
    print("  class:", report.klass,
          "" if report.rank is None else f"(rank {report.rank})")
    print("  char poly:", report.eigen.char_poly.render())
    print("  eigenvalues:", [e["value"] for e in report.eigen.to_json()])
    print("  resonance rank:", report.resonance_rank,
          "| position:", report.domain_position)

# Resonance relations up to the default bound
print("\nrelations for spectrum (1, -3):",
      resonant_relations([gr(1), gr(-3)]))
print("position of (1, 1+i, -2-i):",
      siegel_test([gr(1), gr(1, 1), gr(-2, -1)]))
