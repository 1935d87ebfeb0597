"""Exact and numeric toolkit for germs of singular holomorphic foliations
and vector fields in up to three complex variables.

Layers:

* :mod:`foliations.algebra` -- Gaussian-rational scalars, sparse
  polynomials, Laurent-monomial chart functions (all exact).
* :mod:`foliations.fields` -- charts, vector fields, 1-forms, brackets,
  contraction, integrability, Euler relation.
* :mod:`foliations.classify` -- characteristic polynomials, exact or
  certified eigenvalues, singularity classes, resonances, hull position.
* :mod:`foliations.blowup` -- standard and weighted blow-up transforms
  with divisor multiplicities, pole orders, dicriticality.
* :mod:`foliations.resolve` -- resolution drivers in dimensions 2 and 3
  with annotated trees and persistent-nilpotent detection.
* :mod:`foliations.integrals` -- first-integral verification, truncated
  formal solving, independence, meromorphic quotients.
* :mod:`foliations.dynamics` -- time-form integrals, semicompleteness
  verdicts, path lifting, holonomy estimates, descent tracing.
* :mod:`foliations.expressions` / :mod:`foliations.cli` -- the field-file
  grammar and the command-line surface.
* :mod:`foliations.corpus` -- the classical example catalog and its
  verification runner.
"""

from .algebra import ChartFunction, GaussianRational, Poly, gr
from .fields import Chart, OneForm, VectorField

__all__ = [
    "ChartFunction",
    "Chart",
    "GaussianRational",
    "OneForm",
    "Poly",
    "VectorField",
    "gr",
]

__version__ = "0.1.0"
