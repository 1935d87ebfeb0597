"""Blow-up transforms of vector fields.

Supports one-point blow-ups, blow-ups along coordinate-axis curves in
dimension 3, and weighted variants of both.  A weight vector of all ones
reproduces the standard transform exactly (the standard entry points simply
delegate to the weighted one).

For the chart in which the blown-up variable ``v`` carries weight ``w`` and
another blown-up variable ``u`` carries weight ``w_u`` the substitution is
``v_old = v**w``, ``u_old = u * v**w_u``, and the transformed components are
recovered by exact division:

    v'   =  X_v(sub) / (w * v**(w-1))
    u'   =  X_u(sub) / v**w_u  -  (w_u / w) * u * X_v(sub) / v**w

Denominators are monomials in ``v`` only, so every component is an exact
:class:`~foliations.algebra.ChartFunction`.  The divisor-vanishing order of
the transform is extracted into a holomorphic, content-free representative;
a transform with poles is reported with its pole order instead of being
silently cleared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ChartFunction,
    GaussianRational,
    Poly,
    monomial_content,
)
from .errors import InvalidCenterError, NotApplicableError, StructuralError
from .fields import BlowupRecord, Chart, VectorField

POINT = "point"


def curve_center(free_var: str) -> str:
    """Center descriptor for the coordinate axis on which ``free_var`` is free."""
    return f"curve:{free_var}"


@dataclass(frozen=True)
class BlowupSpec:
    """Which center, which weights, which chart of the covering."""

    center: str = POINT                  # 'point' or 'curve:<free var>'
    weights: tuple[int, ...] | None = None   # default: all ones
    chart_index: int = 0

    def free_var(self) -> str | None:
        if self.center.startswith("curve:"):
            return self.center.split(":", 1)[1]
        return None


@dataclass(frozen=True)
class TransformResult:
    """Outcome of one blow-up chart.

    ``field`` is the raw transform (possibly meromorphic along the new
    divisor), ``representative`` the holomorphic content-free field that
    defines the transformed foliation on the chart.  ``divisor_multiplicity``
    is the vanishing order of the transform along the divisor (negative when
    the transform is strictly meromorphic), ``pole_order`` its pole order
    (0 for a holomorphic transform).
    """

    field: VectorField
    representative: VectorField
    divisor_multiplicity: int
    pole_order: int
    dicritical: bool
    chart: Chart
    divisor_var: str
    record: BlowupRecord


def _blown_vars(chart: Chart, spec: BlowupSpec) -> list[str]:
    free = spec.free_var()
    if free is None:
        return list(chart.var_names)
    if chart.dim != 3:
        raise NotApplicableError("curve centers need ambient dimension 3")
    if free not in chart.var_names:
        raise StructuralError(f"unknown axis variable {free!r}")
    return [v for v in chart.var_names if v != free]


def _check_center(x: VectorField, spec: BlowupSpec, blown: list[str]) -> None:
    if not x.is_holomorphic():
        raise NotApplicableError("transforms act on holomorphic fields")
    free = spec.free_var()
    if free is None:
        if not x.vanishes_at_origin():
            raise NotApplicableError("blow-up centered at a regular point")
        return
    # curve center: the components transverse to the axis must vanish on it
    polys = x.polys()
    for var, comp in zip(x.chart.var_names, polys):
        if var == free:
            continue
        restricted = comp
        for other in blown:
            restricted = restricted.restrict(other, 0)
        if not restricted.is_zero():
            raise InvalidCenterError(
                f"axis of {free!r} is not invariant: component {var} survives")
    return


def weighted_blowup(
    x: VectorField,
    spec: BlowupSpec,
    divisor_label: str | None = None,
    center_coords: tuple[str, ...] | None = None,
) -> TransformResult:
    """Transform ``x`` under one chart of a (possibly weighted) blow-up."""
    chart = x.chart
    blown = _blown_vars(chart, spec)
    weights = spec.weights if spec.weights is not None else tuple([1] * len(blown))
    if len(weights) != len(blown):
        raise StructuralError("one weight per blown-up variable required")
    if any(w < 1 for w in weights):
        raise StructuralError("weights must be positive integers")
    if len(blown) < 2:
        raise StructuralError("blow-ups involve at least two variables")
    if not 0 <= spec.chart_index < len(blown):
        raise StructuralError("chart index out of range")
    _check_center(x, spec, blown)

    names = chart.var_names
    n = len(names)
    weight_of = dict(zip(blown, weights))
    v_name = blown[spec.chart_index]
    k = chart.var_index(v_name)
    wv = weight_of[v_name]

    def unit(i: int) -> list[int]:
        e = [0] * n
        e[i] = 1
        return e

    # substitution: v_old = v**wv ; u_old = u * v**w_u ; free variables fixed
    assignment = {}
    ek = unit(k)
    assignment[v_name] = (GaussianRational.of(1), tuple(x_ * wv for x_ in ek))
    for u_name in blown:
        if u_name == v_name:
            continue
        j = chart.var_index(u_name)
        exps = unit(j)
        exps[k] += weight_of[u_name]
        assignment[u_name] = (GaussianRational.of(1), tuple(exps))

    subbed = [p.laurent_substitute(assignment) for p in x.polys()]

    comps: list[ChartFunction] = [None] * n  # type: ignore[list-item]
    minus_wv_ek = tuple(-wv * e for e in ek)
    for name in names:
        i = chart.var_index(name)
        if name == v_name:
            shifted = subbed[i].shift_exponents(tuple(-(wv - 1) * e for e in ek))
            comps[i] = shifted.scale(GaussianRational.of(Fraction(1, wv)))
        elif name in weight_of:
            wu = weight_of[name]
            first = subbed[i].shift_exponents(tuple(-wu * e for e in ek))
            u_poly = ChartFunction.of_poly(Poly.variable(names, name))
            second = (subbed[k].shift_exponents(minus_wv_ek) * u_poly).scale(
                GaussianRational.of(Fraction(wu, wv)))
            comps[i] = first - second
        else:
            comps[i] = subbed[i]

    # divisor labels: the chart variable cuts the new component; strict
    # transforms of previously labelled hypersurfaces keep their labels
    if divisor_label is None:
        divisor_label = f"E{len(chart.history) + 1}"
    labels = list(chart.divisor_labels)
    labels[k] = divisor_label
    if center_coords is None:
        center_coords = ("0",) * n
    record = BlowupRecord(spec.center, tuple(center_coords), tuple(weights),
                          v_name, divisor_label)
    new_chart = chart.extended(record, labels)

    field = VectorField(new_chart, tuple(comps))

    orders = [c.order_in(v_name) for c in comps if not c.is_zero()]
    if not orders:
        raise NotApplicableError("transform of the zero field")
    m = int(min(orders))
    pole_order = max(0, -m)
    cleared = [c.shift_exponents(tuple(-m * e for e in ek)) for c in comps]
    content, reduced = monomial_content([c.expand() for c in cleared])
    representative = VectorField(new_chart,
                                 tuple(ChartFunction.of_poly(p) for p in reduced))
    multiplicity = m + content[k]

    rep_v = representative.components[k]
    dicritical = (not rep_v.is_zero()) and rep_v.order_in(v_name) == 0

    return TransformResult(
        field=field,
        representative=representative,
        divisor_multiplicity=multiplicity,
        pole_order=pole_order,
        dicritical=dicritical,
        chart=new_chart,
        divisor_var=v_name,
        record=record,
    )


def blowup_point(
    x: VectorField,
    spec: BlowupSpec | None = None,
    divisor_label: str | None = None,
    center_coords: tuple[str, ...] | None = None,
) -> TransformResult:
    """Standard one-point blow-up (weights all 1) in one chart."""
    if spec is None:
        spec = BlowupSpec()
    if spec.center != POINT:
        raise StructuralError("blowup_point needs a point center")
    spec = BlowupSpec(POINT, tuple([1] * x.chart.dim), spec.chart_index)
    return weighted_blowup(x, spec, divisor_label, center_coords)


def blowup_curve(
    x: VectorField,
    spec: BlowupSpec,
    divisor_label: str | None = None,
    center_coords: tuple[str, ...] | None = None,
) -> TransformResult:
    """Standard blow-up along a coordinate axis in dimension 3."""
    free = spec.free_var()
    if free is None:
        raise StructuralError("blowup_curve needs a curve center")
    spec = BlowupSpec(spec.center, (1, 1), spec.chart_index)
    return weighted_blowup(x, spec, divisor_label, center_coords)


def all_charts(
    x: VectorField,
    center: str = POINT,
    weights: tuple[int, ...] | None = None,
    divisor_label: str | None = None,
    center_coords: tuple[str, ...] | None = None,
) -> list[TransformResult]:
    """All charts of one blow-up, in blown-variable order."""
    probe = BlowupSpec(center, weights, 0)
    count = len(_blown_vars(x.chart, probe))
    out = []
    for idx in range(count):
        out.append(weighted_blowup(
            x, BlowupSpec(center, weights, idx), divisor_label, center_coords))
    return out


def dicritical_test(result: TransformResult) -> bool:
    """True iff the new divisor is not invariant for the representative."""
    return result.dicritical
