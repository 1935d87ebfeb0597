"""Resolution drivers.

Dimension 2: the classical iteration -- blow up every non-elementary
singular point, breadth first, recording an annotated tree: divisor
components with self-intersection weights, exact (or certified) singular
points with their classification, and transverse/tangent eigenvalue ratios
feeding the index-sum cross-check on compact invariant components.

Dimension 3: a best-effort driver that blows up points and coordinate-axis
curves contained in the singular set, detects the persistent-nilpotent
normal form

    (y + f(x,y,z)) d/dx + g(x,y,z) d/dy + z^n d/dz,
    ord f >= 2, ord g >= 2, n >= 2,

and escapes a detected point with a single blow-up of weight 2 centered on
the distinguished invariant axis.  Point selection is deterministic
(breadth-first over nodes, canonical coordinate order within a node), so
identical inputs and budgets yield byte-identical serialized trees.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field

from .algebra import GR_ONE, GR_ZERO, ChartFunction, GaussianRational, Poly, monomial_content
from .blowup import POINT, BlowupSpec, TransformResult, curve_center, weighted_blowup
from .classify import (
    CLASS_NILPOTENT,
    SingularityReport,
    classify_singularity,
)
from .errors import DegenerateInputError, NotApplicableError, StructuralError
from .fields import Chart, VectorField, linear_part
from . import intervals as iv

STATUS_RESOLVED = "resolved"
STATUS_BUDGET = "budget_exhausted"
STATUS_PERSISTENT_PENDING = "persistent_nilpotent_pending"

POINT_ELEMENTARY = "elementary"
POINT_REGULAR = "regular"
POINT_BLOWN_UP = "blown_up"
POINT_PENDING = "pending"
POINT_NONRATIONAL = "unprocessed_nonrational"
POINT_ESCAPED = "escaped_weighted"


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass
class SingularPoint:
    """A located singular point of the transformed foliation."""

    node_id: int
    coords: tuple[GaussianRational, ...] | None      # exact coordinates, or None
    box: tuple[tuple[float, float, float, float], ...] | None  # certified rectangles
    on_components: tuple[str, ...]
    report: SingularityReport | None
    status: str
    cs_indices: dict[str, GaussianRational] = field(default_factory=dict)
    note: str = ""

    def sort_key(self):
        if self.coords is not None:
            return (0, tuple((c.re, c.im) for c in self.coords))
        mids = tuple(((b[0] + b[1]) / 2, (b[2] + b[3]) / 2) for b in self.box)
        return (1, mids)

    def coords_text(self) -> list:
        if self.coords is not None:
            return [c.text() for c in self.coords]
        return [list(b) for b in self.box]

    def is_final_ok(self) -> bool:
        return self.status in (POINT_ELEMENTARY, POINT_REGULAR, POINT_BLOWN_UP,
                               POINT_ESCAPED)


@dataclass
class TreeNode:
    """One chart of the resolution tree, with its foliation representative."""

    id: int
    parent: int | None
    chart: Chart
    rep: VectorField
    center_coords: tuple[str, ...] | None
    center_kind: str | None
    weights: tuple[int, ...] | None
    divisor_var: str | None
    divisor_label: str | None
    dicritical: bool
    multiplicity: int
    pole_order: int
    singular_points: list[SingularPoint] = field(default_factory=list)


@dataclass
class DivisorComponent:
    id: str
    weight: int | None          # self-intersection in dimension 2, None in dim 3
    created_at_node: int


@dataclass
class ResolutionTree:
    dim: int
    nodes: list[TreeNode] = field(default_factory=list)
    components: dict[str, DivisorComponent] = field(default_factory=dict)
    status: str = STATUS_RESOLVED
    steps: int = 0
    weighted_steps: int = 0
    diagnostics: list[str] = field(default_factory=list)

    def all_points(self):
        for node in self.nodes:
            for p in node.singular_points:
                yield node, p

    def component_points(self, label: str):
        return [(n, p) for n, p in self.all_points() if label in p.on_components]

    def component_index_sum(self, label: str) -> GaussianRational | None:
        """Sum of transverse/tangent eigenvalue ratios on one component.

        Returns None when some point on the component lacks an exact
        nonzero tangent eigenvalue (the ratio is then not defined by the
        linear part alone).
        """
        total = GR_ZERO
        for _, p in self.component_points(label):
            if p.status == POINT_BLOWN_UP:
                continue  # replaced by its preimages on child charts
            ratio = p.cs_indices.get(label)
            if ratio is None:
                return None
            total = total + ratio
        return total

    def final_points(self):
        return [(n, p) for n, p in self.all_points() if p.status != POINT_BLOWN_UP]

    def to_json_dict(self) -> dict:
        nodes = []
        for n in self.nodes:
            nodes.append({
                "id": n.id,
                "parent": n.parent,
                "vars": list(n.chart.var_names),
                "divisor_labels": list(n.chart.divisor_labels),
                "center": None if n.center_coords is None else {
                    "coords": list(n.center_coords),
                    "kind": n.center_kind,
                    "weights": list(n.weights) if n.weights else None,
                },
                "divisor_var": n.divisor_var,
                "divisor_label": n.divisor_label,
                "field": n.rep.render(),
                "dicritical": n.dicritical,
                "multiplicity": n.multiplicity,
                "pole_order": n.pole_order,
                "singular_points": [{
                    "coords": p.coords_text(),
                    "exact": p.coords is not None,
                    "status": p.status,
                    "on_components": list(p.on_components),
                    "report": p.report.to_json() if p.report else None,
                    "eigenvalue_ratios": {k: v.text() for k, v in sorted(p.cs_indices.items())},
                    "note": p.note,
                } for p in n.singular_points],
            })
        return {
            "dimension": self.dim,
            "status": self.status,
            "steps": self.steps,
            "weighted_steps": self.weighted_steps,
            "components": [{
                "id": c.id,
                "weight": c.weight,
                "created_at_node": c.created_at_node,
            } for c in sorted(self.components.values(), key=lambda c: c.id)],
            "diagnostics": list(self.diagnostics),
            "nodes": nodes,
        }


# ---------------------------------------------------------------------------
# Root finding on the divisor
# ---------------------------------------------------------------------------

def _univariate_coeffs(p: Poly, var: str) -> list[GaussianRational]:
    return p.univariate_coeffs(var)


def _poly_gcd_univariate(a: Poly, b: Poly, var: str) -> list[GaussianRational]:
    return iv.poly_gcd(_univariate_coeffs(a, var), _univariate_coeffs(b, var))


def _roots_of(coeffs: list[GaussianRational]):
    """(exact roots, certified interval roots) of a dense univariate poly."""
    if iv.poly_degree(coeffs) <= 0:
        return [], []
    exact, certified = iv.certified_roots(coeffs)
    return [r for r, _m in exact], certified


def divisor_restriction_system(rep: VectorField, divisor_var: str, along: str):
    """Restrict all components to the divisor, as univariates in ``along``."""
    out = []
    for comp in rep.components:
        p = comp.expand()
        for v in rep.chart.var_names:
            if v not in (along,):
                p = p.restrict(v, 0)
        out.append(p)
    return out


def singular_points_on_divisor(rep: VectorField, divisor_var: str):
    """Exact and certified singular points on the divisor of a 2-D chart.

    Returns ``(exact_roots, certified_roots, whole_divisor_singular)`` where
    the roots are values of the non-divisor coordinate.
    """
    if rep.chart.dim != 2:
        raise NotApplicableError("divisor point enumeration is two-dimensional here")
    names = rep.chart.var_names
    other = names[1] if names[0] == divisor_var else names[0]
    restricted = [comp.expand().restrict(divisor_var, 0) for comp in rep.components]
    nonzero = [p for p in restricted if not p.is_zero()]
    if not nonzero:
        return [], [], True
    if len(nonzero) == 1:
        coeffs = _univariate_coeffs(nonzero[0], other)
    else:
        coeffs = _poly_gcd_univariate(nonzero[0], nonzero[1], other)
    exact, certified = _roots_of(coeffs)
    return exact, certified, False


# ---------------------------------------------------------------------------
# Point classification helpers
# ---------------------------------------------------------------------------

def _translate_labels(chart: Chart, coords) -> Chart:
    labels = list(chart.divisor_labels)
    for i, c in enumerate(coords):
        if not c.is_zero():
            labels[i] = None
    return chart.with_labels(labels)


def germ_at(rep: VectorField, coords) -> VectorField:
    """The representative recentered at an exact point, labels adjusted."""
    moved = rep.translate(coords)
    chart = _translate_labels(rep.chart, coords)
    return VectorField(chart, moved.components)


def _eigenvalue_ratios(germ: VectorField) -> dict[str, GaussianRational]:
    """transverse/tangent linear-part eigenvalue ratio per labelled component.

    Defined when the component's coordinate hypersurface is invariant for
    the germ and the tangent diagonal entry is nonzero; the Jacobian is then
    triangular for that splitting, so the diagonal entries are the exact
    eigenvalues.
    """
    chart = germ.chart
    if chart.dim != 2:
        return {}
    lp = linear_part(germ)
    out: dict[str, GaussianRational] = {}
    for i, label in enumerate(chart.divisor_labels):
        if label is None:
            continue
        var = chart.var_names[i]
        comp = germ.components[i]
        if not comp.is_zero() and comp.order_in(var) < 1:
            continue  # hypersurface not invariant: no well-defined ratio
        j = 1 - i
        tangent = lp.entries[j][j]
        transverse = lp.entries[i][i]
        if tangent.is_zero():
            continue
        out[label] = transverse / tangent
    return out


def _on_components(chart: Chart, coords) -> tuple[str, ...]:
    out = []
    for label, c in zip(chart.divisor_labels, coords):
        if label is not None and c.is_zero():
            out.append(label)
    return tuple(out)


def _classify_point(node: TreeNode, coords) -> SingularPoint:
    germ = germ_at(node.rep, coords)
    report = classify_singularity(germ)
    status = POINT_REGULAR if report.klass == "regular" else (
        POINT_ELEMENTARY if report.is_elementary() else POINT_PENDING)
    point = SingularPoint(
        node_id=node.id,
        coords=tuple(coords),
        box=None,
        on_components=_on_components(node.chart, coords),
        report=report,
        status=status,
    )
    if report.klass != "regular":
        point.cs_indices = _eigenvalue_ratios(germ)
    return point


def _interval_point(node: TreeNode, divisor_var: str, other: str,
                    root: iv.CertifiedRoot) -> SingularPoint:
    """Record a non-rational divisor point; prove elementarity if possible."""
    chart = node.chart
    iv_idx = chart.var_index(divisor_var)
    boxes = []
    for name in chart.var_names:
        if name == other:
            boxes.append(root.box.bounds())
        else:
            boxes.append((0.0, 0.0, 0.0, 0.0))
    # trace and determinant of the Jacobian along the divisor, as exact
    # univariate polynomials in the free coordinate
    names = chart.var_names
    polys = node.rep.polys()
    jac = [[polys[i].partial(names[j]) for j in range(len(names))]
           for i in range(len(names))]
    on_divisor = []
    for row in jac:
        on_divisor.append([_restrict_all_but(p, other) for p in row])
    n = len(names)
    trace = Poly.zero(names)
    for i in range(n):
        trace = trace + on_divisor[i][i]
    provable = _interval_excludes_zero(trace, other, root)
    if not provable and n == 2:
        det = on_divisor[0][0] * on_divisor[1][1] - on_divisor[0][1] * on_divisor[1][0]
        provable = _interval_excludes_zero(det, other, root)
    label = chart.divisor_labels[iv_idx]
    point = SingularPoint(
        node_id=node.id,
        coords=None,
        box=tuple(boxes),
        on_components=(label,) if label else (),
        report=None,
        status=POINT_ELEMENTARY if provable else POINT_NONRATIONAL,
        note="elementary (certified: nonzero eigenvalue)" if provable
        else "non-rational divisor point left unprocessed",
    )
    return point


def _restrict_all_but(p: Poly, keep: str) -> Poly:
    for v in p.vars:
        if v != keep:
            p = p.restrict(v, 0)
    return p


def _interval_excludes_zero(p: Poly, var: str, root: iv.CertifiedRoot) -> bool:
    coeffs = [iv.ComplexInterval.of_gaussian(c) for c in p.univariate_coeffs(var)]
    value = iv._interval_eval(coeffs, root.box)
    return not value.contains_zero()


# ---------------------------------------------------------------------------
# Dimension 2: Seidenberg iteration
# ---------------------------------------------------------------------------

def _prepare_input(x: VectorField, tree: ResolutionTree) -> VectorField:
    polys = [c.expand() for c in x.components]
    if all(p.is_zero() for p in polys):
        raise DegenerateInputError("cannot resolve the zero field")
    content, reduced = monomial_content(polys)
    if any(content):
        tree.diagnostics.append(
            "input had a monomial zero divisor; working with its representative")
    return VectorField(x.chart, tuple(ChartFunction.of_poly(p) for p in reduced))


def seidenberg_resolve(x: VectorField, max_steps: int = 40) -> ResolutionTree:
    """Iterated point blow-ups in dimension 2 until every point is elementary.

    Returns the annotated tree; exhausting ``max_steps`` yields status
    ``budget_exhausted`` with the pending points marked, not an exception.
    """
    if x.chart.dim != 2:
        raise NotApplicableError("use resolve3 for three-dimensional germs")
    if max_steps < 1:
        raise StructuralError("max_steps must be at least 1")
    tree = ResolutionTree(dim=2)
    rep = _prepare_input(x, tree)
    root = TreeNode(0, None, rep.chart, rep, None, None, None, None, None,
                    False, 0, 0)
    tree.nodes.append(root)
    origin = tuple([GR_ZERO] * 2)
    p0 = _classify_point(root, origin)
    root.singular_points.append(p0)
    queue: deque[tuple[int, SingularPoint]] = deque()
    if p0.status == POINT_PENDING:
        queue.append((0, p0))
    label_counter = 0

    while queue:
        if tree.steps >= max_steps:
            tree.status = STATUS_BUDGET
            tree.diagnostics.append("blow-up budget exhausted")
            return tree
        node_id, point = queue.popleft()
        node = tree.nodes[node_id]
        tree.steps += 1
        label_counter += 1
        label = f"E{label_counter}"
        germ = germ_at(node.rep, point.coords)
        # weight bookkeeping: components through the center drop by one
        for comp_label in point.on_components:
            comp = tree.components[comp_label]
            if comp.weight is not None:
                comp.weight -= 1
        tree.components[label] = DivisorComponent(label, -1, node.id)
        point.status = POINT_BLOWN_UP
        center_coords = tuple(c.text() for c in point.coords)

        charts: list[TransformResult] = []
        for idx in range(2):
            charts.append(weighted_blowup(
                germ, BlowupSpec(POINT, (1, 1), idx), label, center_coords))
        for idx, result in enumerate(charts):
            child = TreeNode(
                id=len(tree.nodes), parent=node.id, chart=result.chart,
                rep=result.representative, center_coords=center_coords,
                center_kind=POINT, weights=(1, 1),
                divisor_var=result.divisor_var, divisor_label=label,
                dicritical=result.dicritical,
                multiplicity=result.divisor_multiplicity,
                pole_order=result.pole_order)
            tree.nodes.append(child)
            names = child.chart.var_names
            other = names[1] if names[0] == result.divisor_var else names[0]
            if idx == 0:
                exact, certified, whole = singular_points_on_divisor(
                    result.representative, result.divisor_var)
                if whole:
                    tree.diagnostics.append(
                        f"node {child.id}: divisor entirely singular (unexpected)")
                    continue
                new_points = [
                    _classify_point(child, _lift_coords(child.chart, result.divisor_var, r))
                    for r in sorted(exact, key=lambda g: g.sort_key())]
                for c in certified:
                    new_points.append(_interval_point(child, result.divisor_var, other, c))
            else:
                # second chart only contributes the point at infinity of the
                # first chart, i.e. its own origin
                new_points = []
                if germ_vanishes(result.representative):
                    new_points.append(_classify_point(
                        child, tuple([GR_ZERO] * 2)))
            for p in new_points:
                child.singular_points.append(p)
                if p.status == POINT_PENDING:
                    queue.append((child.id, p))
                elif p.status == POINT_NONRATIONAL:
                    tree.diagnostics.append(
                        f"node {child.id}: unprocessed non-rational point")

    # final status
    bad = [p for _, p in tree.all_points() if not p.is_final_ok()]
    if bad:
        tree.status = STATUS_BUDGET
        tree.diagnostics.append("stuck on points that cannot be recentered exactly")
    else:
        tree.status = STATUS_RESOLVED
    return tree


def germ_vanishes(rep: VectorField) -> bool:
    return rep.vanishes_at_origin()


def _lift_coords(chart: Chart, divisor_var: str, root: GaussianRational):
    coords = []
    for name in chart.var_names:
        coords.append(GR_ZERO if name == divisor_var else root)
    return tuple(coords)


# ---------------------------------------------------------------------------
# Persistent-nilpotent detection (dimension 3)
# ---------------------------------------------------------------------------

@dataclass
class PersistentNilpotentReport:
    """Outcome of the normal-form probe.

    ``matched=False`` is a non-verdict: the form is semi-decidable and the
    probe only explores finitely many blow-ups.  ``chain_exact`` mirrors the
    witness chain with exact coordinates for replay by the driver.
    """

    matched: bool
    n: int | None = None
    witness: dict | None = None
    chain_exact: list[tuple[str, tuple[GaussianRational, ...]]] | None = None

    def to_json(self) -> dict:
        return {"matched": self.matched, "n": self.n, "witness": self.witness}


def _order_in_var(p: Poly, var: str) -> float:
    q = _restrict_all_but(p, var)
    if q.is_zero():
        return math.inf
    return min(e[q.var_index(var)] for e in q.terms)


def match_persistent_normal_form(x: VectorField) -> dict | None:
    """Syntactic match of the persistent-nilpotent normal form.

    Tries all coordinate role assignments; reports the witness dictionary
    (roles, n, orders, and whether the ``> 2n`` axis-order conditions hold)
    or None.
    """
    if x.chart.dim != 3 or not x.is_holomorphic():
        return None
    polys = x.polys()
    names = x.chart.var_names
    for ix, iy, iz in itertools.permutations(range(3)):
        comp_x, comp_y, comp_z = polys[ix], polys[iy], polys[iz]
        # d/dZ component: exactly Z^n with n >= 2
        if len(comp_z.terms) != 1:
            continue
        (exps, coeff), = comp_z.terms.items()
        n = exps[iz]
        if coeff != GR_ONE or sum(exps) != n or n < 2:
            continue
        f = comp_x - Poly.variable(names, names[iy])
        if f.order() < 2:
            continue
        if comp_y.order() < 2:
            continue
        f_axis = _order_in_var(f, names[iz])
        g_axis = _order_in_var(comp_y, names[iz])
        strict = f_axis > 2 * n and g_axis > 2 * n
        return {
            "roles": {"x": names[ix], "y": names[iy], "z": names[iz]},
            "n": n,
            "f_order": int(f.order()) if f.order() != math.inf else None,
            "g_order": int(comp_y.order()) if comp_y.order() != math.inf else None,
            "f_axis_order": None if f_axis == math.inf else int(f_axis),
            "g_axis_order": None if g_axis == math.inf else int(g_axis),
            "z_orders_exceed_2n": strict,
        }
    return None


def _is_nilpotent_germ(germ: VectorField) -> bool:
    try:
        report = classify_singularity(germ)
    except Exception:
        return False
    return report.klass == CLASS_NILPOTENT


def _uses_only(p: Poly, var: str) -> bool:
    used = p.used_vars()
    return used == () or used == (var,)


def _divisor_candidates_3d(rep: VectorField, divisor_var: str):
    """Singular points of the representative on a 3-D divisor chart.

    The restricted system is solved exactly whenever some component is
    univariate in one of the two divisor coordinates (then every common
    zero lies over a root of those components and the enumeration is
    complete) or a single monomial component cuts out coordinate lines.
    Otherwise the caller is told the enumeration is incomplete.

    Returns ``(candidates, singular_lines, nonrational, complete)`` where
    candidates are exact points (full chart coordinates), singular_lines
    describe one-dimensional singular components found on the divisor, and
    nonrational counts certified-interval roots that could not be followed.
    """
    names = rep.chart.var_names
    polys = rep.polys()
    others = [v for v in names if v != divisor_var]
    u1, u2 = others
    restricted = [p.restrict(divisor_var, 0) for p in polys]
    nonzero = [p for p in restricted if not p.is_zero()]
    points: list[tuple[GaussianRational, GaussianRational]] = []
    lines: list[str] = []
    nonrational = 0
    complete = True

    def full_coords(a: GaussianRational, b: GaussianRational):
        values = {u1: a, u2: b, divisor_var: GR_ZERO}
        return tuple(values[name] for name in names)

    if not nonzero:
        # cannot happen for a content-free representative; defensive
        return [full_coords(GR_ZERO, GR_ZERO)], [f"{u1}-axis", f"{u2}-axis"], 0, False
    if any(p.degree() == 0 for p in nonzero):
        return [], [], 0, True  # a nonvanishing component: no zeros at all

    def solve_with_pivot(pivot_var: str, other_var: str):
        nonlocal nonrational
        pivot_comps = [p for p in nonzero if _uses_only(p, pivot_var)]
        coeffs = pivot_comps[0].univariate_coeffs(pivot_var)
        for p in pivot_comps[1:]:
            coeffs = iv.poly_gcd(coeffs, p.univariate_coeffs(pivot_var))
        exact, certified = _roots_of(coeffs)
        nonrational += len(certified)
        for r in exact:
            sliced = [p.restrict(pivot_var, r) for p in restricted]
            sliced_nonzero = [p for p in sliced if not p.is_zero()]
            if not sliced_nonzero:
                # the whole line {pivot = r} on the divisor is singular
                lines.append(f"{other_var}-line through {pivot_var}={r.text()}")
                points.append((r, GR_ZERO) if pivot_var == u1 else (GR_ZERO, r))
                continue
            if any(p.degree() == 0 for p in sliced_nonzero):
                continue
            sub_coeffs = sliced_nonzero[0].univariate_coeffs(other_var)
            for p in sliced_nonzero[1:]:
                sub_coeffs = iv.poly_gcd(sub_coeffs, p.univariate_coeffs(other_var))
            sub_exact, sub_certified = _roots_of(sub_coeffs)
            nonrational += len(sub_certified)
            for s in sub_exact:
                points.append((r, s) if pivot_var == u1 else (s, r))

    if any(_uses_only(p, u1) for p in nonzero):
        solve_with_pivot(u1, u2)
    elif any(_uses_only(p, u2) for p in nonzero):
        solve_with_pivot(u2, u1)
    elif len(nonzero) == 1 and len(nonzero[0].terms) == 1:
        # single monomial component: zero set is a union of coordinate lines
        (exps, _coeff), = nonzero[0].terms.items()
        for name, e in zip(names, exps):
            if e > 0 and name != divisor_var:
                lines.append(f"{name}-axis")
        points.append((GR_ZERO, GR_ZERO))
    else:
        # genuinely bivariate system: fall back to the origin candidate and
        # report that the enumeration may be missing points
        complete = False
        if all(p.constant_term().is_zero() for p in restricted):
            points.append((GR_ZERO, GR_ZERO))

    unique = sorted({(a.re, a.im, b.re, b.im): (a, b)
                     for a, b in points}.values(),
                    key=lambda ab: (ab[0].re, ab[0].im, ab[1].re, ab[1].im))
    candidates = [full_coords(a, b) for a, b in unique]
    return candidates, lines, nonrational, complete


def detect_persistent_nilpotent(
    x: VectorField,
    probe_budget: int = 6,
    require_axis_orders: bool = False,
) -> PersistentNilpotentReport:
    """Probe for the persistent-nilpotent normal form.

    Follows nilpotent singular points through at most ``probe_budget``
    one-point blow-ups, matching the normal form syntactically at each
    stage.  The ``> 2n`` conditions on the axis orders of f and g are
    reported in the witness; they become mandatory only with
    ``require_axis_orders=True``, since further blow-ups can always raise
    them.
    """
    if x.chart.dim != 3:
        raise NotApplicableError("persistent-nilpotent detection is three-dimensional")
    if not _is_nilpotent_germ(x):
        raise NotApplicableError("field does not have a nilpotent linear part")

    examined = 0
    stack: list[tuple[VectorField, list, int]] = [(x, [], 0)]
    while stack:
        germ, chain, depth = stack.pop(0)
        examined += 1
        if examined > 200:
            break  # combinatorial safety valve; result stays a non-verdict
        witness = match_persistent_normal_form(germ)
        if witness is not None and (not require_axis_orders
                                    or witness["z_orders_exceed_2n"]):
            witness = dict(witness)
            witness["chain"] = [
                {"chart_var": var, "coords": [c.text() for c in coords]}
                for var, coords in chain]
            witness["stage"] = depth
            return PersistentNilpotentReport(True, witness["n"], witness,
                                             chain_exact=list(chain))
        if depth >= probe_budget:
            continue
        expansions = []
        for idx in range(3):
            result = weighted_blowup(germ, BlowupSpec(POINT, (1, 1, 1), idx),
                                     divisor_label="probe")
            candidates, _lines, _nr, _complete = _divisor_candidates_3d(
                result.representative, result.divisor_var)
            for coords in candidates:
                sub = germ_at(result.representative, coords)
                if _is_nilpotent_germ(sub):
                    expansions.append(
                        (sub, chain + [(result.divisor_var, coords)], depth + 1))
        stack.extend(expansions)
    return PersistentNilpotentReport(False)


# ---------------------------------------------------------------------------
# Dimension 3 driver
# ---------------------------------------------------------------------------

def _singular_axis_center(germ: VectorField) -> str | None:
    """First coordinate axis contained in the singular set, if any."""
    polys = germ.polys()
    for axis in germ.chart.var_names:
        if all(_restrict_all_but(p, axis).is_zero() for p in polys):
            return axis
    return None


def _escape_blowup(germ: VectorField, witness: dict, label: str,
                   center_coords: tuple[str, ...]):
    """Weight-2 blow-up removing a matched persistent-nilpotent point.

    Preferred center: the distinguished axis of the normal form (the 'x'
    role), which carries the formal separatrix; weight 2 goes to the 'z'
    role variable.  Falls back to a weighted point blow-up when the axis is
    not contained in the singular set.
    """
    roles = witness["roles"]
    axis = roles["x"]
    names = germ.chart.var_names
    if _singular_axis_center(germ) == axis:
        blown = [v for v in names if v != axis]
        weights = tuple(2 if v == roles["z"] else 1 for v in blown)
        center = curve_center(axis)
    else:
        blown = list(names)
        weights = tuple(2 if v == roles["z"] else 1 for v in blown)
        center = POINT
    out = []
    for idx in range(len(blown)):
        out.append(weighted_blowup(germ, BlowupSpec(center, weights, idx),
                                   label, center_coords))
    return out, center, weights


def resolve3(
    x: VectorField,
    max_steps: int = 12,
    probe_budget: int = 6,
    allow_weighted: bool = True,
) -> ResolutionTree:
    """Resolution driver for three-dimensional germs.

    Standard blow-ups are centered at singular points or coordinate-axis
    curves inside the singular set.  With ``allow_weighted`` enabled, a
    nilpotent point matching the persistent normal form is removed by a
    single weight-2 blow-up; with it disabled the driver keeps applying
    standard blow-ups until the budget runs out.
    """
    if x.chart.dim != 3:
        raise NotApplicableError("resolve3 expects a three-dimensional germ")
    tree = ResolutionTree(dim=3)
    rep = _prepare_input(x, tree)
    root = TreeNode(0, None, rep.chart, rep, None, None, None, None, None,
                    False, 0, 0)
    tree.nodes.append(root)
    origin = tuple([GR_ZERO] * 3)
    p0 = _classify_point(root, origin)
    root.singular_points.append(p0)
    queue: deque[tuple[int, SingularPoint]] = deque()
    if p0.status == POINT_PENDING:
        queue.append((0, p0))
    label_counter = 0

    gaps = {"incomplete": 0, "nonrational": 0}

    def expand(node: TreeNode, results, center_kind, weights, center_coords, label):
        first = True
        for result in results:
            child = TreeNode(
                id=len(tree.nodes), parent=node.id, chart=result.chart,
                rep=result.representative, center_coords=center_coords,
                center_kind=center_kind, weights=weights,
                divisor_var=result.divisor_var, divisor_label=label,
                dicritical=result.dicritical,
                multiplicity=result.divisor_multiplicity,
                pole_order=result.pole_order)
            tree.nodes.append(child)
            if result.pole_order > 0:
                tree.diagnostics.append(
                    f"node {child.id}: strictly meromorphic vector-field transform "
                    f"(pole order {result.pole_order}); foliation representative used")
            candidates, lines, nonrational, complete = _divisor_candidates_3d(
                child.rep, result.divisor_var)
            if not first:
                # avoid double-counting: later charts only contribute points
                # invisible in earlier charts (their origin region)
                candidates = [c for c in candidates
                              if _invisible_in_earlier_charts(child.chart, result.divisor_var, c)]
            first = False
            for line in lines:
                tree.diagnostics.append(
                    f"node {child.id}: singular curve on the divisor ({line})")
            if nonrational:
                gaps["nonrational"] += nonrational
                tree.diagnostics.append(
                    f"node {child.id}: {nonrational} non-rational divisor point(s) "
                    "left unprocessed")
            if not complete:
                gaps["incomplete"] += 1
                tree.diagnostics.append(
                    f"node {child.id}: divisor singular locus not fully "
                    "enumerable (bivariate system); resolution status capped")
            for coords in candidates:
                point = _classify_point(child, coords)
                child.singular_points.append(point)
                if point.status == POINT_PENDING:
                    queue.append((child.id, point))

    while queue:
        if tree.steps + tree.weighted_steps >= max_steps:
            tree.status = STATUS_BUDGET
            pending = [point for _, point in tree.all_points()
                       if point.status == POINT_PENDING]
            matched_pending = 0
            for point in pending:
                if point.report and point.report.klass == CLASS_NILPOTENT:
                    tree.diagnostics.append(
                        f"budget exhausted at a nilpotent point (node {point.node_id})")
                    if allow_weighted:
                        germ = germ_at(tree.nodes[point.node_id].rep, point.coords)
                        if match_persistent_normal_form(germ) is not None:
                            matched_pending += 1
            if allow_weighted and matched_pending and matched_pending == len(pending):
                # everything left is detected persistent-nilpotent work that
                # the budget prevented the weight-2 escape from finishing
                tree.status = STATUS_PERSISTENT_PENDING
            tree.diagnostics.append("blow-up budget exhausted")
            return tree
        node_id, point = queue.popleft()
        node = tree.nodes[node_id]
        germ = germ_at(node.rep, point.coords)
        center_coords = tuple(c.text() for c in point.coords)
        label_counter += 1
        label = f"E{label_counter}"

        if (allow_weighted and point.report is not None
                and point.report.klass == CLASS_NILPOTENT):
            probe = detect_persistent_nilpotent(germ, probe_budget)
            if probe.matched:
                current = germ
                for chart_var, coords in (probe.chain_exact or []):
                    idx = list(current.chart.var_names).index(chart_var)
                    result = weighted_blowup(
                        current, BlowupSpec(POINT, (1, 1, 1), idx),
                        f"{label}pre")
                    current = germ_at(result.representative, coords)
                    tree.steps += 1
                escape, center_kind, weights = _escape_blowup(
                    current, probe.witness, label, center_coords)
                tree.weighted_steps += 1
                tree.components[label] = DivisorComponent(label, None, node.id)
                point.status = POINT_ESCAPED
                point.note = f"persistent nilpotent (n={probe.n}); weight-2 escape"
                expand(node, escape, center_kind, weights, center_coords, label)
                continue

        # standard step
        tree.steps += 1
        tree.components[label] = DivisorComponent(label, None, node.id)
        point.status = POINT_BLOWN_UP
        axis = _singular_axis_center(germ)
        if axis is not None:
            results = []
            blown = [v for v in germ.chart.var_names if v != axis]
            for idx in range(len(blown)):
                results.append(weighted_blowup(
                    germ, BlowupSpec(curve_center(axis), (1, 1), idx),
                    label, center_coords))
            expand(node, results, curve_center(axis), (1, 1), center_coords, label)
        else:
            results = []
            for idx in range(3):
                results.append(weighted_blowup(
                    germ, BlowupSpec(POINT, (1, 1, 1), idx), label, center_coords))
            expand(node, results, POINT, (1, 1, 1), center_coords, label)

    bad = [p for _, p in tree.all_points() if not p.is_final_ok()]
    if bad:
        tree.status = STATUS_BUDGET
        tree.diagnostics.append("stuck on points that cannot be recentered exactly")
    elif gaps["incomplete"] or gaps["nonrational"]:
        tree.status = STATUS_BUDGET
        tree.diagnostics.append(
            "all enumerated points are elementary, but the divisor enumeration "
            "had gaps; refusing to claim a full resolution")
    else:
        tree.status = STATUS_RESOLVED
    return tree


def _invisible_in_earlier_charts(chart: Chart, divisor_var: str, coords) -> bool:
    """True when a divisor point is not already covered by an earlier chart.

    In the chart where variable ``w`` (blown up before ``divisor_var``) is
    the divisor coordinate, a point with nonzero ``w`` coordinate appears
    with coordinates scaled by 1/w; only points with that coordinate equal
    to zero are genuinely new in this chart.
    """
    record = chart.history[-1]
    blown: list[str] = []
    if record.center == POINT:
        blown = list(chart.var_names)
    else:
        free = record.center.split(":", 1)[1]
        blown = [v for v in chart.var_names if v != free]
    for name in blown:
        if name == divisor_var:
            break
        i = chart.var_names.index(name)
        if not coords[i].is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def emit_tree(tree: ResolutionTree, fmt: str = "json") -> str:
    """Deterministic serialization of a resolution tree (json or dot)."""
    if fmt == "json":
        return json.dumps(tree.to_json_dict(), indent=2, sort_keys=False)
    if fmt != "dot":
        raise StructuralError("format must be 'json' or 'dot'")
    lines = ["digraph resolution {"]
    for comp in sorted(tree.components.values(), key=lambda c: c.id):
        weight = "?" if comp.weight is None else str(comp.weight)
        lines.append(
            f'  "{comp.id}" [shape=ellipse, label="{comp.id}\\nweight {weight}"];')
    counter = 0
    for node, point in tree.all_points():
        if point.status == POINT_BLOWN_UP:
            continue
        counter += 1
        klass = point.report.klass if point.report else point.status
        pid = f"s{counter}"
        lines.append(f'  "{pid}" [shape=box, label="{klass}"];')
        for comp in point.on_components:
            lines.append(f'  "{comp}" -> "{pid}" [dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
