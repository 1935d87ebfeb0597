"""First-integral machinery.

Exact verification (``X . F == 0``), truncated formal solving (the exact
nullspace of ``F -> jet(X . F, N)`` over polynomials without constant
term), functional independence via ``dF ^ dG``, and the meromorphic
quotient of two first integrals sharing an irreducible factor, restricted
to that factor's zero set when the factor is a coordinate.

Factorizations are caller-supplied: multivariate polynomial factorization
is deliberately out of scope, and the quotient construction only needs the
factored shape.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import GR_ONE, GR_ZERO, Poly
from .errors import NotApplicableError, StructuralError
from .fields import VectorField, directional_derivative


# ---------------------------------------------------------------------------
# Verification and independence
# ---------------------------------------------------------------------------

def verify_first_integral(x: VectorField, f: Poly) -> bool:
    """Exact test ``X . F == 0``."""
    return directional_derivative(x, f).is_zero()


def independence_check(f: Poly, g: Poly) -> bool:
    """True iff ``dF ^ dG`` is not identically zero (exact)."""
    if f.vars != g.vars:
        raise StructuralError("integrals live on different variable lists")
    names = f.vars
    for i, j in itertools.combinations(range(len(names)), 2):
        minor = (f.partial(names[i]) * g.partial(names[j])
                 - f.partial(names[j]) * g.partial(names[i]))
        if not minor.is_zero():
            return True
    return False


# ---------------------------------------------------------------------------
# Formal jet solving
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JetSolutionSpace:
    """Solutions of ``jet(X . F, N) == 0`` with ``1 <= deg F <= N``.

    ``basis`` is in reduced echelon form with respect to the canonical
    (graded lexicographic) monomial order, so the output is deterministic.
    ``dims_by_degree[d-1]`` is the dimension of the order-d problem for
    d = 1..N; the listed prefix is independent of N.
    """

    degree: int
    basis: tuple[Poly, ...]
    dims_by_degree: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "dims_by_degree": list(self.dims_by_degree),
            "basis": [f.render() for f in self.basis],
        }


def _monomials_up_to(names, n: int):
    """Exponent tuples of total degree 1..n in canonical descending order."""
    k = len(names)
    out = []
    for exps in itertools.product(range(n + 1), repeat=k):
        d = sum(exps)
        if 1 <= d <= n:
            out.append(exps)
    out.sort(key=lambda e: (sum(e), e), reverse=True)
    return out


def _nullspace_echelon(matrix, ncols):
    """Reduced echelon basis of the nullspace of an exact matrix.

    ``matrix`` is a list of rows (lists of GaussianRational).  Returns a
    list of coefficient vectors in reduced echelon form with respect to the
    column order.
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    pivots: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        pivot = None
        for rr in range(r, nrows):
            if not rows[rr][c].is_zero():
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for rr in range(nrows):
            if rr != r and not rows[rr][c].is_zero():
                f = rows[rr][c]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[r])]
        pivots[c] = r
        r += 1
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [GR_ZERO] * ncols
        vec[fc] = GR_ONE
        for pc, pr in pivots.items():
            coeff = rows[pr][fc]
            if not coeff.is_zero():
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def _solve_jet_problem(x: VectorField, n: int, monomials):
    names = x.chart.var_names
    columns = []
    row_index: dict[tuple, int] = {}
    rows_of_cols = []
    for exps in monomials:
        image = directional_derivative(x, Poly.make(names, {exps: GR_ONE}))
        image = image.jet_truncate(n)
        col = {}
        for e, c in image.terms.items():
            if e not in row_index:
                row_index[e] = len(row_index)
            col[row_index[e]] = c
        rows_of_cols.append(col)
    nrows = len(row_index)
    ncols = len(monomials)
    matrix = [[GR_ZERO] * ncols for _ in range(nrows)]
    for j, col in enumerate(rows_of_cols):
        for i, c in col.items():
            matrix[i][j] = c
    null = _nullspace_echelon(matrix, ncols)
    basis = []
    for vec in null:
        terms = {exps: coeff for exps, coeff in zip(monomials, vec)
                 if not coeff.is_zero()}
        basis.append(Poly.make(names, terms))
    return basis


def formal_first_integral(x: VectorField, n: int = 8) -> JetSolutionSpace:
    """Exact truncated first-integral solution space at order ``n``.

    Solves ``jet(X . F, n) == 0`` over polynomials of degree 1..n with zero
    constant term; every basis element's residual is rechecked by exact
    multiplication before being returned.
    """
    if not x.is_holomorphic():
        raise NotApplicableError("formal solving needs a holomorphic field")
    if not x.vanishes_at_origin():
        raise NotApplicableError("formal solving needs a singular germ")
    if n < 2:
        raise StructuralError("jet order must be at least 2")
    names = x.chart.var_names
    dims = []
    basis = ()
    for d in range(1, n + 1):
        monomials = _monomials_up_to(names, d)
        solutions = _solve_jet_problem(x, d, monomials)
        for f in solutions:
            residual = directional_derivative(x, f).jet_truncate(d)
            if not residual.is_zero():  # pragma: no cover - exact solver guard
                raise StructuralError("nullspace element failed residual check")
        dims.append(len(solutions))
        if d == n:
            basis = tuple(solutions)
    return JetSolutionSpace(n, basis, tuple(dims))


# ---------------------------------------------------------------------------
# Meromorphic quotients of first integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredFunction:
    """A product of caller-supplied irreducible factors with multiplicities."""

    factors: tuple[tuple[Poly, int], ...]

    @staticmethod
    def make(factors) -> "FactoredFunction":
        out = []
        for f, m in factors:
            if m < 1:
                raise StructuralError("factor exponents must be positive")
            if f.is_zero():
                raise StructuralError("zero factor")
            out.append((f, m))
        return FactoredFunction(tuple(out))

    def expand(self) -> Poly:
        if not self.factors:
            raise StructuralError("empty factorization")
        out = Poly.constant(self.factors[0][0].vars, GR_ONE)
        for f, m in self.factors:
            out = out * f ** m
        return out


@dataclass(frozen=True)
class QuotientResult:
    """Numerator/denominator of ``F**n1 / G**m1`` after cancelling the shared
    factor, with the optional restriction to the factor's zero set."""

    power_num: int
    power_den: int
    numerator: Poly
    denominator: Poly
    restricted: tuple[Poly, Poly] | None

    def to_json(self) -> dict:
        return {
            "powers": [self.power_num, self.power_den],
            "numerator": self.numerator.render(),
            "denominator": self.denominator.render(),
            "restricted": None if self.restricted is None else
            [self.restricted[0].render(), self.restricted[1].render()],
        }


def meromorphic_quotient(f: FactoredFunction, g: FactoredFunction,
                         shared_index: tuple[int, int] = (0, 0)) -> QuotientResult:
    """Cancel one shared irreducible factor between two first integrals.

    ``shared_index`` picks the factor position in each factorization; the
    minimal powers ``n1, m1`` with ``n1 * mult_F == m1 * mult_G`` are used,
    so the shared factor disappears from ``F**n1 / G**m1`` entirely.  When
    the shared factor is a single coordinate, the restriction of numerator
    and denominator to its zero set is included.
    """
    fi, gi = shared_index
    try:
        f_fac, f_mult = f.factors[fi]
        g_fac, g_mult = g.factors[gi]
    except IndexError:
        raise NotApplicableError("shared factor index out of range") from None
    if f_fac != g_fac:
        raise NotApplicableError("designated factors are not equal")
    gcd = math.gcd(f_mult, g_mult)
    n1 = g_mult // gcd
    m1 = f_mult // gcd
    num = Poly.constant(f_fac.vars, GR_ONE)
    for k, (fac, mult) in enumerate(f.factors):
        if k == fi:
            continue
        num = num * fac ** (mult * n1)
    den = Poly.constant(g_fac.vars, GR_ONE)
    for k, (fac, mult) in enumerate(g.factors):
        if k == gi:
            continue
        den = den * fac ** (mult * m1)
    restricted = None
    coord = _as_coordinate(f_fac)
    if coord is not None:
        restricted = (num.restrict(coord, 0), den.restrict(coord, 0))
    return QuotientResult(n1, m1, num, den, restricted)


def _as_coordinate(p: Poly) -> str | None:
    if len(p.terms) != 1:
        return None
    (exps, coeff), = p.terms.items()
    if coeff != GR_ONE or sum(exps) != 1:
        return None
    return p.vars[exps.index(1)]
