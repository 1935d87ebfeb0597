"""Exact arithmetic substrate.

Three layers, all immutable and exact:

* :class:`GaussianRational` -- complex numbers with rational real and
  imaginary parts.  Every coefficient in the package lives here, so equality
  of derived objects is decidable.
* :class:`Poly` -- sparse multivariate polynomials in up to three declared
  variables, stored as a map from exponent tuples to nonzero coefficients.
  The canonical term order is graded lexicographic in the declared variable
  order.
* :class:`ChartFunction` -- a polynomial numerator times a signed monomial
  ``prod(x_i ** e_i)`` whose exponents may be negative.  This is exactly the
  class of functions produced by blow-up transforms: poles only along
  coordinate hypersurfaces.  Construction fully extracts the monomial content
  of the numerator, so equality is again decidable.

Pure functions only; no value is mutated after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateInputError,
    PoleEvaluationError,
    StructuralError,
)

Exponents = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i): exact complex number with rational parts.

    `Fraction` keeps denominators positive and fractions reduced, so values
    are canonical and hashable.
    """

    re: Fraction = _ZERO
    im: Fraction = _ZERO

    @staticmethod
    def of(value: "GaussianRational | Fraction | int | str") -> "GaussianRational":
        """Coerce an int, Fraction, or 'a/b' string to a Gaussian rational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction, str)):
            return GaussianRational(Fraction(value))
        raise StructuralError(f"cannot coerce {value!r} to a Gaussian rational")

    @staticmethod
    def i() -> "GaussianRational":
        return GaussianRational(_ZERO, _ONE)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return GaussianRational(_ONE) / self ** (-k)
        out = GaussianRational(_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def text(self) -> str:
        """Canonical rendering: '3', '-1/2', 'i', '2i', '1+2i', '1/2-3/4i'."""
        if self.im == 0:
            return _frac_text(self.re)
        if self.re == 0:
            return _imag_text(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{_frac_text(self.re)}{sign}{_imag_text(abs(self.im))}"

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return self.text()


def _frac_text(q: Fraction) -> str:
    return str(q)


def _imag_text(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}i"


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(_ONE)


def gr(value, im=None) -> GaussianRational:
    """Shorthand constructor: gr(2), gr('1/2'), gr(1, 2) == 1+2i."""
    if im is None:
        return GaussianRational.of(value)
    return GaussianRational(Fraction(value), Fraction(im))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True, eq=False)
class Poly:
    """Sparse exact polynomial over Q(i) in an ordered tuple of variables.

    ``terms`` maps exponent tuples to nonzero coefficients; the zero
    polynomial has no terms.  Instances are treated as immutable: the terms
    dict is never modified after construction.
    """

    vars: tuple[str, ...]
    terms: Mapping[Exponents, GaussianRational]

    # -- construction -------------------------------------------------------

    @staticmethod
    def make(vars: Sequence[str], terms: Mapping[Exponents, GaussianRational]) -> "Poly":
        vars = tuple(vars)
        clean = {e: c for e, c in terms.items() if not c.is_zero()}
        return Poly(vars, clean)

    @staticmethod
    def zero(vars: Sequence[str]) -> "Poly":
        return Poly(tuple(vars), {})

    @staticmethod
    def constant(vars: Sequence[str], c) -> "Poly":
        c = GaussianRational.of(c)
        if c.is_zero():
            return Poly.zero(vars)
        return Poly(tuple(vars), {(0,) * len(vars): c})

    @staticmethod
    def variable(vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise StructuralError(f"unknown variable {name!r} for {vars}")
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return Poly(vars, {tuple(e): GR_ONE})

    @staticmethod
    def monomial(vars: Sequence[str], coeff, exps: Sequence[int]) -> "Poly":
        c = GaussianRational.of(coeff)
        if c.is_zero():
            return Poly.zero(vars)
        exps = tuple(exps)
        if any(e < 0 for e in exps):
            raise StructuralError("polynomial monomials need nonnegative exponents")
        return Poly(tuple(vars), {exps: c})

    # -- structure ----------------------------------------------------------

    def _check_same_vars(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise StructuralError(
                f"variable lists differ: {self.vars} vs {other.vars}")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> float:
        """Lowest total degree of a term; +inf for the zero polynomial."""
        if not self.terms:
            return math.inf
        return min(sum(e) for e in self.terms)

    def var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r} for {self.vars}") from None

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self.terms.get(tuple(exps), GR_ZERO)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * len(self.vars), GR_ZERO)

    def sorted_terms(self) -> list[tuple[Exponents, GaussianRational]]:
        """Terms in descending graded-lexicographic order (canonical)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and dict(self.terms) == dict(other.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, GR_ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.vars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        out: dict[Exponents, GaussianRational] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, GR_ZERO) + ca * cb
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.vars, out)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise StructuralError("negative polynomial power")
        out = Poly.constant(self.vars, GR_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = GaussianRational.of(c)
        if c.is_zero():
            return Poly.zero(self.vars)
        return Poly(self.vars, {e: k * c for e, k in self.terms.items()})

    # -- calculus and reshaping ---------------------------------------------

    def partial(self, var: str) -> "Poly":
        """Exact formal partial derivative with respect to ``var``."""
        i = self.var_index(var)
        out: dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * GaussianRational.of(e[i])
        return Poly(self.vars, out)

    def jet_truncate(self, n: int) -> "Poly":
        """Keep only the terms of total degree <= n (n >= 0)."""
        if n < 0:
            raise StructuralError("jet order must be nonnegative")
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) <= n})

    def homogeneous_component(self, d: int) -> "Poly":
        """The exact degree-d homogeneous part."""
        if d < 0:
            raise StructuralError("degree must be nonnegative")
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def restrict(self, var: str, value=0) -> "Poly":
        """Substitute ``var := value`` for an exact constant value."""
        i = self.var_index(var)
        value = GaussianRational.of(value)
        out: dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            coeff = c * value ** e[i] if e[i] else c
            if coeff.is_zero():
                continue
            ne = list(e)
            ne[i] = 0
            key = tuple(ne)
            s = out.get(key, GR_ZERO) + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(self.vars, out)

    def shift(self, offsets: Mapping[str, "GaussianRational | int | Fraction"]) -> "Poly":
        """Translate coordinates: substitute ``x := x + c`` for each entry."""
        p = self
        for name, c in offsets.items():
            c = GaussianRational.of(c)
            if c.is_zero():
                continue
            i = p.var_index(name)
            out = Poly.zero(p.vars)
            xpc = Poly.variable(p.vars, name) + Poly.constant(p.vars, c)
            # group terms by the power of x_i, reuse binomial powers
            powers: dict[int, Poly] = {0: Poly.constant(p.vars, GR_ONE)}
            maxk = max((e[i] for e in p.terms), default=0)
            for k in range(1, maxk + 1):
                powers[k] = powers[k - 1] * xpc
            for e, coeff in p.terms.items():
                ne = list(e)
                k = ne[i]
                ne[i] = 0
                out = out + Poly(p.vars, {tuple(ne): coeff}) * powers[k]
            p = out
        return p

    def substitute_monomials(
        self, assignment: Mapping[str, tuple["GaussianRational | int | Fraction", Sequence[int]]]
    ) -> "Poly":
        """Total substitution of each variable by a monomial (exponents >= 0).

        ``assignment[name] = (coeff, exps)`` sends ``name`` to
        ``coeff * prod(vars[i] ** exps[i])``.  Unassigned variables map to
        themselves.  The substitution is a ring homomorphism.
        """
        cf = self.laurent_substitute(assignment)
        if not cf.is_holomorphic():
            raise StructuralError("substitution produced negative exponents")
        return cf.expand()

    def laurent_substitute(
        self, assignment: Mapping[str, tuple["GaussianRational | int | Fraction", Sequence[int]]]
    ) -> "ChartFunction":
        """Like :meth:`substitute_monomials` but exponents may be negative."""
        n = len(self.vars)
        images: list[tuple[GaussianRational, Exponents]] = []
        for j, name in enumerate(self.vars):
            if name in assignment:
                c, exps = assignment[name]
                exps = tuple(exps)
                if len(exps) != n:
                    raise StructuralError("monomial exponent vector has wrong length")
                images.append((GaussianRational.of(c), exps))
            else:
                e = [0] * n
                e[j] = 1
                images.append((GR_ONE, tuple(e)))
        for name in assignment:
            if name not in self.vars:
                raise StructuralError(f"unknown variable {name!r} for {self.vars}")
        out: dict[Exponents, GaussianRational] = {}
        min_exps = [0] * n
        for e, c in self.terms.items():
            coeff = c
            exps = [0] * n
            for j, k in enumerate(e):
                if k == 0:
                    continue
                cj, ej = images[j]
                coeff = coeff * cj ** k
                for t in range(n):
                    exps[t] += ej[t] * k
            if coeff.is_zero():
                continue
            key = tuple(exps)
            for t in range(n):
                min_exps[t] = min(min_exps[t], exps[t])
            s = out.get(key, GR_ZERO) + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        shift = tuple(min(0, m) for m in min_exps)
        num = Poly(self.vars, {tuple(x - s for x, s in zip(e, shift)): c
                               for e, c in out.items()})
        return ChartFunction.make(num, shift)

    # -- evaluation ----------------------------------------------------------

    def eval_complex(self, point: Sequence[complex]) -> complex:
        if len(point) != len(self.vars):
            raise StructuralError("point dimension mismatch")
        total = 0j
        for e, c in self.terms.items():
            term = c.to_complex()
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def eval_exact(self, point: Sequence["GaussianRational | int | Fraction"]) -> GaussianRational:
        if len(point) != len(self.vars):
            raise StructuralError("point dimension mismatch")
        pt = [GaussianRational.of(v) for v in point]
        total = GR_ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    def divide_monomial(self, exps: Exponents) -> "Poly":
        """Exact division by the monomial with exponent vector ``exps``."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x - d for x, d in zip(e, exps))
            if any(x < 0 for x in ne):
                raise StructuralError("monomial does not divide polynomial")
            out[ne] = c
        return Poly(self.vars, out)

    # -- univariate helpers ---------------------------------------------------

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for j, k in enumerate(e):
                if k:
                    used[j] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def univariate_coeffs(self, var: str) -> list[GaussianRational]:
        """Dense coefficient list c[0..d] when the poly involves only ``var``."""
        i = self.var_index(var)
        for e in self.terms:
            for j, k in enumerate(e):
                if k and j != i:
                    raise StructuralError("polynomial is not univariate in " + var)
        if not self.terms:
            return [GR_ZERO]
        d = max(e[i] for e in self.terms)
        out = [GR_ZERO] * (d + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    # -- rendering -------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: ordered terms, explicit '*', '^' powers, 'i' unit."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            sign, body = _term_text(self.vars, e, c)
            if n == 0:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append((" + " if sign > 0 else " - ") + body)
        return "".join(parts)

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return self.render()


def _term_text(vars: tuple[str, ...], exps: Exponents, c: GaussianRational) -> tuple[int, str]:
    """Return (sign, unsigned text) of one term for canonical rendering."""
    factors = [f"{v}^{k}" if k > 1 else v for v, k in zip(vars, exps) if k]
    # pure-real and pure-imaginary coefficients can absorb an overall sign
    if c.im == 0:
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        coeff_txt = None if mag == 1 and factors else _frac_text(mag)
    elif c.re == 0:
        sign = 1 if c.im > 0 else -1
        mag = abs(c.im)
        coeff_txt = "i" if mag == 1 else f"{mag}i"
    else:
        sign = 1
        coeff_txt = f"({c.text()})"
    pieces = ([coeff_txt] if coeff_txt else []) + factors
    return sign, "*".join(pieces) if pieces else "1"


# ---------------------------------------------------------------------------
# Monomial content
# ---------------------------------------------------------------------------

def monomial_content(components: Iterable[Poly]) -> tuple[Exponents, list[Poly]]:
    """Greatest common monomial divisor of nonzero components.

    Returns ``(exponents, reduced)`` where every reduced nonzero component
    has no remaining common variable factor.  Zero components pass through
    unchanged; an all-zero input is degenerate.
    """
    comps = list(components)
    nonzero = [p for p in comps if not p.is_zero()]
    if not nonzero:
        raise DegenerateInputError("monomial content of all-zero input")
    vars = nonzero[0].vars
    for p in nonzero[1:]:
        if p.vars != vars:
            raise StructuralError("components live on different variable lists")
    n = len(vars)
    content = [math.inf] * n
    for p in nonzero:
        for e in p.terms:
            for j in range(n):
                content[j] = min(content[j], e[j])
    exps = tuple(int(c) for c in content)
    reduced = [p if p.is_zero() else p.divide_monomial(exps) for p in comps]
    return exps, reduced


# ---------------------------------------------------------------------------
# Chart functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChartFunction:
    """``numerator * prod(x_i ** monomial_exponents[i])`` with integer exponents.

    The numerator carries no monomial content in any variable (fully
    extracted at construction), so the representation is canonical and the
    function is holomorphic iff every exponent is nonnegative.
    """

    numerator: Poly
    monomial_exponents: Exponents

    @staticmethod
    def make(numerator: Poly, exponents: Sequence[int] | None = None) -> "ChartFunction":
        n = len(numerator.vars)
        exps = tuple(exponents) if exponents is not None else (0,) * n
        if len(exps) != n:
            raise StructuralError("exponent vector has wrong length")
        if numerator.is_zero():
            return ChartFunction(numerator, (0,) * n)
        content, (reduced,) = monomial_content([numerator])
        exps = tuple(e + c for e, c in zip(exps, content))
        return ChartFunction(reduced, exps)

    @staticmethod
    def of_poly(p: Poly) -> "ChartFunction":
        return ChartFunction.make(p)

    @staticmethod
    def zero(vars: Sequence[str]) -> "ChartFunction":
        return ChartFunction(Poly.zero(vars), (0,) * len(vars))

    # -- structure -----------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.numerator.vars

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_holomorphic(self) -> bool:
        return all(e >= 0 for e in self.monomial_exponents)

    def order_in(self, var: str) -> float:
        """Order of vanishing along {var = 0}; +inf for the zero function."""
        if self.is_zero():
            return math.inf
        return self.monomial_exponents[self.numerator.var_index(var)]

    def pole_order_in(self, var: str) -> int:
        e = self.order_in(var)
        return int(-e) if e < 0 else 0

    def expand(self) -> Poly:
        """Multiply back into a plain polynomial (requires holomorphy)."""
        if not self.is_holomorphic():
            raise PoleEvaluationError("chart function is meromorphic")
        if self.is_zero():
            return self.numerator
        mono = Poly.monomial(self.vars, GR_ONE, self.monomial_exponents)
        return self.numerator * mono

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChartFunction):
            return NotImplemented
        return (self.numerator == other.numerator
                and (self.is_zero() or self.monomial_exponents == other.monomial_exponents))

    # -- arithmetic ------------------------------------------------------------

    def _check_same_vars(self, other: "ChartFunction") -> None:
        if self.vars != other.vars:
            raise StructuralError(
                f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "ChartFunction") -> "ChartFunction":
        self._check_same_vars(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        base = tuple(min(a, b) for a, b in
                     zip(self.monomial_exponents, other.monomial_exponents))
        pa = self.numerator * Poly.monomial(
            self.vars, GR_ONE, tuple(a - m for a, m in zip(self.monomial_exponents, base)))
        pb = other.numerator * Poly.monomial(
            self.vars, GR_ONE, tuple(b - m for b, m in zip(other.monomial_exponents, base)))
        return ChartFunction.make(pa + pb, base)

    def __sub__(self, other: "ChartFunction") -> "ChartFunction":
        return self + (-other)

    def __neg__(self) -> "ChartFunction":
        return ChartFunction(-self.numerator, self.monomial_exponents)

    def __mul__(self, other: "ChartFunction") -> "ChartFunction":
        self._check_same_vars(other)
        exps = tuple(a + b for a, b in
                     zip(self.monomial_exponents, other.monomial_exponents))
        return ChartFunction.make(self.numerator * other.numerator, exps)

    def scale(self, c) -> "ChartFunction":
        c = GaussianRational.of(c)
        if c.is_zero():
            return ChartFunction.zero(self.vars)
        return ChartFunction(self.numerator.scale(c), self.monomial_exponents)

    def mul_poly(self, p: Poly) -> "ChartFunction":
        return self * ChartFunction.of_poly(p)

    def shift_exponents(self, delta: Sequence[int]) -> "ChartFunction":
        """Multiply by the (Laurent) monomial with exponent vector ``delta``."""
        if self.is_zero():
            return self
        exps = tuple(a + d for a, d in zip(self.monomial_exponents, delta))
        return ChartFunction(self.numerator, exps)

    # -- evaluation --------------------------------------------------------------

    def eval_complex(self, point: Sequence[complex], pole_tol: float = 0.0) -> complex:
        """Evaluate at a complex point; poles raise :class:`PoleEvaluationError`."""
        if len(point) != len(self.vars):
            raise StructuralError("point dimension mismatch")
        value = self.numerator.eval_complex(point)
        for x, e in zip(point, self.monomial_exponents):
            if e == 0:
                continue
            if e < 0 and abs(x) <= pole_tol:
                raise PoleEvaluationError("evaluation at a pole")
            value *= x ** e
        return value

    # -- rendering ------------------------------------------------------------------

    def render(self) -> str:
        if self.is_holomorphic():
            return self.expand().render()
        mono = "*".join(
            f"{v}^{e}" if e != 1 else v
            for v, e in zip(self.vars, self.monomial_exponents) if e)
        num = self.numerator.render()
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        return f"{mono}*{num}" if mono else num

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return self.render()


# ---------------------------------------------------------------------------
# Module-level operation aliases (the public operation surface)
# ---------------------------------------------------------------------------

def partial_derivative(p: Poly, var: str) -> Poly:
    return p.partial(var)


def monomial_substitute(p: Poly, assignment) -> Poly:
    return p.substitute_monomials(assignment)


def jet_truncate(p: Poly, n: int) -> Poly:
    return p.jet_truncate(n)


def homogeneous_component(p: Poly, d: int) -> Poly:
    return p.homogeneous_component(d)


def eval_complex(f: "ChartFunction | Poly", point: Sequence[complex]) -> complex:
    if isinstance(f, Poly):
        return f.eval_complex(point)
    return f.eval_complex(point)
