from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from foliations.algebra import (
    GR_ONE,
    ChartFunction,
    GaussianRational,
    Poly,
    gr,
    monomial_content,
)
from foliations.errors import (
    DegenerateInputError,
    PoleEvaluationError,
    StructuralError,
)

from conftest import make_poly, random_poly

V2 = ("x", "y")
V3 = ("x", "y", "z")


class TestGaussianRational:
    def test_field_operations(self):
        a = gr(1, 2)
        b = gr("3/4", -1)
        assert (a * b) / b == a
        assert a + (-a) == gr(0)
        assert (a / b) * b == a
        assert a.conjugate().im == Fraction(-2)

    def test_norm_and_power(self):
        z = gr(1, 1)
        assert z.norm2() == Fraction(2)
        assert z ** 4 == gr(-4)
        assert z ** -2 == gr(0, "-1/2")

    def test_text(self):
        assert gr(0).text() == "0"
        assert gr(-1, 0).text() == "-1"
        assert gr(0, 1).text() == "i"
        assert gr(0, -1).text() == "-i"
        assert gr(1, 2).text() == "1+2i"
        assert gr("1/2", "-3/4").text() == "1/2-3/4i"


class TestRingArithmetic:
    def test_product_of_conjugate_linears(self):
        x_plus_y = make_poly(V2, {(1, 0): 1, (0, 1): 1})
        x_minus_y = make_poly(V2, {(1, 0): 1, (0, 1): -1})
        assert x_plus_y * x_minus_y == make_poly(V2, {(2, 0): 1, (0, 2): -1})

    def test_cancellation(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        cube = make_poly(V2, {(3, 0): 1})
        assert cusp + cube == make_poly(V2, {(0, 2): 1})

    def test_monomial_inverse_cancels(self):
        x = ChartFunction.of_poly(Poly.variable(V2, "x"))
        inv = ChartFunction.make(Poly.constant(V2, 1), (-1, 0))
        assert x * inv == ChartFunction.of_poly(Poly.constant(V2, 1))

    def test_variable_mismatch_rejected(self):
        with pytest.raises(StructuralError):
            Poly.variable(V2, "x") + Poly.variable(("u", "v"), "u")

    def test_ring_axioms_randomized(self, rng):
        for _ in range(200):
            a = random_poly(rng, V3)
            b = random_poly(rng, V3)
            c = random_poly(rng, V3)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
        # degree / order contracts
        for _ in range(80):
            a = random_poly(rng, V3)
            b = random_poly(rng, V3)
            if not (a + b).is_zero():
                assert (a + b).degree() <= max(a.degree(), b.degree())
            if not a.is_zero() and not b.is_zero():
                assert (a * b).order() == a.order() + b.order()


class TestDerivative:
    def test_simple(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        assert cusp.partial("y") == make_poly(V2, {(0, 1): 2})

    def test_form_coefficient_derivative(self):
        # d/dx of (y x^2 - z^3)
        p = make_poly(V3, {(2, 1, 0): 1, (0, 0, 3): -1})
        assert p.partial("x") == make_poly(V3, {(1, 1, 0): 2})

    def test_absent_variable(self):
        p = make_poly(V3, {(3, 0, 0): 1, (0, 2, 0): 2})
        assert p.partial("z").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(StructuralError):
            make_poly(V2, {(1, 0): 1}).partial("w")

    def test_leibniz_randomized(self, rng):
        for _ in range(60):
            p = random_poly(rng, V2, max_degree=4)
            q = random_poly(rng, V2, max_degree=4)
            lhs = (p * q).partial("x")
            rhs = p * q.partial("x") + q * p.partial("x")
            assert lhs == rhs


class TestSubstitution:
    def test_blowup_chart(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        image = cusp.substitute_monomials({"y": (GR_ONE, (1, 1))})
        assert image == make_poly(V2, {(2, 2): 1, (3, 0): -1})

    def test_identity(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        assert cusp.substitute_monomials({}) == cusp

    def test_weighted_chart(self):
        y = Poly.variable(V3, "y")
        image = y.substitute_monomials({
            "x": (GR_ONE, (2, 0, 0)),
            "y": (GR_ONE, (1, 1, 0)),
        })
        assert image == make_poly(V3, {(1, 1, 0): 1})

    def test_homomorphism_randomized(self, rng):
        assignment = {
            "x": (gr(2), (1, 1, 0)),
            "y": (gr(-1, 1), (0, 0, 2)),
        }
        for _ in range(60):
            p = random_poly(rng, V3, max_degree=4)
            q = random_poly(rng, V3, max_degree=4)
            sub = lambda r: r.substitute_monomials(assignment)
            assert sub(p + q) == sub(p) + sub(q)
            assert sub(p * q) == sub(p) * sub(q)

    def test_eval_after_substitution(self, rng):
        assignment = {"x": (gr(3), (0, 2)), "y": (gr("1/2"), (1, 1))}
        for _ in range(40):
            p = random_poly(rng, V2, max_degree=5)
            point = (0.37 + 0.21j, -0.55 + 0.4j)
            substituted_point = (
                3 * point[1] ** 2,
                0.5 * point[0] * point[1],
            )
            direct = p.eval_complex(substituted_point)
            via = p.substitute_monomials(assignment).eval_complex(point)
            assert abs(direct - via) <= 1e-10 * max(1.0, abs(direct))


class TestMonomialContent:
    def test_gcd_of_exponents(self):
        a = make_poly(V2, {(2, 2): 1})
        b = make_poly(V2, {(2, 1): 1})
        content, reduced = monomial_content([a, b])
        assert content == (2, 1)
        assert reduced[0] == make_poly(V2, {(0, 1): 1})
        assert reduced[1] == Poly.constant(V2, 1)

    def test_zero_components_pass_through(self):
        a = make_poly(V2, {(1, 0): 1})
        content, reduced = monomial_content([a, Poly.zero(V2)])
        assert content == (1, 0)
        assert reduced[1].is_zero()

    def test_all_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            monomial_content([Poly.zero(V2), Poly.zero(V2)])

    def test_idempotent(self, rng):
        for _ in range(40):
            polys = [random_poly(rng, V3, max_degree=4) for _ in range(2)]
            mono = make_poly(V3, {(1, 2, 0): 1})
            polys = [p * mono for p in polys]
            _, reduced = monomial_content(polys)
            second, _ = monomial_content(reduced)
            assert second == (0, 0, 0)


class TestJets:
    def test_truncate(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        assert cusp.jet_truncate(2) == make_poly(V2, {(0, 2): 1})

    def test_homogeneous_component(self):
        p = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        assert p.homogeneous_component(1).is_zero()
        assert p.homogeneous_component(2) == make_poly(V2, {(0, 2): 1})
        q = make_poly(V3, {(2, 0, 0): 1})
        assert q.homogeneous_component(2) == q


class TestEvalComplex:
    def test_polynomial(self):
        p = make_poly(("x",), {(2,): 1, (0,): -1})
        assert abs(p.eval_complex((2.0,)) - 3.0) < 1e-12

    def test_pole(self):
        inv = ChartFunction.make(Poly.constant(("x",), 1), (-1,))
        with pytest.raises(PoleEvaluationError):
            inv.eval_complex((0.0,))

    def test_point_on_curve(self):
        cusp = make_poly(V2, {(0, 2): 1, (3, 0): -1})
        assert abs(cusp.eval_complex((1.0, 1.0))) < 1e-12


class TestChartFunction:
    def test_full_extraction(self):
        p = make_poly(V2, {(2, 0): 1, (1, 1): 1})  # x^2 + xy = x(x+y)
        cf = ChartFunction.of_poly(p)
        assert cf.monomial_exponents == (1, 0)
        assert cf.numerator == make_poly(V2, {(1, 0): 1, (0, 1): 1})
        assert cf.expand() == p

    def test_holomorphy_flag(self):
        cf = ChartFunction.make(Poly.variable(V2, "x"), (-1, 0))
        assert cf.is_holomorphic()  # x/x normalizes to 1
        cf2 = ChartFunction.make(Poly.variable(V2, "y"), (-1, 0))
        assert not cf2.is_holomorphic()

    def test_add_with_denominators(self):
        one_over_x = ChartFunction.make(Poly.constant(V2, 1), (-1, 0))
        x = ChartFunction.of_poly(Poly.variable(V2, "x"))
        s = one_over_x + x
        assert s.monomial_exponents == (-1, 0)
        assert s.numerator == make_poly(V2, {(2, 0): 1, (0, 0): 1})

    def test_order_in(self):
        cf = ChartFunction.make(make_poly(V2, {(2, 1): 1}), (0, -3))
        assert cf.order_in("x") == 2
        assert cf.order_in("y") == -2
        assert cf.pole_order_in("y") == 2
        assert ChartFunction.zero(V2).order_in("x") == math.inf


class TestRendering:
    def test_canonical_examples(self):
        p = Poly.make(V2, {(2, 1): gr(1, 2)})
        assert p.render() == "(1+2i)*x^2*y"
        q = make_poly(V2, {(1, 0): -1, (0, 0): "1/2"})
        assert q.render() == "-x + 1/2"
        assert Poly.zero(V2).render() == "0"

    def test_order_is_graded_lex(self):
        p = make_poly(V2, {(0, 2): -2, (1, 0): 3})
        assert p.render() == "-2*y^2 + 3*x"
