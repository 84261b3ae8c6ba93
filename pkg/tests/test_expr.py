"""Kernel tests: parsing, normal form, derivatives, substitution, evaluation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from liesym import parse
from liesym.expr import (
    EvaluationError,
    Expr,
    JetOrderError,
    ParseError,
    SubstitutionError,
    equals_zero,
    eval_numeric,
    jet,
    normalize,
    partial_derivative,
    point_derivative,
    set_max_jet_order,
    substitute,
    total_derivative,
    var,
)

from .strategies import jet_polynomials


class TestParse:
    def test_sum_of_products_structure(self):
        e = parse("2*t*u_t + x*u_x")
        assert len(e.terms) == 2
        assert e == 2 * var("t") * jet("t") + var("x") * jet("x")

    def test_index_symmetry_collapses(self):
        assert parse("u_{xy} - u_{yx}") == Expr.zero()

    def test_alpha_coefficient_product(self):
        from liesym.expr import alpha

        assert parse("alpha*x*u_x") == alpha() * var("x") * jet("x")

    def test_braces_required_for_long_indices(self):
        with pytest.raises(ParseError):
            parse("u_xx + 1")  # must be written u_{xx}

    def test_spatial_aliases(self):
        assert parse("x1 + x2") == parse("x + y")
        assert parse("u_{x1x2}") == parse("u_{xy}")

    def test_unknown_symbol(self):
        with pytest.raises(ParseError):
            parse("q + 1")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse("2*t +")
        assert "position" in str(err.value)

    def test_rationals_and_powers(self):
        e = parse("3/4*x^2 - x^-1")
        assert e == Fraction(3, 4) * var("x") ** 2 - var("x") ** -1

    def test_extra_symbols_table(self):
        w = parse("-u_x")
        assert parse("W*phi", {"W": w}) == w * parse("phi")

    def test_fractional_markers(self):
        e = parse("Dalpha[u] - u_{xx}")
        assert str(e) == "-u_{xx} + Dalpha[u]"
        assert parse(str(e)) == e
        assert parse("Dalphastar[phi]") == parse("Dalphastar[phi]")


class TestDerivatives:
    def test_partial_in_variable(self):
        assert partial_derivative(parse("x^2*u_x"), "x") == parse("2*x*u_x")

    def test_partial_in_jet(self):
        assert partial_derivative(parse("x^2*u_x"), "u_x") == parse("x^2")

    def test_partial_in_u(self):
        assert partial_derivative(parse("u*(2*t+x^2)"), "u") == parse("2*t+x^2")

    def test_total_derivative_basic(self):
        assert total_derivative(parse("u"), "x") == parse("u_x")

    def test_total_derivative_product_rule_oracle(self):
        # independent Leibniz oracle: D(fg) = D(f) g + f D(g)
        f, g = parse("u"), parse("phi")
        direct = total_derivative(f * g, "t")
        leibniz = total_derivative(f, "t") * g + f * total_derivative(g, "t")
        assert equals_zero(direct - leibniz)
        assert direct == parse("u_t*phi + u*phi_t")

    def test_total_derivative_flux_expansion(self):
        got = total_derivative(parse("u*phi_x - phi*u_x"), "x")
        assert got == parse("u*phi_{xx} - phi*u_{xx}")

    def test_function_symbols_gain_subscripts(self):
        assert total_derivative(parse("F"), "t") == parse("F_t")

    def test_jet_order_cap(self):
        with pytest.raises(JetOrderError):
            total_derivative(parse("u_{xxxx}"), "x")

    def test_env_cap_override(self):
        old = set_max_jet_order(5)
        try:
            assert total_derivative(parse("u_{xxxx}"), "x") == parse("u_{xxxxx}")
        finally:
            set_max_jet_order(old)

    def test_point_derivative_ignores_jets(self):
        assert point_derivative(parse("u_x*t"), "t") == parse("u_x")
        assert point_derivative(parse("u"), "x") == Expr.zero()
        assert point_derivative(parse("F*t"), "x") == parse("F_x*t")


class TestSubstitute:
    def test_onshell_reduction(self):
        assert equals_zero(substitute(parse("u_t - u_{xx}"), {"u_t": parse("u_{xx}")}))

    def test_fixpoint_through_derived_rules(self):
        # oracle: applying D to the rule twice, u_tt -> D_t(u_xx) -> u_xxxx
        oracle = total_derivative(total_derivative(parse("u_{xx}"), "x"), "x")
        got = substitute(parse("u_{tt}"), {"u_t": parse("u_{xx}")})
        assert got == oracle == parse("u_{xxxx}")

    def test_adjoint_onshell(self):
        got = substitute(parse("phi_t + phi_{xx}"), {"phi_t": -parse("phi_{xx}")})
        assert equals_zero(got)

    def test_cycle_detected(self):
        with pytest.raises(SubstitutionError):
            substitute(parse("u_t"), {"u_t": parse("u_x"), "u_x": parse("u_t")})

    def test_substituting_u_itself(self):
        res = substitute(parse("u_t - u_{xx}"), {"u": parse("x^2 + 2*t")})
        assert equals_zero(res)


class TestNormalize:
    def test_square_expansion(self):
        assert equals_zero(parse("(u+x)^2 - u^2 - 2*u*x - x^2"))

    def test_alpha_collection(self):
        assert parse("alpha*x + x*alpha") == parse("2*alpha*x")

    def test_eta_coefficient_collapse(self):
        assert equals_zero(parse("u*(3*alpha-2) - 3*alpha*u + 2*u"))

    def test_equals_zero_examples(self):
        assert equals_zero(parse("u_{xy} - u_{yx}"))
        assert not equals_zero(parse("alpha - 1"))


class TestEval:
    def test_polynomial(self):
        assert eval_numeric(parse("2*t+x^2"), {"t": 1, "x": 2}) == 6.0

    def test_alpha_value(self):
        assert eval_numeric(parse("alpha*x"), {"x": 3}, alpha_value=0.5) == 1.5

    def test_unbound_symbol(self):
        with pytest.raises(EvaluationError):
            eval_numeric(parse("u_x"), {})

    def test_alpha_window(self):
        with pytest.raises(EvaluationError):
            eval_numeric(parse("alpha"), {}, alpha_value=1.5)

    def test_callable_function_symbol(self):
        val = eval_numeric(parse("phi*x"), {"x": 2.0, "t": 0.5,
                                            "phi": lambda t, x: t + x})
        assert val == pytest.approx(5.0)

    def test_characteristic_on_grid_point(self):
        w = parse("2*t*u_t - alpha*x*u_x")
        val = eval_numeric(w, {"t": 1.0, "x": 2.0, "u_t": 0.25, "u_x": -1.0},
                           alpha_value=0.5)
        assert math.isfinite(val)
        assert val == pytest.approx(2 * 0.25 + 0.5 * 2.0)


# -- properties --------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(jet_polynomials())
def test_normalize_idempotent(e):
    assert normalize(normalize(e)) == normalize(e)
    assert parse(str(e)) == e  # printer round trip


@settings(max_examples=80, deadline=None)
@given(jet_polynomials(), jet_polynomials())
def test_total_derivative_linear(e1, e2):
    a, b = Fraction(3, 2), Fraction(-2)
    lhs = total_derivative(a * e1 + b * e2, "x")
    rhs = a * total_derivative(e1, "x") + b * total_derivative(e2, "x")
    assert equals_zero(lhs - rhs)


@settings(max_examples=80, deadline=None)
@given(jet_polynomials())
def test_total_derivatives_commute(e):
    dxdt = total_derivative(total_derivative(e, "t"), "x")
    dtdx = total_derivative(total_derivative(e, "x"), "t")
    assert equals_zero(dxdt - dtdx)
