"""Lie bracket, decomposition, table, derived-series, and canonical-match tests."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from liesym import parse
from liesym.catalog import FRACTIONAL, INTEGER, HeatEquation, generators
from liesym.expr import Expr
from liesym.fields import (
    DimensionMismatchError,
    StructureConstants,
    VectorField,
    closure_report,
    commutator_table,
    decompose_in_basis,
    derived_series,
    identify_rotation,
    lie_bracket,
    match_canonical,
    vf_add,
    vf_scale,
    vf_zero,
)

from .strategies import point_fields


def _named(eq):
    return {g.name: g.field for g in generators(eq)}


@pytest.fixture(scope="module")
def g1():
    return _named(HeatEquation(1, INTEGER))


@pytest.fixture(scope="module")
def g3():
    return _named(HeatEquation(3, INTEGER))


@pytest.fixture(scope="module")
def gf1():
    return _named(HeatEquation(1, FRACTIONAL))


class TestBracket:
    def test_time_translation_vs_dilation(self, g1):
        br = lie_bracket(g1["G3"], g1["G4"])
        dec = decompose_in_basis(br, list(g1.values()))
        assert dec.coeffs == {"G3": Expr.number(2)}

    def test_self_bracket_vanishes(self, g1):
        assert lie_bracket(g1["G5"], g1["G5"]).is_zero()

    def test_translation_vs_fractional_dilation(self, gf1):
        br = lie_bracket(gf1["G01"], gf1["G02"])
        dec = decompose_in_basis(br, [gf1["G01"], gf1["G02"], gf1["G03"]])
        assert dec.coeffs == {"G01": parse("alpha")}

    def test_dimension_mismatch(self, g1, g3):
        with pytest.raises(DimensionMismatchError):
            lie_bracket(g1["G1"], g3["G31"])

    def test_point_field_invariant_enforced(self):
        with pytest.raises(ValueError):
            VectorField("bad", 1, parse("u_x"), (parse("0"),), parse("0"))


class TestDecompose:
    def test_constant_combination(self, g1):
        f = vf_scale(2, g1["G3"])
        dec = decompose_in_basis(f, [g1["G3"], g1["G1"]])
        assert dec.coeffs == {"G3": Expr.number(2)}

    def test_alpha_coefficient(self, gf1):
        f = vf_scale(parse("alpha"), gf1["G01"])
        dec = decompose_in_basis(f, [gf1["G01"]])
        assert dec.coeffs == {"G01": parse("alpha")}

    def test_outside_span(self, g1):
        f = VectorField("f", 1, parse("0"), (parse("0"),), parse("x"))
        assert not decompose_in_basis(f, [g1["G1"], g1["G3"]]).in_span

    def test_infinite_family_flag(self, g1):
        br = lie_bracket(g1["G1"], g1["G7"])
        dec = decompose_in_basis(br, list(g1.values()))
        assert not dec.in_span
        assert dec.infinite_family

    def test_bare_function_decomposes(self, g1):
        br = lie_bracket(g1["G6"], g1["G7"])
        dec = decompose_in_basis(br, list(g1.values()))
        assert dec.coeffs == {"G7": Expr.number(-1)}


class TestClosure:
    def test_empty_basis_closed(self):
        assert closure_report([]).closed

    def test_translations_closed(self, g3):
        assert closure_report([g3["G31"], g3["G32"]]).closed

    def test_sl2_triple_not_closed_without_homogeneity(self, g3):
        # [G310, G312] = 4 G311 - 6 G313 leaves the triple's span
        rep = closure_report([g3["G310"], g3["G311"], g3["G312"]])
        assert not rep.closed
        assert ("G310", "G312") in rep.offending_pairs

    def test_sl2_plus_homogeneity_closed(self, g3):
        rep = closure_report([g3["G310"], g3["G311"], g3["G312"], g3["G313"]])
        assert rep.closed

    def test_projective_pair_not_closed(self, g1):
        rep = closure_report([g1["G3"], g1["G5"]])
        assert not rep.closed
        assert rep.offending_pairs == (("G3", "G5"),)

    def test_infinite_family_not_a_violation(self, g1):
        rep = closure_report(list(g1.values()))
        assert rep.closed
        assert rep.infinite_pairs  # brackets with G7 stay in the family


class TestDerivedSeries:
    def test_abelian_pair(self, g3):
        assert derived_series([g3["G31"], g3["G32"]]) == [2, 0]

    def test_fractional_1d(self, gf1):
        assert derived_series([gf1["G01"], gf1["G02"], gf1["G03"]]) == [3, 1, 0]

    def test_so3_perfect(self, g3):
        assert derived_series([g3["G37"], g3["G38"], g3["G39"]]) == [3, 3]

    def test_not_closed_raises(self, g1):
        with pytest.raises(ValueError):
            derived_series([g1["G3"], g1["G5"]])


class TestCanonical:
    def test_sl2_1d(self, g1):
        rep = match_canonical([g1["G3"], g1["G4"], g1["G5"]], "sl2", modulo=[g1["G6"]])
        assert rep.matched
        assert rep.scaling == (Fraction(1), Fraction(1), Fraction(1, 4))
        assert rep.modulo_components  # the projected homogeneity component is recorded

    def test_sl2_requires_modulo(self, g1):
        rep = match_canonical([g1["G3"], g1["G4"], g1["G5"]], "sl2")
        assert not rep.matched

    def test_so3(self, g3):
        assert match_canonical([g3["G37"], g3["G38"], g3["G39"]], "so").matched

    def test_translations_are_not_so3(self, g3):
        assert not match_canonical([g3["G31"], g3["G32"], g3["G33"]], "so").matched

    def test_so4(self):
        g4 = _named(HeatEquation(4, INTEGER))
        rots = [g4[f"G5{i}"] for i in (9, 10, 11, 12, 13, 14)]
        rep = match_canonical(rots, "so")
        assert rep.matched

    def test_identify_rotation(self, g3):
        assert identify_rotation(g3["G37"]) == (1, 2, 1)
        assert identify_rotation(g3["G31"]) is None


class TestTable:
    def test_antisymmetric_json(self, gf1):
        basis = list(gf1.values())
        table = commutator_table(basis)
        obj = table.to_json_obj()
        assert obj["basis"] == ["G01", "G02", "G03", "G04"]
        by_pair = {(e["i"], e["j"]): e for e in obj["entries"]}
        assert by_pair[(0, 1)]["coeffs"] == {"G01": "alpha"}
        assert by_pair[(0, 3)].get("outside") and by_pair[(0, 3)].get("infinite")

    def test_structure_constants_checks(self, g3):
        rots = [g3["G37"], g3["G38"], g3["G39"]]
        sc = StructureConstants.from_table(commutator_table(rots))
        assert sc.antisymmetry_holds()
        assert sc.jacobi_holds()

    def test_latex_emission(self, g1):
        table = commutator_table([g1["G3"], g1["G4"]])
        tex = table.to_latex()
        assert r"\Gamma_{3}" in tex and r"\begin{tabular}" in tex

    def test_duplicate_names_rejected(self, g1):
        with pytest.raises(ValueError):
            commutator_table([g1["G1"], g1["G1"]])

    def test_table_deterministic(self, g1):
        basis = list(g1.values())
        t1 = commutator_table(basis).to_json_obj()
        t2 = commutator_table(basis).to_json_obj()
        assert t1 == t2


# -- catalog-wide exact properties -------------------------------------------

@pytest.mark.parametrize("n,regime", [(n, r) for n in (1, 2) for r in (INTEGER, FRACTIONAL)])
def test_antisymmetry_all_pairs(n, regime):
    basis = [g.field for g in generators(HeatEquation(n, regime))]
    for a, b in itertools.combinations(basis, 2):
        assert vf_add(lie_bracket(a, b), lie_bracket(b, a)).is_zero()


@pytest.mark.parametrize("n,regime", [(1, INTEGER), (1, FRACTIONAL), (2, FRACTIONAL)])
def test_jacobi_all_triples(n, regime):
    basis = [g.field for g in generators(HeatEquation(n, regime))]
    for a, b, c in itertools.combinations(basis, 3):
        total = vf_add(
            vf_add(lie_bracket(a, lie_bracket(b, c)), lie_bracket(b, lie_bracket(c, a))),
            lie_bracket(c, lie_bracket(a, b)),
        )
        assert total.is_zero()


@settings(max_examples=40, deadline=None)
@given(point_fields(), point_fields())
def test_bilinearity_over_rationals(a, b):
    lhs = lie_bracket(vf_scale(2, a), b)
    rhs = vf_scale(2, lie_bracket(a, b))
    assert vf_add(lhs, vf_scale(-1, rhs)).is_zero()


@settings(max_examples=30, deadline=None)
@given(point_fields(), point_fields())
def test_antisymmetry_random(a, b):
    assert vf_add(lie_bracket(a, b), lie_bracket(b, a)).is_zero()


def test_zero_field_helpers():
    z = vf_zero(2)
    assert z.is_zero()
    assert vf_add(z, z).is_zero()
