from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from kernelsmith.expr import Expression, field_A, field_F, gamma_word, uvec
from kernelsmith.components import is_zero_by_components
from kernelsmith.field_calculus import (apply_dirac, canonicalize_to_F, chain, expand_chains, expand_to_dA,
                                        gauge_variant_part, line_integral_exponent, wilson_line, x_derivative)
from kernelsmith.rings import I
from kernelsmith.u_structure import term_degree


def test_dirac_of_one():
    assert apply_dirac(Expression.one(None)) == gamma_word(["mu"]) * field_A("mu")


def test_dirac_of_potential():
    got = apply_dirac(field_A("nu"))
    expect = gamma_word(["mu"]) * (field_A("nu", ("mu",)) * I + field_A("mu") * field_A("nu"))
    assert got == expect


def test_x_derivative_product_rule():
    e = field_A("a") * field_A("b")
    assert x_derivative(e, "c") == field_A("a", ("c",)) * field_A("b") + field_A("a") * field_A("b", ("c",))


def test_gamma_pair_picks_field_strength():
    e = gamma_word(["mu", "nu"]) * field_A("nu", ("mu",))
    f = canonicalize_to_F(e)
    assert gauge_variant_part(e) == canonicalize_to_F(field_A("mu", ("mu",)))
    assert (f - gauge_variant_part(e) - gamma_word(["mu", "nu"]) * field_F("mu", "nu") * Fraction(1, 2)).is_zero()


def test_symmetric_divergence_is_untouched_in_dA_form():
    e = field_A("mu", ("mu",))
    assert expand_to_dA(canonicalize_to_F(e)) == e


@pytest.mark.parametrize("e", [gamma_word(["mu", "nu"]) * field_A("nu", ("mu", "rho")) * uvec("rho"),
                               field_A("a", ("b",)) * field_A("b", ("a",)),
                               gamma_word(["u"]) * field_A("u", ("u", "mu")) * field_A("mu")])
def test_F_form_is_idempotent_and_lossless(e):
    f = canonicalize_to_F(e)
    assert canonicalize_to_F(f) == f
    assert expand_to_dA(f) == expand_to_dA(e)


def test_wilson_line_low_orders():
    assert wilson_line(0, "eq24") == Expression.one(None).with_remainder(1)
    assert wilson_line(1, "eq24") == (Expression.one(None) + chain(0, 1) * I).with_remainder(2)
    third = (Expression.one(None) + chain(0, 1) * I - chain(1, 1) * Fraction(1, 2)
             - chain(2, 1) * (I * Fraction(1, 6)))
    assert wilson_line(3, "eq24") == third.with_remainder(4)


def _exp_truncated(x: Expression, order: int) -> Expression:
    out, term = Expression.one(None), Expression.one(None)
    for k in range(1, order + 1):
        term = term * x * Fraction(1, k)
        out = out + term
    return out.filter(lambda st_, c: term_degree(st_)[2] <= order)


@given(st.integers(1, 4), st.sampled_from(["eq9", "eq24"]))
@settings(max_examples=8, deadline=None)
def test_wilson_line_is_exponential_of_line_integral(order, sign):
    chains = expand_chains(wilson_line(order, sign)).with_remainder(None)
    direct = _exp_truncated(line_integral_exponent(order, sign), order)
    assert (chains - direct).is_zero()


def test_opposite_signs_are_inverse():
    prod = expand_chains(wilson_line(3, "eq9") * wilson_line(3, "eq24")).with_remainder(None)
    low = prod.filter(lambda st_, c: term_degree(st_)[2] <= 3)
    assert low == Expression.one(None)


def test_chain_expansion_is_gauge_covariant_shape():
    # (u.D)(u.A) = i (u.d)(u.A) + (u.A)^2
    e = expand_chains(chain(1, 1))
    assert e == field_A("u", ("u",)) * I + field_A("u") * field_A("u")


def test_components_confirm_F_rewrite_in_two_dimensions():
    e = gamma_word(["mu", "nu"], dim=2) * field_A("nu", ("mu",), dim=2)
    assert is_zero_by_components(expand_to_dA(canonicalize_to_F(e)) - e)
