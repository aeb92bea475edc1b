from fractions import Fraction

import pytest

from kernelsmith.comparison import RepDimensionMismatch, current_difference, green_sum, zeta_current_formal
from kernelsmith.expr import Expression, canonical_equal, eps, field_F, gamma_word
from kernelsmith.field_calculus import expand_to_dA, gauge_variant_part
from kernelsmith.gamma_algebra import builtin, trace_numeric
from kernelsmith.golden_table import green_sum_reference
from kernelsmith.rings import I, SFun, affine
from kernelsmith.u_structure import schwinger_limit


def _pi(p):
    return SFun.monomial(pi=affine(0, 0, p))


def _same(a, b):
    return canonical_equal(expand_to_dA(a), expand_to_dA(b))


@pytest.mark.parametrize("n", [2, 3])
def test_green_sum_matches_reference(n):
    assert _same(green_sum(n), green_sum_reference(n))
    assert green_sum(n).remainder == 1


def test_four_dimensional_green_sum_agrees_up_to_phase_of_derivative_blocks():
    got, ref = expand_to_dA(green_sum(4)), expand_to_dA(green_sum_reference(4))

    def second_order(st, c):
        return sum(len(t.derivs) for t in st.tensors if t.kind == "A") >= 2

    assert _same(got.filter(lambda st, c: not second_order(st, c)),
                 ref.filter(lambda st, c: not second_order(st, c)))
    assert _same(got.filter(second_order), ref.filter(second_order) * I)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_green_sum_is_gauge_invariant_with_default_link(n):
    assert gauge_variant_part(green_sum(n)).is_zero()


def test_other_link_sign_leaves_potential_terms():
    assert not gauge_variant_part(green_sum(3, sign="eq24")).is_zero()


def test_link_order_below_minimum_rejected():
    with pytest.raises(ValueError):
        green_sum(3, wilson_order=1)


def test_two_dimensions_coincide():
    v = current_difference(2)
    assert v.coincide and v.difference.is_zero()


def test_three_dimensions_pauli():
    v = current_difference(3, "pauli")
    expect = eps("mu", "rho", "nu", dim=3) * field_F("rho", "nu", dim=3) * (_pi(-1) * (I * Fraction(1, 8)))
    assert not v.coincide
    assert v.difference == expect
    # (1/16 pi) tr(gamma_mu gamma_rho gamma_nu) F_rho_nu with the matrix trace 2i eps
    assert trace_numeric([1, 2, 3], builtin("pauli3")) == pytest.approx(2j, abs=1e-12)
    assert v.schwinger_minus_zeta() == -expect


def test_three_dimensions_reducible_representation():
    v = current_difference(3, "reducible")
    assert v.coincide


def test_four_dimensions_do_not_coincide():
    v = current_difference(4, "dirac4")
    assert not v.coincide
    (st, c), = v.difference.items()
    assert [t.kind for t in st.tensors] == ["F"] and st.tensors[0].derivs
    names = {name for key in c.terms for name, _ in key[5]}
    assert names == {"ln2", "G1"}


def test_result_independent_of_link_order():
    assert current_difference(3, "pauli", wilson_order=4).difference == current_difference(3, "pauli").difference


def test_rep_dimension_mismatch():
    with pytest.raises(RepDimensionMismatch):
        current_difference(2, "dirac4")


def test_remainder_only_contributes_its_value_at_coincidence():
    n = 3
    R = green_sum(n, include_remainder=True) - green_sum(n)
    limit = schwinger_limit(gamma_word(["mu"], dim=n) * R)
    (st, _), = limit.items()
    assert [t.order for t in st.tensors if t.kind == "opaque"] == [0]
    assert not zeta_current_formal(n).is_zero()


def test_verdict_json():
    doc = current_difference(3, "pauli").to_json()
    assert doc["coincide"] is False and doc["representation"] == "pauli3"
    assert doc["difference"]["schema"].startswith("kernelsmith.expr")
