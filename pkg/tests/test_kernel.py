import json
from fractions import Fraction

import pytest

from kernelsmith.expr import Expression, canonical_equal, field_F, gamma_word, radial, specialize, uvec
from kernelsmith.field_calculus import canonicalize_to_F, expand_to_dA
from kernelsmith.golden_table import regenerate, table_row, three_derivative_block
from kernelsmith.kernel import (MAX_ELL, PoleError, G_term, degrees, master_H, pole_report, residue_at_minus_one,
                                table_one_diff)
from kernelsmith.rings import I, SFun, affine
from kernelsmith.serialize import to_json


def _pi(p):
    return SFun.monomial(pi=affine(0, 0, p))


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_rows_match_table_for_symbolic_dimension(ell):
    got = expand_to_dA(master_H(None, ell))
    assert (got - expand_to_dA(table_row(ell))).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("ell", [0, 1, 2])
def test_rows_match_table_in_fixed_dimension(n, ell):
    got = expand_to_dA(master_H(n, ell))
    assert canonical_equal(got, expand_to_dA(specialize(table_row(ell), n)))


def test_fourth_row_differs_from_table_by_a_factor_i_in_one_block():
    # everything but the two-derivative-of-F block agrees; that block comes out i times the tabulated one
    got = expand_to_dA(master_H(None, 3))
    block = expand_to_dA(three_derivative_block())
    rest = expand_to_dA(table_row(3)) - block
    assert (got - rest - block * I).is_zero()
    assert not (got - rest - block).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("ell", range(MAX_ELL + 1))
def test_degree_of_each_row(n, ell):
    # H_{-n-s+l} is homogeneous of degree -n - s + l in u
    assert degrees(master_H(n, ell), s=-1) == {Fraction(-n + 1 + ell)}


def test_two_dimensional_leading_term():
    g = G_term(2, 0)
    expect = gamma_word(["u"], dim=2) * radial(affine(0, 0, -2), dim=2) * (_pi(-1) * (-I * Fraction(1, 2)))
    assert g == expect


def test_three_dimensional_field_strength_term():
    # the A-dependent remainder only cancels against the gauge link; compare the F part
    g = canonicalize_to_F(G_term(3, 2)).filter(lambda st, c: any(t.kind == "F" for t in st.tensors))
    expect = ((gamma_word(["mu", "rho", "nu"], dim=3) * uvec("rho", dim=3) * radial(affine(0, 0, -1), dim=3)
               + gamma_word(["mu", "nu"], dim=3)) * field_F("mu", "nu", dim=3) * (_pi(-1) * Fraction(1, 16)))
    assert canonical_equal(expand_to_dA(g), expand_to_dA(expect))


def test_poles_among_the_needed_rows():
    # rows l <= n - 1 enter the Green function; only l = 3 at n = 4 has a pole there
    assert pole_report(4, 3).has_pole
    for n, ell in [(4, 0), (4, 1), (4, 2), (3, 0), (3, 1), (3, 2), (2, 0), (2, 1)]:
        assert not pole_report(n, ell).has_pole


def test_residue_is_field_equation_term():
    r = canonicalize_to_F(residue_at_minus_one(4, 3))
    expect = gamma_word(["nu"], dim=4) * field_F("mu", "nu", ("mu",), dim=4) * (_pi(-2) * Fraction(1, 24))
    assert r == expect


def test_finite_part_produces_logarithm():
    g = G_term(4, 3)
    logs = g.filter(lambda st, c: st.log > 0)
    expect = gamma_word(["nu"], dim=4) * field_F("mu", "nu", ("mu",), dim=4) * radial(affine(), log=1, dim=4) \
        * (_pi(-2) * Fraction(-1, 24))
    assert canonical_equal(expand_to_dA(logs), expand_to_dA(expect))


def test_plain_limit_through_pole_is_refused():
    with pytest.raises(PoleError):
        G_term(4, 3, N=4)


def test_ell_out_of_range():
    with pytest.raises(ValueError):
        master_H(3, 4)


def test_table_diff_against_files(tmp_path):
    regenerate(tmp_path)
    rep = table_one_diff(3, tmp_path, ells=range(3))
    assert rep.passed


def test_table_diff_detects_sign_flip(tmp_path):
    regenerate(tmp_path)
    (tmp_path / "table_row1.json").write_text(json.dumps(to_json(-table_row(1))))
    rep = table_one_diff(None, tmp_path, ells=[1])
    assert not rep.passed
    assert rep.rows[0].residual == expand_to_dA(table_row(1)) * 2
