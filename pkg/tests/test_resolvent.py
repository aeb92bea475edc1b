from kernelsmith import clifford
from kernelsmith.expr import Expression, gamma_word, gens
from kernelsmith.resolvent import resolvent_coefficient, symbol_degree, verify_recursion, xi_plus_lambda
from kernelsmith.rings import I


def test_leading_coefficient():
    expect = -(gamma_word(["xi"]) - gens(lam=1)) * gens(W=-1)
    assert resolvent_coefficient(0) == expect


def test_leading_coefficient_inverts():
    assert -(xi_plus_lambda() * resolvent_coefficient(0)) == Expression.one(None)


def test_degrees():
    for ell in range(4):
        for st, _ in resolvent_coefficient(ell).items():
            assert symbol_degree(st) == -1 - ell


def test_first_correction_is_one_dirac_application():
    # C_-2 = -C_-1 (Dirac C_-1), with (xi-slash + lambda)^-1 = -C_-1
    from kernelsmith.field_calculus import apply_dirac
    c0 = resolvent_coefficient(0)
    assert (resolvent_coefficient(1) + c0 * apply_dirac(c0)).is_zero()


def test_recursion_passes():
    assert verify_recursion(1).passed
    rep = verify_recursion(3)
    assert rep.passed and len(rep.checks) == 4


def test_recursion_negative_control():
    bad = resolvent_coefficient(2) + resolvent_coefficient(2) * I
    rep = verify_recursion(3, coefficients={2: bad})
    assert not rep.passed
    assert rep.first_failure == 1
    assert not rep.residual.is_zero()


def test_literal_normalization_breaks_the_inverse():
    with clifford.normalization("literal-paper"):
        rep = verify_recursion(3)
    assert not rep.passed and rep.first_failure == -1
