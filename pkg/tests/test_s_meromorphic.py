from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from kernelsmith.rings import GaussQ, SFun, affine
from kernelsmith.s_meromorphic import (constant_value, finite_part, laurent_at_minus_one, numeric_eval, pole_order,
                                       residue, value_at_minus_one)

HALF = Fraction(1, 2)
G = SFun.monomial(gammas=[affine(HALF, 0, HALF)])        # Gamma((1+s)/2)
SIN = SFun.monomial(sin=1)
PI = SFun.monomial(pi=affine(0, 0, 1))
G1 = SFun.monomial(trans=(("G1", 1),))


def test_gamma_half_argument():
    ls = laurent_at_minus_one(G, 0)
    assert ls.pole_order == 1
    assert ls.coeff(-1) == SFun.const(2)
    assert ls.coeff(0) == G1


def test_sine_series():
    ls = laurent_at_minus_one(SIN, 3)
    assert ls.coeff(0).is_zero()
    assert ls.coeff(1) == -PI
    assert ls.coeff(2).is_zero()
    assert ls.coeff(3) == PI * PI * PI * Fraction(1, 6)


def test_product_is_finite():
    assert residue(SIN * G).is_zero()
    assert finite_part(SIN * G) == PI * (-2)
    assert pole_order(SIN * G) == 0


def test_power_of_two():
    assert finite_part(SFun.monomial(two=affine(1, 0, -1))) == SFun.const(Fraction(1, 4))


def test_phase_at_minus_one():
    assert value_at_minus_one(SFun.monomial(phase=1)) == SFun.const(GaussQ(0, 1))


def test_pole_in_fourth_kernel_coefficient():
    # Gamma((s-3)/2) Gamma((1+s)/2) sin(pi s): the sine kills one pole, one remains
    m = SFun.monomial(gammas=[affine(HALF, 0, Fraction(-3, 2)), affine(HALF, 0, HALF)], sin=1)
    assert pole_order(m) == 1
    assert not residue(m).is_zero()


def test_symbolic_dimension_needs_value():
    m = SFun.monomial(gammas=[affine(HALF, HALF, Fraction(-3, 2))])
    assert pole_order(m, 4) == 1
    assert pole_order(m, 3) == 0


def test_numeric_evaluation():
    with mpmath.workdps(30):
        assert abs(numeric_eval(G, 0) - mpmath.sqrt(mpmath.pi)) < mpmath.mpf(10) ** -25
        assert abs(numeric_eval(SIN, -HALF) + 1) < mpmath.mpf(10) ** -25
        assert abs(numeric_eval(SFun.monomial(phase=1), -1) - 1j) < mpmath.mpf(10) ** -25
    with mpmath.workdps(50):
        assert abs(constant_value(G1) + mpmath.euler) < mpmath.mpf(10) ** -40


shifts = st.integers(-3, 4)


@given(shifts, shifts, st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_series_of_product_is_product_of_series(a, b, k):
    x = SFun.monomial(gammas=[affine(HALF, 0, Fraction(a, 2))], sin=k)
    y = SFun.monomial(gammas=[affine(HALF, 0, Fraction(b, 2))], two=affine(1, 0, 0))
    lx, ly, lxy = (laurent_at_minus_one(m, 3) for m in (x, y, x * y))
    lo = lxy.pole_order
    for j in range(-lo, 2):
        expect = SFun()
        for i in range(-lx.pole_order, j + ly.pole_order + 1):
            expect = expect + lx.coeff(i) * ly.coeff(j - i)
        assert (lxy.coeff(j) - expect).is_zero()


@given(shifts, st.integers(0, 2))
@settings(max_examples=15, deadline=None)
def test_laurent_matches_numeric_evaluation(a, k):
    m = SFun.monomial(gammas=[affine(HALF, 0, Fraction(a, 2)), affine(1, 0, 2)], sin=k, phase=1)
    ls = laurent_at_minus_one(m, 4)
    eps = mpmath.mpf("1e-6")
    with mpmath.workdps(60):
        approx = sum(constant_value(ls.coeff(j), 60) * eps ** j for j in range(-ls.pole_order, 5))
        exact = numeric_eval(m, -1 + eps, None, 60)
        assert abs(approx - exact) <= abs(exact) * mpmath.mpf("1e-12")
