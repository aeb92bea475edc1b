from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kernelsmith.expr import Expression, Struct, Tensor, delta, field_F, gamma_word, radial, scalar, uvec
from kernelsmith.rings import GaussQ, Poly, SFun, affine
from kernelsmith.u_structure import (angular_average, decompose_homogeneous, schwinger_limit, term_degree,
                                     u_derivative, u_slash_derivative)
from kernelsmith.suites import symbolic_moment
from kernelsmith.oracle import sphere_moment_exact


def test_derivative_of_u_squared():
    e = radial(affine(0, 0, 2))
    assert u_derivative(e, "mu") == uvec("mu") * 2


def test_derivative_of_radial_power():
    # d/du_mu |u|^(-n-s) = (-n-s) |u|^(-n-s-2) u_mu
    got = u_derivative(radial(affine(-1, -1, 0)), "mu")
    expect = uvec("mu") * radial(affine(-1, -1, -2)) * SFun.poly(Poly.affine(-1, -1, 0))
    assert got == expect


@given(st.integers(-5, 5), st.integers(0, 3))
@settings(max_examples=25, deadline=None)
def test_euler_homogeneity(p, k):
    # u_mu d/du_mu f = deg(f) f for homogeneous f
    e = radial(affine(0, 0, p - k), dim=3)
    for j in range(k):
        e = e * uvec(f"a{j}", dim=3)
    lhs = uvec("mu", dim=3) * u_derivative(e, "mu")
    assert (lhs - e * p).is_zero()


def test_slash_derivative_lowers_degree():
    e = gamma_word(["u"]) * radial(affine(-1, -1, -1))
    out = u_slash_derivative(e)
    for st_, _ in out.items():
        assert term_degree(st_) == affine(-1, -1, -1)


def test_homogeneous_components():
    e = (gamma_word(["u"], dim=2) * radial(affine(0, 0, -2), dim=2)
         + uvec("mu", dim=2) * radial(affine(0, 0, -1), dim=2))
    comps = decompose_homogeneous(e)
    assert [c.degree for c in comps] == [-1, 0]
    total = Expression.zero(2)
    for c in comps:
        total = total + c.expression
    assert total == e


def test_merged_degree_zero_components():
    a = scalar(1, dim=3)
    b = uvec("mu", dim=3) * uvec("nu", dim=3) * radial(affine(0, 0, -2), dim=3)
    c = radial(affine(0, 0, 2), dim=3)
    comps = decompose_homogeneous(a + b + c)
    assert [x.degree for x in comps] == [0, 2]
    assert len(list(comps[0].expression.items())) == 2


def test_odd_average_vanishes():
    assert angular_average(uvec("mu", dim=3) * radial(affine(0, 0, -1), dim=3)).is_zero()


def test_second_moment_in_four_dimensions():
    e = uvec("mu", dim=4) * uvec("nu", dim=4) * radial(affine(0, 0, -2), dim=4)
    assert angular_average(e) == delta("mu", "nu", dim=4) * Fraction(1, 4)


def test_fourth_moment_in_three_dimensions():
    labels = "abcd"
    e = radial(affine(0, 0, -4), dim=3)
    for x in labels:
        e = e * uvec(x, dim=3)
    expect = (delta("a", "b", dim=3) * delta("c", "d", dim=3) + delta("a", "c", dim=3) * delta("b", "d", dim=3)
              + delta("a", "d", dim=3) * delta("b", "c", dim=3)) * Fraction(1, 15)
    assert angular_average(e) == expect


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n), max_size=6))))
@settings(max_examples=40, deadline=None)
def test_average_agrees_with_moment_formula(case):
    n, idx = case
    assert symbolic_moment(idx, n) == GaussQ(sphere_moment_exact(idx, n))


def test_schwinger_limit_rules():
    n = 3
    assert schwinger_limit(gamma_word(["u"], dim=n) * radial(affine(0, 0, -2), dim=n)).is_zero()
    odd = gamma_word(["mu", "rho", "nu"], dim=n) * uvec("rho", dim=n) * radial(affine(0, 0, -1), dim=n) \
        * field_F("mu", "nu", dim=n)
    assert schwinger_limit(odd).is_zero()
    log = gamma_word(["nu"], dim=4) * field_F("mu", "nu", ("mu",), dim=4) * radial(affine(), log=1, dim=4)
    assert schwinger_limit(log).is_zero()
    const = gamma_word(["mu", "nu"], dim=n) * field_F("mu", "nu", dim=n)
    assert schwinger_limit(const) == const


def test_schwinger_limit_of_continuous_remainder():
    R = Expression.of(Struct(tensors=(Tensor("opaque", (), (), 1, "R"),)), 1, 2)
    out = schwinger_limit(R + R * uvec("mu", dim=2))
    (st_, c), = out.items()
    assert st_.tensors[0].order == 0
    with pytest.raises(ValueError):
        schwinger_limit(R * radial(affine(0, 0, -1), dim=2))


def test_schwinger_limit_rejects_nonvanishing_truncation():
    with pytest.raises(ValueError):
        schwinger_limit(scalar(1, dim=2).with_remainder(0))
