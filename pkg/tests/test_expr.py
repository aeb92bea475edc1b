import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kernelsmith.expr import (Expression, MalformedIndexError, canonical_equal, delta, eps, field_A, field_F,
                              gamma_word, radial, specialize, uvec)
from kernelsmith.components import is_zero_by_components
from kernelsmith.render import to_latex, to_text
from kernelsmith.rings import GaussQ, SFun, affine
from kernelsmith.serialize import SCHEMA, from_json, to_json


def test_dummy_names_do_not_matter():
    a = gamma_word(["mu"]) * field_A("mu")
    b = gamma_word(["rho"]) * field_A("rho")
    assert a == b


def test_delta_contracts():
    assert delta("mu", "nu") * field_A("nu") == field_A("mu")
    assert delta("mu", "mu", dim=3) == Expression.scalar(3, dim=3)


def test_field_strength_antisymmetry():
    assert field_F("nu", "mu") == -field_F("mu", "nu")
    assert (field_F("mu", "nu") * delta("mu", "nu")).is_zero()


def test_epsilon_with_symmetric_pair_vanishes():
    assert (eps("a", "b", "c", dim=3) * uvec("a", dim=3) * uvec("b", dim=3)).is_zero()


def test_triple_index_is_malformed():
    with pytest.raises(MalformedIndexError):
        gamma_word(["mu", "mu", "mu"])


def test_specialize_substitutes_dimension():
    e = radial(affine(-1, -1, 0)) * SFun.monomial(pi=affine(0, Fraction(-1, 2), -1))
    e4 = specialize(e, 4)
    assert e4.dim == 4
    assert list(e4.terms)[0].radial == affine(-1, 0, -4)


def test_component_fallback_sees_dimension_identities():
    # in n=2: eps_ab eps_cd = delta_ac delta_bd - delta_ad delta_bc
    e = (eps("a", "b", dim=2) * eps("c", "d", dim=2)
         - delta("a", "c", dim=2) * delta("b", "d", dim=2) + delta("a", "d", dim=2) * delta("b", "c", dim=2))
    assert not e.is_zero()
    assert is_zero_by_components(e)
    assert canonical_equal(e, Expression.zero(2))


SMALL = [gamma_word(["mu", "u", "nu"]) * field_F("mu", "nu") * radial(affine(-1, -1, 1)),
         uvec("mu") * uvec("rho") * gamma_word(["rho"]) * field_F("mu", "nu", ("nu",)),
         gamma_word(["u"]) * radial(affine(0, 0, -2), log=1) * GaussQ(0, Fraction(-1, 2))]


@given(st.lists(st.sampled_from(range(len(SMALL))), min_size=1, max_size=3),
       st.lists(st.fractions(max_denominator=7, min_value=-3, max_value=3), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_serialization_roundtrip(picks, weights):
    e = Expression.zero(None)
    for i, w in zip(picks, weights):
        e = e + SMALL[i] * w
    doc = to_json(e)
    assert doc["schema"] == SCHEMA
    assert from_json(json.loads(json.dumps(doc))) == e


def test_unknown_schema_rejected():
    with pytest.raises(ValueError):
        from_json({"schema": "something/else", "sum": []})


@given(st.sampled_from(range(len(SMALL))), st.sampled_from(range(len(SMALL))), st.sampled_from(range(len(SMALL))))
@settings(max_examples=20, deadline=None)
def test_product_is_associative(i, j, k):
    a, b, c = (SMALL[x] for x in (i, j, k))
    try:
        left = (a * b) * c
    except MalformedIndexError:
        return
    assert left == a * (b * c)


def test_rendering_is_readable():
    e = gamma_word(["u"]) * radial(affine(0, 0, -2)) * GaussQ(0, Fraction(-1, 2))
    assert to_text(e) == "-i/2 · u̸ · |u|^(-2)"
    assert r"\not u" in to_latex(e)
