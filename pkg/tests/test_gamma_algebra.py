import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kernelsmith import clifford
from kernelsmith.expr import Expression, MalformedIndexError, canonical_equal, delta, eps, gamma_word, scalar
from kernelsmith.gamma_algebra import (NoTraceRule, builtin, clifford_reduce, custom, evaluate_indices,
                                       generic_even, load_representation, pauli3, trace_numeric, trace_symbolic)
from kernelsmith.rings import GaussQ, I


def words(alphabet, max_size):
    """Gamma words in which no label occurs more than twice (a contraction)."""
    return st.lists(st.sampled_from(alphabet), min_size=1, max_size=max_size).filter(
        lambda w: all(w.count(x) <= 2 for x in w))


def test_anticommutator_standard():
    e = clifford_reduce(["mu", "nu"]) + clifford_reduce(["nu", "mu"])
    assert e == delta("mu", "nu") * 2


def test_anticommutator_literal():
    with clifford.normalization("literal-paper"):
        e = gamma_word(["mu", "nu"]) + gamma_word(["nu", "mu"])
        assert e == delta("mu", "nu")


def test_contracted_square_is_dimension():
    assert clifford_reduce(["mu", "mu"], contracted=["mu"]).with_dim(4) == scalar(4, dim=4)
    assert gamma_word(["mu", "mu"], dim=4) == scalar(4, dim=4)


def test_bad_contraction_tag():
    with pytest.raises(MalformedIndexError):
        clifford_reduce(["mu", "nu", "mu", "mu"], contracted=["mu"])


def test_xi_slash_square_minus_lambda_square():
    from kernelsmith.resolvent import q_symbol, xi_plus_lambda
    from kernelsmith.expr import gens
    # (xi-slash + lambda)(xi-slash - lambda) = xi^2 - lambda^2 = W
    prod = xi_plus_lambda() * (gamma_word(["xi"]) - gens(lam=1))
    assert (prod - gens(W=1)).is_zero()


@given(words("abcd", 4))
def test_reduction_is_idempotent(labels):
    e = clifford_reduce(labels)
    assert clifford_reduce(e) == e


def test_symbolic_traces():
    tr4 = trace_symbolic(gamma_word(["mu", "nu"], dim=4), generic_even(4, 4))
    assert tr4 == delta("mu", "nu", dim=4) * 4
    tr3 = trace_symbolic(gamma_word(["mu", "rho", "nu"], dim=3), pauli3())
    assert tr3 == eps("mu", "rho", "nu", dim=3) * GaussQ(0, 2)
    assert trace_symbolic(gamma_word(["mu"], dim=3), pauli3()).is_zero()
    assert trace_symbolic(gamma_word(["mu", "rho", "nu"], dim=3), custom(3, 4)).is_zero()


@given(words("abcde", 5), st.integers(0, 4))
def test_trace_cyclicity(labels, k):
    k %= len(labels)
    rot = labels[k:] + labels[:k]
    for rc, n in ((generic_even(4, 4), 4), (pauli3(), 3)):
        a = trace_symbolic(gamma_word(labels, dim=n), rc)
        b = trace_symbolic(gamma_word(rot, dim=n), rc)
        assert canonical_equal(a, b)


def test_pauli_matrix_traces():
    p3 = builtin("pauli3")
    assert trace_numeric([1, 2, 3], p3) == pytest.approx(2j)
    assert trace_numeric([1, 2], p3) == pytest.approx(0)
    assert trace_numeric([1, 1], builtin("dirac4")) == pytest.approx(4)


@pytest.mark.parametrize("name", ["pauli2", "pauli3", "dirac4", "reducible3"])
def test_builtin_representations_satisfy_clifford(name):
    builtin(name).validate()


def test_literal_normalization_rescales_matrices():
    with clifford.normalization("literal-paper"):
        rep = builtin("dirac4")
        rep.validate()
        assert trace_numeric([2, 2], rep) == pytest.approx(2)


def test_pauli_odd_rule_needs_standard_normalization():
    with clifford.normalization("literal-paper"):
        with pytest.raises(NoTraceRule):
            trace_symbolic(gamma_word(["a", "b", "c"], dim=3), pauli3())


def test_trace_of_identity_needs_matrix_dimension():
    with pytest.raises(NoTraceRule):
        trace_symbolic(scalar(1, dim=4), generic_even(4, None))


def test_load_representation(tmp_path):
    sig = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    data = [[[[str(z.real), str(z.imag)] for z in row] for row in m.astype(complex)] for m in sig]
    p = tmp_path / "pauli.json"
    p.write_text(json.dumps(data))
    rep = load_representation(p, odd3=2 * I)
    assert rep.spacetime_dim == 3 and rep.matrix_dim == 2
    assert trace_numeric([3, 1, 2], rep) == pytest.approx(2j)


def test_load_representation_rejects_non_clifford(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps([[[["1", "0"], ["0", "0"]], [["0", "0"], ["1", "0"]]]] * 2))
    with pytest.raises(ValueError):
        load_representation(p)


def test_evaluate_indices_exact_and_float():
    e = trace_symbolic(gamma_word(["a", "b", "c"], dim=3), pauli3())
    assert evaluate_indices(e, {"a": 1, "b": 2, "c": 3}) == pytest.approx(2j)
    assert evaluate_indices(e, {"a": 2, "b": 1, "c": 3}, exact=True) == GaussQ(0, -2)


def test_symbolic_matches_matrices_on_products():
    rep = builtin("dirac4")
    sym = trace_symbolic(gamma_word(["a", "b", "c", "d"], dim=4), rep.rep_class)
    for vals in itertools.product(range(1, 5), repeat=4):
        a = evaluate_indices(sym, dict(zip("abcd", vals)))
        assert abs(a - trace_numeric(vals, rep)) < 1e-12
