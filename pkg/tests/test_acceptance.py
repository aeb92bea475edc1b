"""Acceptance gate: one test per criterion.  A summary line per criterion is
printed at the end of the run (see conftest.py)."""
import io
import itertools
import time
from fractions import Fraction

import pytest

from kernelsmith.cli import main
from kernelsmith.comparison import current_difference, green_sum
from kernelsmith.expr import canonical_equal, field_F, gamma_word, radial
from kernelsmith.field_calculus import expand_to_dA
from kernelsmith.gamma_algebra import builtin, evaluate_indices, pauli3, trace_numeric, trace_symbolic
from kernelsmith.golden_table import load_green_sum
from kernelsmith.kernel import MAX_ELL, pole_report, G_term, table_one_diff
from kernelsmith.resolvent import verify_recursion
from kernelsmith.rings import I, SFun, affine
from kernelsmith.suites import angular_suite, laurent_suite, trace_suite


def _pi(p):
    return SFun.monomial(pi=affine(0, 0, p))


def _same(a, b):
    a, b = expand_to_dA(a), expand_to_dA(b)
    return (a - b).is_zero() or canonical_equal(a, b)


def test_criterion_01_table_reproduction():
    start = time.perf_counter()
    failures = []
    for n in (None, 2, 3, 4):
        for row in table_one_diff(n, ells=range(MAX_ELL + 1)).rows:
            if not row.passed:
                failures.append(f"n={'n' if n is None else n} ell={row.ell}")
    elapsed = time.perf_counter() - start
    assert not failures, f"rows differing from the reference table: {', '.join(failures)}"
    assert elapsed < 10


def test_criterion_02_two_dimensions():
    n = 2
    expect = (gamma_word(["u"], dim=n) * radial(affine(0, 0, -2), dim=n) * (_pi(-1) * (-I * Fraction(1, 2))))
    G = green_sum(n)
    assert G == expect.with_remainder(1)
    assert _same(G, load_green_sum(n))
    assert current_difference(n, "pauli").coincide


def test_criterion_03_three_dimensions():
    n = 3
    assert _same(green_sum(n), load_green_sum(n))
    v = current_difference(n, "pauli")
    tr = trace_symbolic(gamma_word(["mu", "rho", "nu"], dim=n), pauli3())
    expect = tr * field_F("rho", "nu", dim=n) * (_pi(-1) * Fraction(1, 16))
    assert not v.coincide and v.difference == expect
    rep = builtin("pauli3")
    for vals in itertools.product(range(1, 4), repeat=3):
        sym = evaluate_indices(tr, dict(zip(("mu", "rho", "nu"), vals)))
        assert abs(sym - trace_numeric(vals, rep)) < 1e-12
    assert current_difference(n, "reducible").coincide


def test_criterion_04_four_dimensions():
    n = 4
    assert pole_report(n, 3).has_pole
    assert any(st.log for st, _ in G_term(n, 3).items())
    assert _same(green_sum(n), load_green_sum(n)), "four-dimensional Green-function sum differs from the reference"


def test_criterion_05_recursion():
    rep = verify_recursion(3)
    assert rep.passed and len(rep.checks) == 4


def test_criterion_06_laurent_oracle():
    rep = laurent_suite(count=50, seed=0)
    assert rep.passed, "\n".join(rep.lines)


def test_criterion_07_angular_oracle():
    rep = angular_suite((2, 3, 4), max_order=4, samples=1_000_000, seed=0, tol=1e-3)
    assert rep.passed, "\n".join(rep.lines)


def test_criterion_08_trace_crosscheck():
    rep = trace_suite(max_len=4)
    assert rep.passed, "\n".join(rep.lines)


def _run(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


def test_criterion_09_verdicts():
    assert _run("compare", "--dim", "2")[0] == 0
    assert _run("compare", "--dim", "3", "--rep", "pauli")[0] == 3
    assert _run("compare", "--dim", "4", "--rep", "dirac4")[0] == 3
    assert _run("compare", "--dim", "3", "--rep", "reducible")[0] == 0


def test_criterion_10_determinism():
    for argv in (["check"], ["check", "--format", "json"], ["compare", "--dim", "3", "--format", "latex"],
                 ["compare", "--dim", "4", "--format", "json"]):
        assert _run(*argv) == _run(*argv)
