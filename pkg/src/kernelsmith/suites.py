"""Verification suites run by ``kernelsmith check`` and by the test-suite.

Each suite returns a :class:`SuiteReport` whose ``lines`` are deterministic
for a given configuration (no timings, no addresses), so two runs can be
diffed byte for byte.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import clifford
from .expr import Expression, canonical_equal, radial, uvec
from .field_calculus import expand_to_dA
from .gamma_algebra import NoTraceRule, builtin, BUILTIN_REPS, evaluate_indices
from .golden_table import load_green_sum
from .kernel import MAX_ELL, table_one_diff
from .oracle import (QuadratureSpec, pole_fit, sphere_average_numeric, sphere_moment_exact,
                     sphere_samples, trace_crosscheck)
from .resolvent import verify_recursion
from .rings import GaussQ, Poly, SFun, affine
from .s_meromorphic import constant_value, laurent_at_minus_one, pole_order
from .u_structure import angular_average

DIMENSIONS = (2, 3, 4)


@dataclass
class SuiteReport:
    name: str
    passed: bool
    lines: list = field(default_factory=list)


# ---------------------------------------------------------------------------

def table_suite(dims=(None,) + DIMENSIONS, golden_dir=None) -> SuiteReport:
    lines, ok = [], True
    for n in dims:
        rep = table_one_diff(n, golden_dir)
        ok &= rep.passed
        lines += rep.lines()
    return SuiteReport("table", ok, lines)


def green_sum_suite(dims=DIMENSIONS, golden_dir=None) -> SuiteReport:
    from .comparison import green_sum
    from .render import to_text
    lines, ok = [], True
    for n in dims:
        got = expand_to_dA(green_sum(n))
        ref = expand_to_dA(load_green_sum(n, golden_dir))
        good = (got - ref).is_zero() or canonical_equal(got, ref)
        ok &= good
        lines.append(f"green sum n={n}: {'pass' if good else 'FAIL'}")
        if not good:
            lines.append("  residual: " + to_text(got - ref))
    return SuiteReport("green-sum", ok, lines)


_NORMALIZATION_NOTE = ("  note: with gamma_mu gamma_nu + gamma_nu gamma_mu = delta_mu_nu one has "
                       "xi-slash^2 = xi^2/2, so -(xi-slash + lambda)(xi-slash - lambda)/(xi^2 - lambda^2) "
                       "is not the identity; the resolvent inverse needs the standard constant 2")


def recursion_suite(ell_max: int = MAX_ELL) -> SuiteReport:
    rep = verify_recursion(ell_max)
    lines = [f"resolvent {x}" for x in rep.lines()]
    if not rep.passed and clifford.normalization_name() != "standard":
        lines.append(_NORMALIZATION_NOTE)
    return SuiteReport("recursion", rep.passed, lines)


def trace_suite(max_len: int = 4) -> SuiteReport:
    lines, ok = [], True
    for name in sorted(BUILTIN_REPS):
        rep = builtin(name)
        try:
            r = trace_crosscheck([rep], max_len)
        except NoTraceRule as exc:
            lines.append(f"trace {name}: skipped ({exc})")
            continue
        ok &= r.passed
        lines.append(f"trace {name}: {'pass' if r.passed else 'FAIL'} "
                     f"({r.words_checked} words, max deviation {r.max_deviation:.1e})")
    return SuiteReport("trace", ok, lines)


# ---------------------------------------------------------------------------
# angular averages
# ---------------------------------------------------------------------------

def monomial(indices, n: int) -> tuple[Expression, dict]:
    """u_{a1} ... u_{ak} / |u|^k with free labels, plus the label assignment."""
    labels = [f"a{j}" for j in range(len(indices))]
    e = radial(affine(0, 0, -len(indices)), dim=n)
    for lab in labels:
        e = e * uvec(lab, dim=n)
    return e, dict(zip(labels, indices))


def symbolic_moment(indices, n: int) -> GaussQ:
    e, asg = monomial(indices, n)
    return evaluate_indices(angular_average(e, n), asg, exact=True)


def angular_suite(dims=DIMENSIONS, max_order: int = 4, samples: int = 1_000_000, seed: int = 0,
                  tol: float = 1e-3) -> SuiteReport:
    lines, ok = [], True
    for n in dims:
        pts = sphere_samples(n, samples, seed)
        spec = QuadratureSpec(n, "monte-carlo", seed, samples, tol)
        exact_bad, worst, count = 0, 0.0, 0
        for k in range(max_order + 1):
            for idx in itertools.combinations_with_replacement(range(1, n + 1), k):
                sym = symbolic_moment(idx, n)
                ref = sphere_moment_exact(idx, n)
                if sym != GaussQ(ref):
                    exact_bad += 1
                mc = sphere_average_numeric(idx, n, spec, points=pts)
                worst = max(worst, abs(mc - float(ref)))
                count += 1
        good = exact_bad == 0 and worst < tol
        ok &= good
        lines.append(f"angular average n={n}: {'pass' if good else 'FAIL'} "
                     f"({count} monomials, exact mismatches {exact_bad}, "
                     f"Monte Carlo max deviation {worst:.1e} at {samples} samples, seed {seed})")
    return SuiteReport("angular", ok, lines)


# ---------------------------------------------------------------------------
# Laurent expansions
# ---------------------------------------------------------------------------

def random_meromorphic(rng: random.Random) -> tuple[SFun, int | None]:
    """A random product of Gamma factors, sines, phases and powers, with its dimension."""
    n = rng.choice([None, 2, 3, 4])
    gammas = []
    for _ in range(rng.randint(0, 3)):
        if rng.random() < 0.6:
            cn = Fraction(rng.choice([0, 1]), 2) if n is not None else 0
            gammas.append(affine(Fraction(1, 2), cn, Fraction(rng.randint(-3, 4), 2)))
        else:
            gammas.append(affine(1, 0, rng.randint(0, 3)))
    poly = Poly({(0, 0): GaussQ(rng.randint(-5, 5) or 1, rng.randint(-3, 3))})
    if rng.random() < 0.4:
        poly = poly * Poly({(1, 0): GaussQ(1), (0, 0): GaussQ(rng.randint(-2, 3))})
    m = SFun.monomial(gammas=gammas, sin=rng.randint(0, 2), phase=rng.randint(0, 1),
                      two=affine(rng.choice([0, 1, -1]), 0, rng.randint(-2, 2)),
                      pi=affine(0, 0, Fraction(rng.randint(-2, 2), 2)), poly=poly)
    return m, n


def compare_laurent(m: SFun, n=None, max_order: int = 2, rtol: float = 1e-8):
    """(ok, worst relative deviation) of symbolic coefficients against the fit."""
    p = max(pole_order(m, n), 0)
    ls = laurent_at_minus_one(m, max_order, n)
    fit = pole_fit(m, max_pole=p + 1, max_order=max_order, n=n)
    worst = mpmath.mpf(0)
    ok = not fit.ill_conditioned
    for k in range(-p - 1, max_order + 1):
        sym = constant_value(ls.coeff(k)) if k >= -p else mpmath.mpf(0)
        diff = abs(sym - fit.coefficients[k])
        if sym == 0:
            good = diff < mpmath.mpf("1e-20")
            rel = diff
        else:
            rel = diff / abs(sym)
            good = rel < rtol
        ok &= bool(good)
        worst = max(worst, rel)
    return ok, float(worst)


def fixed_laurent_cases() -> list[tuple[str, SFun, int | None]]:
    g = SFun.monomial(gammas=[affine(Fraction(1, 2), 0, Fraction(1, 2))])
    sin = SFun.monomial(sin=1)
    pole = SFun.monomial(gammas=[affine(1, 0, 1)])
    return [("Gamma((1+s)/2)", g, None), ("sin(pi s)", sin, None),
            ("sin(pi s) Gamma((1+s)/2)", g * sin, None), ("Gamma(1+s)", pole, None)]


def laurent_suite(count: int = 50, seed: int = 0) -> SuiteReport:
    lines, ok = [], True
    for name, m, n in fixed_laurent_cases():
        good, worst = compare_laurent(m, n)
        ok &= good
        lines.append(f"laurent {name}: {'pass' if good else 'FAIL'} (max relative deviation {worst:.1e})")
    rng = random.Random(seed)
    bad, worst_all = 0, 0.0
    for _ in range(count):
        m, n = random_meromorphic(rng)
        good, worst = compare_laurent(m, n)
        bad += not good
        worst_all = max(worst_all, worst)
    ok &= bad == 0
    lines.append(f"laurent random products: {'pass' if bad == 0 else 'FAIL'} "
                 f"({count} cases, seed {seed}, failures {bad}, max relative deviation {worst_all:.1e})")
    return SuiteReport("laurent", ok, lines)


def all_suites(dim=None, golden_dir=None, seed: int = 0) -> list[SuiteReport]:
    dims = DIMENSIONS if dim is None else (dim,)
    table_dims = (None,) + dims
    return [table_suite(table_dims, golden_dir), green_sum_suite(dims, golden_dir), recursion_suite(),
            trace_suite(), angular_suite(dims, seed=seed), laurent_suite(seed=seed)]
