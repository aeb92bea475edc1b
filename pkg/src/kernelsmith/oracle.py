"""Independent numerical checks: sphere moments, pole fitting, trace tables.

Nothing here feeds the symbolic pipeline; these are the yardsticks the tests
and the ``check`` command hold it against.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .expr import gamma_word
from .gamma_algebra import (BUILTIN_REPS, Representation, builtin, evaluate_indices, trace_numeric,
                            trace_symbolic)
from .s_meromorphic import numeric_eval


# ---------------------------------------------------------------------------
# sphere averages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    n: int
    method: str = "exact"        # 'exact' or 'monte-carlo'
    seed: int = 0
    samples: int = 1_000_000
    tolerance: float = 1e-3


def _half_gamma_ratio(k: int) -> Fraction:
    """Gamma((k+1)/2) / Gamma(1/2) for even k >= 0."""
    out = Fraction(1)
    x = Fraction(1, 2)
    for _ in range(k // 2):
        out *= x
        x += 1
    return out


def _gamma_ratio(a: Fraction, b: Fraction) -> Fraction:
    """Gamma(a) / Gamma(b) for a - b an integer."""
    out = Fraction(1)
    if a >= b:
        while b < a:
            out *= b
            b += 1
        return out
    return 1 / _gamma_ratio(b, a)


def sphere_moment_exact(indices, n: int) -> Fraction:
    """Mean of u_{i1} ... u_{ik} over S^(n-1), indices in 1..n."""
    counts = Counter(indices)
    if any(i < 1 or i > n for i in counts):
        raise IndexError("index out of range")
    if any(c % 2 for c in counts.values()):
        return Fraction(0)
    k = sum(counts.values())
    # prod Gamma((k_i+1)/2) Gamma(n/2) / (Gamma(1/2)^n Gamma((n+k)/2)) with Gamma(1/2) factors cancelling
    num = Fraction(1)
    for c in counts.values():
        num *= _half_gamma_ratio(c)
    return num / _gamma_ratio(Fraction(n + k, 2), Fraction(n, 2))


def sphere_samples(n: int, samples: int, seed: int, shards: int = 4) -> np.ndarray:
    """Uniform points on S^(n-1); shards use seeds spawned from the root seed."""
    ss = np.random.SeedSequence(seed)
    sizes = [samples // shards + (1 if i < samples % shards else 0) for i in range(shards)]
    parts = []
    for child, size in zip(ss.spawn(shards), sizes):
        x = np.random.default_rng(child).standard_normal((size, n))
        parts.append(x / np.linalg.norm(x, axis=1, keepdims=True))
    return np.concatenate(parts)


def sphere_average_numeric(indices, n: int, spec: QuadratureSpec | None = None, points=None):
    spec = spec or QuadratureSpec(n)
    if len(indices) > 8:
        raise ValueError("at most 8 indices")
    if spec.method == "exact":
        return sphere_moment_exact(indices, n)
    if spec.method != "monte-carlo":
        raise ValueError(f"unknown method {spec.method!r}")
    pts = sphere_samples(n, spec.samples, spec.seed) if points is None else points
    prod = np.ones(len(pts))
    for i in indices:
        prod = prod * pts[:, i - 1]
    return float(prod.mean())


# ---------------------------------------------------------------------------
# pole fitting
# ---------------------------------------------------------------------------

@dataclass
class PoleFit:
    coefficients: dict           # order -> mpc
    errors: dict                 # order -> mpf estimate
    ill_conditioned: bool = False


def _fit(samples, lo: int, hi: int):
    orders = list(range(lo, hi + 1))
    A = mpmath.matrix(len(orders), len(orders))
    b = mpmath.matrix(len(orders), 1)
    for r, (eps, val) in enumerate(samples[: len(orders)]):
        for c, k in enumerate(orders):
            A[r, c] = eps ** k
        b[r] = val
    x = mpmath.lu_solve(A, b)
    return {k: x[i] for i, k in enumerate(orders)}


def pole_fit(fn, max_pole: int = 2, max_order: int = 2, n=None, dps: int = 80,
             eps0: str = "1e-3", ratio: str = "0.6", extra: int = 12) -> PoleFit:
    """Fit c_{-p} .. c_{max_order} of a function near s = -1.

    ``fn`` is an SFun or a callable of an mpmath number s.  Two fits with
    different numbers of auxiliary higher-order terms give the error estimate.
    """
    with mpmath.workdps(dps):
        f = fn if callable(fn) else (lambda s: numeric_eval(fn, s, n, dps))
        e0, r = mpmath.mpf(eps0), mpmath.mpf(ratio)
        npts = max_pole + max_order + 1 + extra + 2
        samples = [(e0 * r ** j, f(-1 + e0 * r ** j)) for j in range(npts)]
        hi1 = max_order + extra
        fit1 = _fit(samples, -max_pole, hi1)
        fit2 = _fit(samples, -max_pole, hi1 + 2)
        coeffs, errs = {}, {}
        for k in range(-max_pole, max_order + 1):
            coeffs[k] = fit2[k]
            errs[k] = abs(fit2[k] - fit1[k])
        scale = max([abs(v) for v in coeffs.values()] + [mpmath.mpf(1)])
        bad = any(e > scale * mpmath.mpf(10) ** (-8) for e in errs.values())
        return PoleFit(coeffs, errs, bad)


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

@dataclass
class TraceReport:
    max_deviation: float
    words_checked: int
    per_rep: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_deviation < 1e-12


def trace_crosscheck(reps=None, max_len: int = 4) -> TraceReport:
    """Symbolic vs matrix traces for every word up to ``max_len`` and every index choice."""
    if reps is None:
        reps = [builtin(name) for name in sorted(BUILTIN_REPS)]
    worst, count = 0.0, 0
    per, bad = {}, []
    for rep in reps:
        n = rep.spacetime_dim
        rep_worst = 0.0
        for k in range(max_len + 1):
            labels = [f"i{j}" for j in range(k)]
            sym = trace_symbolic(gamma_word(labels, dim=n), rep.rep_class)
            for vals in itertools.product(range(1, n + 1), repeat=k):
                a = evaluate_indices(sym, dict(zip(labels, vals)))
                b = trace_numeric(vals, rep)
                dev = abs(a - b) / max(1.0, abs(b))
                count += 1
                if dev > rep_worst:
                    rep_worst = dev
                if dev >= 1e-12:
                    bad.append((rep.name, vals, a, b))
        per[rep.name] = rep_worst
        worst = max(worst, rep_worst)
    return TraceReport(worst, count, per, bad)


def corrupted(rep: Representation, mu: int = 1, factor: complex = 1.1) -> Representation:
    """A copy with one matrix rescaled; used as a negative control."""
    mats = list(rep.matrices)
    mats[mu - 1] = mats[mu - 1] * factor
    return Representation(rep.name + "-corrupted", rep.spacetime_dim, rep.matrix_dim, tuple(mats), rep.rep_class)
