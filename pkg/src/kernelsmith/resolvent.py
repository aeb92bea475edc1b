"""Symbols of the resolvent (Dirac - lambda)^(-1).

With Q = (xi-slash - lambda) / (xi^2 - lambda^2), the homogeneous pieces are

    C_{-1}     = -Q
    C_{-1-l}   = -Q [Dirac_x Q]^l      (each Dirac_x acting on everything to its right)

and satisfy -(xi-slash + lambda) C_{-1} = 1 and
Dirac_x C_{-1-l} - (xi-slash + lambda) C_{-2-l} = 0.  The denominator
W = xi^2 - lambda^2 is an opaque generator of degree 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import clifford
from .expr import Expression, Struct, Tensor, XI, gen_power
from .field_calculus import apply_dirac


def q_symbol(dim=None) -> Expression:
    """(xi-slash - lambda) W^(-1)."""
    return Expression.build([(Struct(gamma=(XI,), gens=(("W", -1),)), _one()),
                             (Struct(gens=(("W", -1), ("lam", 1))), -_one())], dim)


def xi_plus_lambda(dim=None) -> Expression:
    return Expression.build([(Struct(gamma=(XI,)), _one()), (Struct(gens=(("lam", 1),)), _one())], dim)


def _one():
    from .rings import SFun
    return SFun.const(1)


@lru_cache(maxsize=None)
def _chain(ell: int, dim, norm: str) -> Expression:
    with clifford.normalization(norm):
        if ell == 0:
            return q_symbol(dim)
        return q_symbol(dim) * apply_dirac(_chain(ell - 1, dim, norm))


def resolvent_coefficient(ell: int, dim=None) -> Expression:
    """C_{-1-ell}(x, xi, lambda) fully expanded."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    return -_chain(ell, dim, clifford.normalization_name())


def symbol_degree(st: Struct) -> int:
    """(xi, lambda)-homogeneity degree of one term."""
    k = st.gamma.count(XI)
    for t in st.tensors:
        k += 1 if t.kind == "xi" else t.slots.count(XI) + t.derivs.count(XI)
    return k + gen_power(st, "lam") + 2 * gen_power(st, "W")


@dataclass
class RecursionReport:
    ell_max: int
    passed: bool
    first_failure: int | None = None
    residual: Expression | None = field(default=None, repr=False)
    checks: list = field(default_factory=list)

    def lines(self) -> list[str]:
        from .render import to_text
        out = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in self.checks]
        if self.residual is not None:
            out.append(f"residual: {to_text(self.residual)}")
        return out


def verify_recursion(ell_max: int, dim=None, coefficients=None) -> RecursionReport:
    """Check the defining relations for all ell < ell_max.

    ``coefficients`` optionally replaces the computed C_{-1-ell} (index ell) to
    test the verifier itself.
    """
    if ell_max < 1:
        raise ValueError("ell_max must be at least 1")
    coef = coefficients or {}

    def C(ell):
        return coef[ell] if ell in coef else resolvent_coefficient(ell, dim)

    report = RecursionReport(ell_max, True)
    first = -(xi_plus_lambda(dim) * C(0)) - Expression.one(dim)
    ok = first.is_zero()
    report.checks.append(("-(xi+lambda) C_-1 = 1", ok))
    if not ok:
        report.passed, report.first_failure, report.residual = False, -1, first
        return report
    for ell in range(ell_max):
        res = apply_dirac(C(ell)) - xi_plus_lambda(dim) * C(ell + 1)
        ok = res.is_zero()
        report.checks.append((f"Dirac C_{-1 - ell} - (xi+lambda) C_{-2 - ell} = 0", ok))
        if not ok:
            report.passed, report.first_failure, report.residual = False, ell, res
            return report
    return report
