"""Kernel coefficients H_{-n-s+l}(x, u) of complex powers of the Dirac operator.

    H_{-n-s+l} = -i 2^(s-2l-2) / (pi^(n/2+1) l!) e^(-i pi s/2) sin(pi s)
                 P [Dirac_x P]^l  sum_{k=0}^{l+1} (-i a)^k / k!  2^k
                 Gamma((1+s+k)/2) Gamma((s+k+n-1-2l)/2) |u|^(-s-n+2l+1-k)  |_{a=0}

with P = -i gamma_b d/du_b + d/da.  The factor 2^k comes from the radial
integral  int_0^inf z^(s+k) K_nu(z u) dz  and is needed for the second
bracket term of every H to come out right.

Operator order: the innermost P acts first, then Dirac_x and P alternate
outward (P, Dirac, P, ..., Dirac, P).  d/du and d/da commute with the
x-derivatives of Dirac_x, so no other ordering question arises.  Powers of
a that cannot be brought down by the P's still to come are dropped as soon as
they appear.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import clifford
from .expr import Expression, Struct, gen_power, merge_gens, specialize
from .field_calculus import apply_dirac, canonicalize_to_F, expand_to_dA
from .rings import SFun, GaussQ, I, affine, aff_subs_n
from .s_meromorphic import laurent_at_minus_one
from .u_structure import u_slash_derivative, term_degree

MAX_ELL = 3


def _seed(ell: int, dim) -> Expression:
    raw = []
    for k in range(ell + 2):
        c = SFun.monomial(gammas=[affine(Fraction(1, 2), 0, Fraction(1 + k, 2)),
                                  affine(Fraction(1, 2), Fraction(1, 2), Fraction(k - 1 - 2 * ell, 2))],
                          coeff=(-I) ** k * Fraction(2 ** k, factorial(k)))
        st = Struct(radial=affine(-1, -1, 2 * ell + 1 - k), gens=(("a", k),) if k else ())
        raw.append((st, c))
    return Expression.build(raw, dim)


def _a_derivative(expr: Expression) -> Expression:
    def fn(st, c):
        k = gen_power(st, "a")
        if k:
            yield st._replace(gens=merge_gens(st.gens, (("a", -1),))), c * k
    return expr.map(fn)


def _keep_a_up_to(expr: Expression, kmax: int) -> Expression:
    return expr.filter(lambda st, c: gen_power(st, "a") <= kmax)


def _P(expr: Expression) -> Expression:
    return u_slash_derivative(expr) * (-I) + _a_derivative(expr)


def prefactor(ell: int) -> SFun:
    return SFun.monomial(two=affine(1, 0, -2 * ell - 2), pi=affine(0, Fraction(-1, 2), -1),
                         phase=1, sin=1, coeff=-I * Fraction(1, factorial(ell)))


@lru_cache(maxsize=None)
def _master_symbolic(ell: int, norm: str) -> Expression:
    with clifford.normalization(norm):
        e = _seed(ell, None)
        e = _keep_a_up_to(_P(e), ell)
        for j in range(ell):
            e = apply_dirac(e)
            e = _keep_a_up_to(_P(e), ell - 1 - j)
        e = e.filter(lambda st, c: gen_power(st, "a") == 0)
        return e * prefactor(ell)


def master_H(n: int | None, ell: int) -> Expression:
    """H_{-n-s+ell}(x, u); ``n=None`` keeps the dimension symbolic.

    Fields are written with A and its derivatives; use :func:`kernel_in_F_form`
    for the field-strength presentation.
    """
    if not 0 <= ell <= MAX_ELL:
        raise ValueError(f"ell must be in 0..{MAX_ELL}")
    if n is not None and n < 2:
        raise ValueError("dimension must be at least 2")
    e = _master_symbolic(ell, clifford.normalization_name())
    return e if n is None else specialize(e, n)


def kernel_in_F_form(expr: Expression) -> Expression:
    return canonicalize_to_F(expr)


# ---------------------------------------------------------------------------
# s -> -1
# ---------------------------------------------------------------------------

class PoleError(ArithmeticError):
    """A pole at s = -1 where a plain limit was requested, or a pole of order >= 2."""


@dataclass
class SExpansion:
    """H split by powers of (s+1): residue part, regular part, log part."""
    residue: Expression
    finite: Expression
    double_pole: Expression


def _expand_at_minus_one(H: Expression) -> SExpansion:
    n = H.dim
    res, fin, dbl = [], [], []
    for st, c in H.items():
        ls = laurent_at_minus_one(c, 0, n)
        q = st.radial
        qs, q0 = Fraction(q[0]), q[2] - q[0]
        base = st._replace(radial=affine(0, 0, q0))
        c0, cm1, cm2 = ls.coeff(0), ls.coeff(-1), ls.coeff(-2) if ls.pole_order >= 2 else SFun()
        if ls.pole_order > 2:
            dbl.append((base, SFun.const(1)))
        if not c0.is_zero():
            fin.append((base, c0))
        if not cm1.is_zero():
            res.append((base, cm1))
            if qs:
                # |u|^(q0 + qs eps) = |u|^q0 (1 + qs eps ln|u| + ...)
                fin.append((base._replace(log=base.log + 1), cm1 * qs))
        if not cm2.is_zero():
            dbl.append((base, cm2))
            res.append((base._replace(log=base.log + 1), cm2 * qs))
            fin.append((base._replace(log=base.log + 2), cm2 * (qs * qs / 2)))
    return SExpansion(Expression.build(res, n), Expression.build(fin, n), Expression.build(dbl, n))


def residue_at_minus_one(n: int, ell: int) -> Expression:
    return _expand_at_minus_one(master_H(n, ell)).residue


def G_term(n: int, ell: int, N: int | None = None) -> Expression:
    """G_{-n+1+ell}: limit s -> -1 for ell < N, finite part at s = -1 for ell = N."""
    N = n - 1 if N is None else N
    if not 0 <= ell <= N:
        raise ValueError(f"ell must be in 0..{N}")
    ex = _expand_at_minus_one(master_H(n, ell))
    if not ex.double_pole.is_zero():
        raise PoleError(f"H_(-{n}-s+{ell}) has a pole of order >= 2 at s = -1")
    if not ex.residue.is_zero() and ell < N:
        raise PoleError(f"H_(-{n}-s+{ell}) has a pole at s = -1 but a plain limit was requested")
    return ex.finite


@dataclass
class PoleReport:
    n: int
    ell: int
    has_pole: bool
    residue: Expression = field(repr=False)


def pole_report(n: int, ell: int) -> PoleReport:
    r = residue_at_minus_one(n, ell)
    return PoleReport(n, ell, not r.is_zero(), r)


def degrees(expr: Expression, s=-1) -> set:
    out = set()
    for st, _ in expr.items():
        d = aff_subs_n(term_degree(st), expr.dim) if expr.dim is not None else term_degree(st)
        out.add(d[0] * s + d[2] if not d[1] else d)
    return out


# ---------------------------------------------------------------------------
# comparison with the tabulated rows
# ---------------------------------------------------------------------------

@dataclass
class RowResult:
    ell: int
    passed: bool
    residual: Expression = field(repr=False)


@dataclass
class TableDiffReport:
    n: int | None
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def lines(self) -> list[str]:
        from .render import to_text
        tag = "n" if self.n is None else str(self.n)
        out = []
        for r in self.rows:
            out.append(f"table row ell={r.ell} (n={tag}): {'pass' if r.passed else 'FAIL'}")
            if not r.passed:
                out.append("  residual: " + to_text(r.residual).replace("\n", "\n  "))
        return out


def table_one_diff(n: int | None, golden_dir=None, ells=range(MAX_ELL + 1)) -> TableDiffReport:
    """Compare master_H rows with the stored reference rows (exact, canonical form)."""
    from .golden_table import load_golden_row
    from .expr import canonical_equal
    rows = []
    for ell in ells:
        ref = load_golden_row(ell, golden_dir)
        got = expand_to_dA(master_H(n, ell))
        ref = expand_to_dA(ref if n is None else specialize(ref, n))
        diff = got - ref
        ok = diff.is_zero() or (n is not None and canonical_equal(got, ref))
        rows.append(RowResult(ell, ok, diff))
    return TableDiffReport(n, rows)
