"""Gauge-field insertions and the Dirac operator gamma_mu (i d_mu + A_mu).

Field factors are commuting (abelian as written).  Kinds:

``A``      A_nu with a symmetric multi-index of partial derivatives.
``F``      F_{mu nu} = d_mu A_nu - d_nu A_mu, with derivatives.
``S``      fully symmetrized gradient d_(a1 ... ak A_nu); produced by
           :func:`canonicalize_to_F` as the gauge-dependent remainder.
``chain``  (u.D)^k (u.qA) with D = i d + qA and charge q = +/-1, kept opaque
           until :func:`expand_chains`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import clifford
from .expr import (Expression, Struct, Tensor, U, struct_labels, FIELD_KINDS)
from .rings import SFun, I

CHARGE_NAME = {1: "+", -1: "-"}


def _fresh(st: Struct, base: str = "~d") -> str:
    used = struct_labels(st)
    k = 0
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def _differentiate_struct(st: Struct, mu: str):
    """Product rule for d/dx_mu over the field factors of one structure."""
    for i, t in enumerate(st.tensors):
        if t.kind in ("A", "F", "S"):
            nt = t._replace(derivs=t.derivs + (mu,))
            yield st._replace(tensors=st.tensors[:i] + (nt,) + st.tensors[i + 1:])
        elif t.kind == "chain":
            raise ValueError("expand chains before differentiating")
        elif t.kind == "opaque":
            raise ValueError("opaque remainders cannot be differentiated")


def x_derivative(expr: Expression, mu: str) -> Expression:
    """Partial derivative d/dx_mu; u, xi, lambda and s are constants."""
    expr = expand_chains(expr)

    def fn(st, c):
        for st2 in _differentiate_struct(st, mu):
            yield st2, c
    return expr.map(fn)


def _lmul_gamma(b: str, st: Struct, c: SFun):
    for h, deltas, g in clifford.lmul(b, st.gamma):
        yield st._replace(gamma=g, tensors=st.tensors + tuple(Tensor("delta", d) for d in deltas)), c * h


def apply_dirac(expr: Expression) -> Expression:
    """gamma_mu (i d_mu + A_mu) applied to ``expr`` (gamma multiplied from the left)."""
    expr = expand_chains(expr)

    def fn(st, c):
        mu = _fresh(st)
        for st2 in _differentiate_struct(st, mu):
            yield from _lmul_gamma(mu, st2, c * I)
        st3 = st._replace(tensors=st.tensors + (Tensor("A", (mu,)),))
        yield from _lmul_gamma(mu, st3, c)
    return expr.map(fn)


# ---------------------------------------------------------------------------
# (u.D)-chains
# ---------------------------------------------------------------------------

def chain(order: int, charge: int = 1, dim=None) -> Expression:
    """The opaque factor (u.D)^order (u.qA)."""
    if charge not in CHARGE_NAME:
        raise ValueError("charge must be +1 or -1")
    return Expression.of(Struct(tensors=(Tensor("chain", (), (), order, CHARGE_NAME[charge]),)), 1, dim)


@lru_cache(maxsize=None)
def _chain_expansion(order: int, charge_name: str, dim):
    q = 1 if charge_name == "+" else -1
    qA = Expression.of(Struct(tensors=(Tensor("A", (U,)),)), q, dim)
    cur = qA
    for _ in range(order):
        cur = x_derivative(cur, U) * I + cur * qA
    return cur


def chain_expansion(order: int, charge: int = 1, dim=None) -> Expression:
    """(u.D)^order (u.qA) written with explicit A and its u-directional derivatives."""
    return _chain_expansion(order, CHARGE_NAME[charge], dim)


def _replace_factors(expr: Expression, kinds, expansion) -> Expression:
    """Substitute every tensor of the given kinds by ``expansion(tensor, dim)``."""
    out = Expression.zero(expr.dim).with_remainder(expr.remainder)
    plain_terms = {}
    for st, c in expr.items():
        hits = [t for t in st.tensors if t.kind in kinds]
        if not hits:
            plain_terms[st] = c
            continue
        rest = st._replace(tensors=tuple(t for t in st.tensors if t.kind not in kinds))
        prod = Expression.of(rest, c, expr.dim)
        for t in hits:
            prod = prod * expansion(t, expr.dim)
        out = out + prod
    return out + Expression(plain_terms, expr.dim, expr.remainder)


def expand_chains(expr: Expression) -> Expression:
    if not any(t.kind == "chain" for st in expr.terms for t in st.tensors):
        return expr
    return _replace_factors(expr, {"chain"},
                            lambda t, dim: chain_expansion(t.order, 1 if t.name == "+" else -1, dim))


# ---------------------------------------------------------------------------
# F <-> dA
# ---------------------------------------------------------------------------

def _F_as_dA(t: Tensor, dim) -> Expression:
    mu, nu = t.slots
    return (Expression.of(Struct(tensors=(Tensor("A", (nu,), t.derivs + (mu,)),)), 1, dim)
            - Expression.of(Struct(tensors=(Tensor("A", (mu,), t.derivs + (nu,)),)), 1, dim))


def _S_as_dA(t: Tensor, dim) -> Expression:
    if t.derivs:
        raise ValueError("derivatives of symmetrized gradients are not supported")
    k1 = len(t.slots)
    out = Expression.zero(dim)
    for i in range(k1):
        rest = t.slots[:i] + t.slots[i + 1:]
        out = out + Expression.of(Struct(tensors=(Tensor("A", (t.slots[i],), rest),)), Fraction(1, k1), dim)
    return out


def expand_to_dA(expr: Expression) -> Expression:
    """Rewrite F, symmetrized gradients and chains in terms of A and its derivatives."""
    expr = expand_chains(expr)
    expr = _replace_factors(expr, {"S"}, _S_as_dA)
    return _replace_factors(expr, {"F"}, _F_as_dA)


def _dA_as_F(t: Tensor, dim) -> Expression:
    # d_{a1..ak} A_nu = S_{a1..ak nu} + 1/(k+1) sum_i d_{a..^i..} F_{ai nu}
    k = len(t.derivs)
    nu = t.slots[0]
    out = Expression.of(Struct(tensors=(Tensor("S", tuple(t.derivs) + (nu,)),)), 1, dim)
    for i in range(k):
        rest = t.derivs[:i] + t.derivs[i + 1:]
        out = out + Expression.of(Struct(tensors=(Tensor("F", (t.derivs[i], nu), rest),)),
                                  Fraction(1, k + 1), dim)
    return out


def canonicalize_to_F(expr: Expression) -> Expression:
    """Split every differentiated A into its field-strength part and its symmetric part.

    Antisymmetric combinations d_mu A_nu - d_nu A_mu become F_{mu nu}; what is
    left is the fully symmetrized gradient, which cancels in gauge-invariant
    totals.  Undifferentiated A and opaque chains are left alone.  Idempotent.
    """
    def is_dA(t):
        return t.kind == "A" and t.derivs
    if not any(is_dA(t) for st in expr.terms for t in st.tensors):
        return expr
    out = Expression.zero(expr.dim).with_remainder(expr.remainder)
    plain = {}
    for st, c in expr.items():
        hits = [t for t in st.tensors if is_dA(t)]
        if not hits:
            plain[st] = c
            continue
        rest = st._replace(tensors=tuple(t for t in st.tensors if not is_dA(t)))
        prod = Expression.of(rest, c, expr.dim)
        for t in hits:
            prod = prod * _dA_as_F(t, expr.dim)
        out = out + prod
    return out + Expression(plain, expr.dim, expr.remainder)


def gauge_variant_part(expr: Expression) -> Expression:
    """Terms of the F-canonical form that still carry A or symmetrized gradients."""
    e = canonicalize_to_F(expand_chains(expr))
    return e.filter(lambda st, c: any(t.kind in ("A", "S") for t in st.tensors))


# ---------------------------------------------------------------------------
# Wilson line
# ---------------------------------------------------------------------------

WILSON_SIGNS = {"eq24": 1, "eq9": -1}


def wilson_sign_value(sign) -> int:
    if isinstance(sign, str):
        if sign not in WILSON_SIGNS:
            raise ValueError(f"unknown Wilson sign {sign!r}")
        return WILSON_SIGNS[sign]
    if sign not in (1, -1):
        raise ValueError("Wilson sign must be +1 or -1")
    return sign


def wilson_line(order: int, sign=1, dim=None) -> Expression:
    """exp(-/+ i int_x^y A.dz) to u-degree ``order``, in chain form.

    ``sign = +1`` (or 'eq24') gives exp(-i int A.dz) = 1 + i(u.A) - (u.D)(u.A)/2! - ...;
    ``sign = -1`` (or 'eq9') gives the inverse factor exp(+i int A.dz).
    With int_x^y A.dz = -int_0^1 A_mu(x - t u) u_mu dt.
    """
    if order < 0:
        raise ValueError("Wilson-line order must be non-negative")
    q = wilson_sign_value(sign)
    out = Expression.one(dim)
    for k in range(order):
        out = out + chain(k, q, dim) * (I ** (k + 1) * Fraction(1, factorial(k + 1)))
    return out.with_remainder(order + 1)


def line_integral_exponent(order: int, sign=1, dim=None) -> Expression:
    """The exponent -/+ i int_x^y A.dz as a Taylor series in u, to u-degree ``order``."""
    q = wilson_sign_value(sign)
    out = Expression.zero(dim)
    for j in range(order):
        t = Tensor("A", (U,), (U,) * j)
        out = out + Expression.of(Struct(tensors=(t,)), I * q * Fraction((-1) ** j, factorial(j + 1)), dim)
    return out


def field_degree(st: Struct) -> int:
    return sum(1 for t in st.tensors if t.kind in FIELD_KINDS)
