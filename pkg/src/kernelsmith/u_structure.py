"""Dependence on the point-splitting vector u.

The u content of a term is |u|^radial, (ln|u|)^log, the marker slots '@u'
(contractions with u) and free components u_mu.  Its homogeneity degree is
radial + (number of u factors); logarithms do not change the degree.

Continuous remainders R(x, u) are opaque tensors of kind 'opaque' with
``order == 1`` while they still depend on u and ``order == 0`` once u is set
to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from . import clifford
from .expr import Expression, Struct, Tensor, U, struct_labels
from .rings import SFun, Poly, Affine, affine, aff_add, aff_poly, aff_subs_n, aff_at


def u_count(st: Struct) -> int:
    k = st.gamma.count(U)
    for t in st.tensors:
        if t.kind == "u":
            k += 1
        else:
            k += t.slots.count(U) + t.derivs.count(U)
            if t.kind == "chain":
                k += t.order + 1
    return k


def term_degree(st: Struct) -> Affine:
    """u-homogeneity degree as an affine function of (s, n)."""
    return aff_add(st.radial, affine(0, 0, u_count(st)))


def _is_continuous_remainder(st: Struct) -> bool:
    return any(t.kind == "opaque" and t.order == 1 for t in st.tensors)


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------

def _replace_at(seq: tuple, idx: int, new) -> tuple:
    return seq[:idx] + (new,) + seq[idx + 1:]


def _d_struct(st: Struct, c: SFun, mu: str):
    """d/du_mu of one term, as raw (struct, coeff) pairs."""
    if any(t.kind == "chain" for t in st.tensors):
        raise ValueError("expand chains before differentiating in u")
    if _is_continuous_remainder(st):
        raise ValueError("continuous remainders are not differentiated")
    umu = Tensor("u", (mu,))
    shifted = aff_add(st.radial, affine(0, 0, -2))
    if any(st.radial):
        yield (st._replace(radial=shifted, tensors=st.tensors + (umu,)), c.mul_poly(aff_poly(st.radial)))
    if st.log:
        yield (st._replace(radial=shifted, log=st.log - 1, tensors=st.tensors + (umu,)), c * st.log)
    for i, x in enumerate(st.gamma):
        if x == U:
            yield st._replace(gamma=_replace_at(st.gamma, i, mu)), c
    for j, t in enumerate(st.tensors):
        if t.kind == "u":
            nt = Tensor("delta", (t.slots[0], mu))
            yield st._replace(tensors=_replace_at(st.tensors, j, nt)), c
            continue
        for i, x in enumerate(t.slots):
            if x == U:
                nt = t._replace(slots=_replace_at(t.slots, i, mu))
                yield st._replace(tensors=_replace_at(st.tensors, j, nt)), c
        for i, x in enumerate(t.derivs):
            if x == U:
                nt = t._replace(derivs=_replace_at(t.derivs, i, mu))
                yield st._replace(tensors=_replace_at(st.tensors, j, nt)), c


def u_derivative(expr: Expression, mu: str) -> Expression:
    """Partial derivative with respect to the component u_mu."""
    from .field_calculus import expand_chains
    expr = expand_chains(expr)
    rem = None if expr.remainder is None else expr.remainder - 1
    return expr.map(lambda st, c: _d_struct(st, c, mu), remainder=rem)


def _fresh_label(st: Struct, base: str = "~b") -> str:
    used = struct_labels(st)
    for k in count():
        if f"{base}{k}" not in used:
            return f"{base}{k}"


def u_slash_derivative(expr: Expression) -> Expression:
    """gamma_b d/du_b with the gamma matrix multiplied from the left."""
    from .field_calculus import expand_chains
    expr = expand_chains(expr)

    def fn(st, c):
        b = _fresh_label(st)
        for st2, c2 in _d_struct(st, c, b):
            for h, deltas, g in clifford.lmul(b, st2.gamma):
                yield (st2._replace(gamma=g, tensors=st2.tensors + tuple(Tensor("delta", d) for d in deltas)),
                       c2 * h)
    rem = None if expr.remainder is None else expr.remainder - 1
    return expr.map(fn, remainder=rem)


# ---------------------------------------------------------------------------
# homogeneous decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousComponent:
    degree: object  # Fraction, Affine in n for symbolic dimension, or None for a continuous remainder
    expression: Expression


def degree_at(st: Struct, s=-1, n=None):
    d = term_degree(st)
    if n is not None:
        d = aff_subs_n(d, n)
    if d[1]:
        return (Fraction(0), d[1], d[0] * Fraction(s) + d[2])
    return d[0] * Fraction(s) + d[2]


def decompose_homogeneous(expr: Expression, at_s=-1) -> list[HomogeneousComponent]:
    """Partition the terms by u-degree evaluated at s = ``at_s``; lossless."""
    groups: dict = {}
    for st, c in expr.items():
        key = None if _is_continuous_remainder(st) else degree_at(st, at_s, expr.dim)
        groups.setdefault(key, {})[st] = c

    def sk(k):
        return (1, 0) if k is None else (0, k) if isinstance(k, Fraction) else (0, k[2])
    out = [HomogeneousComponent(k, Expression(v, expr.dim)) for k, v in sorted(groups.items(), key=lambda kv: sk(kv[0]))]
    return out


# ---------------------------------------------------------------------------
# angular average and Schwinger limit
# ---------------------------------------------------------------------------

def _pairings(items: list):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for p in _pairings(rest):
            yield [(a, items[i])] + p


def _explode_u(st: Struct) -> tuple[Struct, list]:
    """Give every u factor its own label; returns the struct without u's and the labels."""
    k = count()
    labels = []

    def fresh():
        lab = f"~v{next(k)}"
        labels.append(lab)
        return lab

    g = tuple(fresh() if x == U else x for x in st.gamma)
    ts = []
    for t in st.tensors:
        if t.kind == "u":
            labels.append(t.slots[0])
            continue
        ts.append(t._replace(slots=tuple(fresh() if x == U else x for x in t.slots),
                             derivs=tuple(fresh() if x == U else x for x in t.derivs)))
    return st._replace(gamma=g, tensors=tuple(ts)), labels


def _sphere_norm(k: int, dim: int) -> int:
    """n (n+2) ... (n+k-2): the sphere mean of (u.e)^k is (k-1)!! / this."""
    out = 1
    for j in range(0, k, 2):
        out *= dim + j
    return out


def _average_term(st: Struct, c: SFun, dim: int):
    if st.log:
        raise ValueError("angular average of a logarithmic term")
    if any(t.kind == "chain" for t in st.tensors):
        raise ValueError("expand chains before averaging")
    k = u_count(st)
    deg = aff_subs_n(aff_add(st.radial, affine(0, 0, k)), dim)
    if deg != affine():
        raise ValueError(f"angular average needs degree 0, got {deg}")
    if k % 2:
        return
    base, labels = _explode_u(st)
    base = base._replace(radial=affine())
    coef = c * Fraction(1, _sphere_norm(k, dim))
    for pairing in _pairings(labels):
        extra = tuple(Tensor("delta", p) for p in pairing)
        yield base._replace(tensors=base.tensors + extra), coef


def angular_average(expr: Expression, n: int | None = None) -> Expression:
    """Mean over the unit sphere S^(n-1) of degree-0, log-free terms."""
    dim = expr.dim if n is None else n
    if dim is None:
        raise ValueError("angular average needs a fixed dimension")
    expr = expr.with_dim(dim)
    return expr.map(lambda st, c: _average_term(st, c, dim), remainder=None)


def schwinger_limit(expr: Expression, n: int | None = None) -> Expression:
    """The point-splitting limit functional.

    Degree != 0 terms and every term carrying ln|u| vanish, degree-0 terms are
    replaced by their angular mean, continuous remainders are evaluated at
    u = 0.  A truncation remainder must start at positive degree.
    """
    dim = expr.dim if n is None else n
    if dim is None:
        raise ValueError("the Schwinger limit needs a fixed dimension")
    expr = expr.with_dim(dim)
    if expr.remainder is not None and expr.remainder <= 0:
        raise ValueError(f"remainder O(|u|^{expr.remainder}) does not vanish in the limit")

    def fn(st, c):
        if _is_continuous_remainder(st):
            d = term_degree(st)
            if st.log or d[0] or aff_at(d, 0, dim) < 0:
                raise ValueError("a continuous remainder may only carry factors of positive degree")
            if aff_at(d, 0, dim) > 0:
                return  # continuous times vanishing
            yield st._replace(tensors=tuple(t._replace(order=0) if t.kind == "opaque" else t
                                            for t in st.tensors)), c
            return
        if st.log:
            return
        d = term_degree(st)
        if d[0]:
            raise ValueError("s-dependence must be resolved before the Schwinger limit")
        if aff_at(d, 0, dim) != 0:
            return
        yield from _average_term(st, c, dim)
    return expr.map(fn, remainder=None)
