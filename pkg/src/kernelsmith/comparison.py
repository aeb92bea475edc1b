"""Zeta-function versus point-splitting currents.

The two regularized currents agree iff

    Delta_mu = SL tr( gamma_mu  sum_{l=0}^{n-1} G_{-n+1+l}(x, u)  W(x, u) ) = 0,

with W the Wilson factor.  The smooth remainder of the Green function only
contributes its value at u = 0, which is the zeta-function current itself, so
J_Schwinger - J_zeta = -Delta.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import clifford
from .expr import Expression, Struct, Tensor, gamma_word, canonical_equal
from .field_calculus import (wilson_line, wilson_sign_value, expand_chains, canonicalize_to_F,
                             gauge_variant_part)
from .gamma_algebra import RepClass, generic_even, pauli3, custom, trace_symbolic
from .kernel import G_term
from .rings import aff_subs_n
from .u_structure import schwinger_limit, term_degree

DEFAULT_WILSON_SIGN = "eq9"
REMAINDER_NAME = "R_G"

REPS = {
    (2, "pauli"): ("pauli2", lambda: generic_even(2, 2)),
    (3, "pauli"): ("pauli3", pauli3),
    (3, "reducible"): ("reducible3", lambda: custom(3, 4, None)),
    (4, "dirac4"): ("dirac4", lambda: generic_even(4, 4)),
}
DEFAULT_REP = {2: "pauli", 3: "pauli", 4: "dirac4"}


class RepDimensionMismatch(ValueError):
    pass


def rep_class_for(n: int, rep: str | None) -> tuple[str, RepClass]:
    rep = rep or DEFAULT_REP.get(n)
    if (n, rep) not in REPS:
        valid = sorted(r for (m, r) in REPS if m == n)
        raise RepDimensionMismatch(f"representation {rep!r} is not available for n={n}; choose from {valid}")
    name, make = REPS[(n, rep)]
    return name, make()


def green_sum(n: int, wilson_order: int | None = None, sign=DEFAULT_WILSON_SIGN,
              include_remainder: bool = False) -> Expression:
    """sum_l G_{-n+1+l} times the Wilson factor, through u-degree 0.

    Terms of u-degree >= 1 are dropped and recorded as the remainder tag.  With
    ``include_remainder`` the continuous remainder R_G(x, u) is added (times
    the Wilson factor) as an opaque term.
    """
    order = n - 1 if wilson_order is None else wilson_order
    if order < n - 1:
        raise ValueError(f"Wilson order must be at least n - 1 = {n - 1}")
    wilson_sign_value(sign)
    total = Expression.zero(n)
    for ell in range(n):
        total = total + G_term(n, ell)
    W = wilson_line(order, sign, n)
    prod = expand_chains(total * W)
    keep = prod.filter(lambda st, c: aff_subs_n(term_degree(st), n)[2] <= 0)
    out = canonicalize_to_F(keep).with_remainder(1)
    if include_remainder:
        R = Expression.of(Struct(tensors=(Tensor("opaque", (), (), 1, REMAINDER_NAME),)), 1, n)
        out = out + expand_chains(R * W).with_remainder(1)
    return out


def zeta_current_formal(n: int) -> Expression:
    """J^zeta_mu = -tr(gamma_mu R_G(x, 0)), kept opaque."""
    t = Tensor("opaque", ("mu",), (), 0, f"tr(γ·{REMAINDER_NAME}(x,0))")
    return Expression.of(Struct(tensors=(t,)), -1, n)


@dataclass
class ComparisonVerdict:
    dimension: int
    representation: str
    difference: Expression = field(repr=False)
    coincide: bool
    untraced: Expression = field(repr=False, default=None)
    green_sum: Expression = field(repr=False, default=None)
    normalization: str = "standard"
    wilson_sign: str = DEFAULT_WILSON_SIGN
    wilson_order: int = 0

    def schwinger_minus_zeta(self) -> Expression:
        return -self.difference

    def to_json(self) -> dict:
        from .render import to_latex
        from .serialize import to_json
        return {"dimension": self.dimension, "representation": self.representation,
                "normalization": self.normalization, "wilson_sign": self.wilson_sign,
                "wilson_order": self.wilson_order, "coincide": self.coincide,
                "difference": to_json(self.difference), "latex_rendering": to_latex(self.difference)}


def current_difference(n: int, rep: str | None = None, wilson_order: int | None = None,
                       sign=DEFAULT_WILSON_SIGN) -> ComparisonVerdict:
    """Delta_mu = SL tr(gamma_mu G-sum W): zero iff both currents coincide."""
    rep_name, rc = rep_class_for(n, rep)
    order = n - 1 if wilson_order is None else wilson_order
    G = green_sum(n, order, sign)
    untraced = canonicalize_to_F(schwinger_limit(gamma_word(["mu"], dim=n) * G, n))
    delta = canonicalize_to_F(trace_symbolic(untraced, rc))
    coincide = delta.is_zero() or canonical_equal(delta, Expression.zero(n))
    return ComparisonVerdict(n, rep_name, delta, coincide, untraced, G,
                             clifford.normalization_name(), sign if isinstance(sign, str) else str(sign), order)
