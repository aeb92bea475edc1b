"""Zero testing at fixed dimension by explicit index components.

Abstract canonicalization cannot see dimension-dependent identities (for
example, antisymmetrizing over n + 1 indices gives zero).  At fixed n we
expand every term over concrete index values 1..n: the gamma content becomes
a signed element of the antisymmetrized basis with sorted concrete indices,
fields become independent component symbols, and contractions with u become
explicit u-component monomials.  Two expressions are equal iff all component
coefficients agree.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict

from .expr import Expression, Struct, Tensor, U, XI, struct_labels, is_marker, _sort_signed
from .rings import SFun


def _expand_markers(st: Struct) -> tuple[Struct, list]:
    """Replace every u/xi marker slot by a fresh label; returns the vector factors."""
    k = 0
    vecs = []

    def fresh(marker):
        nonlocal k
        lab = f"~m{k}"
        k += 1
        vecs.append(("u" if marker == U else "xi", lab))
        return lab

    g = tuple(fresh(x) if is_marker(x) else x for x in st.gamma)
    ts = []
    for t in st.tensors:
        if t.kind in ("u", "xi") and not is_marker(t.slots[0]):
            vecs.append((t.kind, t.slots[0]))
            continue
        ts.append(t._replace(slots=tuple(fresh(x) if is_marker(x) else x for x in t.slots),
                             derivs=tuple(fresh(x) if is_marker(x) else x for x in t.derivs)))
    return st._replace(gamma=g, tensors=tuple(ts)), vecs


def _levi(vals) -> int:
    if len(set(vals)) < len(vals):
        return 0
    sign, _ = _sort_signed(vals)
    return sign


def _component_terms(st: Struct, c: SFun, n: int):
    st, vecs = _expand_markers(st)
    counts = struct_labels(st)
    for _, lab in vecs:
        counts[lab] += 1
    labels = sorted(counts)
    rest = (st.radial, st.log, st.gens)
    free = sorted(lab for lab, m in counts.items() if m == 1)
    for vals in itertools.product(range(1, n + 1), repeat=len(labels)):
        asg = dict(zip(labels, vals))
        sign = 1
        if st.gamma:
            gv = [asg[x] for x in st.gamma]
            s = _levi(gv)
            if s == 0:
                continue
            sign *= s
            gkey = tuple(sorted(gv))
        else:
            gkey = ()
        factors = []
        zero = False
        for t in st.tensors:
            sv = tuple(asg[x] for x in t.slots)
            dv = tuple(sorted(asg[x] for x in t.derivs))
            if t.kind == "delta":
                if sv[0] != sv[1]:
                    zero = True
                    break
            elif t.kind == "eps":
                s = _levi(sv)
                if s == 0:
                    zero = True
                    break
                sign *= s
            else:
                factors.append((t.kind, sv, dv, t.order, t.name))
        if zero:
            continue
        for kind, lab in vecs:
            factors.append((kind, (asg[lab],), (), 0, ""))
        key = (tuple(asg[f] for f in free), tuple(free), gkey, tuple(sorted(factors)), rest)
        yield key, c if sign == 1 else -c


def component_table(expr: Expression, n: int | None = None) -> dict:
    """Map from concrete component keys to coefficients (zero entries removed)."""
    from .field_calculus import expand_to_dA
    n = expr.dim if n is None else n
    if n is None:
        raise ValueError("component evaluation needs a fixed dimension")
    e = expand_to_dA(expr)
    acc: dict = defaultdict(SFun)
    for st, c in e.items():
        for key, v in _component_terms(st, c, n):
            acc[key] = acc[key] + v
    return {k: v for k, v in acc.items() if not v.is_zero()}


def is_zero_by_components(expr: Expression, n: int | None = None) -> bool:
    return not component_table(expr, n)
