"""Terms and expressions with abstract Lorentz indices.

A term is ``coeff * gamma_[...] * tensors * |u|^radial * (ln|u|)^log * gens``.

Index labels are plain strings.  A label appearing twice is summed over
(a dummy); once, it is free.  Contractions with the point-splitting vector
``u`` or the momentum ``xi`` are stored in place as the marker slots ``@u`` and
``@xi``: ``u_rho gamma_rho`` is the gamma content ``('@u',)``.

Canonicalization resolves deltas and vector contractions, drops terms that
vanish by antisymmetry, and renames dummies to ``~00, ~01, ...`` choosing the
lexicographically smallest relabeling.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from . import clifford
from .rings import SFun, Poly, GaussQ, Affine, affine, aff_add, binom

U = "@u"
XI = "@xi"
MARKERS = (U, XI)
VEC_KIND = {"u": U, "xi": XI}

SYM_SLOTS = frozenset({"delta", "S"})
ANTI_SLOTS = frozenset({"eps", "F"})
FIELD_KINDS = frozenset({"A", "F", "S", "chain"})


class MalformedIndexError(ValueError):
    """An index label occurs three or more times in one term."""


class Tensor(NamedTuple):
    kind: str
    slots: tuple = ()
    derivs: tuple = ()
    order: int = 0
    name: str = ""


class Struct(NamedTuple):
    gamma: tuple = ()
    tensors: tuple = ()
    radial: Affine = affine()
    log: int = 0
    gens: tuple = ()  # sorted (name, power) pairs of commuting symbols


EMPTY = Struct()


def is_marker(label: str) -> bool:
    return label in MARKERS


def struct_labels(st: Struct) -> Counter:
    c = Counter(st.gamma)
    for t in st.tensors:
        c.update(t.slots)
        c.update(t.derivs)
    return c


def merge_gens(a: tuple, b: tuple) -> tuple:
    d = dict(a)
    for k, v in b:
        d[k] = d.get(k, 0) + v
    return tuple(sorted((k, v) for k, v in d.items() if v))


def gen_power(st: Struct, name: str) -> int:
    for k, v in st.gens:
        if k == name:
            return v
    return 0


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def _sort_signed(labels) -> tuple[int, tuple]:
    labels = list(labels)
    sign = 1
    # insertion sort keeps track of the permutation parity
    for i in range(1, len(labels)):
        j = i
        while j > 0 and labels[j - 1] > labels[j]:
            labels[j - 1], labels[j] = labels[j], labels[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(labels)


def _tensor_key(t: Tensor, rn) -> tuple[int, Tensor] | None:
    slots = tuple(rn(x) for x in t.slots)
    derivs = tuple(sorted(rn(x) for x in t.derivs))
    sign = 1
    if t.kind in SYM_SLOTS:
        slots = tuple(sorted(slots))
    elif t.kind in ANTI_SLOTS:
        if len(set(slots)) < len(slots):
            return None
        sign, slots = _sort_signed(slots)
    return sign, Tensor(t.kind, slots, derivs, t.order, t.name)


def _occurrence_signature(label, gamma, tensors):
    sig = []
    if label in gamma:
        sig.append(("g", len(gamma)))
    for t in tensors:
        for role, seq in (("s", t.slots), ("d", t.derivs)):
            for x in seq:
                if x == label:
                    sig.append((t.kind, t.name, t.order, role, len(t.slots), len(t.derivs)))
    return tuple(sorted(sig, key=repr))


def _relabel_best(gamma: tuple, tensors: tuple, dummies: list):
    """Smallest relabeled (gamma, tensors) and its sign, or None if the term vanishes."""
    sigs = {d: _occurrence_signature(d, gamma, tensors) for d in dummies}
    order = sorted(dummies, key=lambda d: repr(sigs[d]))
    groups: list[list[str]] = []
    for d in order:
        if groups and sigs[groups[-1][0]] == sigs[d]:
            groups[-1].append(d)
        else:
            groups.append([d])
    names = [f"~{i:02d}" for i in range(len(dummies))]
    blocks = []
    pos = 0
    for g in groups:
        blocks.append((g, names[pos:pos + len(g)]))
        pos += len(g)
    best = None
    best_sign = 0
    annihilated = False
    for choice in itertools.product(*[itertools.permutations(nm) for _, nm in blocks]):
        mapping = {}
        for (g, _), perm in zip(blocks, choice):
            mapping.update(zip(g, perm))
        rn = lambda x: mapping.get(x, x)  # noqa: E731
        sign, g_sorted = _sort_signed(rn(x) for x in gamma)
        ts = []
        for t in tensors:
            r = _tensor_key(t, rn)
            if r is None:
                return None
            sign *= r[0]
            ts.append(r[1])
        key = (g_sorted, tuple(sorted(ts)))
        if best is None or key < best:
            best, best_sign = key, sign
            annihilated = False
        elif key == best and sign != best_sign:
            annihilated = True
    if annihilated:
        return None
    return best_sign, best[0], best[1]


def _rename_other(gamma: list, tensors: list, skip: int, old: str, new: str) -> None:
    for i, x in enumerate(gamma):
        if x == old:
            gamma[i] = new
            return
    for j, t in enumerate(tensors):
        if j == skip:
            continue
        if old in t.slots:
            sl = list(t.slots)
            sl[sl.index(old)] = new
            tensors[j] = t._replace(slots=tuple(sl))
            return
        if old in t.derivs:
            dv = list(t.derivs)
            dv[dv.index(old)] = new
            tensors[j] = t._replace(derivs=tuple(dv))
            return
    raise MalformedIndexError(f"label {old!r} has no partner")


@lru_cache(maxsize=200_000)
def _canon(gamma: tuple, tensors: tuple, dim, h: Fraction):
    """Returns None (zero) or (sign, n_power, radial_shift, xi2, gamma, tensors)."""
    g = list(gamma)
    ts = list(tensors)
    n_power = 0
    radial = 0
    xi2 = 0
    changed = True
    while changed:
        changed = False
        counts = Counter(g)
        for t in ts:
            counts.update(t.slots)
            counts.update(t.derivs)
        for lab, c in counts.items():
            if c > 2 and not is_marker(lab):
                raise MalformedIndexError(f"index {lab!r} occurs {c} times")
        for i, t in enumerate(ts):
            if t.kind == "delta":
                a, b = t.slots
                if a == b:
                    if a == U:
                        radial += 2
                    elif a == XI:
                        xi2 += 1
                    else:
                        n_power += 1
                    del ts[i]
                    changed = True
                    break
                if is_marker(a) and is_marker(b):
                    continue
                if is_marker(a) or is_marker(b):
                    v, lab = (a, b) if is_marker(a) else (b, a)
                    del ts[i]
                    if counts[lab] == 2:
                        _rename_other(g, ts, -1, lab, v)
                    else:
                        ts.append(Tensor("u" if v == U else "xi", (lab,)))
                    changed = True
                    break
                if counts[a] == 2:
                    del ts[i]
                    _rename_other(g, ts, -1, a, b)
                    changed = True
                    break
                if counts[b] == 2:
                    del ts[i]
                    _rename_other(g, ts, -1, b, a)
                    changed = True
                    break
            elif t.kind in VEC_KIND:
                v = VEC_KIND[t.kind]
                lab = t.slots[0]
                if is_marker(lab):
                    if lab != v:
                        continue
                    if v == U:
                        radial += 2
                    else:
                        xi2 += 1
                    del ts[i]
                    changed = True
                    break
                if counts[lab] == 2:
                    del ts[i]
                    _rename_other(g, ts, -1, lab, v)
                    changed = True
                    break
    # vanishing by antisymmetry
    if len(set(g)) < len(g):
        return None
    if dim is not None and len(g) > dim:
        return None
    for t in ts:
        if t.kind in ANTI_SLOTS and len(set(t.slots)) < len(t.slots):
            return None
        if t.kind == "eps" and dim is not None and len(t.slots) != dim:
            raise ValueError(f"epsilon with {len(t.slots)} slots in dimension {dim}")
    counts = Counter(g)
    for t in ts:
        counts.update(t.slots)
        counts.update(t.derivs)
    dummies = sorted(lab for lab, c in counts.items() if c == 2 and not is_marker(lab))
    best = _relabel_best(tuple(g), tuple(ts), dummies)
    if best is None:
        return None
    sign, g2, ts2 = best
    return sign, n_power, radial, xi2, g2, ts2


def canonicalize(st: Struct, coeff: SFun, dim=None) -> list[tuple[Struct, SFun]]:
    res = _canon(st.gamma, st.tensors, dim, clifford.half())
    if res is None:
        return []
    sign, n_power, radial, xi2, g2, ts2 = res
    c = coeff if sign == 1 else -coeff
    if n_power:
        nval = Poly({(0, 1): 1}) if dim is None else Poly.const(dim)
        p = Poly.const(1)
        for _ in range(n_power):
            p = p * nval
        c = c.mul_poly(p)
    rad = st.radial if not radial else aff_add(st.radial, affine(0, 0, radial))
    base = Struct(g2, ts2, rad, st.log, st.gens)
    if not xi2:
        return [(base, c)]
    # xi^2 = W + lambda^2 with W = xi^2 - lambda^2
    out = []
    for j in range(xi2 + 1):
        gens = merge_gens(st.gens, (("W", j), ("lam", 2 * (xi2 - j))))
        out.append((base._replace(gens=gens), c * binom(xi2, j)))
    return out


# ---------------------------------------------------------------------------
# Expression
# ---------------------------------------------------------------------------

def _struct_sort_key(st: Struct):
    return (st.radial, st.log, len(st.gamma), st.gamma, st.tensors, st.gens)


class Expression:
    """Immutable finite sum of canonical terms.

    ``dim`` is None for symbolic dimension n.  ``remainder`` is None or the
    smallest u-degree of the terms that were dropped by truncation.
    """

    __slots__ = ("terms", "dim", "remainder")

    def __init__(self, terms: dict | None = None, dim=None, remainder=None):
        self.terms = terms or {}
        self.dim = dim
        self.remainder = None if remainder is None else Fraction(remainder)

    # construction ---------------------------------------------------------
    @classmethod
    def build(cls, raw: Iterable[tuple[Struct, SFun]], dim=None, remainder=None) -> "Expression":
        acc: dict = {}
        for st, c in raw:
            if c.is_zero():
                continue
            for st2, c2 in canonicalize(st, c, dim):
                acc[st2] = acc[st2] + c2 if st2 in acc else c2
        return cls({k: v for k, v in acc.items() if not v.is_zero()}, dim, remainder)

    @classmethod
    def zero(cls, dim=None) -> "Expression":
        return cls({}, dim)

    @classmethod
    def scalar(cls, c, dim=None) -> "Expression":
        c = c if isinstance(c, SFun) else SFun.const(c)
        return cls.build([(EMPTY, c)], dim)

    @classmethod
    def one(cls, dim=None) -> "Expression":
        return cls.scalar(1, dim)

    @classmethod
    def of(cls, st: Struct, c=1, dim=None) -> "Expression":
        c = c if isinstance(c, SFun) else SFun.const(c)
        return cls.build([(st, c)], dim)

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Struct, SFun]]:
        return sorted(self.terms.items(), key=lambda kv: _struct_sort_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Struct, SFun]]:
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def free_labels(self) -> set:
        out = set()
        for st in self.terms:
            out |= {k for k, v in struct_labels(st).items() if v == 1 and not is_marker(k)}
        return out

    # arithmetic ------------------------------------------------------------
    def _dim_with(self, other: "Expression"):
        if self.dim is None:
            return other.dim
        if other.dim is not None and other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return self.dim

    @staticmethod
    def _rem(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other) -> "Expression":
        if not isinstance(other, Expression):
            other = Expression.scalar(other, self.dim)
        dim = self._dim_with(other)
        if dim != self.dim or dim != other.dim:
            a, b = self.with_dim(dim), other.with_dim(dim)
        else:
            a, b = self, other
        acc = dict(a.terms)
        for st, c in b.terms.items():
            acc[st] = acc[st] + c if st in acc else c
        return Expression({k: v for k, v in acc.items() if not v.is_zero()}, dim,
                          self._rem(self.remainder, other.remainder))

    __radd__ = __add__

    def __neg__(self):
        return Expression({k: -v for k, v in self.terms.items()}, self.dim, self.remainder)

    def __sub__(self, other):
        if not isinstance(other, Expression):
            other = Expression.scalar(other, self.dim)
        return self + (-other)

    def __rsub__(self, other):
        return Expression.scalar(other, self.dim) - self

    def __mul__(self, other) -> "Expression":
        if isinstance(other, Expression):
            return multiply(self, other)
        c = other if isinstance(other, SFun) else SFun.const(other)
        if c.is_zero():
            return Expression.zero(self.dim)
        if c.is_rational_const():
            return Expression({k: v * c for k, v in self.terms.items()}, self.dim, self.remainder)
        return Expression.build(((k, v * c) for k, v in self.terms.items()), self.dim, self.remainder)

    def __rmul__(self, other):
        if isinstance(other, Expression):
            return multiply(other, self)
        return self.__mul__(other)

    def map(self, fn, dim="same", remainder="same") -> "Expression":
        """Apply ``fn(struct, coeff) -> iterable of raw (struct, coeff)`` and recanonicalize."""
        d = self.dim if dim == "same" else dim
        r = self.remainder if remainder == "same" else remainder
        return Expression.build((out for st, c in self.items() for out in fn(st, c)), d, r)

    def filter(self, pred) -> "Expression":
        return Expression({k: v for k, v in self.terms.items() if pred(k, v)}, self.dim, self.remainder)

    def with_dim(self, dim) -> "Expression":
        if dim == self.dim:
            return self
        if self.dim is not None:
            raise ValueError("cannot change an already fixed dimension")
        return specialize(self, dim)

    def with_remainder(self, remainder) -> "Expression":
        return Expression(dict(self.terms), self.dim, remainder)

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        from .render import to_text
        return f"Expression({to_text(self)})"


def _fresh_map(st: Struct, avoid: set, prefix: str) -> dict:
    labels = struct_labels(st)
    mapping = {}
    k = 0
    for lab, c in sorted(labels.items()):
        if c == 2 and not is_marker(lab):
            while f"{prefix}{k}" in avoid:
                k += 1
            mapping[lab] = f"{prefix}{k}"
            k += 1
    return mapping


def rename(st: Struct, mapping: dict) -> Struct:
    if not mapping:
        return st
    rn = lambda x: mapping.get(x, x)  # noqa: E731
    return st._replace(
        gamma=tuple(rn(x) for x in st.gamma),
        tensors=tuple(Tensor(t.kind, tuple(rn(x) for x in t.slots), tuple(rn(x) for x in t.derivs),
                             t.order, t.name) for t in st.tensors))


def mul_structs(a: Struct, b: Struct) -> list[tuple[Fraction, Struct]]:
    """Raw product of two structures; dummies of ``b`` are renamed apart."""
    b = rename(b, _fresh_map(b, set(struct_labels(a)), "~r"))
    out = []
    for c, deltas, g in clifford.mul(a.gamma, b.gamma):
        ts = a.tensors + b.tensors + tuple(Tensor("delta", d) for d in deltas)
        out.append((c, Struct(g, ts, aff_add(a.radial, b.radial), a.log + b.log,
                              merge_gens(a.gens, b.gens))))
    return out


def multiply(x: Expression, y: Expression) -> Expression:
    dim = x._dim_with(y)
    raw = []
    for sa, ca in x.items():
        for sb, cb in y.items():
            cc = ca * cb
            for f, st in mul_structs(sa, sb):
                raw.append((st, cc * f))
    rem = Expression._rem(x.remainder, y.remainder)
    return Expression.build(raw, dim, rem)


def specialize(e: Expression, n: int) -> Expression:
    """Fix the dimension: substitute n in coefficients and apply dimension rules."""
    if e.dim is not None:
        if e.dim != n:
            raise ValueError(f"expression already fixed to dimension {e.dim}")
        return e
    from .rings import aff_subs_n
    raw = [(st._replace(radial=aff_subs_n(st.radial, n)), c.subs_n(n)) for st, c in e.items()]
    return Expression.build(raw, n, e.remainder)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def gamma_word(labels: Iterable[str], dim=None) -> Expression:
    """The ordered product gamma_{l1} ... gamma_{lk}; use 'u' for u-slash."""
    labels = [U if x == "u" else XI if x == "xi" else x for x in labels]
    raw = []
    for c, deltas, g in clifford.word(labels):
        raw.append((Struct(g, tuple(Tensor("delta", d) for d in deltas)), SFun.const(c)))
    return Expression.build(raw, dim)


def tensor(kind: str, slots=(), derivs=(), order=0, name="", dim=None) -> Expression:
    slots = tuple(U if x == "u" else x for x in slots)
    derivs = tuple(U if x == "u" else x for x in derivs)
    return Expression.of(Struct((), (Tensor(kind, slots, derivs, order, name),)), 1, dim)


def delta(a: str, b: str, dim=None) -> Expression:
    return tensor("delta", (a, b), dim=dim)


def eps(*labels: str, dim=None) -> Expression:
    return tensor("eps", tuple(labels), dim=dim)


def uvec(label: str, dim=None) -> Expression:
    return tensor("u", (label,), dim=dim)


def field_A(nu: str, derivs=(), dim=None) -> Expression:
    return tensor("A", (nu,), tuple(derivs), dim=dim)


def field_F(mu: str, nu: str, derivs=(), dim=None) -> Expression:
    return tensor("F", (mu, nu), tuple(derivs), dim=dim)


def radial(exponent: Affine, log: int = 0, dim=None) -> Expression:
    return Expression.of(Struct(radial=exponent, log=log), 1, dim)


def gens(dim=None, **powers) -> Expression:
    return Expression.of(Struct(gens=tuple(sorted((k, v) for k, v in powers.items() if v))), 1, dim)


def scalar(c, dim=None) -> Expression:
    return Expression.scalar(c, dim)


def canonical_equal(a: Expression, b: Expression) -> bool:
    """Exact equality; for fixed n falls back to component evaluation."""
    diff = a - b
    if diff.is_zero():
        return True
    if diff.dim is None:
        return False
    from .components import is_zero_by_components
    return is_zero_by_components(diff)
