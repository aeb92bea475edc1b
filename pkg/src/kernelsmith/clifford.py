"""Products in the antisymmetrized gamma basis.

A gamma content is stored as a tuple of slot labels ``(a1, ..., ak)`` standing
for the fully antisymmetrized product gamma_[a1 ... ak].  Products are reduced
with

    gamma_b gamma_[A]  = gamma_[b A] + h * sum_i (-1)^(i-1) delta(b, a_i) gamma_[A - a_i]
    gamma_[A] gamma_b  = gamma_[A b] + h * sum_i (-1)^(k-i) delta(a_i, b) gamma_[A - a_i]

where ``h`` is half the anticommutator constant (h = 1 for the standard
normalization, 1/2 for the literal one).
"""
from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction

NORMALIZATIONS = {"standard": Fraction(2), "literal-paper": Fraction(1)}

_anticommutator = contextvars.ContextVar("anticommutator", default=Fraction(2))


def anticommutator() -> Fraction:
    """Constant c in gamma_mu gamma_nu + gamma_nu gamma_mu = c delta_mu_nu."""
    return _anticommutator.get()


def half() -> Fraction:
    return _anticommutator.get() / 2


def normalization_name() -> str:
    c = _anticommutator.get()
    for name, val in NORMALIZATIONS.items():
        if val == c:
            return name
    return f"custom({c})"


@contextlib.contextmanager
def normalization(name: str):
    """Temporarily switch the Clifford normalization ('standard' or 'literal-paper')."""
    if name not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {name!r}; expected one of {sorted(NORMALIZATIONS)}")
    token = _anticommutator.set(NORMALIZATIONS[name])
    try:
        yield
    finally:
        _anticommutator.reset(token)


# Each product returns a list of (coefficient, deltas, gamma) where deltas is a
# tuple of label pairs.

def lmul(b: str, A: tuple, h: Fraction | None = None) -> list:
    h = half() if h is None else h
    out = [(Fraction(1), (), (b,) + A)]
    for i, a in enumerate(A):
        sign = 1 if i % 2 == 0 else -1
        out.append((h * sign, ((b, a),), A[:i] + A[i + 1:]))
    return out


def rmul(A: tuple, b: str, h: Fraction | None = None) -> list:
    h = half() if h is None else h
    k = len(A)
    out = [(Fraction(1), (), A + (b,))]
    for i, a in enumerate(A):
        sign = 1 if (k - 1 - i) % 2 == 0 else -1
        out.append((h * sign, ((a, b),), A[:i] + A[i + 1:]))
    return out


def basis_as_words(B: tuple, h: Fraction | None = None) -> list:
    """Expand gamma_[B] into ordered words with delta corrections."""
    h = half() if h is None else h
    if len(B) <= 1:
        return [(Fraction(1), (), B)]
    head, last = B[:-1], B[-1]
    out = []
    for c, d, w in basis_as_words(head, h):
        out.append((c, d, w + (last,)))
    m = len(B)
    for i in range(m - 1):
        sign = 1 if (m - 2 - i) % 2 == 0 else -1
        reduced = head[:i] + head[i + 1:]
        for c, d, w in basis_as_words(reduced, h):
            out.append((-h * sign * c, d + ((head[i], last),), w))
    return out


def mul(A: tuple, B: tuple, h: Fraction | None = None) -> list:
    """gamma_[A] gamma_[B] in the antisymmetrized basis."""
    h = half() if h is None else h
    if not B:
        return [(Fraction(1), (), A)]
    if not A:
        return [(Fraction(1), (), B)]
    result = []
    for c0, d0, word in basis_as_words(B, h):
        partial = [(c0, d0, A)]
        for b in word:
            nxt = []
            for c, d, g in partial:
                for c2, d2, g2 in rmul(g, b, h):
                    nxt.append((c * c2, d + d2, g2))
            partial = nxt
        result.extend(partial)
    return result


def word(labels, h: Fraction | None = None) -> list:
    """An ordered product gamma_{l1} ... gamma_{lk} in the antisymmetrized basis."""
    h = half() if h is None else h
    partial = [(Fraction(1), (), ())]
    for b in labels:
        nxt = []
        for c, d, g in partial:
            for c2, d2, g2 in rmul(g, b, h):
                nxt.append((c * c2, d + d2, g2))
        partial = nxt
    return partial
