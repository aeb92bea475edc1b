"""Gamma words: reduction, symbolic traces, explicit representations.

Symbolic traces work in the antisymmetrized basis: tr 1 = d, and
tr gamma_[a1..ak] vanishes for k >= 1 except where a representation class
supplies an odd rule (two-dimensional Pauli matrices in three dimensions:
tr gamma_[abc] = 2i eps_abc).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import clifford
from .expr import Expression, Struct, Tensor, MalformedIndexError, gamma_word, U, XI
from .rings import GaussQ, SFun, I


class NoTraceRule(ValueError):
    """The representation class has no trace rule for a gamma structure present."""


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def clifford_reduce(word, convention: str = "standard", contracted: Sequence[str] = ()) -> Expression:
    """Reduce an ordered gamma word (or an Expression) to canonical form.

    ``word`` is a sequence of labels ('u'/'xi' stand for u-slash, xi-slash) or an
    Expression.  Labels listed in ``contracted`` are contraction tags and must
    occur exactly twice.
    """
    with clifford.normalization(convention):
        if isinstance(word, Expression):
            return Expression.build(word.items(), word.dim, word.remainder)
        labels = list(word)
        for tag in contracted:
            if labels.count(tag) != 2:
                raise MalformedIndexError(f"contraction tag {tag!r} occurs {labels.count(tag)} times")
        return gamma_word(labels)


# ---------------------------------------------------------------------------
# representation classes (symbolic traces)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepClass:
    """What the symbolic trace needs to know about a representation.

    ``odd3`` is the constant c in tr gamma_[abc] = c eps_abc (None: no odd rule,
    the trace of every non-scalar basis element vanishes).
    """
    name: str
    spacetime_dim: int | None
    matrix_dim: int | None
    odd3: GaussQ | None = None


def generic_even(n: int | None = None, d: int | None = None) -> RepClass:
    return RepClass("generic-even", n, d)


def pauli3() -> RepClass:
    return RepClass("pauli3", 3, 2, GaussQ(0, 2))


def custom(n: int, d: int, odd3=None) -> RepClass:
    return RepClass("custom", n, d, None if odd3 is None else GaussQ.of(odd3))


def _trace_factor(rc: RepClass, k: int, gamma: tuple, dim):
    """(coefficient, extra tensors) for tr of gamma_[gamma], or None for zero."""
    if k == 0:
        if rc.matrix_dim is None:
            raise NoTraceRule("matrix dimension d is required for tr(1)")
        return rc.matrix_dim, ()
    if rc.name == "pauli3" and clifford.normalization_name() != "standard":
        raise NoTraceRule("Pauli odd trace rule is defined for the standard normalization only")
    if k == 3 and rc.odd3 is not None:
        return rc.odd3, (Tensor("eps", gamma),)
    return None


def trace_symbolic(expr: Expression, rep_class: RepClass) -> Expression:
    """Replace the gamma content of every term by its trace."""
    dim = expr.dim if expr.dim is not None else rep_class.spacetime_dim
    if rep_class.spacetime_dim is not None and expr.dim is not None and expr.dim != rep_class.spacetime_dim:
        raise ValueError(f"representation class {rep_class.name} is for n={rep_class.spacetime_dim}, "
                         f"expression has n={expr.dim}")
    if dim is not None and dim != expr.dim:
        expr = expr.with_dim(dim)

    def fn(st, c):
        r = _trace_factor(rep_class, len(st.gamma), st.gamma, dim)
        if r is None:
            return
        coef, extra = r
        yield st._replace(gamma=(), tensors=st.tensors + extra), c * GaussQ.of(coef)
    return expr.map(fn)


# ---------------------------------------------------------------------------
# explicit representations
# ---------------------------------------------------------------------------

SIGMA = (np.array([[0, 1], [1, 0]], dtype=complex),
         np.array([[0, -1j], [1j, 0]], dtype=complex),
         np.array([[1, 0], [0, -1]], dtype=complex))


@dataclass(frozen=True)
class Representation:
    name: str
    spacetime_dim: int
    matrix_dim: int
    matrices: tuple = field(repr=False)
    rep_class: RepClass = field(default=None, repr=False)

    def gamma(self, mu: int) -> np.ndarray:
        if not 1 <= mu <= self.spacetime_dim:
            raise IndexError(f"index {mu} out of range 1..{self.spacetime_dim} for {self.name}")
        return self.matrices[mu - 1]

    def validate(self, tol: float = 1e-12) -> None:
        c = float(clifford.anticommutator())
        eye = np.eye(self.matrix_dim)
        for a, ga in enumerate(self.matrices):
            if ga.shape != (self.matrix_dim, self.matrix_dim):
                raise ValueError(f"{self.name}: matrix {a + 1} has shape {ga.shape}")
            if np.abs(ga - ga.conj().T).max() > tol:
                raise ValueError(f"{self.name}: matrix {a + 1} is not Hermitian")
            for b, gb in enumerate(self.matrices):
                target = c * eye if a == b else 0 * eye
                if np.abs(ga @ gb + gb @ ga - target).max() > tol:
                    raise ValueError(f"{self.name}: anticommutator ({a + 1},{b + 1}) violates normalization {c}")


def _scaled(mats):
    # matrices normalized for the standard relation are rescaled to the active one
    k = np.sqrt(float(clifford.half()))
    return tuple(k * m for m in mats)


def pauli_rep(n: int) -> Representation:
    if n not in (2, 3):
        raise ValueError("Pauli representation exists for n = 2, 3")
    rc = generic_even(2, 2) if n == 2 else pauli3()
    return Representation(f"pauli{n}", n, 2, _scaled(SIGMA[:n]), rc)


def dirac4_rep() -> Representation:
    z = np.zeros((2, 2), dtype=complex)
    e = np.eye(2, dtype=complex)
    mats = [np.block([[z, -1j * s], [1j * s, z]]) for s in SIGMA]
    mats.append(np.block([[z, e], [e, z]]))
    return Representation("dirac4", 4, 4, _scaled(mats), generic_even(4, 4))


def reducible3_rep() -> Representation:
    z = np.zeros((2, 2), dtype=complex)
    mats = [np.block([[s, z], [z, -s]]) for s in SIGMA]
    return Representation("reducible3", 3, 4, _scaled(mats), custom(3, 4, None))


BUILTIN_REPS = {"pauli2": lambda: pauli_rep(2), "pauli3": lambda: pauli_rep(3),
                "dirac4": dirac4_rep, "reducible3": reducible3_rep}


def builtin(name: str) -> Representation:
    if name not in BUILTIN_REPS:
        raise KeyError(f"unknown representation {name!r}; built-ins: {sorted(BUILTIN_REPS)}")
    return BUILTIN_REPS[name]()


def load_representation(path, name: str | None = None, odd3=None) -> Representation:
    """Read a JSON file: an array of n square matrices, entries [re, im] as decimal strings."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list) or not data:
        raise ValueError("representation file must hold a non-empty array of matrices")
    mats = []
    for m in data:
        rows = [[complex(float(Decimal(str(re))), float(Decimal(str(im)))) for re, im in row] for row in m]
        mats.append(np.array(rows, dtype=complex))
    n, d = len(mats), mats[0].shape[0]
    rep = Representation(name or Path(path).stem, n, d, tuple(mats), custom(n, d, odd3))
    rep.validate()
    return rep


def trace_numeric(word: Sequence[int], rep: Representation) -> complex:
    """Matrix trace of gamma_{w1} ... gamma_{wk} in an explicit representation."""
    m = np.eye(rep.matrix_dim, dtype=complex)
    for mu in word:
        m = m @ rep.gamma(int(mu))
    return complex(np.trace(m))


# ---------------------------------------------------------------------------
# concrete evaluation of scalar tensor expressions
# ---------------------------------------------------------------------------

def _levi(vals) -> int:
    vals = list(vals)
    if len(set(vals)) < len(vals):
        return 0
    sign = 1
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                sign = -sign
    return sign


def evaluate_indices(expr: Expression, assignment: dict, exact: bool = False):
    """Value of a gamma-free expression built from deltas, epsilons and rational
    coefficients, with free labels set to concrete values (dummies summed).

    Returns a complex float, or an exact GaussQ when ``exact`` is set.
    """
    import itertools
    n = expr.dim
    total = GaussQ(0) if exact else 0j
    for st, c in expr.items():
        if st.gamma:
            raise ValueError("expression still carries gamma matrices")
        coef = c.rational_value() if exact else complex(c.rational_value())
        labels = set()
        for t in st.tensors:
            if t.kind not in ("delta", "eps"):
                raise ValueError(f"cannot evaluate tensor kind {t.kind!r} numerically")
            labels.update(t.slots)
        dummies = sorted(x for x in labels if x not in assignment)
        for vals in itertools.product(range(1, n + 1), repeat=len(dummies)):
            asg = dict(assignment)
            asg.update(zip(dummies, vals))
            v = coef
            for t in st.tensors:
                sv = [asg[x] for x in t.slots]
                v *= (1 if sv[0] == sv[1] else 0) if t.kind == "delta" else _levi(sv)
                if v == 0:
                    break
            total += v
    return total
