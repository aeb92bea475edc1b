"""Exact coefficient rings used by every symbolic module.

``GaussQ``  Gaussian rationals a + b i with a, b rational.
``Poly``    polynomials in the regularization parameter ``s`` and the
            dimension ``n`` with Gaussian-rational coefficients.
``SFun``    finite sums of meromorphic monomials: products of Gamma functions
            with affine arguments, sin(pi s), exp(-i pi s / 2), powers of 2 and
            pi, and the transcendental symbols ln 2, Gamma'(1) and zeta(odd),
            each multiplied by a ``Poly``.

Nothing in here touches floating point.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction, "GaussQ"]


class GaussQ:
    """Exact complex rational."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self._hash = None

    @staticmethod
    def of(x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not allowed in exact arithmetic")
        return GaussQ(x, 0)

    def __add__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussQ.of(other) - self

    def __mul__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __truediv__(self, other):
        o = GaussQ.of(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        num = self * o.conjugate()
        return GaussQ(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return GaussQ.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussQ(1) / (self ** (-k))
        out = GaussQ(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussQ):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im))
        return self._hash

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussQ({self})"

    def __str__(self):
        return format_gauss(self)


I = GaussQ(0, 1)
ONE = GaussQ(1)
ZERO = GaussQ(0)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _imag_str(y: Fraction) -> str:
    """y*i written as 'i', '-i', '3i', 'i/6', '-5i/2'."""
    sign = "-" if y < 0 else ""
    y = abs(y)
    num = "" if y.numerator == 1 else str(y.numerator)
    den = "" if y.denominator == 1 else f"/{y.denominator}"
    return f"{sign}{num}i{den}"


def format_gauss(z: GaussQ) -> str:
    if z.im == 0:
        return _frac_str(z.re)
    if z.re == 0:
        return _imag_str(z.im)
    ims = _imag_str(z.im)
    return f"({_frac_str(z.re)}{'' if ims.startswith('-') else '+'}{ims})"


def gauss_to_json(z: GaussQ) -> list[str]:
    return [_frac_str(z.re), _frac_str(z.im)]


def gauss_from_json(v) -> GaussQ:
    if isinstance(v, str):
        return GaussQ(Fraction(v))
    return GaussQ(Fraction(v[0]), Fraction(v[1]))


# ---------------------------------------------------------------------------
# Polynomials in (s, n)
# ---------------------------------------------------------------------------

class Poly:
    """Polynomial in ``s`` and ``n``; keys are exponent pairs (e_s, e_n)."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], Number] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = GaussQ.of(v)
                if v:
                    c[k] = v
        self.c = c
        self._hash = None

    @staticmethod
    def const(x) -> "Poly":
        return Poly({(0, 0): x})

    @staticmethod
    def affine(cs, cn, c0) -> "Poly":
        return Poly({(1, 0): cs, (0, 1): cn, (0, 0): c0})

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return all(k == (0, 0) for k in self.c)

    def const_value(self) -> GaussQ:
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.c.get((0, 0), ZERO)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, ZERO) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            g = GaussQ.of(other)
            return Poly({k: v * g for k, v in self.c.items()})
        out: dict = defaultdict(lambda: ZERO)
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = (k1[0] + k2[0], k1[1] + k2[1])
                out[k] = out[k] + v1 * v2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.c.items()))
        return self._hash

    def degree_s(self) -> int:
        return max((k[0] for k in self.c), default=-1)

    def subs_n(self, n) -> "Poly":
        out: dict = defaultdict(lambda: ZERO)
        for (es, en), v in self.c.items():
            out[(es, 0)] = out[(es, 0)] + v * Fraction(n) ** en
        return Poly(out)

    def has_n(self) -> bool:
        return any(k[1] for k in self.c)

    def eval(self, s, n, conv=complex):
        """Evaluate at numeric s and n; ``conv`` maps coefficients to the number type."""
        total = 0
        for (es, en), v in self.c.items():
            total += conv(v) * s ** es * (n ** en if en else 1)
        return total

    def shifted_series(self, s0) -> list[GaussQ]:
        """Coefficients of P(s0 + eps) in powers of eps (requires no n)."""
        if self.has_n():
            raise ValueError("dimension must be fixed before expanding in s")
        deg = self.degree_s()
        out = [ZERO] * (deg + 1)
        s0 = Fraction(s0)
        for (es, _), v in self.c.items():
            for j in range(es + 1):
                out[j] = out[j] + v * (binom(es, j) * s0 ** (es - j))
        return out

    def div_linear(self, lin: tuple[Fraction, Fraction, Fraction]) -> "Poly | None":
        """Exact quotient by cs*s + cn*n + c0, or None when not divisible."""
        cs, cn, c0 = lin
        if cs == 0 and cn == 0:
            if c0 == 0:
                return None
            return self * (GaussQ(1) / c0)
        # divide treating the variable with nonzero coefficient as the main one
        main = 0 if cs != 0 else 1
        lead = cs if main == 0 else cn
        other = cn if main == 0 else cs
        rem = dict(self.c)
        quot: dict = {}
        while rem:
            k = max(rem, key=lambda e: (e[main], e[1 - main]))
            if k[main] == 0:
                return None
            v = rem.pop(k)
            qk = (k[0] - 1, k[1]) if main == 0 else (k[0], k[1] - 1)
            qv = v / lead
            quot[qk] = quot.get(qk, ZERO) + qv
            # subtract qv * e^qk * (other*other_var + c0)
            if other:
                ok = (qk[0], qk[1] + 1) if main == 0 else (qk[0] + 1, qk[1])
                rem[ok] = rem.get(ok, ZERO) - qv * other
                if not rem[ok]:
                    del rem[ok]
            if c0:
                rem[qk] = rem.get(qk, ZERO) - qv * c0
                if not rem[qk]:
                    del rem[qk]
        return Poly(quot)

    def sort_items(self):
        return sorted(self.c.items())

    def __repr__(self):
        return f"Poly({format_poly(self)})"


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    return factorial(a) // (factorial(b) * factorial(a - b))


def format_poly(p: Poly, latex: bool = False) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (es, en), v in sorted(p.c.items(), reverse=True):
        mono = []
        for e, name in ((es, "s"), (en, "n")):
            if e == 1:
                mono.append(name)
            elif e:
                mono.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
        c = format_gauss(v)
        if not mono:
            parts.append(c)
            continue
        sep = " " if latex else "*"
        body = sep.join(mono)
        if v == 1:
            parts.append(body)
        elif v == -1:
            parts.append("-" + body)
        else:
            parts.append(c + sep + body)
    out = parts[0]
    for item in parts[1:]:
        out += (" - " + item[1:]) if item.startswith("-") else (" + " + item)
    return out


# ---------------------------------------------------------------------------
# Affine functions of (s, n):  cs*s + cn*n + c0
# ---------------------------------------------------------------------------

Affine = tuple  # (cs, cn, c0) of Fractions


def affine(cs=0, cn=0, c0=0) -> Affine:
    return (Fraction(cs), Fraction(cn), Fraction(c0))


def aff_add(a: Affine, b: Affine) -> Affine:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def aff_scale(a: Affine, k) -> Affine:
    k = Fraction(k)
    return (a[0] * k, a[1] * k, a[2] * k)


def aff_subs_n(a: Affine, n) -> Affine:
    return (a[0], Fraction(0), a[2] + a[1] * Fraction(n))


def aff_at(a: Affine, s, n=None) -> Fraction:
    if a[1] and n is None:
        raise ValueError("affine expression still depends on n")
    return a[0] * Fraction(s) + (a[1] * Fraction(n) if a[1] else 0) + a[2]


def aff_poly(a: Affine) -> Poly:
    return Poly.affine(*a)


def format_affine(a: Affine, latex: bool = False) -> str:
    cs, cn, c0 = a
    parts = []
    for coef, name in ((cn, "n"), (cs, "s")):
        if coef == 0:
            continue
        if coef == 1:
            parts.append(name)
        elif coef == -1:
            parts.append("-" + name)
        else:
            num = coef.numerator
            lead = "-" if num == -1 else "" if num == 1 else str(num)
            parts.append(f"{lead}{name}" + (f"/{coef.denominator}" if coef.denominator != 1 else ""))
    if c0 or not parts:
        parts.append(_frac_str(c0))
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


# ---------------------------------------------------------------------------
# Meromorphic monomials and their sums
# ---------------------------------------------------------------------------

# Monomial key layout:
#   gammas : sorted tuple of Affine Gamma arguments
#   sin    : power of sin(pi s)
#   phase  : power of exp(-i pi s / 2)
#   two    : Affine exponent of 2   (integer part of c0 is folded into the Poly)
#   pi     : Affine exponent of pi  (only cn and c0 used)
#   trans  : sorted tuple of (symbol, power), symbols 'ln2', 'G1', 'zeta3', ...
MonoKey = tuple

TRANS_ORDER = {"ln2": 0, "G1": 1}


def _trans_sort_key(name: str):
    if name in TRANS_ORDER:
        return (TRANS_ORDER[name], 0)
    return (2, int(name[4:]))


def _merge_trans(a, b):
    d = dict(a)
    for k, v in b:
        d[k] = d.get(k, 0) + v
    return tuple(sorted(((k, v) for k, v in d.items() if v), key=lambda kv: _trans_sort_key(kv[0])))


EMPTY_KEY: MonoKey = ((), 0, 0, affine(), affine(), ())


def _gamma_const_value(x: Fraction) -> tuple[Fraction, Fraction]:
    """Gamma at a half-integer or integer point: (rational factor, pi exponent)."""
    if x.denominator == 1:
        if x <= 0:
            raise ZeroDivisionError(f"Gamma has a pole at {x}")
        return Fraction(factorial(int(x) - 1)), Fraction(0)
    if x.denominator == 2:
        # Gamma(1/2 + m) = sqrt(pi) * prod
        m = x - Fraction(1, 2)
        val = Fraction(1)
        if m >= 0:
            for j in range(int(m)):
                val *= Fraction(1, 2) + j
        else:
            for j in range(1, int(-m) + 1):
                val /= Fraction(1, 2) - j
        return val, Fraction(1, 2)
    raise ValueError(f"Gamma({x}) is not representable exactly")


def _normalize_key(key: MonoKey, poly: Poly) -> tuple[MonoKey, Poly]:
    gammas, sin, phase, two, pi, trans = key
    # fold integer part of the 2-exponent into the polynomial
    c0 = two[2]
    ip = c0.numerator // c0.denominator
    if ip:
        poly = poly * (Fraction(2) ** ip)
        two = (two[0], two[1], c0 - ip)
    # evaluate constant Gamma arguments
    keep = []
    for g in gammas:
        if g[0] == 0 and g[1] == 0:
            val, pexp = _gamma_const_value(g[2])
            poly = poly * val
            pi = (pi[0], pi[1], pi[2] + pexp)
        else:
            keep.append(g)
    return (tuple(sorted(keep)), sin, phase, two, pi, trans), poly


def _family(g: Affine):
    c0 = g[2]
    return (g[0], g[1], c0 - (c0.numerator // c0.denominator))


def _rising(a: Affine, m: int) -> Poly:
    """Gamma(a + m) / Gamma(a) as a polynomial."""
    out = Poly.const(1)
    for j in range(m):
        out = out * Poly.affine(a[0], a[1], a[2] + j)
    return out


class SFun:
    """A finite sum of meromorphic monomials in s (and possibly symbolic n)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[MonoKey, Poly] | None = None, *, _normalized=False):
        if _normalized:
            self.terms = dict(terms or {})
        else:
            self.terms = _normalize(terms or {})
        self._hash = None

    # constructors ---------------------------------------------------------
    @staticmethod
    def const(x) -> "SFun":
        x = GaussQ.of(x)
        if not x:
            return SFun()
        return SFun({EMPTY_KEY: Poly.const(x)}, _normalized=True)

    @staticmethod
    def poly(p: Poly) -> "SFun":
        return SFun({EMPTY_KEY: p})

    @staticmethod
    def monomial(*, gammas: Iterable[Affine] = (), sin: int = 0, phase: int = 0,
                 two: Affine = affine(), pi: Affine = affine(), trans=(), coeff=1,
                 poly: Poly | None = None) -> "SFun":
        p = Poly.const(coeff) if poly is None else poly * GaussQ.of(coeff)
        key = (tuple(sorted(gammas)), sin, phase, two, pi,
               tuple(sorted(((k, v) for k, v in trans if v), key=lambda kv: _trans_sort_key(kv[0]))))
        return SFun({key: p})

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        """True when free of s and n (a transcendental constant)."""
        for (g, sin, ph, two, pi, _), p in self.terms.items():
            if g or sin or ph or two[0] or two[1] or pi[1] or not p.is_const():
                return False
        return True

    def is_rational_const(self) -> bool:
        return self.is_zero() or (set(self.terms) == {EMPTY_KEY} and self.terms[EMPTY_KEY].is_const())

    def rational_value(self) -> GaussQ:
        if self.is_zero():
            return ZERO
        if not self.is_rational_const():
            raise ValueError("scalar is not a plain complex rational")
        return self.terms[EMPTY_KEY].const_value()

    def has_n(self) -> bool:
        for (g, _, _, two, pi, _), p in self.terms.items():
            if p.has_n() or two[1] or pi[1] or any(a[1] for a in g):
                return True
        return False

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "SFun":
        if not isinstance(other, SFun):
            other = SFun.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        merged: dict = {}
        for src in (self.terms, other.terms):
            for k, p in src.items():
                merged[k] = merged[k] + p if k in merged else p
        return SFun(merged)

    __radd__ = __add__

    def __neg__(self):
        return SFun({k: -p for k, p in self.terms.items()}, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, SFun):
            other = SFun.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return SFun.const(other) - self

    def __mul__(self, other) -> "SFun":
        if not isinstance(other, SFun):
            g = GaussQ.of(other)
            if not g:
                return SFun()
            return SFun({k: p * g for k, p in self.terms.items()}, _normalized=True)
        out: dict = {}
        for k1, p1 in self.terms.items():
            for k2, p2 in other.terms.items():
                key = (tuple(sorted(k1[0] + k2[0])), k1[1] + k2[1], k1[2] + k2[2],
                       aff_add(k1[3], k2[3]), aff_add(k1[4], k2[4]), _merge_trans(k1[5], k2[5]))
                p = p1 * p2
                out[key] = out[key] + p if key in out else p
        return SFun(out)

    __rmul__ = __mul__

    def mul_poly(self, p: Poly) -> "SFun":
        return SFun({k: q * p for k, q in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SFun):
            other = SFun.const(other)
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def subs_n(self, n) -> "SFun":
        out: dict = {}
        for (g, sin, ph, two, pi, tr), p in self.terms.items():
            key = (tuple(sorted(aff_subs_n(a, n) for a in g)), sin, ph, aff_subs_n(two, n),
                   aff_subs_n(pi, n), tr)
            q = p.subs_n(n)
            out[key] = out[key] + q if key in out else q
        return SFun(out)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _key_sort(kv[0]))

    def __repr__(self):
        from .render import format_sfun
        return f"SFun({format_sfun(self)})"


def _key_sort(key: MonoKey):
    g, sin, ph, two, pi, tr = key
    return (len(g), g, sin, ph, two, pi, tuple((_trans_sort_key(k), v) for k, v in tr))


def _normalize(terms: Mapping[MonoKey, Poly]) -> dict:
    groups: dict = defaultdict(list)
    for key, p in terms.items():
        if p.is_zero():
            continue
        key, p = _normalize_key(key, p)
        gammas, sin, ph, two, pi, tr = key
        fams: dict = defaultdict(list)
        for g in gammas:
            fams[_family(g)].append(g)
        sig = tuple(sorted((f, len(v)) for f, v in fams.items()))
        groups[(sin, ph, two, pi, tr, sig)].append((fams, p))
    out = {}
    for (sin, ph, two, pi, tr, sig), members in groups.items():
        if len(members) == 1:
            fams, total = members[0]
            base = {f: sorted(v) for f, v in fams.items()}
        else:
            base = {}
            for f, cnt in sig:
                cols = [sorted(m[0][f]) for m in members]
                base[f] = [min(c[j] for c in cols) for j in range(cnt)]
            total = Poly()
            for fams, p in members:
                q = p
                for f, args in fams.items():
                    for a, b in zip(sorted(args), base[f]):
                        m = int(a[2] - b[2])
                        if m:
                            q = q * _rising(b, m)
                total = total + q
        if total.is_zero():
            continue
        # canonical up-shift: absorb linear factors equal to the smallest argument
        changed = True
        while changed:
            changed = False
            for f in sorted(base):
                args = base[f]
                lo = args[0]
                q = total.div_linear(lo)
                if q is not None:
                    total = q
                    args[0] = (lo[0], lo[1], lo[2] + 1)
                    args.sort()
                    changed = True
        gammas = tuple(sorted(a for args in base.values() for a in args))
        out[(gammas, sin, ph, two, pi, tr)] = total
    return out


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def sconst(x) -> SFun:
    return SFun.const(x)


def q(num, den=1) -> Fraction:
    return Fraction(num, den)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2)."""
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(-sum(binom(k + 1, j) * b[j] for j in range(k)) / Fraction(k + 1))
    return b[m]


def zeta_even(k: int) -> tuple[Fraction, int]:
    """zeta(k) for even k >= 2 as (rational, pi power)."""
    j = k // 2
    val = (-1) ** (j + 1) * bernoulli(k) * Fraction(2) ** k / (2 * factorial(k))
    return val, k
