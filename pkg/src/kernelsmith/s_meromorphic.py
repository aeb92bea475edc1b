"""Laurent expansion at s = -1 of meromorphic scalars.

A meromorphic scalar is an :class:`~kernelsmith.rings.SFun`: sums of Gamma
products with affine arguments, powers of sin(pi s), exp(-i pi s/2), 2 and pi,
times polynomials.  Laurent coefficients are s-free SFun constants in which
pi, ln 2, Gamma'(1) and odd zeta values stay symbolic.

With eps = s + 1 and delta the deviation of a Gamma argument from its value
at s = -1, the expansions used are

    log Gamma(1 + d)   = G1 d + sum_{k>=2} (-1)^k zeta(k) d^k / k
    log Gamma(1/2 + d) = log sqrt(pi) + (G1 - 2 ln2) d + sum_{k>=2} (-1)^k (2^k - 1) zeta(k) d^k / k

and integer or half-integer shifts by the functional equation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .rings import (SFun, GaussQ, Poly, I, affine, aff_at, zeta_even, EMPTY_KEY)

MeromorphicScalar = SFun


# ---------------------------------------------------------------------------
# truncated power series with SFun-constant coefficients
# ---------------------------------------------------------------------------

class _Series:
    """sum_{j} c[j] eps^(val + j), known up to absolute order ``top`` inclusive."""

    __slots__ = ("val", "c", "top")

    def __init__(self, val: int, coeffs: list, top: int):
        self.val, self.c, self.top = val, list(coeffs[: max(0, top - val + 1)]), top

    @staticmethod
    def const(x, top: int) -> "_Series":
        return _Series(0, [x if isinstance(x, SFun) else SFun.const(x)], top)

    def coeff(self, k: int) -> SFun:
        j = k - self.val
        return self.c[j] if 0 <= j < len(self.c) else SFun()

    def __mul__(self, other: "_Series") -> "_Series":
        top = min(self.top + other.val, other.top + self.val)
        val = self.val + other.val
        out = [SFun() for _ in range(max(0, top - val + 1))]
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(other.c):
                if i + j >= len(out):
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _Series(val, out, top)

    def __add__(self, other: "_Series") -> "_Series":
        top = min(self.top, other.top)
        val = min(self.val, other.val)
        return _Series(val, [self.coeff(k) + other.coeff(k) for k in range(val, top + 1)], top)

    def scale(self, x) -> "_Series":
        return _Series(self.val, [a * x for a in self.c], self.top)


def _exp_series(a: list, length: int) -> list:
    """exp of a power series with a[0] == 0, first ``length`` coefficients."""
    e = [SFun.const(1)] + [SFun() for _ in range(length - 1)]
    for m in range(1, length):
        acc = SFun()
        for k in range(1, m + 1):
            if k < len(a) and not a[k].is_zero():
                acc = acc + a[k] * e[m - k] * k
        e[m] = acc * Fraction(1, m)
    return e


def _zeta(k: int) -> SFun:
    if k % 2 == 0:
        val, p = zeta_even(k)
        return SFun.monomial(pi=affine(0, 0, p), coeff=val)
    return SFun.monomial(trans=((f"zeta{k}", 1),))


G1 = SFun.monomial(trans=(("G1", 1),))
LN2 = SFun.monomial(trans=(("ln2", 1),))
PI = SFun.monomial(pi=affine(0, 0, 1))
SQRT_PI = SFun.monomial(pi=affine(0, 0, Fraction(1, 2)))


def _gamma_base(half: bool, alpha: Fraction, length: int) -> list:
    """Coefficients in eps of Gamma(1 + alpha eps) or Gamma(1/2 + alpha eps)/sqrt(pi)."""
    logc = [SFun(), (G1 - LN2 * 2) if half else G1]
    for k in range(2, length):
        z = _zeta(k) * Fraction((-1) ** k, k)
        if half:
            z = z * (2 ** k - 1)
        logc.append(z)
    logc = [x * (alpha ** j) for j, x in enumerate(logc)]
    return _exp_series(logc, length)


def _linear_inverse(c0: Fraction, alpha: Fraction, length: int) -> list:
    """1 / (c0 + alpha eps) for c0 != 0."""
    return [SFun.const(Fraction(1) / c0 * (-alpha / c0) ** j) for j in range(length)]


def _gamma_series(arg, top: int, n=None) -> _Series:
    alpha = Fraction(arg[0])
    z0 = aff_at(arg, -1, n)
    if alpha == 0:
        raise ValueError("constant Gamma arguments are evaluated exactly, not expanded")
    if z0.denominator == 1:
        half, m = False, int(z0) - 1          # Gamma(1 + m + d)
    elif z0.denominator == 2:
        half, m = True, int(z0 - Fraction(1, 2))  # Gamma(1/2 + m + d)
    else:
        raise NotImplementedError(f"Laurent expansion of Gamma near {z0} is not supported")
    base_point = Fraction(1, 2) if half else Fraction(1)
    val = -1 if (not half and m < 0) else 0
    length = top - val + 2
    base = _Series(0, _gamma_base(half, alpha, length + 1), top + 1)
    if half:
        base = base.scale(SQRT_PI)
    out = base
    if m > 0:
        for j in range(m):
            out = out * _Series(0, [SFun.const(base_point + j), SFun.const(alpha)], top + 1)
    elif m < 0:
        for j in range(m, 0):
            c0 = base_point + j
            if c0 == 0:
                # 1 / (alpha eps)
                out = _Series(out.val - 1, [x * (Fraction(1) / alpha) for x in out.c], out.top - 1)
            else:
                out = out * _Series(0, _linear_inverse(c0, alpha, length + 2), top + 1)
    return _Series(out.val, out.c, min(out.top, top))


def _sin_series(top: int) -> _Series:
    # sin(pi s) = -sin(pi eps)
    c = []
    for j in range(0, top + 1):
        if j % 2 == 1:
            k = (j - 1) // 2
            c.append(SFun.monomial(pi=affine(0, 0, j), coeff=Fraction(-(-1) ** k, factorial(j))))
        else:
            c.append(SFun())
    return _Series(1, c[1:], top)


def _power(s: _Series, m: int, top: int) -> _Series:
    out = _Series.const(1, top)
    for _ in range(m):
        out = out * s
    return out


def _exp_linear(rate: SFun, top: int) -> _Series:
    """exp(rate * eps)."""
    return _Series(0, [rate_pow * Fraction(1, factorial(j)) for j, rate_pow in
                       enumerate(_pows(rate, top + 1))], top)


def _pows(x: SFun, k: int) -> list:
    out = [SFun.const(1)]
    for _ in range(1, k):
        out.append(out[-1] * x)
    return out


def _monomial_valuation(key, poly: Poly, n) -> int:
    gammas, sin, *_ = key
    v = sin
    for g in gammas:
        z0 = aff_at(g, -1, n)
        if z0.denominator == 1 and z0 <= 0:
            v -= 1
    ps = poly.shifted_series(-1)
    v += next((j for j, x in enumerate(ps) if x), 0)
    return v


def pole_order(m: SFun, n=None) -> int:
    """Order of the pole at s = -1 (0 when finite); cancellations are detected."""
    if m.is_zero():
        return 0
    if n is not None:
        m = m.subs_n(n)
    lo = min(_monomial_valuation(k, p, n) for k, p in m.terms.items())
    if lo >= 0:
        return 0
    ls = laurent_at_minus_one(m, 0, n)
    for k in range(lo, 0):
        if not ls.coeff(k).is_zero():
            return -k
    return 0


def _monomial_series(key, poly: Poly, top: int, n) -> _Series:
    gammas, sin, phase, two, pi, trans = key
    if pi[0]:
        raise NotImplementedError("s-dependent powers of pi are not supported")
    if two[1] or pi[1] or any(g[1] for g in gammas) or poly.has_n():
        raise ValueError("fix the dimension n before Laurent expansion")
    # valuation bookkeeping to know how deep each factor must go
    pole_gammas = [g for g in gammas if aff_at(g, -1, n).denominator == 1 and aff_at(g, -1, n) <= 0]
    total_val = sin - len(pole_gammas)
    ps = poly.shifted_series(-1)
    pval = next((j for j, x in enumerate(ps) if x), len(ps))
    total_val += pval
    if pval >= len(ps):
        return _Series(top + 1, [], top)
    need = lambda own: top - (total_val - own)  # noqa: E731
    const = SFun.monomial(pi=affine(0, 0, pi[2]), trans=trans)
    out = _Series(pval, [SFun.const(x) for x in ps[pval:]], need(pval))
    out = out * _Series.const(const, need(0))
    for g in gammas:
        own = -1 if g in pole_gammas else 0
        out = out * _gamma_series(g, need(own), n)
    if sin:
        out = out * _power(_sin_series(need(sin)), sin, need(sin))
    if phase:
        # exp(-i pi p s/2) = i^p exp(-i pi p eps/2)
        rate = PI * (I * Fraction(-phase, 2))
        out = out * _exp_linear(rate, need(0)).scale(SFun.const(I ** (phase % 4)))
    if two[0] or two[1] or two[2]:
        # 2^(a s + b n + c) = 2^(c + b n - a) * exp(a ln2 eps)
        a = Fraction(two[0])
        c = Fraction(two[2]) - a
        base = SFun.monomial(two=affine(0, 0, c))
        ser = _exp_linear(LN2 * a, need(0)) if a else _Series.const(1, need(0))
        out = out * ser.scale(base)
    return out


@dataclass(frozen=True)
class LaurentSeries:
    """Laurent coefficients about s = -1 (center fixed), exact up to ``order``."""
    coeffs: tuple  # ((k, SFun), ...) with k ascending, zeros omitted
    order: int
    center: int = -1

    def coeff(self, k: int) -> SFun:
        if k > self.order:
            raise ValueError(f"coefficient {k} beyond truncation order {self.order}")
        for kk, v in self.coeffs:
            if kk == k:
                return v
        return SFun()

    @property
    def pole_order(self) -> int:
        neg = [k for k, _ in self.coeffs if k < 0]
        return -min(neg) if neg else 0

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = min(self.order, other.order)
        d = {}
        for k, v in self.coeffs + other.coeffs:
            if k <= order:
                d[k] = d.get(k, SFun()) + v
        return LaurentSeries(tuple(sorted((k, v) for k, v in d.items() if not v.is_zero())), order)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo_a = min((k for k, _ in self.coeffs), default=0)
        lo_b = min((k for k, _ in other.coeffs), default=0)
        order = min(self.order + lo_b, other.order + lo_a)
        d = {}
        for ka, va in self.coeffs:
            for kb, vb in other.coeffs:
                if ka + kb <= order:
                    d[ka + kb] = d.get(ka + kb, SFun()) + va * vb
        return LaurentSeries(tuple(sorted((k, v) for k, v in d.items() if not v.is_zero())), order)


def laurent_at_minus_one(m: SFun, order: int = 1, n=None) -> LaurentSeries:
    """Exact Laurent coefficients of ``m`` at s = -1 through (s+1)^order."""
    if n is not None:
        m = m.subs_n(n)
    acc: dict = {}
    for key, poly in m.terms.items():
        ser = _monomial_series(key, poly, order, n)
        for j, c in enumerate(ser.c):
            k = ser.val + j
            if k <= order and not c.is_zero():
                acc[k] = acc.get(k, SFun()) + c
    return LaurentSeries(tuple(sorted((k, v) for k, v in acc.items() if not v.is_zero())), order)


def finite_part(m: SFun, n=None) -> SFun:
    return laurent_at_minus_one(m, 0, n).coeff(0)


def residue(m: SFun, n=None) -> SFun:
    return laurent_at_minus_one(m, 0, n).coeff(-1)


def value_at_minus_one(m: SFun, n=None) -> SFun:
    """Plain limit s -> -1; raises if a pole is present."""
    ls = laurent_at_minus_one(m, 0, n)
    if ls.pole_order:
        raise ZeroDivisionError(f"pole of order {ls.pole_order} at s = -1")
    return ls.coeff(0)


# ---------------------------------------------------------------------------
# numerics
# ---------------------------------------------------------------------------

def _trans_value(name: str):
    if name == "ln2":
        return mpmath.log(2)
    if name == "G1":
        return -mpmath.euler
    return mpmath.zeta(int(name[4:]))


def numeric_eval(m: SFun, s, n=None, dps: int = 50):
    """High-precision value of ``m`` at ``s`` (all symbols substituted)."""
    with mpmath.workdps(max(dps, 50)):
        s = mpmath.mpmathify(s)
        nn = mpmath.mpf(n) if n is not None else mpmath.mpf(0)
        total = mpmath.mpc(0)
        for (gammas, sin, phase, two, pi, trans), poly in m.terms.items():
            if n is None and (two[1] or pi[1] or any(g[1] for g in gammas) or poly.has_n()):
                raise ValueError("fix the dimension n before numeric evaluation")
            v = poly.eval(s, nn, conv=lambda z: mpmath.mpc(mpmath.mpf(z.re.numerator) / z.re.denominator,
                                                          mpmath.mpf(z.im.numerator) / z.im.denominator))
            for g in gammas:
                arg = mpmath.mpf(g[0].numerator) / g[0].denominator * s \
                    + mpmath.mpf(g[1].numerator) / g[1].denominator * nn \
                    + mpmath.mpf(g[2].numerator) / g[2].denominator
                if mpmath.im(arg) == 0 and mpmath.re(arg) <= 0 and mpmath.re(arg) == int(mpmath.re(arg)):
                    raise ZeroDivisionError(f"Gamma pole at s = {s}")
                v *= mpmath.gamma(arg)
            if sin:
                v *= mpmath.sin(mpmath.pi * s) ** sin
            if phase:
                v *= mpmath.exp(-1j * mpmath.pi * s / 2) ** phase
            e2 = _aff_mp(two, s, nn)
            if e2 != 0:
                v *= mpmath.power(2, e2)
            ep = _aff_mp(pi, s, nn)
            if ep != 0:
                v *= mpmath.power(mpmath.pi, ep)
            for name, p in trans:
                v *= _trans_value(name) ** p
            total += v
        return +total


def _aff_mp(a, s, n):
    return (mpmath.mpf(a[0].numerator) / a[0].denominator * s
            + mpmath.mpf(a[1].numerator) / a[1].denominator * n
            + mpmath.mpf(a[2].numerator) / a[2].denominator)


def constant_value(c: SFun, dps: int = 50):
    """Numeric value of an s-free constant."""
    return numeric_eval(c, 0, None, dps) if not c.has_n() else None
