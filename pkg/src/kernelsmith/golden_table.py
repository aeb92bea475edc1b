"""Reference values for the kernel rows and the Green-function sums, entered by hand.

The builders below spell out each reference expression with the public
constructors only (gamma words, chains, field strengths, radial powers); they
never call the kernel engine.  The JSON files under ``golden/v1`` are written
from these builders with ``--regen-golden`` and are what the checks read.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .expr import Expression, gamma_word, field_F, uvec, radial, scalar
from .field_calculus import chain
from .rings import SFun, I, affine
from .serialize import to_json, from_json

GOLDEN_VERSION = "v1"
ENV_VAR = "KERNELSMITH_GOLDEN_DIR"
DEFAULT_DIR = Path(__file__).resolve().parent / "golden" / GOLDEN_VERSION

h = Fraction(1, 2)


class GoldenMissing(FileNotFoundError):
    """A reference file is absent from the golden directory."""


def golden_dir(path=None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_DIR


# ---------------------------------------------------------------------------
# Table of H_{-n-s+l}, symbolic n
# ---------------------------------------------------------------------------

def _G(*args) -> list:
    """Gamma arguments given as (cs, cn, c0) of the numerator over 2."""
    return [affine(Fraction(a[0], 2), Fraction(a[1], 2), Fraction(a[2], 2)) for a in args]


def _row_prefactor() -> SFun:
    # 2^(s-1) / pi^(n/2+1) e^(-i pi s/2) sin(pi s)
    return SFun.monomial(two=affine(1, 0, -1), pi=affine(0, -h, -1), phase=1, sin=1)


def _gg(args, coeff=1) -> SFun:
    return SFun.monomial(gammas=_G(*args), coeff=coeff)


def _u(c0) -> Expression:
    """|u|^(-n - s + c0)."""
    return radial(affine(-1, -1, c0))


def _bracket() -> Expression:
    # Gamma((1+s)/2) Gamma((n+s+1)/2) u^(-n-s-1) u-slash - Gamma((2+s)/2) Gamma((n+s)/2) u^(-n-s)
    return (gamma_word(["u"]) * _u(-1) * _gg([(1, 0, 1), (1, 1, 1)])
            - _u(0) * _gg([(1, 0, 2), (1, 1, 0)]))


def _F_block() -> Expression:
    # Gamma((1+s)/2) Gamma((n+s-1)/2) u^(-n-s+1) u_rho g_mu g_rho g_nu + Gamma((2+s)/2) Gamma((n+s-2)/2) u^(-n-s+2) g_mu g_nu
    return ((gamma_word(["mu", "u", "nu"]) * _u(1) * _gg([(1, 0, 1), (1, 1, -1)])
             + gamma_word(["mu", "nu"]) * _u(2) * _gg([(1, 0, 2), (1, 1, -2)]))
            * field_F("mu", "nu"))


def _dF(mu, nu, d) -> Expression:
    return field_F(mu, nu, (d,))


def _last_block() -> Expression:
    g1 = _gg([(1, 0, 1), (1, 1, -1)])
    g2 = _gg([(1, 0, 2), (1, 1, -2)])
    g3 = _gg([(1, 0, 1), (1, 1, -3)])
    b1 = (gamma_word(["mu", "rho", "nu"]) * uvec("rho") * uvec("sigma") * _dF("mu", "nu", "sigma") * Fraction(-3, 2)
          - uvec("mu") * uvec("rho") * gamma_word(["rho"]) * _dF("mu", "nu", "nu")
          + uvec("mu") * uvec("nu") * gamma_word(["rho"]) * _dF("mu", "rho", "nu"))
    b2 = (uvec("mu") * gamma_word(["nu", "rho"]) * _dF("nu", "rho", "mu") * Fraction(-3, 2)
          + uvec("mu") * _dF("mu", "nu", "nu"))
    b3 = gamma_word(["nu"]) * _dF("mu", "nu", "mu")
    return b1 * _u(1) * g1 + b2 * _u(2) * g2 + b3 * _u(3) * g3


def three_derivative_block() -> Expression:
    """The part of row 3 with two derivatives of F, with its tabulated 1/24 and the row prefactor."""
    return _last_block() * Fraction(1, 24) * _row_prefactor()


def table_row(ell: int) -> Expression:
    """Row ``ell`` of the reference table."""
    B = _bracket()
    if ell == 0:
        body = B
    elif ell == 1:
        body = B * chain(0, 1) * I
    elif ell == 2:
        body = B * chain(1, 1) * Fraction(-1, 2) + _F_block() * (I * Fraction(1, 8))
    elif ell == 3:
        body = (B * chain(2, 1) * (-I * Fraction(1, 6))
                + _F_block() * chain(0, 1) * (I * Fraction(1, 8)) * I
                + _last_block() * Fraction(1, 24))
    else:
        raise ValueError("the table has rows 0..3")
    return body * _row_prefactor()


# ---------------------------------------------------------------------------
# Green-function sums at n = 2, 3, 4 (truncated at u-degree 0)
# ---------------------------------------------------------------------------

def _pi(p) -> SFun:
    return SFun.monomial(pi=affine(0, 0, p))


def _r(c0) -> Expression:
    return radial(affine(0, 0, c0))


def green_sum_reference(n: int) -> Expression:
    """Reference sums, with o(u^k) read as 'terms of u-degree >= 1'."""
    us = gamma_word(["u"], dim=n)
    if n == 2:
        e = us * _r(-2) * (_pi(-1) * (-I * h))
    elif n == 3:
        e = (us * _r(-3) * (_pi(-1) * (-I * Fraction(1, 4)))
             + (gamma_word(["mu", "rho", "nu"], dim=n) * uvec("rho", dim=n) * _r(-1)
                + gamma_word(["mu", "nu"], dim=n)) * field_F("mu", "nu", dim=n) * (_pi(-1) * Fraction(1, 16)))
    elif n == 4:
        F = field_F("mu", "nu", dim=n)
        block3 = (gamma_word(["mu", "rho", "nu"], dim=n) * field_F("mu", "nu", ("sigma",), dim=n) * Fraction(-3, 2)
                  - gamma_word(["rho"], dim=n) * field_F("sigma", "mu", ("mu",), dim=n)
                  + gamma_word(["mu"], dim=n) * field_F("sigma", "mu", ("rho",), dim=n))
        log_const = (SFun.monomial(trans=(("ln2", 1),)) + SFun.monomial(trans=(("G1", 1),))
                     - _pi(1) * (I * h))
        dF = gamma_word(["nu"], dim=n) * field_F("mu", "nu", ("mu",), dim=n)
        e = (us * _r(-4) * (_pi(-2) * (-I * h))
             + gamma_word(["mu", "rho", "nu"], dim=n) * uvec("rho", dim=n) * F * _r(-2) * (_pi(-2) * Fraction(1, 16))
             + block3 * uvec("rho", dim=n) * uvec("sigma", dim=n) * _r(-2) * (_pi(-2) * (-I * Fraction(1, 48)))
             + dF * (log_const * _pi(-2) * (-I * Fraction(1, 24)))
             - dF * radial(affine(), log=1, dim=n) * (_pi(-2) * (-I * Fraction(1, 24))))
    else:
        raise ValueError("reference sums exist for n = 2, 3, 4")
    return e.with_remainder(1)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

def _row_file(ell: int) -> str:
    return f"table_row{ell}.json"


def _sum_file(n: int) -> str:
    return f"green_sum_n{n}.json"


REFERENCES = {**{_row_file(ell): (lambda ell=ell: table_row(ell)) for ell in range(4)},
              **{_sum_file(n): (lambda n=n: green_sum_reference(n)) for n in (2, 3, 4)}}


def regenerate(path=None) -> list[Path]:
    """Rewrite every reference file from the hand-entered builders."""
    d = golden_dir(path)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in sorted(REFERENCES.items()):
        p = d / name
        p.write_text(json.dumps(to_json(build()), indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        written.append(p)
    return written


def _load(name: str, path=None) -> Expression:
    p = golden_dir(path) / name
    if not p.is_file():
        raise GoldenMissing(f"reference file {p} not found")
    return from_json(json.loads(p.read_text(encoding="utf-8")))


def load_golden_row(ell: int, path=None) -> Expression:
    return _load(_row_file(ell), path)


def load_green_sum(n: int, path=None) -> Expression:
    return _load(_sum_file(n), path)


def check_files(path=None) -> list[str]:
    """Names of missing reference files."""
    d = golden_dir(path)
    return [name for name in sorted(REFERENCES) if not (d / name).is_file()]
