"""Text and LaTeX renderings of scalars and expressions."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .expr import Expression, Struct, Tensor, U, XI
from .rings import SFun, GaussQ, Poly, format_gauss, format_poly, format_affine, _frac_str

GREEK = {"alpha": ("α", r"\alpha"), "beta": ("β", r"\beta"), "gamma": ("γ", r"\gamma"),
         "delta": ("δ", r"\delta"), "kappa": ("κ", r"\kappa"), "lambda": ("λ", r"\lambda"),
         "mu": ("μ", r"\mu"), "nu": ("ν", r"\nu"), "rho": ("ρ", r"\rho"), "sigma": ("σ", r"\sigma"),
         "tau": ("τ", r"\tau"), "omega": ("ω", r"\omega")}
DUMMY_NAMES = ["alpha", "beta", "kappa", "tau", "omega", "zeta", "eta", "theta", "chi", "phi"]
DUMMY_TEXT = ["α", "β", "κ", "τ", "ω", "ζ", "η", "θ", "χ", "φ"]


def label_text(lab: str) -> str:
    if lab == U:
        return "u"
    if lab == XI:
        return "ξ"
    if lab.startswith("~") and lab[1:].isdigit():
        k = int(lab[1:])
        return DUMMY_TEXT[k] if k < len(DUMMY_TEXT) else f"i{k}"
    return GREEK.get(lab, (lab, lab))[0]


def label_latex(lab: str) -> str:
    if lab == U:
        return "u"
    if lab == XI:
        return r"\xi"
    if lab.startswith("~") and lab[1:].isdigit():
        k = int(lab[1:])
        return "\\" + DUMMY_NAMES[k] if k < len(DUMMY_NAMES) else f"i_{{{k}}}"
    return GREEK.get(lab, (lab, lab))[1]


def _affine_frac(a, latex=False) -> str:
    d = lcm(*(x.denominator for x in a))
    if d == 1:
        return format_affine(a)
    scaled = tuple(x * d for x in a)
    inner = format_affine(scaled)
    return rf"\frac{{{inner}}}{{{d}}}" if latex else f"({inner})/{d}"


def _pow_text(base: str, e, latex=False) -> str:
    if isinstance(e, tuple):
        es = format_affine(e)
        if es == "1":
            return base
        return f"{base}^{{{es}}}" if latex else f"{base}^({es})"
    if e == 1:
        return base
    es = _frac_str(Fraction(e))
    return f"{base}^{{{es}}}" if latex else f"{base}^{es}" if Fraction(e) >= 0 and Fraction(e).denominator == 1 else f"{base}^({es})"


_TRANS_TEXT = {"ln2": ("ln2", r"\ln 2"), "G1": ("Γ'(1)", r"\Gamma'(1)")}


def _trans(name, latex):
    if name in _TRANS_TEXT:
        return _TRANS_TEXT[name][1 if latex else 0]
    k = name[4:]
    return rf"\zeta({k})" if latex else f"ζ({k})"


def _monomial_factors(key, latex=False) -> list[str]:
    gammas, sin, phase, two, pi, trans = key
    out = []
    if any(pi):
        out.append(_pow_text(r"\pi" if latex else "π", pi if pi[0] or pi[1] else pi[2], latex))
    if any(two):
        out.append(_pow_text("2", two if two[0] or two[1] else two[2], latex))
    for name, p in trans:
        out.append(_pow_text(_trans(name, latex), p, latex))
    if phase:
        base = r"e^{-i\pi s/2}" if latex else "e^(-iπs/2)"
        out.append(base if phase == 1 else (f"({base})^{{{phase}}}" if latex else f"({base})^{phase}"))
    if sin:
        base = r"\sin(\pi s)" if latex else "sin(πs)"
        out.append(base if sin == 1 else (f"{base}^{{{sin}}}" if latex else f"{base}^{sin}"))
    for g in gammas:
        arg = _affine_frac(g, latex)
        out.append(rf"\Gamma\left({arg}\right)" if latex else f"Γ({arg})")
    return out


def format_sfun(c: SFun, latex: bool = False) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for key, poly in c.sorted_items():
        factors = _monomial_factors(key, latex)
        sep = " " if latex else "·"
        if poly.is_const():
            v = poly.const_value()
            coef = _gauss_latex(v) if latex else format_gauss(v)
            if factors:
                if v == 1:
                    parts.append(sep.join(factors))
                elif v == -1:
                    parts.append("-" + sep.join(factors))
                else:
                    parts.append(coef + sep + sep.join(factors))
            else:
                parts.append(coef)
        else:
            ptxt = format_poly(poly, latex)
            if factors:
                ptxt = f"({ptxt})"
            parts.append(sep.join([ptxt] + factors))
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


def _gauss_latex(z: GaussQ) -> str:
    def fr(x: Fraction) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        sign = "-" if x < 0 else ""
        return rf"{sign}\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"
    if z.im == 0:
        return fr(z.re)
    if z.re == 0:
        if z.im == 1:
            return "i"
        if z.im == -1:
            return "-i"
        return fr(z.im) + "i"
    im = fr(abs(z.im)) if abs(z.im) != 1 else ""
    return rf"\left({fr(z.re)} {'+' if z.im > 0 else '-'} {im}i\right)"


def _tensor_text(t: Tensor, latex=False) -> str:
    lab = label_latex if latex else label_text
    sl = "".join(lab(x) for x in t.slots) if latex else " ".join(lab(x) for x in t.slots)
    dv = "".join(lab(x) for x in t.derivs) if latex else " ".join(lab(x) for x in t.derivs)
    pre = (rf"\partial_{{{dv}}}" if latex else f"∂_{{{dv}}}") if t.derivs else ""
    if t.kind == "delta":
        return rf"\delta_{{{sl}}}" if latex else f"δ_{{{sl}}}"
    if t.kind == "eps":
        return rf"\epsilon_{{{sl}}}" if latex else f"ε_{{{sl}}}"
    if t.kind in ("u", "xi"):
        base = "u" if t.kind == "u" else (r"\xi" if latex else "ξ")
        return f"{base}_{{{sl}}}"
    if t.kind == "A":
        return f"{pre}A_{{{sl}}}"
    if t.kind == "F":
        return f"{pre}F_{{{sl}}}"
    if t.kind == "S":
        if all(x == U for x in t.slots):
            m = len(t.slots) - 1
            if latex:
                return (r"(u\cdot\partial)" + (f"^{{{m}}}" if m > 1 else "")) * (m > 0) + r"(u\cdot A)"
            return ("(u·∂)" + (f"^{m}" if m > 1 else "")) * (m > 0) + "(u·A)"
        return rf"\partial_{{({sl})}}A" if latex else f"∂A_({sl})"
    if t.kind == "chain":
        qa = "u.A" if t.name == "+" else "-u.A"
        if latex:
            qa = r"u\cdot A" if t.name == "+" else r"-u\cdot A"
            d = r"(u\cdot D)" if t.name == "+" else r"(u\cdot \bar D)"
            return (f"{d}^{{{t.order}}}" if t.order > 1 else d if t.order == 1 else "") + f"({qa})"
        d = "(u.D)" if t.name == "+" else "(u.D̄)"
        return (f"{d}^{t.order}" if t.order > 1 else d if t.order == 1 else "") + f"({qa})"
    if t.kind == "opaque":
        name = t.name if "(" in t.name else t.name + ("(x,u)" if t.order else "(x,0)")
        return name + (f"_{{{sl}}}" if sl else "")
    return f"{t.kind}[{sl}]"


def _gamma_text(g: tuple, latex=False) -> str:
    if len(g) == 1 and g[0] == U:
        return r"\not u" if latex else "u̸"
    if len(g) == 1 and g[0] == XI:
        return r"\not \xi" if latex else "ξ̸"
    lab = label_latex if latex else label_text
    if latex:
        inner = "".join(lab(x) for x in g)
        return rf"\gamma_{{{inner}}}" if len(g) == 1 else rf"\gamma_{{[{inner}]}}"
    inner = " ".join(lab(x) for x in g)
    return f"γ_{{{inner}}}" if len(g) == 1 else f"γ_[{inner}]"


def struct_factors(st: Struct, latex=False) -> list[str]:
    out = []
    if st.gamma:
        out.append(_gamma_text(st.gamma, latex))
    for t in st.tensors:
        out.append(_tensor_text(t, latex))
    if any(st.radial):
        out.append(_pow_text(r"|u|" if latex else "|u|", st.radial, latex))
    if st.log:
        base = r"\ln|u|" if latex else "ln|u|"
        out.append(base if st.log == 1 else (f"({base})^{{{st.log}}}" if latex else f"({base})^{st.log}"))
    for name, p in st.gens:
        base = {"lam": r"\lambda" if latex else "λ", "W": r"(\xi^2-\lambda^2)" if latex else "(ξ²-λ²)",
                "a": "a"}.get(name, name)
        out.append(_pow_text(base, p, latex))
    return out


def _term(st: Struct, c: SFun, latex=False) -> str:
    factors = struct_factors(st, latex)
    sep = " " if latex else " · "
    coef = format_sfun(c, latex)
    if not factors:
        return coef
    if coef == "1":
        return sep.join(factors)
    if coef == "-1":
        return "-" + sep.join(factors)
    if len(c.terms) > 1 or (" + " in coef or " - " in coef):
        coef = rf"\left({coef}\right)" if latex else f"[{coef}]"
    return coef + sep + sep.join(factors)


def to_text(e: Expression) -> str:
    if e.is_zero() and e.remainder is None:
        return "0"
    parts = [_term(st, c) for st, c in e.items()]
    if e.remainder is not None:
        parts.append(f"O(|u|^{_frac_str(e.remainder)})")
    out = parts[0]
    for p in parts[1:]:
        out += ("\n  - " + p[1:]) if p.startswith("-") else ("\n  + " + p)
    return out


def to_latex(e: Expression) -> str:
    if e.is_zero() and e.remainder is None:
        return "0"
    parts = [_term(st, c, latex=True) for st, c in e.items()]
    if e.remainder is not None:
        parts.append(rf"O\left(|u|^{{{_frac_str(e.remainder)}}}\right)")
    out = parts[0]
    for p in parts[1:]:
        out += (" \\\\\n - " + p[1:]) if p.startswith("-") else (" \\\\\n + " + p)
    return out
