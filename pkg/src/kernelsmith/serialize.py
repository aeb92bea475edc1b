"""JSON form of expressions (schema ``kernelsmith.expr/1``).

Exact numbers are decimal strings; Gaussian rationals are [re, im] pairs;
affine exponents are [coefficient of s, coefficient of n, constant].
"""
from __future__ import annotations

from fractions import Fraction

from .expr import Expression, Struct, Tensor
from .rings import SFun, Poly, gauss_to_json, gauss_from_json, _frac_str

SCHEMA = "kernelsmith.expr/1"


def _fr(x) -> str:
    return _frac_str(Fraction(x))


def _aff(a) -> list:
    return [_fr(x) for x in a]


def _aff_in(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def sfun_to_json(c: SFun) -> list:
    out = []
    for (gammas, sin, phase, two, pi, trans), poly in c.sorted_items():
        out.append({
            "poly": [[es, en, gauss_to_json(v)] for (es, en), v in poly.sort_items()],
            "gammas": [_aff(g) for g in gammas],
            "sin": sin, "phase": phase, "two": _aff(two), "pi": _aff(pi),
            "trans": [[k, v] for k, v in trans],
        })
    return out


def sfun_from_json(data: list) -> SFun:
    total = SFun()
    for m in data:
        poly = Poly({(es, en): gauss_from_json(v) for es, en, v in m["poly"]})
        total = total + SFun.monomial(gammas=[_aff_in(g) for g in m["gammas"]], sin=m["sin"],
                                      phase=m["phase"], two=_aff_in(m["two"]), pi=_aff_in(m["pi"]),
                                      trans=tuple((k, v) for k, v in m["trans"]), poly=poly)
    return total


def _tensor_json(t: Tensor) -> dict:
    d = {"kind": t.kind, "slots": list(t.slots)}
    if t.derivs:
        d["derivs"] = list(t.derivs)
    if t.order:
        d["order"] = t.order
    if t.name:
        d["name"] = t.name
    return d


def to_json(e: Expression) -> dict:
    from .render import format_sfun
    terms = []
    for st, c in e.items():
        terms.append({"term": {
            "coeff": format_sfun(c),
            "sfun": sfun_to_json(c),
            "gammas": list(st.gamma),
            "fields": [_tensor_json(t) for t in st.tensors],
            "ustruct": {"radial": _aff(st.radial), "log": st.log},
            "gens": [[k, v] for k, v in st.gens],
        }})
    return {"schema": SCHEMA, "dimension": e.dim,
            "remainder_degree": None if e.remainder is None else _fr(e.remainder),
            "sum": terms}


def from_json(data: dict) -> Expression:
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}; expected {SCHEMA}")
    raw = []
    for item in data["sum"]:
        t = item["term"]
        ts = tuple(Tensor(f["kind"], tuple(f["slots"]), tuple(f.get("derivs", ())), f.get("order", 0),
                          f.get("name", "")) for f in t["fields"])
        st = Struct(tuple(t["gammas"]), ts, _aff_in(t["ustruct"]["radial"]), t["ustruct"]["log"],
                    tuple((k, v) for k, v in t["gens"]))
        raw.append((st, sfun_from_json(t["sfun"])))
    rem = data.get("remainder_degree")
    return Expression.build(raw, data.get("dimension"), None if rem is None else Fraction(rem))
