"""Canonical JSON form for FourierSeries."""

from __future__ import annotations

import json

from gmpy2 import mpq

from .coef import VARIABLES, CoefFn
from .cyclotomic import DEFAULT_ORDER, Cyc, field_degree, scalar_coords
from .series import FourierSeries


def _series_cyclotomic_order(s: FourierSeries, default: int) -> int:
    for c in s.terms.values():
        for x in c.num.values():
            if isinstance(x, Cyc):
                return x.order
    return default


def _mono_json(m: tuple) -> dict:
    return {name: str(e) for name, e in zip(VARIABLES, m) if e}


def coef_to_json(c: CoefFn, order: int) -> dict:
    return {
        "num": [
            [[str(x) for x in scalar_coords(v, order)], _mono_json(m)]
            for m, v in sorted(c.num.items())
        ],
        "den": [{"mono": _mono_json(u), "pow": int(e)} for u, e in c.den],
    }


def series_to_dict(s: FourierSeries, cyclotomic_order: int = DEFAULT_ORDER) -> dict:
    s = s.reduce()
    order = _series_cyclotomic_order(s, cyclotomic_order)
    return {
        "qden": s.qden(),
        "q_order": None if s.order is None else str(s.order),
        "vars": list(VARIABLES),
        "cyclotomic_order": order,
        "terms": [
            {"q": str(e), "coef": coef_to_json(s.terms[e], order)}
            for e in s.exponents()
        ],
    }


def series_to_json(s: FourierSeries, cyclotomic_order: int = DEFAULT_ORDER) -> str:
    return json.dumps(series_to_dict(s, cyclotomic_order), sort_keys=True, separators=(",", ":"))


def _mono_from_json(d: dict) -> tuple:
    out = [mpq(0)] * len(VARIABLES)
    for name, e in d.items():
        out[VARIABLES.index(name)] = mpq(e)
    return tuple(out)


def _scalar_from_coords(coords, order: int):
    values = [mpq(x) for x in coords]
    if len(values) != field_degree(order):
        raise ValueError("scalar coordinate vector has the wrong length")
    return Cyc.make(values, order)


def series_from_dict(d: dict) -> FourierSeries:
    order = int(d.get("cyclotomic_order", DEFAULT_ORDER))
    if list(d.get("vars", VARIABLES)) != list(VARIABLES):
        raise ValueError(f"series variables {d.get('vars')} differ from {list(VARIABLES)}")
    terms = {}
    for t in d["terms"]:
        coef = t["coef"]
        num = {
            _mono_from_json(m): _scalar_from_coords(coords, order) for coords, m in coef["num"]
        }
        den = [(_mono_from_json(f["mono"]), int(f["pow"])) for f in coef["den"]]
        terms[mpq(t["q"])] = CoefFn(num, den)
    q_order = d.get("q_order")
    return FourierSeries(terms, None if q_order is None else mpq(q_order))


def series_from_json(text: str) -> FourierSeries:
    return series_from_dict(json.loads(text))
