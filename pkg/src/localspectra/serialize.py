"""Canonical JSON and textual forms of field elements."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .cyclotomic import CyclotomicSum
from .field import FieldModel, LocalFieldElement, Vector


def _reconstruct(unit: int, modulus: int) -> tuple[int, int] | None:
    """Rational reconstruction: a/b with a = b*unit mod modulus and |a|, |b| small."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, unit % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(r1, t1) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return r1, t1


def element_rational(x: LocalFieldElement) -> Fraction | None:
    """A small rational congruent to x at its precision (Q_p only), if one exists."""
    if not x.model.is_padic:
        return None
    if x.is_zero():
        return Fraction(0)
    p = x.p
    mod = p ** len(x.digits)
    rec = _reconstruct(x._unit, mod)
    if rec is None or rec[1] % p == 0:
        return None
    a, b = rec
    return Fraction(a, b) * Fraction(p) ** int(x.valuation)


def format_element(x: LocalFieldElement) -> str:
    """Text accepted back by :func:`localspectra.grammar.parse_element`."""
    p = x.p
    if x.model.is_padic:
        r = element_rational(x)
        if r is not None:
            return str(r)
        digits = "".join(str(d) if p <= 10 else f"[{d}]" for d in x.digits)
        return f'padic(p={p}, "{digits}", v={int(x.valuation)})'
    if x.is_zero():
        return "0"
    terms = []
    for i, d in enumerate(x.digits):
        if not d:
            continue
        e = int(x.valuation) + i
        mono = "1" if e == 0 else ("T" if e == 1 else f"T^{e}")
        if e == 0:
            terms.append(str(d))
        else:
            terms.append(mono if d == 1 else f"{d}*{mono}")
    return " + ".join(terms)


def format_point(x) -> Any:
    if isinstance(x, Vector):
        if x.dimension == 1:
            return format_element(x[0])
        return [format_element(c) for c in x]
    if isinstance(x, LocalFieldElement):
        return format_element(x)
    return to_jsonable(x)


def to_jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, (Vector, LocalFieldElement)):
        return format_point(obj)
    if isinstance(obj, FieldModel):
        return {"kind": obj.kind.value, "p": obj.p}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float):
        return round(obj, 12) + 0.0
    if hasattr(obj, "item"):
        return to_jsonable(obj.item())
    return obj


def dumps(obj: Any, pretty: bool = False) -> str:
    """Deterministic JSON text: sorted keys, fixed separators."""
    data = to_jsonable(obj)
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_fraction(text: Any) -> Fraction:
    return Fraction(str(text))


def cyclotomic_from_json(p: int, data: Any) -> CyclotomicSum:
    """Inverse of the report encoding: a rational string or ``{"phases": [[k, level, coeff], ...]}``."""
    if isinstance(data, dict):
        parts = [CyclotomicSum.from_exponents(p, int(m), {int(k): 1}) * parse_fraction(c) for k, m, c in data["phases"]]
        return CyclotomicSum.sum(p, parts) if parts else CyclotomicSum.rational(p, 0)
    return CyclotomicSum.rational(p, parse_fraction(data))
