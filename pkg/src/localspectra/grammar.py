"""Text grammar for elements, compact open sets and residue lists.

Elements
    rationals and arithmetic   ``1/2``, ``-3``, ``2^-3 * 5``, ``(1 + 2^3)/3``
    Laurent polynomials        ``T^-1 + 1 + 2*T^2`` (optionally suffixed ``(p=3)``)
    explicit digit windows     ``padic(p=2, "1011", v=-1)``: digits a_v, a_{v+1}, ...

Sets
    ``ball(c, r)`` terms joined by ``∪``, ``u`` or ``+``; the radius ``r`` is a
    power of p written as a number (``1``, ``1/4``, ``9``) or as ``p^k``.

Residue lists
    comma separated integers, ``0,3,4,7``.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .balls import Ball, CompactOpenSet
from .errors import InvalidSetError
from .field import FieldModel, LocalFieldElement, Vector, as_vector


class GrammarError(ValueError):
    pass


_PADIC = re.compile(r'^\s*padic\(\s*p\s*=\s*(\d+)\s*,\s*"([0-9\[\]\s]*)"\s*(?:,\s*v\s*=\s*(-?\d+)\s*)?\)\s*$')
_P_SUFFIX = re.compile(r"\(\s*p\s*=\s*(\d+)\s*\)\s*$")


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c != 0}


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _const(c) -> dict:
    return {0: Fraction(c)} if c else {}


def _as_scalar(poly: dict, what: str) -> Fraction:
    if any(e != 0 for e in poly):
        raise GrammarError(f"{what} must be a rational constant")
    return poly.get(0, Fraction(0))


def _eval(node) -> dict:
    """Evaluate an arithmetic AST into a Laurent polynomial {exponent: Fraction}."""
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return _const(node.value)
    if isinstance(node, ast.Name) and node.id == "T":
        return {1: Fraction(1)}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return {e: -c for e, c in v.items()} if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return _poly_add(left, right)
        if isinstance(node.op, ast.Sub):
            return _poly_add(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _poly_mul(left, right)
        if isinstance(node.op, ast.Div):
            if len(right) != 1:
                raise GrammarError("division only by a nonzero constant or monomial")
            (e, c), = right.items()
            return {k - e: v / c for k, v in left.items()}
        if isinstance(node.op, ast.Pow):
            k = _as_scalar(right, "exponent")
            if k.denominator != 1:
                raise GrammarError("exponent must be an integer")
            k = int(k)
            if k >= 0:
                out = _const(1)
                for _ in range(k):
                    out = _poly_mul(out, left)
                return out
            if len(left) != 1:
                raise GrammarError("negative powers only of monomials")
            (e, c), = left.items()
            return {e * k: c**k}
    raise GrammarError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _parse_digit_string(s: str) -> list[int]:
    s = s.replace(" ", "")
    out, i = [], 0
    while i < len(s):
        if s[i] == "[":
            j = s.index("]", i)
            out.append(int(s[i + 1 : j]))
            i = j + 1
        else:
            out.append(int(s[i]))
            i += 1
    return out


def parse_element(text: str, model: FieldModel) -> LocalFieldElement:
    m = _PADIC.match(text)
    if m:
        p = int(m.group(1))
        if p != model.p or not model.is_padic:
            raise GrammarError(f"literal for Q_{p} used in {model}")
        digits = _parse_digit_string(m.group(2))
        v = int(m.group(3) or 0)
        if any(d >= p for d in digits):
            raise GrammarError("digit out of range")
        return model.from_digits(digits, v)
    body = text
    m = _P_SUFFIX.search(text)
    if m:
        if int(m.group(1)) != model.p:
            raise GrammarError(f"literal for p={m.group(1)} used in {model}")
        body = text[: m.start()]
    try:
        tree = ast.parse(body.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise GrammarError(f"cannot parse element {text!r}") from exc
    poly = _eval(tree)
    if model.is_padic:
        return model.element(_as_scalar(poly, "a Q_p literal"))
    coeffs = {}
    for e, c in poly.items():
        if c.denominator % model.p == 0:
            raise GrammarError(f"coefficient {c} has no image in F_{model.p}")
        coeffs[e] = c.numerator * pow(c.denominator, -1, model.p)
    return model.laurent_poly(coeffs)


def parse_point(text: str, model: FieldModel) -> Vector:
    """A scalar or a parenthesized tuple ``(x1; x2)`` separated by semicolons."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")") and ";" in t:
        return Vector(tuple(parse_element(part, model) for part in t[1:-1].split(";")))
    return as_vector(model, parse_element(t, model))


def _split_top(text: str, seps: tuple[str, ...]) -> list[str]:
    """Split on separators that are not inside parentheses or quotes."""
    parts, depth, buf, quoted, i = [], 0, [], False, 0
    while i < len(text):
        ch = text[i]
        if ch == '"':
            quoted = not quoted
        if not quoted:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif depth == 0:
                hit = next((s for s in seps if text.startswith(s, i)), None)
                if hit:
                    parts.append("".join(buf))
                    buf = []
                    i += len(hit)
                    continue
        buf.append(ch)
        i += 1
    parts.append("".join(buf))
    return [x.strip() for x in parts if x.strip()]


def parse_radius_exponent(text: str, p: int) -> int:
    t = text.strip().replace(" ", "")
    if t in ("p", f"{p}"):
        return 1
    m = re.fullmatch(r"(?:p|\d+)\^(-?\d+)", t)
    if m:
        base = t.split("^")[0]
        if base not in ("p", str(p)):
            raise GrammarError(f"radius base must be p={p}")
        return int(m.group(1))
    r = Fraction(t)
    if r <= 0:
        raise GrammarError("radius must be positive")
    n, k = r, 0
    while n > 1 and n.denominator == 1 and n.numerator % p == 0:
        n /= p
        k += 1
    while n < 1 and n.numerator == 1 and n.denominator % p == 0:
        n *= p
        k -= 1
    if n != 1:
        raise GrammarError(f"radius {text} is not a power of {p}")
    return k


def parse_set(text: str, model: FieldModel) -> CompactOpenSet:
    """``ball(c, r) ∪ ball(c', r)``; balls of different radii are refined to the smallest."""
    balls = []
    for term in _split_top(text, ("∪", " u ", "+", "|")):
        m = re.fullmatch(r"\s*ball\s*\((.*)\)\s*", term, re.S)
        if not m:
            raise GrammarError(f"expected ball(c, r), got {term!r}")
        args = _split_top(m.group(1), (",",))
        if len(args) != 2:
            raise GrammarError(f"ball needs a center and a radius: {term!r}")
        balls.append(Ball(parse_point(args[0], model), parse_radius_exponent(args[1], model.p)))
    if not balls:
        raise GrammarError("empty set expression")
    scale = min(b.radius_exp for b in balls)
    pieces = []
    for b in balls:
        pieces.extend(b.refine(scale) if b.radius_exp > scale else [b])
    try:
        return CompactOpenSet(scale, tuple(pieces))
    except InvalidSetError as exc:
        raise GrammarError(str(exc)) from exc


def parse_residues(text: str) -> list[int]:
    t = text.strip().strip("{}[]")
    if not t:
        return []
    try:
        return [int(x) for x in t.split(",") if x.strip()]
    except ValueError as exc:
        raise GrammarError(f"bad residue list {text!r}") from exc


def parse_points(text: str, model: FieldModel) -> list[Vector]:
    """Comma separated points (elements may not contain top-level commas)."""
    t = text.strip().strip("{}[]")
    return [parse_point(x, model) for x in _split_top(t, (",",))]
