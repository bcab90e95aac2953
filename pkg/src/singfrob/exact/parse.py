"""A small recursive-descent parser for polynomial input.

Grammar (whitespace-insensitive)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor | "/" number)*
    factor := atom ["^" integer]
    atom   := number | identifier | "(" expr ")"
    number := digits ["/" digits]
"""

import re
from fractions import Fraction

from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot tokenize at {text[pos:]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}")
            out.append(("op", op))
        pos = m.end()
    return out


def identifiers(text):
    return sorted({v for kind, v in _tokenize(text) if kind == "id"})


def parse_poly(text, vars=None):
    """Parse ``text`` into a MultiPoly over ``vars`` (default: sorted identifiers)."""
    tokens = _tokenize(text)
    if vars is None:
        vars = sorted({v for kind, v in tokens if kind == "id"})
    vars = tuple(vars)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r} in {text!r}")
        pos += 1
        return tok

    def number():
        _, n = take("num")
        if peek() == ("op", "/") and pos + 1 < len(tokens) and tokens[pos + 1][0] == "num":
            take("op", "/")
            _, d = take("num")
            if d == 0:
                raise ParseError("zero denominator")
            return Fraction(n, d)
        return Fraction(n)

    def atom():
        kind, val = peek()
        if kind == "num":
            return MultiPoly.const(number(), vars)
        if kind == "id":
            take()
            if val not in vars:
                raise ParseError(f"unknown variable {val!r}")
            return MultiPoly.var(val, vars)
        if (kind, val) == ("op", "("):
            take()
            e = expr()
            take("op", ")")
            return e
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    def factor():
        a = atom()
        if peek() == ("op", "^"):
            take()
            _, k = take("num")
            a = a**k
        return a

    def term():
        t = factor()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            if op == "*":
                t = t * factor()
            else:
                d = number()
                if d == 0:
                    raise ParseError("division by zero")
                t = t / d
        return t

    def expr():
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        e = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            t = term()
            e = e + t if op == "+" else e - t
        return e

    if not tokens:
        raise ParseError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input {tokens[pos][1]!r} in {text!r}")
    return result
