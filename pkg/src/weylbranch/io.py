"""Text and JSON forms of weights, decompositions and branching results.

Decompositions are written as ``(3,0)+(0,3)+3(1,1)`` for simple targets and
``(2)(0)+(0)(-2)`` for products, one parenthesised group per target factor.
Coordinates may be linear expressions in named parameters (``2a+b``,
``|2a-b|``, ``-a-c``) which are evaluated exactly.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from fractions import Fraction
from typing import Mapping, Sequence

from .branching.core import BranchingResult, render_order
from .orbits import Weight, weight
from .rootdata import Algebra, ProductAlgebra, parse_algebra, parse_simple

Params = Mapping[str, Fraction]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(.))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num:
            out.append(("num", num))
        elif name:
            # "2ab" is 2*a*b only when every letter is a parameter; split later
            out.append(("name", name))
        elif op and not op.isspace():
            out.append(("op", op))
    return out


class _Expr:
    """Recursive-descent evaluator for sums of products with |.| and (.)."""

    def __init__(self, text: str, params: Params):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.params = params

    def fail(self, msg: str):
        raise ParseError(f"{msg} in {self.text!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Fraction:
        v = self.sum()
        if self.i != len(self.toks):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return v

    def sum(self) -> Fraction:
        v = self.product()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def product(self) -> Fraction:
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        v = self.atom()
        while True:
            kind, val = self.peek()
            if kind in ("num", "name") or (kind == "op" and val == "("):
                v *= self.atom()
            elif kind == "op" and val == "*":
                self.take()
                v *= self.atom()
            elif kind == "op" and val == "/":
                self.take()
                d = self.atom()
                if d == 0:
                    self.fail("division by zero")
                v /= d
            else:
                return sign * v

    def atom(self) -> Fraction:
        kind, val = self.take()
        if kind == "num":
            if "/" in val and int(val.partition("/")[2]) == 0:
                self.fail("division by zero")
            return Fraction(val)
        if kind == "name":
            v = Fraction(1)
            for name in ([val] if val in self.params else list(val)):
                if name not in self.params:
                    self.fail(f"unknown parameter {name!r}")
                v *= Fraction(self.params[name])
            return v
        if (kind, val) == ("op", "("):
            v = self.sum()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        if (kind, val) == ("op", "|"):
            v = self.sum()
            if self.take() != ("op", "|"):
                self.fail("missing closing '|'")
            return abs(v)
        self.fail(f"unexpected {val!r}" if val else "unexpected end")


def evaluate(text: str, params: Params | None = None) -> Fraction:
    return _Expr(text, params or {}).parse()


def parse_params(text: str | None) -> dict[str, Fraction]:
    """``a=2,b=3/2`` -> {'a': 2, 'b': 3/2}."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_]\w*", name):
            raise ParseError(f"bad parameter assignment {item!r}; expected name=value")
        out[name] = evaluate(value, out)
    return out


def parse_weight(text: str, params: Params | None = None) -> Weight:
    """Comma-separated coordinates, optionally wrapped in parentheses."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and _matching(text, 0) == len(text) - 1:
        text = text[1:-1]
    if not text.strip():
        raise ParseError("empty weight")
    return tuple(evaluate(part, params) for part in _split_top(text, ","))


def _matching(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced parentheses in {text!r}")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, bar, cur = [], 0, False, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|":
            bar = not bar
        if ch == sep and depth == 0 and not bar:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def fmt_number(x) -> str:
    return str(Fraction(x))


def fmt_tuple(values: Sequence) -> str:
    return "(" + ",".join(fmt_number(x) for x in values) + ")"


def fmt_weight(target: Algebra | ProductAlgebra, w: Sequence) -> str:
    pa = ProductAlgebra.of(target)
    return "".join(fmt_tuple(block) for block in pa.split(w))


def render_decomposition(target: Algebra | ProductAlgebra,
                         entries: Sequence[tuple[Sequence, int]]) -> str:
    """Lower multiplicities first, then weights in descending order."""
    items = sorted(((weight(w), m) for w, m in entries), key=render_order)
    return "+".join((str(m) if m != 1 else "") + fmt_weight(target, w) for w, m in items)


def render_result(r: BranchingResult) -> str:
    return render_decomposition(r.target, r.entries)


def _parse_term(term: str, params: Params) -> tuple[list[Weight], int]:
    term = term.strip()
    m = re.match(r"(\d*)\s*", term)
    mult = int(m.group(1)) if m.group(1) else 1
    rest = term[m.end():]
    groups = []
    while rest.strip():
        rest = rest.strip()
        if not rest.startswith("("):
            raise ParseError(f"expected '(' in term {term!r}")
        end = _matching(rest, 0)
        groups.append(parse_weight(rest[: end + 1], params))
        rest = rest[end + 1:]
    if not groups:
        raise ParseError(f"term {term!r} has no weight")
    return groups, mult


def parse_decomposition(text: str, target: Algebra | ProductAlgebra | None = None,
                        params: Params | None = None) -> Counter:
    """Inverse of render_decomposition; returns a Counter of flat weights.

    When ``target`` is given each term must have one group per factor with the
    factor's rank; when it is not, the groups are simply concatenated.
    """
    params = params or {}
    pa = ProductAlgebra.of(target) if target is not None else None
    out: Counter = Counter()
    for term in _split_top(text.strip(), "+"):
        if not term.strip():
            raise ParseError(f"empty term in {text!r}")
        groups, mult = _parse_term(term, params)
        if pa is not None:
            ranks = [f.rank for f in pa.factors]
            if [len(g) for g in groups] != ranks:
                raise ParseError(f"term {term.strip()!r} does not match factor ranks {ranks} of {pa}")
        out[sum(groups, ())] += mult
    return out


# --- JSON -------------------------------------------------------------------

def result_to_dict(r: BranchingResult, gamma: Fraction | None = None) -> dict:
    doc = {
        "query": {"source": str(r.source), "target": str(r.target),
                  "weight": [fmt_number(x) for x in r.dominant]},
        "result": {
            "text": render_result(r),
            "entries": [
                {"weight": [[fmt_number(x) for x in block] for block in r.target.split(w)], "mult": m}
                for w, m in r.entries
            ],
        },
        "conservation": {"source_size": r.source_size, "image_size": r.image_size,
                         "ok": r.conserved},
    }
    if gamma is not None:
        doc["gamma"] = fmt_number(gamma)
    return doc


def result_from_dict(doc: dict) -> BranchingResult:
    q = doc["query"]
    source = parse_simple(q["source"])
    target = parse_algebra(q["target"])
    entries = {}
    for e in doc["result"]["entries"]:
        w = tuple(Fraction(x) for block in e["weight"] for x in block)
        entries[w] = int(e["mult"])
    return BranchingResult.build(source, target, [Fraction(x) for x in q["weight"]], entries)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
