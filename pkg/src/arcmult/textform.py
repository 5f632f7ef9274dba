"""Input grammar and canonical text forms for differential polynomials.

Grammar (whitespace ignored):

    poly     := ['-'] term { ('+'|'-') term }
    term     := factor { '*' factor }
    factor   := base ['^' nat]
    base     := rational | varref | '(' poly ')'
    varref   := ident {'\\''} | 'D(' ident ',' nat ')'
    rational := nat ['/' nat]

Unknown identifiers register new base variables.  Ideal files separate
generators by commas or newlines; '#' starts a comment.  The canonical
printer emits strings the parser maps back to the same polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple

from .diffpoly import (
    DMono,
    DPoly,
    DVar,
    OrderKind,
    compare,
    leading_monomial,
)


class ParseError(ValueError):
    """Syntax error with source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class NameTable:
    """Mutable mapping between base-variable names and indices."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        for n in names:
            self.register(n)

    def register(self, name: str) -> int:
        idx = self._index.get(name)
        if idx is None:
            idx = len(self._names)
            self._names.append(name)
            self._index[name] = idx
        return idx

    def name(self, base: int) -> str:
        if base < len(self._names):
            return self._names[base]
        return f"x{base}"

    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._index


class IdealSpec(NamedTuple):
    """A parsed ideal: source text, generators, and the name table."""

    source: str
    generators: tuple[DPoly, ...]
    names: NameTable


class _Token(NamedTuple):
    kind: str  # NUM IDENT OP END
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*^()',/":
            toks.append(_Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("END", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, names: NameTable):
        self.toks = _tokenize(text)
        self.pos = 0
        self.names = names

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, value: str | None = None) -> _Token:
        t = self.next()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {t.value or 'end of input'!r}",
                             t.line, t.col)
        return t

    def at_op(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.value == value

    def parse_poly(self) -> DPoly:
        negate = False
        if self.at_op("-"):
            self.next()
            negate = True
        p = self.parse_term()
        if negate:
            p = -p
        while self.at_op("+") or self.at_op("-"):
            op = self.next().value
            q = self.parse_term()
            p = p + q if op == "+" else p - q
        return p

    def parse_term(self) -> DPoly:
        p = self.parse_factor()
        while self.at_op("*"):
            self.next()
            p = p * self.parse_factor()
        return p

    def parse_factor(self) -> DPoly:
        p = self.parse_base()
        if self.at_op("^"):
            self.next()
            t = self.expect("NUM")
            p = p ** int(t.value)
        return p

    def parse_base(self) -> DPoly:
        t = self.peek()
        if t.kind == "NUM":
            self.next()
            num = int(t.value)
            if self.at_op("/"):
                self.next()
                d = self.expect("NUM")
                den = int(d.value)
                if den == 0:
                    raise ParseError("zero denominator", d.line, d.col)
                return DPoly.constant(Fraction(num, den))
            return DPoly.constant(num)
        if t.kind == "IDENT":
            return self.parse_varref()
        if self.at_op("("):
            self.next()
            p = self.parse_poly()
            self.expect("OP", ")")
            return p
        raise ParseError(f"expected a factor, found {t.value or 'end of input'!r}",
                         t.line, t.col)

    def parse_varref(self) -> DPoly:
        t = self.expect("IDENT")
        if t.value == "D" and self.at_op("("):
            self.next()
            name = self.expect("IDENT")
            self.expect("OP", ",")
            k = self.expect("NUM")
            self.expect("OP", ")")
            base = self.names.register(name.value)
            return DPoly.var(DVar(base, int(k.value)))
        order = 0
        while self.at_op("'"):
            self.next()
            order += 1
        base = self.names.register(t.value)
        return DPoly.var(DVar(base, order))

    def finish(self) -> None:
        t = self.peek()
        if t.kind != "END":
            raise ParseError(f"trailing input {t.value!r}", t.line, t.col)


def parse_poly(text: str, names: NameTable) -> DPoly:
    """Parse one polynomial; unknown identifiers become new base variables."""
    p = _Parser(text, names)
    out = p.parse_poly()
    p.finish()
    return out


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_ideal(text: str, names: NameTable | None = None) -> IdealSpec:
    """Parse a comma/newline-separated generator list with '#' comments."""
    names = names if names is not None else NameTable()
    stripped = _strip_comments(text)
    # split on commas and newlines that sit outside parentheses
    pieces: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in stripped:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch in ",\n" and depth == 0:
            pieces.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    pieces.append("".join(cur))
    gens = tuple(parse_poly(s, names) for s in pieces if s.strip())
    return IdealSpec(text, gens, names)


# -- canonical printing --------------------------------------------------------


def format_var(v: DVar, names: NameTable) -> str:
    name = names.name(v.base)
    if v.order == 0:
        return name
    if v.order <= 3:
        return name + "'" * v.order
    return f"D({name},{v.order})"


def format_mono(m: DMono, names: NameTable) -> str:
    if m.is_one():
        return "1"
    parts = []
    for v, e in m.items():
        s = format_var(v, names)
        if e > 1:
            if v.order == 0:
                parts.append(f"{s}^{e}")
            else:
                parts.append(f"({s})^{e}")
        else:
            parts.append(s)
    return "*".join(parts)


def _coeff_str(c: Fraction) -> str:
    return str(c)  # Fraction prints n or n/d


def format_poly(p: DPoly, names: NameTable, order: OrderKind = OrderKind.DEGLEX) -> str:
    """Canonical string: terms descending under the ordering, '*' products."""
    if p.is_zero():
        return "0"
    key = cmp_to_key(lambda a, b: compare(a, b, order))
    monos = sorted(p.monomials(), key=key, reverse=True)
    out: list[str] = []
    for i, m in enumerate(monos):
        c = p.coeff(m)
        neg = c < 0
        mag = -c if neg else c
        if m.is_one():
            body = _coeff_str(mag)
        elif mag == 1:
            body = format_mono(m, names)
        else:
            body = f"{_coeff_str(mag)}*{format_mono(m, names)}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def display_normalized(p: DPoly, order: OrderKind = OrderKind.DEGLEX) -> DPoly:
    """Integer coefficients, no common content, positive leading coefficient."""
    if p.is_zero():
        return p
    denom = 1
    for _, c in p.terms():
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    scaled = [(m, c * denom) for m, c in p.terms()]
    content = 0
    for _, c in scaled:
        content = _gcd(content, int(c))
    lm, lc = leading_monomial(p, order)
    if lc < 0:
        content = -content
    return DPoly([(m, Fraction(int(c) // content)) for m, c in scaled])


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def format_basis(gens: Iterable[DPoly], names: NameTable,
                 order: OrderKind = OrderKind.DEGLEX, normalized: bool = True) -> list[str]:
    """Canonical strings for basis generators, display-normalized by default."""
    out = []
    for g in gens:
        if normalized:
            g = display_normalized(g, order)
        out.append(format_poly(g, names, order))
    return out
