"""Text grammar for polynomials, identity files, and compact products.

Expression grammar (whitespace insignificant)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := [rational '*'] monomial
    monomial := var | opname '(' expr (',' expr)* ')'
    rational := int ['/' posint]

Operation variants are written ``opname_k`` (e.g. ``br_2``).  A name is an
operation iff it was declared; everything else is a variable.  Declarations::

    op <name>/<arity>              one plain operation
    op <name>/<arity> variants <n> the subscripted family name_1 .. name_n

``format_polynomial`` inverts ``parse``: parsing its output reproduces the
polynomial, and parse-then-format canonicalizes arbitrary input text.

``parse_product`` reads compact bracketings of single products, either
juxtaposed single letters like ``(((ab)c)d)e`` or starred names like
``(a*(b*c))*d``; it is used for free-algebra expansion input and for the
transcribed expansion tables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .core import (
    AlgebraError,
    ArityError,
    Identity,
    Monomial,
    OpSymbol,
    Polynomial,
    Variable,
    apply_op,
)


class ParseError(AlgebraError):
    """Syntax or declaration error, with position information."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<punct>[()+\-*/,]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            break
        if m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        elif m.group("int"):
            tokens.append(("int", m.group("int"), m.start("int")))
        else:
            tokens.append(("punct", m.group("punct"), m.start("punct")))
        pos = m.end()
    return tokens


class Signature:
    """Declared operations, addressable by display name (``br``, ``br_2``)."""

    def __init__(self, ops: Sequence[OpSymbol] = ()):
        self._by_name: dict[str, OpSymbol] = {}
        for op in ops:
            self.declare(op)

    def declare(self, op: OpSymbol) -> OpSymbol:
        name = op.display()
        old = self._by_name.get(name)
        if old is not None and old != op:
            raise ParseError(f"conflicting declaration for {name}")
        self._by_name[name] = op
        return op

    def declare_family(self, name: str, arity: int, variants: int | None) -> list[OpSymbol]:
        if variants is None:
            return [self.declare(OpSymbol(name, arity))]
        return [self.declare(OpSymbol(name, arity, v)) for v in range(1, variants + 1)]

    def lookup(self, name: str) -> OpSymbol | None:
        return self._by_name.get(name)

    def ops(self) -> list[OpSymbol]:
        return sorted(self._by_name.values())

    def __contains__(self, name: str) -> bool:
        return name in self._by_name


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = signature

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", pos)

    def parse_expr(self) -> Polynomial:
        out = Polynomial.zero()
        sign = Fraction(1)
        kind, val, _ = self.peek()
        if kind == "punct" and val in "+-":
            self.take()
            if val == "-":
                sign = -sign
        out = out + self.parse_term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "punct" and val in "+-":
                self.take()
                sign = Fraction(1) if val == "+" else Fraction(-1)
                out = out + self.parse_term().scale(sign)
            else:
                return out

    def parse_term(self) -> Polynomial:
        kind, val, pos = self.peek()
        coeff = Fraction(1)
        if kind == "int":
            self.take()
            num = int(val)
            den = 1
            kind, val, _ = self.peek()
            if kind == "punct" and val == "/":
                self.take()
                kind, val, pos = self.take()
                if kind != "int":
                    raise ParseError("expected denominator", pos)
                den = int(val)
                if den == 0:
                    raise ParseError("zero denominator", pos)
            coeff = Fraction(num, den)
            self.expect("*")
        return self.parse_monomial().scale(coeff)

    def parse_monomial(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind != "name":
            raise ParseError(f"expected variable or operation, found {val!r}", pos)
        nxt_kind, nxt_val, _ = self.peek()
        if nxt_kind == "punct" and nxt_val == "(":
            op = self.sig.lookup(val)
            if op is None:
                raise ParseError(f"unknown operation {val!r}", pos)
            self.take()
            args = [self.parse_expr()]
            while True:
                kind, v, p = self.take()
                if v == ",":
                    args.append(self.parse_expr())
                elif v == ")":
                    break
                else:
                    raise ParseError(f"expected ',' or ')', found {v!r}", p)
            if len(args) != op.arity:
                raise ArityError(
                    f"{op.display()} expects {op.arity} arguments, got {len(args)}"
                )
            return apply_op(op, args)
        if val in self.sig:
            raise ParseError(f"operation {val!r} used without arguments", pos)
        return Polynomial({Monomial.leaf(Variable(val)): Fraction(1)})

    def finished(self) -> bool:
        return self.i >= len(self.tokens)


def parse(text: str, signature: Signature | Sequence[OpSymbol] = ()) -> Polynomial:
    """Parse one expression against a signature of declared operations."""
    if not isinstance(signature, Signature):
        signature = Signature(signature)
    p = _Parser(text, signature)
    out = p.parse_expr()
    if not p.finished():
        _, val, pos = p.peek()
        raise ParseError(f"trailing input {val!r}", pos)
    return out


def _format_coeff(c: Fraction) -> str:
    a = abs(c)
    return "" if a == 1 else f"{a}*"


def format_monomial(m: Monomial) -> str:
    if m.is_leaf:
        return m.var.name
    args = ", ".join(format_monomial(c) for c in m.children)
    return f"{m.op.display()}({args})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for m, c in p.sorted_terms():
        body = _format_coeff(c) + format_monomial(m)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_DECL = re.compile(
    r"^op\s+([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)(?:\s+variants\s+(\d+))?\s*$"
)


def parse_declaration(line: str, signature: Signature) -> list[OpSymbol]:
    m = _DECL.match(line.strip())
    if not m:
        raise ParseError(f"bad declaration: {line.strip()!r}")
    name, arity, variants = m.group(1), int(m.group(2)), m.group(3)
    return signature.declare_family(name, arity, int(variants) if variants else None)


def parse_file(text: str) -> tuple[Signature, list[Identity]]:
    """Read a declarations header followed by one identity per line.

    Lines are ``op name/arity [variants n]`` declarations, ``name: expr``
    named identities, bare ``expr`` lines, ``#`` comments, or blank.
    """
    signature = Signature()
    identities: list[Identity] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("op ") or line.startswith("op\t"):
            parse_declaration(line, signature)
            continue
        name = None
        # a leading "label:" is never valid expression syntax, so it is a name
        m = re.match(r"^([A-Za-z_][A-Za-z0-9_.\-]*)\s*:\s*(.*)$", line)
        if m:
            name, line = m.group(1), m.group(2)
        identities.append(Identity(parse(line, signature), name=name))
    return signature, identities


def format_file(signature: Signature, identities: Sequence[Identity]) -> str:
    lines = []
    seen: set[str] = set()
    for op in signature.ops():
        base = (op.name, op.arity)
        if op.variant is None:
            lines.append(f"op {op.name}/{op.arity}")
        elif base not in seen:
            family = [o for o in signature.ops() if (o.name, o.arity) == base]
            lines.append(f"op {op.name}/{op.arity} variants {len(family)}")
            seen.add(base)
    for ident in identities:
        prefix = f"{ident.name}: " if ident.name else ""
        lines.append(prefix + format_polynomial(ident.lhs))
    return "\n".join(lines) + "\n"


def parse_product(text: str, op: OpSymbol, *, starred: bool | None = None) -> Monomial:
    """Parse a compact product over one binary operation.

    ``starred=None`` autodetects: with ``*`` present, names may be long and
    products are written ``x*y`` (left-associative); without it, factors are
    single-letter variables juxtaposed, e.g. ``(((ab)c)d)e``.
    """
    if op.arity != 2:
        raise ArityError("compact products require a binary operation")
    if starred is None:
        starred = "*" in text
    text = text.strip()
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def factor() -> Monomial:
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ParseError("unexpected end of product", pos)
        ch = text[pos]
        if ch == "(":
            pos += 1
            node = product()
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("unbalanced parenthesis", pos)
            pos += 1
            return node
        if starred:
            m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[pos:])
            if not m:
                raise ParseError(f"expected name, found {ch!r}", pos)
            pos += m.end()
            return Monomial.leaf(Variable(m.group(0)))
        if not ch.isalpha():
            raise ParseError(f"expected letter, found {ch!r}", pos)
        pos += 1
        return Monomial.leaf(Variable(ch))

    def product() -> Monomial:
        nonlocal pos
        node = factor()
        while True:
            skip_ws()
            if pos < len(text) and text[pos] == "*":
                if not starred:
                    raise ParseError("unexpected '*'", pos)
                pos += 1
                node = Monomial.apply(op, (node, factor()))
            elif not starred and pos < len(text) and (text[pos] == "(" or text[pos].isalpha()):
                node = Monomial.apply(op, (node, factor()))
            else:
                return node

    node = product()
    skip_ws()
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos]!r}", pos)
    return node


def parse_signed_products(text: str, op: OpSymbol) -> Polynomial:
    """Read a signed sum of compact products, e.g. ``-(((ac)b)e)d + ...``."""
    out = Polynomial.zero()
    chunks = re.findall(r"([+-]?)\s*([^+-]+)", text)
    for sign, body in chunks:
        body = body.strip()
        if not body:
            continue
        coeff = Fraction(-1) if sign == "-" else Fraction(1)
        cm = re.match(r"^(\d+(?:/\d+)?)\s*\*?\s*(.*)$", body)
        if cm:
            coeff *= Fraction(cm.group(1))
            body = cm.group(2)
        out = out + Polynomial({parse_product(body, op): coeff})
    return out
