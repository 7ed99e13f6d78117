"""Constructor expressions for rings.

Grammar (whitespace is ignored)::

    expr := "Z(" int ")" | "M(" int "," expr ")" | "UT(" int "," expr ")"
          | "SUT(" int "," expr ")" | "PROD(" expr "," expr ")"
          | "DORROH(" expr ")" | "SUB(" expr ",[" ints "])"
          | "QUOT(" expr ",[" ints "])" | "TABLE(" path ")"
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import dorroh_unitalization, ideal_generated, quotient, restrict, subring_generated
from .constructions import matrix_ring, product_ring, zmod
from .ring import DEFAULT_CAP, MATERIALIZE_LIMIT, BuildError, RingTable


class ParseError(ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class Mat:
    k: int
    inner: "RingExpr"


@dataclass(frozen=True)
class UT:
    k: int
    inner: "RingExpr"


@dataclass(frozen=True)
class SUT:
    k: int
    inner: "RingExpr"


@dataclass(frozen=True)
class Prod:
    left: "RingExpr"
    right: "RingExpr"


@dataclass(frozen=True)
class Dorroh:
    inner: "RingExpr"


@dataclass(frozen=True)
class Sub:
    inner: "RingExpr"
    gens: tuple[int, ...]


@dataclass(frozen=True)
class Quot:
    inner: "RingExpr"
    gens: tuple[int, ...]


@dataclass(frozen=True)
class Table:
    path: str


RingExpr = Zmod | Mat | UT | SUT | Prod | Dorroh | Sub | Quot | Table

_MATRIX = {"M": Mat, "UT": UT, "SUT": SUT}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def name(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            got = self.text[start] if start < len(self.text) else "end of input"
            raise ParseError(f"expected constructor name, got {got!r}", start)
        return self.text[start:self.pos], start

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("malformed integer", start)
        if self.pos < len(self.text) and (self.text[self.pos].isalpha()
                                          or self.text[self.pos] in "._"):
            raise ParseError("malformed integer", start)
        return int(self.text[start:self.pos])

    def int_list(self):
        self.expect("[")
        items = []
        if self.peek() == "]":
            self.pos += 1
            return tuple(items)
        while True:
            items.append(self.integer())
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("]")
            return tuple(items)

    def size(self, what):
        start = self.pos
        v = self.integer()
        if v < 1:
            raise ParseError(f"{what} must be >= 1", start)
        return v

    def expr(self):
        name, start = self.name()
        self.expect("(")
        if name == "Z":
            node = Zmod(self.size("modulus"))
        elif name in _MATRIX:
            k = self.size("matrix size")
            self.expect(",")
            node = _MATRIX[name](k, self.expr())
        elif name == "PROD":
            left = self.expr()
            self.expect(",")
            node = Prod(left, self.expr())
        elif name == "DORROH":
            node = Dorroh(self.expr())
        elif name in ("SUB", "QUOT"):
            inner = self.expr()
            self.expect(",")
            gens = self.int_list()
            node = (Sub if name == "SUB" else Quot)(inner, gens)
        elif name == "TABLE":
            self.skip()
            begin = self.pos
            end = self.text.find(")", begin)
            if end < 0:
                raise ParseError("unterminated TABLE path", begin)
            path = self.text[begin:end].strip()
            if not path:
                raise ParseError("empty TABLE path", begin)
            self.pos = end
            node = Table(path)
        else:
            raise ParseError(f"unknown constructor {name!r}", start)
        self.expect(")")
        return node


def parse_ring_expr(text: str) -> RingExpr:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        raise ParseError(f"unexpected trailing input {p.peek()!r}", p.pos)
    return node


def pretty(expr: RingExpr) -> str:
    match expr:
        case Zmod(n):
            return f"Z({n})"
        case Mat(k, inner):
            return f"M({k},{pretty(inner)})"
        case UT(k, inner):
            return f"UT({k},{pretty(inner)})"
        case SUT(k, inner):
            return f"SUT({k},{pretty(inner)})"
        case Prod(left, right):
            return f"PROD({pretty(left)},{pretty(right)})"
        case Dorroh(inner):
            return f"DORROH({pretty(inner)})"
        case Sub(inner, gens):
            return f"SUB({pretty(inner)},[{','.join(map(str, gens))}])"
        case Quot(inner, gens):
            return f"QUOT({pretty(inner)},[{','.join(map(str, gens))}])"
        case Table(path):
            return f"TABLE({path})"
    raise TypeError(f"not a ring expression: {expr!r}")


def _check_gens(gens, ring, what):
    if not gens:
        raise BuildError(f"{what} needs at least one generator")
    for g in gens:
        if not 0 <= g < ring.order:
            raise BuildError(f"{what} generator {g} out of range for order {ring.order}")


def build(expr: RingExpr | str, cap: int = DEFAULT_CAP,
          materialize_limit: int = MATERIALIZE_LIMIT) -> RingTable:
    """Construct the ring described by ``expr``.

    Raises BuildError when any intermediate order would exceed ``cap``.
    """
    if isinstance(expr, str):
        expr = parse_ring_expr(expr)
    ring = _build(expr, cap, materialize_limit)
    if ring.order <= materialize_limit:
        ring.materialize()
    return ring


def _over_cap(order, cap, expr):
    if order > cap:
        shown = order if order.bit_length() <= 64 else f"~2^{order.bit_length() - 1}"
        raise BuildError(f"order {shown} of {pretty(expr)} exceeds cap {cap}")


def _build(expr, cap, limit) -> RingTable:
    label = pretty(expr)
    match expr:
        case Zmod(n):
            if n < 1:
                raise BuildError("empty ring (order 0) rejected")
            _over_cap(n, cap, expr)
            return zmod(n, label)
        case Mat(k, inner) | UT(k, inner) | SUT(k, inner):
            if k < 1:
                raise BuildError("matrix size must be >= 1")
            base = _build(inner, cap, limit)
            kind = type(expr).__name__
            cells = {"Mat": k * k, "UT": k * (k + 1) // 2, "SUT": k * (k - 1) // 2}[kind]
            _over_cap(base.order ** cells, cap, expr)
            _settle(base, limit)
            return matrix_ring({"Mat": "M"}.get(kind, kind), k, base, label)
        case Prod(left, right):
            lr, rr = _build(left, cap, limit), _build(right, cap, limit)
            _over_cap(lr.order * rr.order, cap, expr)
            _settle(lr, limit)
            _settle(rr, limit)
            return product_ring(lr, rr, label)
        case Dorroh(inner):
            base = _build(inner, cap, limit)
            _over_cap(base.exponent * base.order, cap, expr)
            _settle(base, limit)
            return dorroh_unitalization(base, cap=cap, label=label, materialize=False)
        case Sub(inner, gens):
            base = _build(inner, cap, limit)
            _check_gens(gens, base, "SUB")
            _settle(base, limit)
            return restrict(base, subring_generated(base, gens), label, limit)
        case Quot(inner, gens):
            base = _build(inner, cap, limit)
            _check_gens(gens, base, "QUOT")
            _settle(base, limit)
            return quotient(base, ideal_generated(base, gens), label, limit)
        case Table(path):
            from .tableio import load_file

            ring = load_file(path)
            _over_cap(ring.order, cap, expr)
            ring.label = label
            return ring
    raise TypeError(f"not a ring expression: {expr!r}")


def _settle(ring, limit):
    # inner rings are queried many times by the outer backend
    if ring.order <= limit:
        ring.materialize()
