"""A small language for ladder continued fractions.

    # Touchard
    b = 1+v;
    a(i) = (1-q^i)*v;

    # general d
    b = 1+v;
    a(i) = (1-q^i)*(1-q^(i+d-1))*v;
    param d = 3;

``a(i)`` must be a Laurent polynomial in q times a fixed power of the series
variable (v or z); that power is the weight of the fraction. Exponents may use
i and d linearly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

from .arith import ONE, LaurentPoly, VPoly
from .contfrac import CFSpec

__all__ = [
    "DSLError",
    "LexError",
    "ParseError",
    "SemanticError",
    "Int",
    "Sym",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "SpecDoc",
    "parse_spec",
    "load_spec",
    "eval_ladder",
    "eval_expr",
    "format_expr",
    "format_spec",
    "to_cfspec",
    "ladder_names",
    "ladder_text",
    "load_ladder",
]

SYMBOLS = ("q", "v", "z", "i", "d")
SERIES_VARS = ("v", "z")


class DSLError(ValueError):
    kind = "error"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{self.kind} at line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class LexError(DSLError):
    kind = "lexical error"


class ParseError(DSLError):
    kind = "syntax error"


class SemanticError(DSLError):
    kind = "semantic error"


# -- AST (positions do not take part in equality) -----------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Int(Node):
    value: int
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Sym(Node):
    name: str
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: Node
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class SpecDoc:
    b_expr: Node
    a_expr: Node
    weight_expr: Node
    params: Mapping[str, int]
    variable: str

    @property
    def weight_power(self) -> int:
        w = self.weight_expr
        return w.exp.value if isinstance(w, Pow) else 1


# -- lexer ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*^()=;])")


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group()
        if m.lastgroup == "int":
            out.append(Token("INT", chunk, line, col))
        elif m.lastgroup == "ident":
            out.append(Token("IDENT", chunk, line, col))
        elif m.lastgroup == "op":
            out.append(Token("OP", chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    out.append(Token("EOF", "", line, col))
    return out


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def advance(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("OP", "IDENT") and self.tok.text == text

    def expect(self, text: str, opener: Token | None = None) -> Token:
        if not self.at(text):
            # a paren still open when the statement ends is blamed on the '('
            if opener is not None and (self.tok.kind == "EOF" or self.at(";")):
                raise ParseError("unbalanced '(': missing ')'", opener.line, opener.col)
            raise ParseError(f"expected {text!r}, found {self._describe(self.tok)}", self.tok.line, self.tok.col)
        return self.advance()

    @staticmethod
    def _describe(t: Token) -> str:
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.tok.line, self.tok.col)

    # spec := stmt (";" stmt)* ";"?
    def spec(self) -> list[tuple[str, Token, object]]:
        stmts = [self.stmt()]
        while self.at(";"):
            self.advance()
            if self.tok.kind == "EOF":
                break
            stmts.append(self.stmt())
        if self.tok.kind != "EOF":
            raise self.error(f"expected ';' or end of input, found {self._describe(self.tok)}")
        return stmts

    def stmt(self) -> tuple[str, Token, object]:
        t = self.tok
        if t.kind == "IDENT" and t.text == "b":
            self.advance()
            self.expect("=")
            return "b", t, self.expr()
        if t.kind == "IDENT" and t.text == "a":
            self.advance()
            opener = self.expect("(")
            if not self.at("i"):
                raise self.error("the ladder must be written a(i)")
            self.advance()
            self.expect(")", opener)
            self.expect("=")
            return "a", t, self.expr()
        if t.kind == "IDENT" and t.text == "param":
            self.advance()
            name = self.tok
            if name.kind != "IDENT":
                raise self.error(f"expected a parameter name, found {self._describe(name)}")
            self.advance()
            self.expect("=")
            neg = False
            if self.at("-"):
                self.advance()
                neg = True
            if self.tok.kind != "INT":
                raise self.error(f"expected an integer, found {self._describe(self.tok)}")
            value = int(self.advance().text)
            return "param", name, -value if neg else value
        raise self.error(f"expected 'b', 'a(i)' or 'param', found {self._describe(t)}")

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            right = self.term()
            node = (Add if op.text == "+" else Sub)(node, right, (op.line, op.col))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at("*"):
            op = self.advance()
            node = Mul(node, self.factor(), (op.line, op.col))
        return node

    def factor(self) -> Node:
        if self.at("-"):
            op = self.advance()
            return Neg(self.factor(), (op.line, op.col))
        base = self.atom()
        if self.at("^"):
            op = self.advance()
            return Pow(base, self.exponent(), (op.line, op.col))
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Int(int(t.text), (t.line, t.col))
        if t.kind == "IDENT":
            self.advance()
            return self._symbol(t)
        if self.at("("):
            opener = self.advance()
            node = self.expr()
            self.expect(")", opener)
            return node
        raise self.error(f"expected a number, symbol or '(', found {self._describe(t)}")

    def _symbol(self, t: Token) -> Sym:
        if t.text not in SYMBOLS:
            raise SemanticError(f"unknown symbol {t.text!r} (allowed: {', '.join(SYMBOLS)})", t.line, t.col)
        return Sym(t.text, (t.line, t.col))

    # exp := int | ident | "(" linear ")"
    def exponent(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Int(int(t.text), (t.line, t.col))
        if t.kind == "IDENT":
            self.advance()
            return self._exp_symbol(t)
        if self.at("("):
            opener = self.advance()
            node = self.linear()
            self.expect(")", opener)
            return node
        raise self.error(f"expected an exponent, found {self._describe(t)}")

    def _exp_symbol(self, t: Token) -> Sym:
        sym = self._symbol(t)
        if sym.name not in ("i", "d"):
            raise SemanticError(f"exponent must be an integer expression in i and d, not {t.text!r}",
                                t.line, t.col)
        return sym

    # linear := lterm (("+"|"-") lterm)*, with an optional leading minus
    def linear(self) -> Node:
        if self.at("-"):
            op = self.advance()
            node: Node = Neg(self.lterm(), (op.line, op.col))
        else:
            node = self.lterm()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = (Add if op.text == "+" else Sub)(node, self.lterm(), (op.line, op.col))
        return node

    # lterm := int | ident | int "*" ident
    def lterm(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            lit = Int(int(t.text), (t.line, t.col))
            if self.at("*"):
                op = self.advance()
                s = self.tok
                if s.kind != "IDENT":
                    raise self.error(f"expected i or d after '*', found {self._describe(s)}")
                self.advance()
                return Mul(lit, self._exp_symbol(s), (op.line, op.col))
            return lit
        if t.kind == "IDENT":
            self.advance()
            return self._exp_symbol(t)
        raise self.error(f"expected an integer or i/d in exponent, found {self._describe(t)}")


# -- semantic analysis ---------------------------------------------------------

def _walk(node: Node) -> Iterator[Node]:
    yield node
    for child in ("operand", "left", "right", "base", "exp"):
        sub = getattr(node, child, None)
        if isinstance(sub, Node):
            yield from _walk(sub)


def _symbols(node: Node) -> list[Sym]:
    return [n for n in _walk(node) if isinstance(n, Sym)]


def _var_degree(node: Node, var: str) -> tuple[int, int]:
    """(min, max) power of ``var`` occurring structurally, ignoring cancellation."""
    if isinstance(node, Int):
        return 0, 0
    if isinstance(node, Sym):
        return (1, 1) if node.name == var else (0, 0)
    if isinstance(node, Neg):
        return _var_degree(node.operand, var)
    if isinstance(node, (Add, Sub)):
        a, b = _var_degree(node.left, var), _var_degree(node.right, var)
        return min(a[0], b[0]), max(a[1], b[1])
    if isinstance(node, Mul):
        a, b = _var_degree(node.left, var), _var_degree(node.right, var)
        return a[0] + b[0], a[1] + b[1]
    if isinstance(node, Pow):
        lo, hi = _var_degree(node.base, var)
        if (lo, hi) == (0, 0):
            return 0, 0
        if not isinstance(node.exp, Int):
            raise SemanticError(f"{var} may only be raised to a literal power", *node.pos)
        return lo * node.exp.value, hi * node.exp.value
    raise TypeError(node)


def parse_spec(text: str) -> SpecDoc:
    """Parse ladder source text; raises LexError, ParseError or SemanticError with a position."""
    if not text.strip():
        raise ParseError("empty specification", 1, 1)
    tokens = tokenize(text)
    if tokens[0].kind == "EOF":
        raise ParseError("empty specification", tokens[0].line, tokens[0].col)
    stmts = _Parser(tokens).spec()
    b_expr = a_expr = None
    a_tok = None
    params: dict[str, int] = {}
    for kind, tok, value in stmts:
        if kind == "b":
            if b_expr is not None:
                raise SemanticError("b is defined twice", tok.line, tok.col)
            b_expr = value
        elif kind == "a":
            if a_expr is not None:
                raise SemanticError("a(i) is defined twice", tok.line, tok.col)
            a_expr, a_tok = value, tok
        else:
            if tok.text != "d":
                raise SemanticError(f"only d can be a parameter, not {tok.text!r}", tok.line, tok.col)
            if tok.text in params:
                raise SemanticError(f"parameter {tok.text} is defined twice", tok.line, tok.col)
            params[tok.text] = value
    last = tokens[-1]
    if b_expr is None:
        raise SemanticError("missing 'b = ...'", last.line, last.col)
    if a_expr is None:
        raise SemanticError("missing 'a(i) = ...'", last.line, last.col)

    for sym in _symbols(b_expr):
        if sym.name == "i":
            raise SemanticError("b must not depend on the level index i", *sym.pos)
    series_syms = sorted((s for s in _symbols(b_expr) + _symbols(a_expr) if s.name in SERIES_VARS),
                         key=lambda s: s.pos)
    for sym in series_syms:
        if sym.name != series_syms[0].name:
            raise SemanticError("v and z cannot be mixed in one specification", *sym.pos)
    used = {s.name for s in _symbols(a_expr) if s.name in SERIES_VARS}
    if not used:
        raise SemanticError("a(i) must carry a positive power of v or z (the weight)", a_tok.line, a_tok.col)
    var = used.pop()
    lo, hi = _var_degree(a_expr, var)
    if lo != hi:
        raise SemanticError(f"a(i) must be a single power of {var} times a polynomial in q",
                            a_tok.line, a_tok.col)
    if lo < 1:
        raise SemanticError("weight has a constant term; a(i) needs a positive power of " + var,
                            a_tok.line, a_tok.col)
    _var_degree(b_expr, var)
    weight = Sym(var) if lo == 1 else Pow(Sym(var), Int(lo))
    doc = SpecDoc(b_expr, a_expr, weight, dict(params), var)
    if "d" in params or not any(s.name == "d" for s in _symbols(b_expr)):
        _check_b(doc, params)
    return doc


def _first_pos(node: Node) -> tuple[int, int]:
    """Position of the leftmost token of ``node``."""
    return min(n.pos for n in _walk(node) if n.pos != (0, 0))


def _check_b(doc: SpecDoc, params: Mapping[str, int]) -> None:
    b = eval_expr(doc.b_expr, dict(params), doc.variable)
    if b.coeff(0) != ONE:
        raise SemanticError("b must have constant term 1", *_first_pos(doc.b_expr))


def load_spec(path: str | Path) -> SpecDoc:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


def ladder_names() -> list[str]:
    """Names of the .cf files shipped with the package."""
    root = resources.files("qtouch") / "ladders"
    return sorted(p.name[:-3] for p in root.iterdir() if p.name.endswith(".cf"))


def ladder_text(name: str) -> str:
    return (resources.files("qtouch") / "ladders" / f"{name}.cf").read_text(encoding="utf-8")


def load_ladder(name: str) -> SpecDoc:
    return parse_spec(ladder_text(name))


# -- evaluation ----------------------------------------------------------------

def _int_value(node: Node, env: Mapping[str, int]) -> int:
    if isinstance(node, Int):
        return node.value
    if isinstance(node, Sym):
        if node.name not in env:
            raise SemanticError(f"unbound parameter {node.name}", *node.pos)
        return env[node.name]
    if isinstance(node, Neg):
        return -_int_value(node.operand, env)
    if isinstance(node, Add):
        return _int_value(node.left, env) + _int_value(node.right, env)
    if isinstance(node, Sub):
        return _int_value(node.left, env) - _int_value(node.right, env)
    if isinstance(node, Mul):
        return _int_value(node.left, env) * _int_value(node.right, env)
    raise SemanticError("exponent must be linear in i and d", *node.pos)


def eval_expr(node: Node, env: Mapping[str, int], var: str) -> VPoly:
    """Evaluate to a polynomial in ``var`` with Laurent coefficients in q."""
    if isinstance(node, Int):
        return VPoly.coerce(node.value)
    if isinstance(node, Sym):
        if node.name == "q":
            return VPoly.monomial(1, 0)
        if node.name == var:
            return VPoly.monomial(0, 1)
        if node.name in ("i", "d"):
            if node.name not in env:
                raise SemanticError(f"unbound parameter {node.name}", *node.pos)
            return VPoly.coerce(env[node.name])
        raise SemanticError(f"symbol {node.name!r} does not belong here", *node.pos)
    if isinstance(node, Neg):
        return -eval_expr(node.operand, env, var)
    if isinstance(node, Add):
        return eval_expr(node.left, env, var) + eval_expr(node.right, env, var)
    if isinstance(node, Sub):
        return eval_expr(node.left, env, var) - eval_expr(node.right, env, var)
    if isinstance(node, Mul):
        return eval_expr(node.left, env, var) * eval_expr(node.right, env, var)
    if isinstance(node, Pow):
        k = _int_value(node.exp, env)
        base = eval_expr(node.base, env, var)
        if k >= 0:
            return base ** k
        items = base.items()
        if len(items) == 1 and items[0][0] == 0 and items[0][1].is_monomial():
            return VPoly.coerce(items[0][1] ** k)
        raise SemanticError("negative exponent needs a single power of q as base", *node.pos)
    raise TypeError(node)


def eval_ladder(doc: SpecDoc, i: int, params: Mapping[str, int] | None = None) -> LaurentPoly:
    """a_i with the weight stripped off."""
    env = {**doc.params, **(params or {}), "i": i}
    value = eval_expr(doc.a_expr, env, doc.variable)
    k = doc.weight_power
    stray = [e for e, c in value.items() if e != k]
    if stray:
        raise SemanticError(f"a({i}) is not a multiple of {doc.variable}^{k}", *_first_pos(doc.a_expr))
    return value.coeff(k)


def to_cfspec(doc: SpecDoc, params: Mapping[str, int] | None = None, name: str = "") -> CFSpec:
    env = {**doc.params, **(params or {})}
    for sym in _symbols(doc.a_expr) + _symbols(doc.b_expr):
        if sym.name == "d" and "d" not in env:
            raise SemanticError("unbound parameter d", *sym.pos)
    b = eval_expr(doc.b_expr, env, doc.variable)
    top = max((e for e, _ in b.items()), default=0)
    k = doc.weight_power
    weight = tuple(ONE if e == k else LaurentPoly() for e in range(k + 1))
    return CFSpec(
        doc.variable,
        tuple(b.coeff(e) for e in range(top + 1)),
        weight,
        lambda j: eval_ladder(doc, j, env),
        name,
    )


# -- pretty printing -----------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4, Int: 5, Sym: 5}


def format_expr(node: Node) -> str:
    """Canonical text that parses back to the same tree."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        right = format_expr(node.right)
        if _PREC[type(node.right)] <= 1:
            right = f"({right})"
        return f"{format_expr(node.left)} {op} {right}"
    if isinstance(node, Mul):
        left = format_expr(node.left)
        if _PREC[type(node.left)] < 2:
            left = f"({left})"
        right = format_expr(node.right)
        if _PREC[type(node.right)] <= 2:
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if _PREC[type(node.operand)] < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        base = format_expr(node.base)
        if _PREC[type(node.base)] < 5:
            base = f"({base})"
        return f"{base}^{_format_exp(node.exp)}"
    raise TypeError(node)


def _format_exp(node: Node) -> str:
    if isinstance(node, (Int, Sym)):
        return format_expr(node)
    return f"({_format_linear(node)})"


def _format_linear(node: Node) -> str:
    if isinstance(node, (Int, Sym)):
        return format_expr(node)
    if isinstance(node, Mul):
        return f"{format_expr(node.left)}*{format_expr(node.right)}"
    if isinstance(node, Neg):
        return f"-{_format_linear(node.operand)}"
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        return f"{_format_linear(node.left)} {op} {_format_linear(node.right)}"
    raise TypeError(node)


def format_spec(doc: SpecDoc) -> str:
    lines = [f"b = {format_expr(doc.b_expr)};", f"a(i) = {format_expr(doc.a_expr)};"]
    lines += [f"param {k} = {v};" for k, v in doc.params.items()]
    return "\n".join(lines) + "\n"
