"""Restricted Python command subset: parse, immutable AST, canonical rendering.

The subset covers straight-line assignments and calls plus ``if``/``for``/
``while`` control flow.  Parsing leans on the stdlib ``ast`` front end and
converts into local immutable dataclasses through a whitelist; anything
outside the subset raises UnsupportedConstruct.  Rendering is our own so the
canonical form is stable across Python versions: single quotes, minimal
parentheses, 4-space indentation, and no whitespace-isolated brackets
(which keeps rendered code safe to embed as bracket-notation leaves).
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from typing import Union


class UnsupportedConstruct(Exception):
    """Source parses as Python but falls outside the supported subset."""

    def __init__(self, construct: str, line: int | None = None, col: int | None = None):
        loc = f" at line {line}" if line is not None else ""
        super().__init__(f"unsupported construct: {construct}{loc}")
        self.construct = construct
        self.line = line
        self.col = col


class KindMismatch(Exception):
    """Fragment parses as the other kind (statement vs expression) only."""


# --- expression nodes ---


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Attribute:
    value: "Expr"
    attr: str


@dataclass(frozen=True)
class Call:
    func: "Expr"
    args: tuple["Expr", ...]
    keywords: tuple[tuple[str, "Expr"], ...]


@dataclass(frozen=True)
class Constant:
    kind: str  # string | integer | float | boolean | none
    value: object


@dataclass(frozen=True)
class ListLit:
    elts: tuple["Expr", ...]


@dataclass(frozen=True)
class TupleLit:
    elts: tuple["Expr", ...]


@dataclass(frozen=True)
class BoolOp:
    op: str  # and | or
    values: tuple["Expr", ...]


@dataclass(frozen=True)
class UnaryOp:
    op: str  # not | -
    operand: "Expr"


@dataclass(frozen=True)
class Compare:
    left: "Expr"
    ops: tuple[str, ...]
    comparators: tuple["Expr", ...]


@dataclass(frozen=True)
class BinOp:
    left: "Expr"
    op: str  # + - * /
    right: "Expr"


@dataclass(frozen=True)
class Subscript:
    value: "Expr"
    index: "Expr"


Expr = Union[
    Name, Attribute, Call, Constant, ListLit, TupleLit,
    BoolOp, UnaryOp, Compare, BinOp, Subscript,
]


# --- statement nodes ---


@dataclass(frozen=True)
class Assign:
    targets: tuple[Expr, ...]
    value: Expr


@dataclass(frozen=True)
class AugAssign:
    target: Expr
    op: str  # only +=
    value: Expr


@dataclass(frozen=True)
class AnnAssign:
    target: Expr
    annotation: Expr
    value: Expr | None


@dataclass(frozen=True)
class ExprStmt:
    value: Expr


@dataclass(frozen=True)
class If:
    test: Expr
    body: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...]


@dataclass(frozen=True)
class For:
    target: Expr
    iter: Expr
    body: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...]


@dataclass(frozen=True)
class While:
    test: Expr
    body: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...]


Stmt = Union[Assign, AugAssign, AnnAssign, ExprStmt, If, For, While]


@dataclass(frozen=True)
class Program:
    body: tuple[Stmt, ...]


# --- parsing (stdlib ast front end, whitelist conversion) ---

_BOOL_OPS = {ast.And: "and", ast.Or: "or"}
_UNARY_OPS = {ast.Not: "not", ast.USub: "-"}
_BIN_OPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/"}
_CMP_OPS = {
    ast.Eq: "==", ast.NotEq: "!=", ast.Lt: "<", ast.LtE: "<=",
    ast.Gt: ">", ast.GtE: ">=", ast.In: "in", ast.NotIn: "not in",
}


def _pos(node: ast.AST) -> tuple[int | None, int | None]:
    return getattr(node, "lineno", None), getattr(node, "col_offset", None)


_CONSTRUCT_NAMES = {
    "FunctionDef": "function definition",
    "AsyncFunctionDef": "function definition",
    "ClassDef": "class definition",
    "Import": "import",
    "ImportFrom": "import",
    "ListComp": "comprehension",
    "SetComp": "comprehension",
    "DictComp": "comprehension",
    "GeneratorExp": "comprehension",
    "Dict": "dict literal",
    "Set": "set literal",
    "Lambda": "lambda",
    "Pass": "pass statement",
    "Return": "return statement",
    "Raise": "raise statement",
    "Try": "try statement",
    "With": "with statement",
    "Assert": "assert statement",
    "Delete": "del statement",
    "Global": "global statement",
    "Nonlocal": "nonlocal statement",
    "Break": "break statement",
    "Continue": "continue statement",
    "IfExp": "conditional expression",
    "FormattedValue": "f-string",
    "JoinedStr": "f-string",
    "Await": "await expression",
    "Yield": "yield expression",
    "YieldFrom": "yield expression",
    "NamedExpr": "walrus assignment",
    "Match": "match statement",
}


def _unsupported(node: ast.AST, what: str | None = None) -> UnsupportedConstruct:
    line, col = _pos(node)
    name = type(node).__name__
    return UnsupportedConstruct(what or _CONSTRUCT_NAMES.get(name, name), line, col)


def _convert_expr(node: ast.expr) -> Expr:
    if isinstance(node, ast.Name):
        return Name(node.id)
    if isinstance(node, ast.Attribute):
        return Attribute(_convert_expr(node.value), node.attr)
    if isinstance(node, ast.Call):
        args = []
        for a in node.args:
            if isinstance(a, ast.Starred):
                raise _unsupported(a, "starred argument")
            args.append(_convert_expr(a))
        keywords = []
        for kw in node.keywords:
            if kw.arg is None:
                raise _unsupported(kw.value, "double-star keyword argument")
            keywords.append((kw.arg, _convert_expr(kw.value)))
        return Call(_convert_expr(node.func), tuple(args), tuple(keywords))
    if isinstance(node, ast.Constant):
        return _convert_constant(node)
    if isinstance(node, ast.List):
        return ListLit(tuple(_convert_expr(e) for e in node.elts))
    if isinstance(node, ast.Tuple):
        return TupleLit(tuple(_convert_expr(e) for e in node.elts))
    if isinstance(node, ast.BoolOp):
        op = _BOOL_OPS.get(type(node.op))
        if op is None:
            raise _unsupported(node)
        return BoolOp(op, tuple(_convert_expr(v) for v in node.values))
    if isinstance(node, ast.UnaryOp):
        op = _UNARY_OPS.get(type(node.op))
        if op is None:
            raise _unsupported(node, f"unary operator {type(node.op).__name__}")
        return UnaryOp(op, _convert_expr(node.operand))
    if isinstance(node, ast.Compare):
        ops = []
        for o in node.ops:
            sym = _CMP_OPS.get(type(o))
            if sym is None:
                raise _unsupported(node, f"comparison operator {type(o).__name__}")
            ops.append(sym)
        return Compare(
            _convert_expr(node.left),
            tuple(ops),
            tuple(_convert_expr(c) for c in node.comparators),
        )
    if isinstance(node, ast.BinOp):
        op = _BIN_OPS.get(type(node.op))
        if op is None:
            raise _unsupported(node, f"binary operator {type(node.op).__name__}")
        return BinOp(_convert_expr(node.left), op, _convert_expr(node.right))
    if isinstance(node, ast.Subscript):
        if isinstance(node.slice, ast.Slice):
            raise _unsupported(node.slice, "slice")
        return Subscript(_convert_expr(node.value), _convert_expr(node.slice))
    raise _unsupported(node)


def _convert_constant(node: ast.Constant) -> Constant:
    v = node.value
    if isinstance(v, bool):  # bool before int: bool subclasses int
        return Constant("boolean", v)
    if isinstance(v, int):
        return Constant("integer", v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise _unsupported(node, "non-finite float literal")
        return Constant("float", v)
    if isinstance(v, str):
        return Constant("string", v)
    if v is None:
        return Constant("none", None)
    raise _unsupported(node, f"{type(v).__name__} literal")


def _convert_stmt(node: ast.stmt) -> Stmt:
    if isinstance(node, ast.Assign):
        return Assign(
            tuple(_convert_expr(t) for t in node.targets),
            _convert_expr(node.value),
        )
    if isinstance(node, ast.AugAssign):
        if not isinstance(node.op, ast.Add):
            raise _unsupported(node, f"augmented operator {type(node.op).__name__}=")
        return AugAssign(_convert_expr(node.target), "+=", _convert_expr(node.value))
    if isinstance(node, ast.AnnAssign):
        return AnnAssign(
            _convert_expr(node.target),
            _convert_expr(node.annotation),
            _convert_expr(node.value) if node.value is not None else None,
        )
    if isinstance(node, ast.Expr):
        return ExprStmt(_convert_expr(node.value))
    if isinstance(node, ast.If):
        return If(
            _convert_expr(node.test),
            tuple(_convert_stmt(s) for s in node.body),
            tuple(_convert_stmt(s) for s in node.orelse),
        )
    if isinstance(node, ast.For):
        return For(
            _convert_expr(node.target),
            _convert_expr(node.iter),
            tuple(_convert_stmt(s) for s in node.body),
            tuple(_convert_stmt(s) for s in node.orelse),
        )
    if isinstance(node, ast.While):
        return While(
            _convert_expr(node.test),
            tuple(_convert_stmt(s) for s in node.body),
            tuple(_convert_stmt(s) for s in node.orelse),
        )
    raise _unsupported(node)


def _front_parse(text: str, mode: str = "exec") -> ast.AST:
    if text.startswith("\ufeff"):
        raise SyntaxError("byte order mark is not allowed")
    try:
        return ast.parse(text, mode=mode)
    except ValueError as exc:  # e.g. null bytes
        raise SyntaxError(str(exc)) from exc


def parse_program(text: str) -> Program:
    """Parse subset source into a Program; line/col carried on errors."""
    module = _front_parse(text)
    assert isinstance(module, ast.Module)
    if not module.body:
        raise SyntaxError("empty program")
    return Program(tuple(_convert_stmt(s) for s in module.body))


def parse_fragment(text: str, kind: str) -> Stmt | Expr:
    """Parse one statement or one expression, per ``kind``.

    Raises KindMismatch when the text parses only as the other kind
    (e.g. an assignment requested as an expression).
    """
    if kind == "statement":
        module = _front_parse(text)
        if len(module.body) != 1:
            raise SyntaxError("expected exactly one statement")
        return _convert_stmt(module.body[0])
    if kind == "expression":
        try:
            tree = _front_parse(text, mode="eval")
        except SyntaxError as exc:
            try:
                module = _front_parse(text)
            except SyntaxError:
                raise exc from None
            if len(module.body) == 1:
                raise KindMismatch(
                    "text is a statement, not an expression"
                ) from None
            raise exc from None
        return _convert_expr(tree.body)
    raise ValueError(f"unknown fragment kind: {kind!r}")


# --- canonical rendering ---

_LOWEST, _OR, _AND, _NOT, _CMP, _ADD, _MUL, _UNARY, _POSTFIX, _ATOM = range(10)

_BINOP_PREC = {"+": _ADD, "-": _ADD, "*": _MUL, "/": _MUL}


def _prec(e: Expr) -> int:
    if isinstance(e, BoolOp):
        return _OR if e.op == "or" else _AND
    if isinstance(e, UnaryOp):
        return _NOT if e.op == "not" else _UNARY
    if isinstance(e, Compare):
        return _CMP
    if isinstance(e, BinOp):
        return _BINOP_PREC[e.op]
    if isinstance(e, (Call, Attribute, Subscript)):
        return _POSTFIX
    return _ATOM


def _render_string(v: str) -> str:
    out = v.replace("\\", "\\\\").replace("'", "\\'")
    out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
    return f"'{out}'"


def _render_const(c: Constant) -> str:
    if c.kind == "string":
        return _render_string(c.value)
    if c.kind == "boolean":
        return "True" if c.value else "False"
    if c.kind == "none":
        return "None"
    return repr(c.value)


def _render(e: Expr, ctx: int) -> str:
    text = _render_bare(e)
    return f"({text})" if _prec(e) < ctx else text


def _render_bare(e: Expr) -> str:
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Constant):
        return _render_const(e)
    if isinstance(e, Attribute):
        base = _render(e.value, _POSTFIX)
        if isinstance(e.value, Constant) and e.value.kind in ("integer", "float"):
            base = f"({base})"  # 1.x would lex as a float
        return f"{base}.{e.attr}"
    if isinstance(e, Call):
        parts = [_render(a, _LOWEST) for a in e.args]
        parts += [f"{name}={_render(v, _LOWEST)}" for name, v in e.keywords]
        return f"{_render(e.func, _POSTFIX)}({', '.join(parts)})"
    if isinstance(e, Subscript):
        return f"{_render(e.value, _POSTFIX)}[{_render(e.index, _LOWEST)}]"
    if isinstance(e, ListLit):
        return "[" + ", ".join(_render(x, _LOWEST) for x in e.elts) + "]"
    if isinstance(e, TupleLit):
        if not e.elts:
            return "()"
        if len(e.elts) == 1:
            return f"({_render(e.elts[0], _LOWEST)},)"
        return "(" + ", ".join(_render(x, _LOWEST) for x in e.elts) + ")"
    if isinstance(e, BoolOp):
        prec = _prec(e)
        return f" {e.op} ".join(_render(v, prec + 1) for v in e.values)
    if isinstance(e, UnaryOp):
        if e.op == "not":
            return f"not {_render(e.operand, _NOT)}"
        return f"-{_render(e.operand, _UNARY)}"
    if isinstance(e, Compare):
        parts = [_render(e.left, _CMP + 1)]
        for op, comp in zip(e.ops, e.comparators):
            parts.append(f" {op} {_render(comp, _CMP + 1)}")
        return "".join(parts)
    if isinstance(e, BinOp):
        prec = _BINOP_PREC[e.op]
        left = _render(e.left, prec)
        right = _render(e.right, prec + 1)
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


def _stmt_lines(s: Stmt, indent: int) -> list[str]:
    pad = "    " * indent
    if isinstance(s, Assign):
        targets = [_render(t, _LOWEST) for t in s.targets]
        return [pad + " = ".join(targets + [_render(s.value, _LOWEST)])]
    if isinstance(s, AugAssign):
        return [f"{pad}{_render(s.target, _LOWEST)} += {_render(s.value, _LOWEST)}"]
    if isinstance(s, AnnAssign):
        head = f"{pad}{_render(s.target, _LOWEST)}: {_render(s.annotation, _LOWEST)}"
        if s.value is not None:
            head += f" = {_render(s.value, _LOWEST)}"
        return [head]
    if isinstance(s, ExprStmt):
        return [pad + _render(s.value, _LOWEST)]
    if isinstance(s, If):
        return _if_lines(s, indent, "if")
    if isinstance(s, For):
        lines = [
            f"{pad}for {_render(s.target, _LOWEST)} in {_render(s.iter, _LOWEST)}:"
        ]
        lines += _block(s.body, indent + 1)
        if s.orelse:
            lines.append(f"{pad}else:")
            lines += _block(s.orelse, indent + 1)
        return lines
    if isinstance(s, While):
        lines = [f"{pad}while {_render(s.test, _LOWEST)}:"]
        lines += _block(s.body, indent + 1)
        if s.orelse:
            lines.append(f"{pad}else:")
            lines += _block(s.orelse, indent + 1)
        return lines
    raise TypeError(f"not a statement node: {s!r}")


def _if_lines(s: If, indent: int, keyword: str) -> list[str]:
    pad = "    " * indent
    lines = [f"{pad}{keyword} {_render(s.test, _LOWEST)}:"]
    lines += _block(s.body, indent + 1)
    if len(s.orelse) == 1 and isinstance(s.orelse[0], If):
        lines += _if_lines(s.orelse[0], indent, "elif")
    elif s.orelse:
        lines.append(f"{pad}else:")
        lines += _block(s.orelse, indent + 1)
    return lines


def _block(stmts: tuple[Stmt, ...], indent: int) -> list[str]:
    lines: list[str] = []
    for s in stmts:
        lines += _stmt_lines(s, indent)
    return lines


def unparse(node: Program | Stmt | Expr) -> str:
    """Render canonical source: single quotes, minimal parens, 4-space indent."""
    if isinstance(node, Program):
        return "\n".join(_block(node.body, 0)) + "\n"
    if isinstance(
        node, (Assign, AugAssign, AnnAssign, ExprStmt, If, For, While)
    ):
        return "\n".join(_stmt_lines(node, 0))
    return _render(node, _LOWEST)
