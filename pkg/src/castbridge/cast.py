"""Compact AST: collapse straight-line statements to code leaves, keep control flow.

``compactize`` turns a Program into a bracket tree whose structures are only
Module/If/For/While groups (with test/body/orelse/iter/Name children) and
whose leaves hold canonically rendered statement or expression source.
``expand`` inverts it, validating shape as it goes.
"""

from __future__ import annotations

from . import syntax
from .brackets import Leaf, Node, Structure, label_set
from .syntax import (
    AnnAssign, Assign, AugAssign, Expr, ExprStmt, For, If, Program, Stmt,
    While, unparse,
)

CompactTree = Node

CAST_LABELS = label_set(
    {"Module", "If", "For", "While", "test", "body", "orelse", "iter", "Name"}
)

_SIMPLE_STMTS = (Assign, AugAssign, AnnAssign, ExprStmt)


class MalformedCast(Exception):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


def compactize(program: Program) -> CompactTree:
    return Structure("Module", tuple(_stmt_node(s) for s in program.body))


def _stmt_node(s: Stmt) -> Node:
    if isinstance(s, _SIMPLE_STMTS):
        return Leaf(unparse(s))
    if isinstance(s, If):
        children = [_test_group(s.test), _stmt_group("body", s.body)]
        if s.orelse:
            children.append(_stmt_group("orelse", s.orelse))
        return Structure("If", tuple(children))
    if isinstance(s, While):
        children = [_test_group(s.test), _stmt_group("body", s.body)]
        if s.orelse:
            children.append(_stmt_group("orelse", s.orelse))
        return Structure("While", tuple(children))
    if isinstance(s, For):
        test = Structure(
            "test",
            (
                Structure("iter", (Leaf(unparse(s.iter)),)),
                Structure("Name", (Leaf(unparse(s.target)),)),
            ),
        )
        children = [test, _stmt_group("body", s.body)]
        if s.orelse:
            children.append(_stmt_group("orelse", s.orelse))
        return Structure("For", tuple(children))
    raise TypeError(f"not a statement node: {s!r}")


def _test_group(test: Expr) -> Structure:
    return Structure("test", (Leaf(unparse(test)),))


def _stmt_group(label: str, stmts: tuple[Stmt, ...]) -> Structure:
    return Structure(label, tuple(_stmt_node(s) for s in stmts))


def expand(tree: CompactTree) -> Program:
    """Rebuild the Program; any shape violation raises MalformedCast."""
    if not isinstance(tree, Structure) or tree.label != "Module":
        raise MalformedCast("Module", "document root must be a Module structure")
    body = _expand_block(tree, "Module")
    if not body:
        raise MalformedCast("Module", "empty Module")
    return Program(body)


def _expand_block(group: Structure, path: str) -> tuple[Stmt, ...]:
    stmts = []
    for i, child in enumerate(group.children):
        stmts.append(_expand_stmt(child, f"{path}[{i}]"))
    return tuple(stmts)


def _expand_stmt(node: Node, path: str) -> Stmt:
    if isinstance(node, Leaf):
        return _leaf_stmt(node, path)
    if node.label in ("If", "While"):
        test, body, orelse = _split_groups(node, path)
        test_expr = _single_test_expr(test, f"{path}:{node.label}")
        cls = If if node.label == "If" else While
        return cls(test_expr, body, orelse)
    if node.label == "For":
        test, body, orelse = _split_groups(node, path)
        iter_expr, target_expr = _for_test(test, f"{path}:For")
        return For(target_expr, iter_expr, body, orelse)
    raise MalformedCast(path, f"statement position holds a {node.label!r} structure")


def _leaf_stmt(leaf: Leaf, path: str) -> Stmt:
    if not leaf.code:
        raise MalformedCast(path, "empty code leaf")
    try:
        stmt = syntax.parse_fragment(leaf.code, "statement")
    except (SyntaxError, syntax.UnsupportedConstruct, syntax.KindMismatch) as exc:
        raise MalformedCast(path, f"leaf does not parse: {exc}") from exc
    if isinstance(stmt, (If, For, While)):
        raise MalformedCast(
            path, "control-flow statement must be a structure node, not a leaf"
        )
    return stmt


def _split_groups(
    node: Structure, path: str
) -> tuple[Structure, tuple[Stmt, ...], tuple[Stmt, ...]]:
    labels = [c.label if isinstance(c, Structure) else "<leaf>" for c in node.children]
    if labels not in (["test", "body"], ["test", "body", "orelse"]):
        raise MalformedCast(
            f"{path}:{node.label}",
            f"children must be test, body, optional orelse; got {labels}",
        )
    test = node.children[0]
    assert isinstance(test, Structure)
    body_group = node.children[1]
    assert isinstance(body_group, Structure)
    body = _expand_block(body_group, f"{path}:{node.label}/body")
    if not body:
        raise MalformedCast(f"{path}:{node.label}/body", "empty body")
    orelse: tuple[Stmt, ...] = ()
    if len(node.children) == 3:
        orelse_group = node.children[2]
        assert isinstance(orelse_group, Structure)
        orelse = _expand_block(orelse_group, f"{path}:{node.label}/orelse")
        if not orelse:
            raise MalformedCast(f"{path}:{node.label}/orelse", "empty orelse")
    return test, body, orelse


def _single_test_expr(test: Structure, path: str) -> Expr:
    if len(test.children) != 1 or not isinstance(test.children[0], Leaf):
        raise MalformedCast(f"{path}/test", "test must hold exactly one code leaf")
    return _leaf_expr(test.children[0], f"{path}/test[0]")


def _for_test(test: Structure, path: str) -> tuple[Expr, Expr]:
    kids = test.children
    ok = (
        len(kids) == 2
        and isinstance(kids[0], Structure) and kids[0].label == "iter"
        and isinstance(kids[1], Structure) and kids[1].label == "Name"
    )
    if not ok:
        raise MalformedCast(f"{path}/test", "For test must hold iter then Name groups")
    groups = []
    for group in kids:
        assert isinstance(group, Structure)
        if len(group.children) != 1 or not isinstance(group.children[0], Leaf):
            raise MalformedCast(
                f"{path}/test/{group.label}",
                f"{group.label} must hold exactly one code leaf",
            )
        groups.append(
            _leaf_expr(group.children[0], f"{path}/test/{group.label}[0]")
        )
    return groups[0], groups[1]


def _leaf_expr(leaf: Leaf, path: str) -> Expr:
    try:
        return syntax.parse_fragment(leaf.code, "expression")
    except (SyntaxError, syntax.UnsupportedConstruct, syntax.KindMismatch) as exc:
        raise MalformedCast(path, f"leaf does not parse: {exc}") from exc
