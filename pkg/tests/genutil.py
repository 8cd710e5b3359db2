"""Seeded random generators shared by the fuzz and property tests.

The string alphabet deliberately avoids square brackets and runs of
whitespace: leaf code inside bracket documents is whitespace-collapsed,
so a program whose string constants contain "  " or a whitespace-isolated
bracket cannot survive the text round trip (documented limitation).
"""

import random

from castbridge.syntax import (
    AnnAssign, Assign, Attribute, AugAssign, BinOp, BoolOp, Call, Compare,
    Constant, ExprStmt, For, If, ListLit, Name, Program, Subscript, TupleLit,
    UnaryOp, While,
)
from castbridge.udlir import DepToken, DepTree

IDENTS = (
    "x", "y", "events", "sender", "content", "items", "value", "flag",
    "total", "name", "event", "messages", "result",
)
ATTR_NAMES = (
    "resolve_from_text", "resolve_from_entity", "append", "create_reminder",
    "find_messages", "delete_events", "size", "owner",
)
WORDS = (
    "alpha", "beta", "gamma", "check", "traffic", "game", "weekly", "report",
    "don't", "rain?", "after", "every", "astros",
)
ANNOTATIONS = ("int", "str", "bool", "float")

_CMP = ("==", "!=", "<", "<=", ">", ">=", "in", "not in")
_BIN = ("+", "-", "*", "/")


def random_string(rng: random.Random) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(rng.randint(0, 3)))


def random_constant(rng: random.Random) -> Constant:
    kind = rng.choice(("string", "integer", "float", "boolean", "none"))
    if kind == "string":
        return Constant("string", random_string(rng))
    if kind == "integer":
        return Constant("integer", rng.randint(0, 1000))
    if kind == "float":
        return Constant("float", rng.choice((0.0, 0.5, 2.5, 12.125, 1000.0)))
    if kind == "boolean":
        return Constant("boolean", rng.choice((True, False)))
    return Constant("none", None)


def random_target(rng: random.Random, depth: int):
    roll = rng.random()
    if roll < 0.6 or depth <= 0:
        return Name(rng.choice(IDENTS))
    if roll < 0.75:
        return Attribute(Name(rng.choice(IDENTS)), rng.choice(ATTR_NAMES))
    if roll < 0.9:
        return Subscript(Name(rng.choice(IDENTS)), random_expr(rng, 0))
    return TupleLit(tuple(Name(rng.choice(IDENTS)) for _ in range(2)))


def random_expr(rng: random.Random, depth: int):
    if depth <= 0:
        return rng.choice(
            (Name(rng.choice(IDENTS)), random_constant(rng))
        )
    kind = rng.choice(
        ("name", "const", "attr", "call", "list", "tuple",
         "bool", "unary", "cmp", "bin", "sub")
    )
    if kind == "name":
        return Name(rng.choice(IDENTS))
    if kind == "const":
        return random_constant(rng)
    if kind == "attr":
        return Attribute(random_expr(rng, depth - 1), rng.choice(ATTR_NAMES))
    if kind == "call":
        func = rng.choice(
            (Name(rng.choice(IDENTS)),
             Attribute(Name(rng.choice(IDENTS)), rng.choice(ATTR_NAMES)))
        )
        args = tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(0, 2)))
        kw_names = rng.sample(IDENTS, rng.randint(0, 2))
        keywords = tuple((kw, random_expr(rng, depth - 1)) for kw in kw_names)
        return Call(func, args, keywords)
    if kind == "list":
        return ListLit(
            tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(0, 3)))
        )
    if kind == "tuple":
        return TupleLit(
            tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(0, 3)))
        )
    if kind == "bool":
        values = tuple(
            random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))
        )
        return BoolOp(rng.choice(("and", "or")), values)
    if kind == "unary":
        return UnaryOp(rng.choice(("not", "-")), random_expr(rng, depth - 1))
    if kind == "cmp":
        n_ops = rng.randint(1, 2)
        return Compare(
            random_expr(rng, depth - 1),
            tuple(rng.choice(_CMP) for _ in range(n_ops)),
            tuple(random_expr(rng, depth - 1) for _ in range(n_ops)),
        )
    if kind == "bin":
        return BinOp(
            random_expr(rng, depth - 1),
            rng.choice(_BIN),
            random_expr(rng, depth - 1),
        )
    return Subscript(random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def random_stmt(rng: random.Random, depth: int):
    kind = rng.choice(
        ("assign", "assign", "aug", "ann", "expr", "if", "for", "while")
        if depth > 0
        else ("assign", "aug", "ann", "expr")
    )
    if kind == "assign":
        targets = tuple(
            random_target(rng, depth) for _ in range(rng.randint(1, 2))
        )
        return Assign(targets, random_expr(rng, depth))
    if kind == "aug":
        return AugAssign(Name(rng.choice(IDENTS)), "+=", random_expr(rng, depth))
    if kind == "ann":
        value = random_expr(rng, depth) if rng.random() < 0.7 else None
        return AnnAssign(Name(rng.choice(IDENTS)), Name(rng.choice(ANNOTATIONS)), value)
    if kind == "expr":
        func = Attribute(Name(rng.choice(IDENTS)), rng.choice(ATTR_NAMES))
        args = tuple(random_expr(rng, depth) for _ in range(rng.randint(0, 2)))
        return ExprStmt(Call(func, args, ()))
    if kind == "if":
        orelse = random_block(rng, depth - 1) if rng.random() < 0.5 else ()
        return If(random_expr(rng, depth - 1), random_block(rng, depth - 1), orelse)
    if kind == "for":
        orelse = random_block(rng, depth - 1) if rng.random() < 0.2 else ()
        return For(
            random_target(rng, 0),
            random_expr(rng, depth - 1),
            random_block(rng, depth - 1),
            orelse,
        )
    orelse = random_block(rng, depth - 1) if rng.random() < 0.2 else ()
    return While(random_expr(rng, depth - 1), random_block(rng, depth - 1), orelse)


def random_block(rng: random.Random, depth: int):
    return tuple(random_stmt(rng, depth) for _ in range(rng.randint(1, 3)))


def random_program(rng: random.Random, depth: int = 3) -> Program:
    return Program(tuple(random_stmt(rng, depth) for _ in range(rng.randint(1, 5))))


# --- bracket documents ---

LEAF_WORDS = WORDS + ("If", "For", "While", "Module", "test", "x = 1", "f(x)")


def random_leaf_text(rng: random.Random) -> str:
    return " ".join(rng.choice(LEAF_WORDS) for _ in range(rng.randint(1, 4)))


def random_bracket_tree(rng: random.Random, labels, depth: int = 3):
    from castbridge.brackets import Leaf, Structure

    label_pool = sorted(labels)
    if depth <= 0:
        return Leaf(random_leaf_text(rng))
    children = tuple(
        random_bracket_tree(rng, labels, rng.randint(0, depth - 1))
        for _ in range(rng.randint(1, 4))
    )
    return Structure(rng.choice(label_pool), children)


# --- dependency trees ---

DEPRELS = (
    "nsubj", "obj", "obl", "iobj", "nmod", "csubj", "advmod", "advcl",
    "acl", "mark", "case", "det", "cc", "conj", "punct", "parataxis",
    "ccomp", "xcomp", "amod",
)
FORMS = (
    "remind", "me", "it", "rains", "send", "message", "mom", "check",
    "if", "unless", "otherwise", "else", "given", "provided", "supposing",
    "and", "or", "then", "text", "play", "music", "stop", ",", ".",
)


def random_dep_tree(rng: random.Random, n: int) -> DepTree:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = {order[0]: 0}
    for pos, idx in enumerate(order[1:], start=1):
        heads[idx] = order[rng.randrange(pos)]
    tokens = []
    for i in range(1, n + 1):
        deprel = "root" if heads[i] == 0 else rng.choice(DEPRELS)
        tokens.append(DepToken(i, rng.choice(FORMS), heads[i], deprel))
    return DepTree(tuple(tokens))
