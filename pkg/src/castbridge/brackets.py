"""Bracket-notation trees: `[ label child... ]` structures with code leaves.

A bracket character is *structural* only when it is whitespace-isolated:
preceded by start-of-text or whitespace and followed by whitespace or
end-of-text.  Everything else (``[]`` in ``messages = []``, ``x[0]``) is
ordinary leaf text.  This one rule makes code leaves unambiguous without
any escaping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class Structure:
    label: str
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Leaf:
    code: str


Node = Union[Structure, Leaf]


class BracketError(ValueError):
    """Base class for bracket-text parse failures."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class UnbalancedBrackets(BracketError):
    pass


class TrailingContent(BracketError):
    pass


class EmptyDocument(BracketError):
    def __init__(self) -> None:
        super().__init__("document contains no bracket node", None)


def label_set(labels: Iterable[str]) -> frozenset[str]:
    """Validate and freeze a set of structure labels."""
    out = frozenset(labels)
    if not out:
        raise ValueError("label set must be non-empty")
    for lab in out:
        if not lab or any(c.isspace() for c in lab) or "[" in lab or "]" in lab:
            raise ValueError(f"invalid label: {lab!r}")
    return out


def _structural_marks(text: str) -> list[tuple[int, str]]:
    marks = []
    last = len(text) - 1
    for i, ch in enumerate(text):
        if ch not in "[]":
            continue
        if (i == 0 or text[i - 1].isspace()) and (i == last or text[i + 1].isspace()):
            marks.append((i, ch))
    return marks


def _first_nonspace(text: str, start: int) -> int:
    for i in range(start, len(text)):
        if not text[i].isspace():
            return i
    return len(text)


class _Parser:
    def __init__(self, text: str, labels: frozenset[str]):
        self.text = text
        self.labels = labels
        self.marks = _structural_marks(text)

    def parse(self) -> Node:
        text = self.text
        if not self.marks:
            if not text.strip():
                raise EmptyDocument()
            raise TrailingContent(
                "text outside any bracket node", _first_nonspace(text, 0)
            )
        pos0, ch0 = self.marks[0]
        if text[:pos0].strip():
            raise TrailingContent(
                "text before the document node", _first_nonspace(text, 0)
            )
        if ch0 == "]":
            raise UnbalancedBrackets("unmatched closing bracket", pos0)
        node, next_k, end_pos = self._node(0)
        if next_k < len(self.marks):
            pos, ch = self.marks[next_k]
            if ch == "]":
                raise UnbalancedBrackets("unmatched closing bracket", pos)
            raise TrailingContent("more than one document node", pos)
        if text[end_pos:].strip():
            raise TrailingContent(
                "text after the document node", _first_nonspace(text, end_pos)
            )
        return node

    def _node(self, k: int) -> tuple[Node, int, int]:
        """Parse the node opened at mark ``k``; return (node, next mark, text pos past close)."""
        open_pos = self.marks[k][0]
        if k + 1 >= len(self.marks):
            raise UnbalancedBrackets("bracket never closed", open_pos)
        seg = self.text[open_pos + 1 : self.marks[k + 1][0]]
        tokens = seg.split()
        next_ch = self.marks[k + 1][1]
        if len(tokens) == 1 and tokens[0] in self.labels and next_ch == "[":
            return self._structure(tokens[0], k + 1, open_pos)
        return self._leaf(k, open_pos)

    def _structure(self, label: str, k: int, open_pos: int) -> tuple[Node, int, int]:
        children: list[Node] = []
        prev_end = None  # text position just past the previous child
        while True:
            if k >= len(self.marks):
                raise UnbalancedBrackets("bracket never closed", open_pos)
            pos, ch = self.marks[k]
            if prev_end is not None and self.text[prev_end:pos].strip():
                raise TrailingContent(
                    "stray text between structure children",
                    _first_nonspace(self.text, prev_end),
                )
            if ch == "[":
                child, k, prev_end = self._node(k)
                children.append(child)
            else:
                return Structure(label, tuple(children)), k + 1, pos + 1

    def _leaf(self, k: int, open_pos: int) -> tuple[Node, int, int]:
        depth = 1
        j = k + 1
        while j < len(self.marks):
            if self.marks[j][1] == "[":
                depth += 1
            else:
                depth -= 1
                if depth == 0:
                    close = self.marks[j][0]
                    raw = self.text[open_pos + 1 : close]
                    return Leaf(" ".join(raw.split())), j + 1, close + 1
            j += 1
        raise UnbalancedBrackets("bracket never closed", open_pos)


def parse_bracket(text: str, labels: Iterable[str]) -> Node:
    """Parse one bracket document into a tree.

    Disambiguation after a structural ``[``: if the first whitespace-delimited
    token is in ``labels`` and the next non-whitespace character opens another
    structural ``[``, the node is a Structure; otherwise everything up to the
    matching structural ``]`` is a Leaf, with whitespace runs collapsed to
    single spaces.  Compact and pretty renderings therefore parse identically.
    """
    return _Parser(text, label_set(labels)).parse()


def linearize(node: Node, style: str = "compact") -> str:
    """Render a tree as bracket text, ``compact`` (one line) or ``pretty``."""
    if style == "compact":
        return _compact(node)
    if style == "pretty":
        return "\n".join(_pretty(node, 0))
    raise ValueError(f"unknown style: {style!r}")


def _compact(node: Node) -> str:
    if isinstance(node, Leaf):
        return f"[ {node.code} ]" if node.code else "[ ]"
    if not node.children:
        return f"[ {node.label} ]"
    inner = " ".join(_compact(c) for c in node.children)
    return f"[ {node.label} {inner} ]"


def _pretty(node: Node, indent: int) -> Iterator[str]:
    pad = " " * indent
    if isinstance(node, Leaf) or not node.children:
        yield pad + _compact(node)
        return
    yield f"{pad}[ {node.label}"
    for child in node.children:
        yield from _pretty(child, indent + 4)
    yield f"{pad}]"
