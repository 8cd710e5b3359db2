"""Universal Dependencies ingestion and rewrite into the LIR bracket form.

A CoNLL-U sentence becomes an ordered tree whose nodes keep their deprel as
label and their word form; a synthetic form-less ``root`` node wraps the
sentence head.  Thirteen rewrite rules then layer S/Command/Condition/...
structure over it.  Rules run in a fixed order, each to fixpoint with
leftmost (smallest token index) matches first, and each is guarded so it
never fires where its output shape already exists.  No rule drops or
duplicates a word: the token yield is invariant.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .brackets import Leaf, Node, Structure, linearize


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleError(ValueError):
    pass


class MultipleRoots(ValueError):
    pass


@dataclass(frozen=True)
class DepToken:
    index: int
    form: str
    head: int
    deprel: str


@dataclass(frozen=True)
class DepTree:
    tokens: tuple[DepToken, ...]


class LirNode:
    """Mutable tree node; ``index``/``form`` set only on token-originated nodes."""

    __slots__ = ("label", "form", "index", "children")

    def __init__(
        self,
        label: str,
        form: str | None = None,
        index: int | None = None,
        children: list["LirNode"] | None = None,
    ):
        self.label = label
        self.form = form
        self.index = index
        self.children: list[LirNode] = children if children is not None else []

    def as_tuple(self):
        return (
            self.label,
            self.form,
            self.index,
            tuple(c.as_tuple() for c in self.children),
        )

    def __repr__(self) -> str:
        core = self.label if self.form is None else f"{self.label}({self.form})"
        if not self.children:
            return core
        return f"{core}[{', '.join(repr(c) for c in self.children)}]"


# --- CoNLL-U ingestion ---


def read_conllu(text: str) -> tuple[DepTree, ...]:
    """Parse CoNLL-U text; consumes columns ID, FORM, HEAD, DEPREL only."""
    sentences: list[DepTree] = []
    rows: list[tuple[int, DepToken]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if rows:
                sentences.append(_build_sentence(rows))
                rows = []
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise FormatError(
                line_no, f"expected 10 tab-separated columns, got {len(cols)}"
            )
        tok_id, form, head, deprel = cols[0], cols[1], cols[6], cols[7]
        if "-" in tok_id or "." in tok_id:
            continue  # multiword-token ranges and empty nodes carry no tree edges
        try:
            idx = int(tok_id)
        except ValueError:
            raise FormatError(line_no, f"bad token id: {tok_id!r}") from None
        expected = rows[-1][1].index + 1 if rows else 1
        if idx != expected:
            raise FormatError(
                line_no, f"token ids must be contiguous: expected {expected}, got {idx}"
            )
        try:
            head_idx = int(head)
        except ValueError:
            raise FormatError(line_no, f"bad head index: {head!r}") from None
        if head_idx < 0:
            raise FormatError(line_no, f"negative head index: {head_idx}")
        if not form:
            raise FormatError(line_no, "empty form")
        if not deprel:
            raise FormatError(line_no, "empty deprel")
        rows.append((line_no, DepToken(idx, form, head_idx, deprel)))
    if rows:
        sentences.append(_build_sentence(rows))
    return tuple(sentences)


def _build_sentence(rows: list[tuple[int, DepToken]]) -> DepTree:
    tokens = tuple(tok for _, tok in rows)
    n = len(tokens)
    for line_no, tok in rows:
        if tok.head > n:
            raise FormatError(
                line_no, f"head {tok.head} out of range for {n}-token sentence"
            )
    roots = [tok for tok in tokens if tok.head == 0]
    if len(roots) > 1:
        raise MultipleRoots(f"{len(roots)} tokens have head 0")
    for tok in tokens:
        seen = set()
        cur = tok
        while cur.head != 0:
            if cur.index in seen:
                raise CycleError(f"head cycle through token {cur.index}")
            seen.add(cur.index)
            cur = tokens[cur.head - 1]
    return DepTree(tokens)


def to_ordered_tree(tree: DepTree) -> LirNode:
    """Token nodes labeled by deprel, children in index order, wrapped in `root`."""
    nodes = {
        tok.index: LirNode(tok.deprel, tok.form, tok.index) for tok in tree.tokens
    }
    top: LirNode | None = None
    for tok in tree.tokens:  # index order, so children lists come out ordered
        if tok.head == 0:
            top = nodes[tok.index]
        else:
            nodes[tok.head].children.append(nodes[tok.index])
    assert top is not None
    return LirNode("root", children=[top])


# --- yields and triggers ---


def _token_entries(n: LirNode) -> list[tuple[int, str, str]]:
    entries = []
    for node in _walk(n):
        if node.index is not None:
            assert node.form is not None
            entries.append((node.index, node.form, node.label))
    entries.sort()
    return entries


def yield_text(n: LirNode) -> str:
    """Space-joined forms of token-originated descendants, in sentence order."""
    return " ".join(form for _, form, _ in _token_entries(n))


def _walk(n: LirNode) -> Iterator[LirNode]:
    yield n
    for child in n.children:
        yield from _walk(child)


CONDITION_TRIGGERS = (
    "assuming", "given", "having", "if", "in case", "in the case",
    "provided", "should", "so long", "supposing", "unless",
)
ELSE_TRIGGERS = ("else", "or else", "otherwise")

_COND_LABELS = frozenset({"acl", "advcl", "advmod", "parataxis"})
_ELSE_LABELS = frozenset({"conj", "parataxis"})
_ARG_LABELS = frozenset({"csubj", "iobj", "obj", "obl", "nsubj", "nmod"})
_MARK_CONTEXTS = frozenset({"Test", "advcl", "ccomp", "xcomp"})

STRUCT_LABELS = frozenset(
    {"root", "S", "Command", "Condition", "If", "ElseIf", "Else", "Body",
     "Test", "Action", "Arg"}
)


def _trigger_lists(triggers: tuple[str, ...]) -> list[list[str]]:
    return sorted((t.split() for t in triggers), key=len, reverse=True)


_COND_TRIGGER_LISTS = _trigger_lists(CONDITION_TRIGGERS)
_ELSE_TRIGGER_LISTS = _trigger_lists(ELSE_TRIGGERS)


def _match_trigger(
    n: LirNode, trigger_lists: list[list[str]], skip_leading_cc: bool = False
) -> str | None:
    """Case-insensitive token-level prefix test on the subtree yield."""
    entries = _token_entries(n)
    tokens = [form.lower() for _, form, _ in entries]
    hit = _prefix_hit(tokens, trigger_lists)
    if hit is None and skip_leading_cc and entries and entries[0][2] == "cc":
        hit = _prefix_hit(tokens[1:], trigger_lists)
    return hit


def _prefix_hit(tokens: list[str], trigger_lists: list[list[str]]) -> str | None:
    for trig in trigger_lists:  # longest trigger first
        if len(trig) <= len(tokens) and tokens[: len(trig)] == trig:
            return " ".join(trig)
    return None


def _min_index(n: LirNode) -> float:
    entries = _token_entries(n)
    return entries[0][0] if entries else math.inf


# --- rewrite rules ---
#
# Each rule scans the tree and performs at most one rewrite per call,
# returning a short detail string when it fired (None otherwise); the engine
# loops a rule until it stops firing before moving to the next rule.


def _slots(n: LirNode) -> list[tuple[LirNode, LirNode]]:
    """(container, child) pairs: direct children, plus one level through a
    token-originated child (the head word sits between a wrapper and its
    arguments in dependency form)."""
    out = [(n, child) for child in n.children]
    for child in n.children:
        if child.index is not None:
            out.extend((child, sub) for sub in child.children)
    return out


def _is_token(n: LirNode) -> bool:
    return n.index is not None


def _rule_s(root: LirNode) -> str | None:
    if root.label != "root" or root.form is not None or not root.children:
        return None
    if len(root.children) == 1 and root.children[0].label == "S":
        return None
    root.children = [LirNode("S", children=root.children)]
    return "wrapped sentence in S"


def _rule_command(root: LirNode) -> str | None:
    for n in _walk(root):
        is_s = n.label == "S" and n.form is None
        if not (is_s or (_is_token(n) and n.label in ("ccomp", "xcomp"))):
            continue
        if not n.children:
            continue
        if len(n.children) == 1 and n.children[0].label == "Command":
            continue
        n.children = [LirNode("Command", children=n.children)]
        return f"wrapped children of {n.label} in Command"
    return None


def _rule_condition(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label != "Command":
            continue
        slots = _slots(n)
        if any(child.label == "Condition" for _, child in slots):
            continue
        candidates = [
            (container, child)
            for container, child in slots
            if child.label in _COND_LABELS
            and _match_trigger(child, _COND_TRIGGER_LISTS)
        ]
        if not candidates:
            continue
        container, child = min(candidates, key=lambda pair: _min_index(pair[1]))
        pos = container.children.index(child)
        container.children[pos] = LirNode(
            "Condition", children=[LirNode("If", children=[child])]
        )
        return f"wrapped {child.label} '{yield_text(child)}' in Condition/If"
    return None


def _branch_candidates(
    condition: LirNode,
    parents: dict[int, LirNode],
    labels: frozenset[str],
    trigger_lists: list[list[str]],
) -> list[tuple[LirNode, LirNode]]:
    """Trigger-matched relocation candidates for ElseIf/Else under one Condition.

    Searched: inside each existing If/ElseIf branch (minus the branch's own
    anchor content), and among the siblings left at the host Command level
    (later trigger children feed the branch rules).  A conj-labeled candidate
    matches either directly (ignoring a leading cc word) or through an inner
    labeled child carrying the trigger.
    """
    pools: list[tuple[LirNode, LirNode]] = []
    for n0 in condition.children:
        if n0.label in ("If", "ElseIf"):
            anchor = n0.children[0] if len(n0.children) == 1 else None
            pools.extend(
                (c, ch) for c, ch in _slots(n0) if ch is not anchor
            )
    host: LirNode | None = parents.get(id(condition))
    while host is not None and host.label != "Command":
        host = parents.get(id(host))
    if host is not None:
        pools.extend(
            (c, ch) for c, ch in _slots(host) if ch is not condition
        )
    out = []
    for container, child in pools:
        if child.label in STRUCT_LABELS:
            continue
        if child.label in labels and _match_trigger(child, trigger_lists):
            out.append((container, child))
        elif child.label == "conj" or child.label.endswith("_conj"):
            if _match_trigger(child, trigger_lists, skip_leading_cc=True):
                out.append((container, child))
            else:
                for inner in child.children:
                    if inner.label in labels and _match_trigger(
                        inner, trigger_lists
                    ):
                        out.append((child, inner))
                        break
    return out


def _rule_branch(
    root: LirNode, branch_label: str, labels: frozenset[str],
    trigger_lists: list[list[str]],
) -> str | None:
    parents: dict[int, LirNode] = {}
    for n in _walk(root):
        for child in n.children:
            parents[id(child)] = n
    for n in _walk(root):
        if n.label != "Condition":
            continue
        if not any(c.label in ("If", "ElseIf") for c in n.children):
            continue
        candidates = _branch_candidates(n, parents, labels, trigger_lists)
        if not candidates:
            continue
        container, child = min(candidates, key=lambda pair: _min_index(pair[1]))
        container.children.remove(child)
        n.children.append(LirNode(branch_label, children=[child]))
        return f"moved {child.label} '{yield_text(child)}' into {branch_label}"
    return None


def _rule_elseif(root: LirNode) -> str | None:
    return _rule_branch(root, "ElseIf", _COND_LABELS, _COND_TRIGGER_LISTS)


def _rule_else(root: LirNode) -> str | None:
    return _rule_branch(root, "Else", _ELSE_LABELS, _ELSE_TRIGGER_LISTS)


def _rule_body(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label not in ("If", "ElseIf", "Else") or n.form is not None:
            continue
        if not n.children or any(c.label == "Body" for c in n.children):
            continue
        n.children = [
            LirNode("Body", children=[LirNode("Command", children=n.children)])
        ]
        return f"wrapped {n.label} content in Body/Command"
    return None


def _rule_test(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label not in ("If", "ElseIf") or n.form is not None:
            continue
        if any(c.label == "Test" for c in n.children):
            continue
        body = next((c for c in n.children if c.label == "Body"), None)
        if body is None:
            continue
        command = next((c for c in body.children if c.label == "Command"), None)
        if command is None:
            continue
        candidates = [
            (container, child)
            for container, child in _slots(command)
            if child.label in _COND_LABELS
            and _match_trigger(child, _COND_TRIGGER_LISTS)
        ]
        if not candidates:
            continue
        container, child = min(candidates, key=lambda pair: _min_index(pair[1]))
        container.children.remove(child)
        test = LirNode("Test", children=[LirNode("Command", children=[child])])
        n.children.insert(n.children.index(body), test)
        return f"moved {child.label} '{yield_text(child)}' into Test"
    return None


def _rule_mark(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label not in _MARK_CONTEXTS:
            continue
        command = next((c for c in n.children if c.label == "Command"), None)
        if command is None:
            continue
        marks = [
            (container, child)
            for container, child in _slots(command)
            if child.label == "mark"
        ]
        if not marks:
            continue
        container, child = min(marks, key=lambda pair: _min_index(pair[1]))
        container.children.remove(child)
        n.children.insert(n.children.index(command), child)
        return f"lifted mark '{yield_text(child)}' before Command"
    return None


def _rule_conj(root: LirNode) -> str | None:
    for n in _walk(root):
        for i, child in enumerate(n.children):
            if child.label != "conj":
                continue
            first_conjunct = None
            for prev in n.children[:i]:
                if (
                    _is_token(prev)
                    and prev.label != "conj"
                    and not prev.label.endswith("_conj")
                ):
                    first_conjunct = prev
            if first_conjunct is None:
                continue
            child.label = first_conjunct.label + "_conj"
            return f"relabeled conj '{yield_text(child)}' as {child.label}"
    return None


def _rule_cc(root: LirNode) -> str | None:
    for n in _walk(root):
        for child in n.children:
            if not child.label.endswith("_conj"):
                continue
            cc = next((c for c in child.children if c.label == "cc"), None)
            if cc is None:
                continue
            child.children.remove(cc)
            n.children.insert(n.children.index(child), cc)
            return f"promoted cc '{yield_text(cc)}' before {child.label}"
    return None


def _rule_action(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label != "Command" or not n.children:
            continue
        if any(c.label == "Action" for c in n.children):
            continue
        n.children = [LirNode("Action", children=n.children)]
        return "wrapped Command content in Action"
    return None


def _rule_arg(root: LirNode) -> str | None:
    for n in _walk(root):
        if n.label != "Action":
            continue
        candidates = [
            (container, child)
            for container, child in _slots(n)
            if child.label in _ARG_LABELS
        ]
        if not candidates:
            continue
        container, child = min(candidates, key=lambda pair: _min_index(pair[1]))
        pos = container.children.index(child)
        container.children[pos] = LirNode("Arg", children=[child])
        return f"wrapped {child.label} '{yield_text(child)}' in Arg"
    return None


def _rule_punct(root: LirNode) -> str | None:
    for n in _walk(root):
        for child in n.children:
            if child.label != "Command" or len(child.children) < 2:
                continue
            punct = next((c for c in child.children if c.label == "punct"), None)
            if punct is None:
                continue
            child.children.remove(punct)
            n.children.insert(n.children.index(child) + 1, punct)
            return f"moved punct '{yield_text(punct)}' out of Command"
    return None


RULE_ORDER: tuple[tuple[str, Callable[[LirNode], str | None]], ...] = (
    ("S", _rule_s),
    ("Command", _rule_command),
    ("Condition", _rule_condition),
    ("ElseIf", _rule_elseif),
    ("Else", _rule_else),
    ("Body", _rule_body),
    ("Test", _rule_test),
    ("mark", _rule_mark),
    ("conj", _rule_conj),
    ("cc", _rule_cc),
    ("Action", _rule_action),
    ("Arg", _rule_arg),
    ("punct", _rule_punct),
)

_FIXPOINT_CAP = 10_000  # defensive: a guarded rule set never gets near this


@dataclass(frozen=True)
class RuleFiring:
    rule: str
    detail: str
    snapshot: str  # compact bracket text after the firing


def apply_rules(tree: LirNode, trace: list[RuleFiring] | None = None) -> LirNode:
    """Apply all rules in order, each to fixpoint; the input is not mutated."""
    root = copy.deepcopy(tree)
    for name, rule in RULE_ORDER:
        for _ in range(_FIXPOINT_CAP):
            detail = rule(root)
            if detail is None:
                break
            if trace is not None:
                trace.append(RuleFiring(name, detail, lir_to_bracket(root)))
        else:
            raise RuntimeError(f"rule {name} did not reach a fixpoint")
    return root


# --- bracket serialization ---


def _to_bracket_node(n: LirNode) -> Structure:
    keyed: list[tuple[float, int, Node]] = []
    seq = 0
    for child in n.children:
        keyed.append((_min_index(child), seq, _to_bracket_node(child)))
        seq += 1
    if n.index is not None:
        assert n.form is not None
        keyed.append((n.index, seq, Leaf(n.form)))
    keyed.sort(key=lambda item: (item[0], item[1]))
    return Structure(n.label, tuple(node for _, _, node in keyed))


def lir_to_bracket(t: LirNode, style: str = "compact") -> str:
    """Serialize: token nodes render as `[ deprel ... [ form ] ... ]` with the
    form leaf and child subtrees interleaved in sentence order."""
    return linearize(_to_bracket_node(t), style)


def lir_labels(t: LirNode) -> frozenset[str]:
    """Label set under which the serialized tree parses back."""
    return frozenset(n.label for n in _walk(t)) | STRUCT_LABELS
