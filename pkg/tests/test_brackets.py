import random

import pytest

from castbridge.brackets import (
    BracketError, EmptyDocument, Leaf, Structure, TrailingContent,
    UnbalancedBrackets, label_set, linearize, parse_bracket,
)
from genutil import random_bracket_tree

LABELS = label_set(["Module", "If", "For", "While", "test", "body", "orelse", "iter", "Name"])


def parse(text):
    return parse_bracket(text, LABELS)


def test_single_leaf():
    assert parse("[ x = 1 ]") == Leaf("x = 1")


def test_structure_with_leaf_child():
    assert parse("[ Module [ x = 1 ] ]") == Structure("Module", (Leaf("x = 1"),))


def test_label_token_without_child_bracket_is_leaf():
    # "If" alone inside brackets is code text, not a structure head
    assert parse("[ If ]") == Leaf("If")
    assert parse("[ If x ]") == Leaf("If x")


def test_label_then_bracket_is_structure():
    t = parse("[ If [ test [ x ] ] [ body [ y = 2 ] ] ]")
    assert isinstance(t, Structure)
    assert t.label == "If"
    assert [c.label for c in t.children] == ["test", "body"]


def test_unknown_first_token_is_leaf_even_with_brackets_after():
    # non-label token makes the node a leaf running to the matching bracket
    t = parse("[ Module [ foo [ x ] ] ]")
    assert t == Structure("Module", (Leaf("foo [ x ]"),))


def test_whitespace_runs_collapse_in_leaves():
    assert parse("[ x   =    1 ]") == Leaf("x = 1")
    assert parse("[ x\n\t= 1 ]") == Leaf("x = 1")


def test_non_isolated_brackets_are_code_text():
    assert parse("[ items[0] = [] ]") == Leaf("items[0] = []")


def test_compact_and_pretty_parse_identically():
    t = Structure(
        "Module",
        (
            Leaf("x = 1"),
            Structure("If", (
                Structure("test", (Leaf("x > 0"),)),
                Structure("body", (Leaf("y = 2"), Leaf("z = 3"))),
            )),
        ),
    )
    assert parse(linearize(t, style="compact")) == t
    assert parse(linearize(t, style="pretty")) == t


def test_pretty_indents_by_four():
    t = Structure("Module", (Structure("If", (Structure("test", (Leaf("x"),)),)),))
    assert linearize(t, style="pretty") == (
        "[ Module\n"
        "    [ If\n"
        "        [ test\n"
        "            [ x ]\n"
        "        ]\n"
        "    ]\n"
        "]"
    )


def test_linearize_rejects_unknown_style():
    with pytest.raises(ValueError):
        linearize(Leaf("x"), style="fancy")


def test_empty_document():
    with pytest.raises(EmptyDocument):
        parse("")
    with pytest.raises(EmptyDocument):
        parse("   \n\t ")


def test_unbalanced_open():
    with pytest.raises(UnbalancedBrackets):
        parse("[ Module [ x = 1 ]")


def test_unbalanced_close():
    with pytest.raises(BracketError):
        parse("[ x = 1 ] ]")


def test_trailing_content():
    with pytest.raises(TrailingContent):
        parse("[ x = 1 ] [ y = 2 ]")
    with pytest.raises(TrailingContent):
        parse("[ x = 1 ] stray")


def test_leading_content():
    with pytest.raises(BracketError):
        parse("stray [ x = 1 ]")


def test_two_head_tokens_make_a_leaf():
    # disambiguation needs exactly one label token; two tokens mean code text
    t = parse("[ Module stray [ x = 1 ] ]")
    assert t == Leaf("Module stray [ x = 1 ]")


def test_stray_text_after_child():
    with pytest.raises(BracketError):
        parse("[ Module [ x = 1 ] stray ]")


def test_error_carries_position():
    try:
        parse("[ Module [ x = 1 ]")
    except BracketError as exc:
        assert isinstance(exc.position, int)
    else:
        pytest.fail("expected BracketError")


def test_label_set_rejects_bad_labels():
    with pytest.raises(ValueError):
        label_set(["has space"])
    with pytest.raises(ValueError):
        label_set([""])


def test_round_trip_fuzz_both_styles():
    rng = random.Random(20240817)
    for _ in range(300):
        t = random_bracket_tree(rng, LABELS)
        for style in ("compact", "pretty"):
            assert parse(linearize(t, style=style)) == t
