from hypothesis import given
from hypothesis import strategies as st

from mmlint.artifacts import parse_aliases
from mmlint.labels import AliasTable, normalize_label, resolve_alias, tokens

from oracles import Same, norm


def test_normalize_examples():
    assert normalize_label("  Easy To  Use ") == "easy to use"
    assert normalize_label("Understandable.") == "understandable"
    assert normalize_label("") == ""


@given(st.text())
def test_normalize_idempotent(text):
    once = normalize_label(text)
    assert normalize_label(once) == once


@given(st.text(alphabet=st.characters(max_codepoint=0x7F)))
def test_normalize_agrees_with_regex_oracle_on_ascii(text):
    assert normalize_label(text) == norm(text)


def test_resolve_alias():
    table = parse_aliases("ease of use = easy to use\n")
    assert resolve_alias(table, "ease of use") == "easy to use"
    assert resolve_alias(AliasTable(), "Reliable") == "reliable"
    chained = parse_aliases("a = b\nb = c\n")
    assert chained.resolve("a") == chained.resolve("c")
    assert chained.classes() == [["a", "b", "c"]]


label_st = st.sampled_from(list("abcdefgh"))


@given(st.lists(st.lists(label_st, min_size=2, max_size=3), max_size=5), label_st, label_st, label_st)
def test_aliases_form_an_equivalence_matching_closure(decls, x, y, z):
    table = AliasTable(decls)
    same = Same(decls)
    assert table.same(x, x)
    assert table.same(x, y) == table.same(y, x)
    if table.same(x, y) and table.same(y, z):
        assert table.same(x, z)
    assert table.same(x, y) == same(x, y)
    assert table.resolve(table.resolve(x)) == table.resolve(x)


def test_tokens_drop_story_boilerplate():
    assert tokens("As a user, I want to view the versions so that") == {"user", "view", "versions"}
