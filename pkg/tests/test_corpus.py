import pytest
from hypothesis import given, settings, strategies as st

from greval.corpus import (
    Corpus,
    GrFormatError,
    Sentence,
    gr_line_numbers,
    parse_corpus,
    validate,
    write_corpus,
)
from greval.model import GrName, Lexeme, Relation, gr
from helpers import FIG1_LINES, gr_instances

FIG1_TEXT = "# sent fig1 genre G\n" + "\n".join(FIG1_LINES) + "\n"


def test_fig1_block():
    corpus = parse_corpus(FIG1_TEXT)
    (sent,) = corpus.sentences
    assert sent.genre == "G"
    assert len(sent.grs) == 12
    arg_mod = sent.grs[6]
    assert arg_mod.relation is Relation.ARG_MOD
    assert arg_mod.values == (Lexeme("by"), Lexeme("acquire"), Lexeme("proprietor"), GrName(Relation.SUBJ))


def test_fig1_round_trip_verbatim():
    out = write_corpus(parse_corpus(FIG1_TEXT))
    assert out.splitlines()[1:13] == FIG1_LINES


def test_mini_corpus(mini):
    assert len(mini) == 1 and mini.n_grs == 12
    assert mini[0].text.startswith("When the proprietor dies")
    assert parse_corpus(write_corpus(mini)) == mini


def test_empty_stream():
    assert len(parse_corpus("")) == 0
    assert write_corpus(Corpus()) == ""


def test_canonical_single_gr():
    corpus = Corpus((Sentence("s1", (gr("dobj", "drop", "it", "_"),)),))
    assert write_corpus(corpus) == "# sent s1\ndobj(drop, it, _)\n\n"


def test_header_fields():
    c = parse_corpus("# sent x7 genre J | It rained .\nncsubj(rain, it, _)\n\n# sent x8\n")
    assert c["x7"].genre == "J" and c["x7"].text == "It rained ."
    assert c["x8"].grs == () and c["x8"].genre is None
    assert write_corpus(c).startswith("# sent x7 genre J | It rained .\n")


def test_whitespace_and_comments():
    c = parse_corpus("% note\n#  sent  a\n  ncsubj( die ,proprietor,_ )  \n")
    assert str(c[0].grs[0]) == "ncsubj(die, proprietor, _)"


def test_indexed_lexemes_round_trip():
    c = parse_corpus("# sent a\nncsubj(see:2, it:1, _)\n")
    assert c[0].grs[0].head == Lexeme("see", 2)
    assert "ncsubj(see:2, it:1, _)" in write_corpus(c)


def test_multiset_semantics():
    c = parse_corpus("# sent a\ndobj(drop, it, _)\ndobj(drop, it, _)\n")
    assert len(c[0].grs) == 2


@pytest.mark.parametrize("text,line,fragment", [
    ("# sent a\nncsubj(die, proprietor)\n", 2, "ncsubj requires 3 slots, found 2"),
    ("# sent a\nfoo(a, b)\n", 2, "unknown relation"),
    ("# sent a\nncmod(Pro, go, x)\n", 2, "Pro"),
    ("# sent a\nncmod(to, go, x\n", 2, "malformed"),
    ("# sent a\n\n# sent a\n", 3, "duplicate sentence id"),
    ("ncsubj(die, x, _)\n", 1, "outside a sentence"),
    ("# sent a genre Q\n", 1, "genre"),
    ("# sent a\nncsubj(die, x, wibble)\n", 2, "initial_gr"),
    ("# sent a\nncsubj(die, x y, _)\n", 2, "lemma"),
    ("# sent a\nncsubj(die, , _)\n", 2, "empty"),
    ("# bogus\n", 1, "header"),
])
def test_errors(text, line, fragment):
    with pytest.raises(GrFormatError) as info:
        parse_corpus(text)
    diag = info.value.diagnostics[0]
    assert diag.severity == "error" and diag.line == line
    assert fragment in diag.message


def test_all_errors_collected():
    with pytest.raises(GrFormatError) as info:
        parse_corpus("# sent a\nfoo(x)\nbar(y)\n")
    assert [d.line for d in info.value.diagnostics] == [2, 3]


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=200))
def test_parsing_is_total(data):
    try:
        parse_corpus(data)
    except GrFormatError as e:
        assert e.diagnostics and all(d.line >= 1 for d in e.diagnostics)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="(),_ \n#%abPro:1sentgdxmcu", max_size=120))
def test_parsing_is_total_on_near_miss_text(text):
    try:
        parse_corpus(text)
    except GrFormatError as e:
        assert e.diagnostics


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.lists(gr_instances(), max_size=5),
                          st.sampled_from([None, "A", "G", "J"])), max_size=5))
def test_round_trip(blocks):
    corpus = Corpus(tuple(Sentence(f"s{i}", tuple(grs), genre) for i, (grs, genre) in enumerate(blocks)))
    text = write_corpus(corpus)
    assert parse_corpus(text) == corpus
    assert write_corpus(parse_corpus(text)) == text


def test_validate_gold_warnings(mini):
    diags = validate(mini)
    assert len(diags) == 1
    assert diags[0].severity == "warning" and "'mod'" in diags[0].message
    assert validate(Corpus()) == []


def test_validate_messages():
    c = parse_corpus("# sent a\nsubj(die, proprietor, _)\nncmod(_, go, fast)\nncsubj(Die, x, _)\n")
    msgs = [d.message for d in validate(c)]
    assert "non-leaf relation 'subj' in gold corpus" in msgs
    assert any("unspecified type slot" in m for m in msgs)
    assert any("uppercase" in m for m in msgs)
    assert len(validate(c, gold=False)) == 1


def test_validate_line_numbers():
    text = "# sent a\n\n# sent b\nncsubj(die, x, _)\nsubj(die, x, _)\n"
    c = parse_corpus(text)
    (d,) = validate(c, lines=gr_line_numbers(text))
    assert d.line == 5
