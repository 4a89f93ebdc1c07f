import pytest
from hypothesis import given, settings

from src.core.avm import equivalent, structure
from src.core.errors import NotationError
from src.core.lexicon import load_lexicon
from src.core.notation import read_avm, write_avm

from tests.strategies import feature_structures


@given(feature_structures())
@settings(max_examples=500, deadline=None)
def test_read_print_round_trip(fs):
    text = write_avm(fs)
    again = read_avm(text)
    assert equivalent(again, fs)
    assert write_avm(again) == text


def test_forward_reference():
    fs = read_avm("[A: #1, B: #1 [C: x]]")
    assert fs.node_at(("A",)) is fs.node_at(("B",))
    assert fs.atom_at(("A", "C")) == "x"


def test_lists():
    fs = read_avm("[L: < a, [F: b] >, E: <>]")
    assert write_avm(fs) == "[E: <>, L: < a, [F: b] >]"


@pytest.mark.parametrize(
    "text",
    [
        "[A: x, A: y]",
        "[A: x",
        "[a: x]",
        "[A: x] trailing",
        "[A: #1 x, B: #1 y]",
        "#1 [A: #1]",
        "[A: ?]",
        "[A: \"open]",
    ],
)
def test_rejects_bad_notation(text):
    with pytest.raises(NotationError):
        read_avm(text)


def test_inventory_closes_features():
    assert read_avm("[CAT: verb]", inventory={"CAT"}).atom_at(("CAT",)) == "verb"
    with pytest.raises(NotationError):
        read_avm("[CAT: verb, BOGUS: x]", inventory={"CAT"})


@pytest.mark.parametrize("symbol", ["øl", "ærlig", "å", "Oslo", "avoir(faim)", 'say "hi"', ""])
def test_atoms_outside_the_bare_pattern(symbol):
    fs = structure({"LEX": symbol})
    text = write_avm(fs)
    assert read_avm(text).atom_at(("LEX",)) == symbol
    assert read_avm(text).canonical() == text


def test_lexicon_signs_round_trip():
    lexicon = load_lexicon(
        """
languages lt=no l1=es
roles wish: agent theme
pron jeg human lang=lt
noun øl lang=lt forms=øl
noun Oslo proper lang=lt forms=Oslo
verb ønske lang=lt subcat=(np:theme) sem=wish forms=ønske:inf,ønsket:fin
"""
    )
    for sign in lexicon.compiled_signs():
        again = read_avm(write_avm(sign.fs))
        assert equivalent(again, sign.fs)
