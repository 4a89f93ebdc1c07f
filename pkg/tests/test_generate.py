import pytest

from src.core.chart import parse_il
from src.core.generate import generate, il_vocabulary
from src.core.signs import Stage


def _texts(generated):
    return {item.text: item.sources for item in generated}


def test_transfer_stage_produces_the_transferred_frame(no_es):
    found = _texts(generate(il_vocabulary(no_es, Stage.TRANSFER), 4))
    assert found["jeg svarte til Per"] == frozenset({("svare", "responder")})
    assert "jeg svarte Per" not in found


def test_distinct_stage_produces_the_target_frame(no_es):
    found = _texts(generate(il_vocabulary(no_es, Stage.DISTINCT), 4))
    assert found["jeg svarte Per"] == frozenset()
    assert not any("til" in text.split() for text in found)


def test_variable_stage_produces_both(no_es):
    found = _texts(generate(il_vocabulary(no_es, Stage.VARIABLE), 4))
    assert "jeg svarte Per" in found
    assert "jeg svarte til Per" in found


def test_output_is_ordered_and_bounded(no_es):
    generated = generate(il_vocabulary(no_es, Stage.VARIABLE), 5)
    lengths = [len(g.tokens) for g in generated]
    assert lengths == sorted(lengths)
    assert max(lengths) <= 5
    assert generate(il_vocabulary(no_es), 0) == []


@pytest.mark.parametrize("stage", list(Stage))
def test_generated_sentences_parse_at_their_stage(lexicons, stage):
    for lexicon in lexicons.values():
        for item in generate(il_vocabulary(lexicon, stage), 5):
            assert parse_il(list(item.tokens), lexicon, stage).parsed, item.text
