import json
import time

import pytest

from src.core.chart import parse_strict
from src.core.config import RepairConfig
from src.core.diagnose import (
    MACHINE_FIELDS,
    Classification,
    Diagnosis,
    StatusRecord,
    diagnose,
    paraphrase,
    read_machine,
    render,
    render_machine,
    render_text,
)
from src.core.generate import generate, il_vocabulary
from src.core.repair import repair_parse
from src.core.signs import Language, Stage


def test_subcat_transfer_diagnosis(no_es, config):
    start = time.perf_counter()
    report = diagnose("Jeg kunne ikke svare til Per", no_es, config)
    elapsed = time.perf_counter() - start
    assert report.status == "repaired"
    (top,) = report.top()
    assert top.il_lemma == "svare"
    assert top.l1_lemma == "responder"
    assert top.l1_frame == "<PP[a]>"
    assert top.observed_frame == "PP[til]"
    assert top.lt_frames == ("<NP>",)
    assert top.classification is Classification.LEXICAL_TRANSFER_SUBCAT
    assert top.cost == 1
    assert top.span == (4, 6)
    assert top.paraphrase == "Jeg kunne ikke svare Per"
    # well inside the interactive budget, with room for slow machines
    assert elapsed < 1.0


def test_idiom_transfer_diagnosis(en_fr, config):
    start = time.perf_counter()
    report = diagnose("My friend has hunger", en_fr, config)
    elapsed = time.perf_counter() - start
    (top,) = report.top()
    assert top.classification is Classification.IDIOM_TRANSFER
    assert top.il_lemma == "have"
    assert top.l1_lemma == "avoir"
    assert top.l1_frame == "<N[faim]>"
    assert top.observed_frame == "N[hunger]"
    assert top.paraphrase is None
    assert elapsed < 1.0


@pytest.mark.parametrize(
    "name, sentence",
    [("no-es", "Jeg kunne ikke svare Per"), ("en-fr", "My friend is hungry")],
)
def test_grammatical_controls(lexicons, config, name, sentence):
    report = diagnose(sentence, lexicons[name], config)
    assert report.status == "parsed"
    assert report.errors == []
    (only,) = report.diagnoses
    assert only.classification is Classification.NO_DIAGNOSIS
    assert (only.rank, only.cost) == (1, 0)
    assert all(a.repairs == () for a in report.analyses.analyses)


def test_no_analysis_report(no_es, config):
    report = diagnose("Per svare til jeg", no_es, config)
    assert report.status == "no_analysis"
    assert len(report) == 0
    assert "No analysis" in render_text(report)
    record = read_machine(render_machine(report))
    assert record == StatusRecord("Per svare til jeg", "no_analysis")


def test_paraphrase_inserts_a_missing_preposition():
    from src.core.lexicon import load_lexicon

    # learner drops the preposition the target verb needs
    lexicon = load_lexicon(
        """
languages lt=no l1=es
roles wait: agent theme
pron jeg human lang=lt
noun per proper human lang=lt forms=Per
verb vente lang=lt subcat=(pp[paa]:theme) sem=wait forms=vente:inf,ventet:fin
prep paa lang=lt
pron yo human lang=l1
verb esperar lang=l1 subcat=(np:theme) sem=wait forms=esperar:inf
bilingual vente <-> esperar
"""
    )
    report = diagnose("jeg ventet Per", lexicon)
    (top,) = report.top()
    assert top.classification is Classification.LEXICAL_TRANSFER_SUBCAT
    assert top.observed_frame == "NP"
    assert top.paraphrase == "jeg ventet paa Per"
    record = report.analyses.top.repairs[0]
    assert paraphrase(["jeg", "ventet", "Per"], record, lexicon) == "jeg ventet paa Per"


def test_machine_records_round_trip(no_es, en_fr, config):
    for lexicon, sentence in ((no_es, "Jeg kunne ikke svare til Per"), (en_fr, "My friend has hunger")):
        report = diagnose(sentence, lexicon, config)
        lines = render(report, "machine").splitlines()
        assert len(lines) == len(report)
        for line, diagnosis in zip(lines, report):
            assert list(json.loads(line)) == list(MACHINE_FIELDS)
            assert read_machine(line) == diagnosis


def test_machine_record_rejects_missing_fields():
    with pytest.raises(ValueError):
        read_machine(json.dumps({"sentence": "x"}))


def test_text_output(no_es, config):
    text = render_text(diagnose("Jeg kunne ikke svare til Per", no_es, config))
    for needle in ("svare", "responder", "<PP[a]>", "PP[til]", "Jeg kunne ikke svare Per"):
        assert needle in text.replace("\n", " ")
    assert all(len(line) <= 72 for line in text.splitlines())


def test_unknown_format(no_es, config):
    with pytest.raises(ValueError):
        render(diagnose("Jeg svarte Per", no_es, config), "html")


def test_diagnosis_validation():
    with pytest.raises(ValueError):
        Diagnosis("s", None, None, None, (), None, None, Classification.NO_DIAGNOSIS, 0, 0)
    with pytest.raises(ValueError):
        Diagnosis("s", (0, 1), "svare", "PP[til]", ("<NP>",), None, None, Classification.IDIOM_TRANSFER, 1, 1)


@pytest.mark.parametrize("name", ["no-es", "en-fr"])
def test_every_transferred_sentence_is_diagnosed(lexicons, config, name):
    lexicon = lexicons[name]
    start = time.perf_counter()
    generated = generate(il_vocabulary(lexicon, Stage.TRANSFER), 7)
    checked = 0
    for item in generated:
        if not item.sources or parse_strict(item.tokens, lexicon).parsed:
            continue
        report = diagnose(list(item.tokens), lexicon, config)
        assert report.errors, item.text
        assert any((d.il_lemma, d.l1_lemma) in item.sources for d in report.errors), item.text
        checked += 1
    assert checked >= 1
    assert time.perf_counter() - start < 30.0


@pytest.mark.parametrize("name", ["no-es", "en-fr"])
def test_no_false_alarms(lexicons, config, name):
    lexicon = lexicons[name]
    forms = {form for e in lexicon.entries if e.language == Language.LT.value for form in e.forms}
    table = {form: lexicon.lexical_signs(form) for form in forms}
    grammatical = generate(table, 5)
    assert grammatical
    for item in grammatical:
        report = diagnose(list(item.tokens), lexicon, config)
        assert report.status == "parsed", item.text
        assert report.errors == []


def test_repaired_status_matches_repair_parse(no_es):
    config = RepairConfig(beam=1)
    report = diagnose("Jeg kunne ikke svare til Per", no_es, config)
    assert report.status == repair_parse("Jeg kunne ikke svare til Per", no_es, config).status.value
    assert {d.rank for d in report} == {1}
