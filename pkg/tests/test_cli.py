import json
import logging
from io import StringIO

import pytest

from src.cli.repl import Repl
from src.core.config import RepairConfig
from src.main import main


@pytest.fixture
def run(capsys, fixtures_dir):
    def invoke(*argv, lexicon="no-es.lex"):
        code = main([argv[0], "--lexicon", str(fixtures_dir / lexicon), *argv[1:]])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_diagnose_machine(run):
    code, out, _ = run("diagnose", "Jeg kunne ikke svare til Per", "--format", "machine")
    assert code == 1
    record = json.loads(out.splitlines()[0])
    assert record["classification"] == "lexical_transfer_subcat"
    assert (record["il_lemma"], record["l1_lemma"]) == ("svare", "responder")
    assert record["paraphrase"] == "Jeg kunne ikke svare Per"


def test_diagnose_grammatical(run):
    code, out, _ = run("diagnose", "Jeg kunne ikke svare Per")
    assert code == 0
    assert "no transfer error" in out.replace("\n", " ")


def test_diagnose_strict_flag(run):
    code, out, _ = run("diagnose", "Jeg kunne ikke svare til Per", "--strict")
    assert code == 2
    assert out.startswith("No analysis")


def test_diagnose_unknown_word(run):
    code, out, _ = run("diagnose", "Jeg kunne ikke blorp Per")
    assert code == 2
    assert "UNKNOWN_WORD(blorp, 3)" in out


def test_parse(run):
    code, out, _ = run("parse", "Jeg kunne ikke svare Per")
    assert code == 0
    assert out.startswith("1. able(agent=jeg, soa=neg(arg=answer(agent=jeg, theme=per)))")


def test_parse_machine_and_stats(run):
    code, out, err = run("parse", "Jeg svarte Per", "--format", "machine", "--stats")
    assert code == 0
    record = json.loads(out)
    assert record["semantics"] == "answer(agent=jeg, theme=per)"
    assert record["tree"].startswith("(S ")
    assert "chart: lexical=3 stored=" in err


def test_parse_rejects_and_simulates(run):
    code, out, _ = run("parse", "Jeg svarte til Per")
    assert (code, out) == (2, "No parse for 'Jeg svarte til Per'.\n")
    code, _, _ = run("parse", "Jeg svarte til Per", "--stage", "transfer")
    assert code == 0


def test_parse_unknown_word(run):
    code, _, err = run("parse", "Jeg blorp")
    assert code == 2
    assert "UNKNOWN_WORD(blorp, 1)" in err


def test_lexcheck(run):
    code, out, _ = run("lexcheck")
    assert code == 0
    assert "bilingual: 1" in out
    assert "rule es-human-object-pp:" in out


def test_lexcheck_reports_lexicon_errors(run):
    code, out, err = run("lexcheck", lexicon="broken-pform.lex")
    assert code == 3
    assert out == ""
    assert "DANGLING_PFORM" in err


def test_lexcheck_without_preposition_a(run, tmp_path, caplog):
    lexicon = tmp_path / "no-a.lex"
    lexicon.write_text(
        "languages lt=no l1=es\n"
        "roles help: agent theme\n"
        "verb ayudar lang=l1 subcat=(np:theme +human) sem=help\n",
        encoding="utf-8",
    )
    with caplog.at_level(logging.WARNING, logger="src.core.signs"):
        code, out, _ = run("lexcheck", lexicon=str(lexicon))
    assert code == 0
    assert "rule es-human-object-pp: 0 derived entries" in out
    assert "no preposition 'a'" in caplog.text


def test_missing_lexicon_file(run):
    code, _, err = run("lexcheck", lexicon="no-such.lex")
    assert code == 3
    assert err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [[], ["diagnose"], ["frobnicate"], ["diagnose", "--lexicon", "x.lex", "s", "--beam", "0"]],
)
def test_usage_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 3
    capsys.readouterr()


def test_batch(run, fixtures_dir):
    corpus = str(fixtures_dir / "corpus-no.txt")
    code, out, err = run("batch", corpus, "--format", "machine", "--jobs", "1")
    assert code == 1
    sentences = [json.loads(line)["sentence"] for line in out.splitlines()]
    assert sentences[0] == "Jeg kunne ikke svare Per."
    assert sentences[-1] == "Per svarer jeg."
    assert "mismatches=0" in err
    assert "expected" not in err

    _, again, _ = run("batch", corpus, "--format", "machine", "--jobs", "4")
    assert again == out


def test_batch_reports_mismatches(run, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("Jeg svarte til Per.  # expect: no_diagnosis\n", encoding="utf-8")
    code, _, err = run("batch", str(corpus))
    assert code == 1
    assert "line 1: expected no_diagnosis" in err
    assert "mismatches=1" in err


def test_batch_keeps_going_past_bad_sentences(run, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("Jeg blorp.\nPer svare til jeg.\nJeg svarte Per.\n", encoding="utf-8")
    code, out, err = run("batch", str(corpus), "--format", "machine", "--jobs", "2")
    assert code == 2
    statuses = [json.loads(line)["status"] for line in out.splitlines()]
    assert statuses == ["unknown_word", "no_analysis", "parsed"]
    assert "no_analysis=2" in err


def test_batch_rejects_bad_annotations(run, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("Jeg svarte Per.  # expect: typo\n", encoding="utf-8")
    code, _, err = run("batch", str(corpus))
    assert code == 3
    assert "unknown classification" in err


def test_generate(run):
    code, out, _ = run("generate", "--stage", "transfer", "--max-tokens", "4")
    assert code == 0
    assert "jeg svarte til Per\t[svare<-responder]" in out.splitlines()


def test_repl(no_es, capsys):
    repl = Repl(no_es, RepairConfig())
    lines = [
        "Jeg kunne ikke svare til Per",
        ":stage transfer",
        "Jeg svarte til Per",
        ":stage nonsense",
        ":stage off",
        ":strict",
        "Jeg svarte til Per",
        "Jeg blorp",
        ":quit",
        "Jeg svarte Per",
    ]
    out = StringIO()
    assert repl.run(lines, out=out) == 0
    text = out.getvalue()
    assert "responder" in text
    assert "accepted at stage transfer" in text
    assert "repair off" in text
    assert "No analysis for 'Jeg svarte til Per'" in text
    # nothing after :quit is read
    assert text.count("Jeg svarte Per") == 0
    err = capsys.readouterr().err
    assert "unknown stage 'nonsense'" in err
