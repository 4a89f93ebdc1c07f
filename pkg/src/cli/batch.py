"""Corpus reading and the threaded batch runner."""

import re
import threading
from dataclasses import dataclass
from queue import Queue
from typing import Callable, List, Optional, Sequence, Tuple

from src.core.diagnose import Classification, DiagnosisReport


@dataclass(frozen=True)
class Expectation:
    classification: Classification
    lemma: Optional[str] = None


@dataclass(frozen=True)
class CorpusLine:
    number: int
    text: str
    expected: Optional[Expectation] = None


_EXPECT_RE = re.compile(r"^expect:\s*(?P<cls>[a-z_]+)(?:\s+(?P<lemma>\S+))?\s*$")


def parse_corpus_line(raw: str, number: int) -> Optional[CorpusLine]:
    """One sentence per line; ``# expect: <classification> [lemma]`` may follow it."""
    text, _, comment = raw.partition("#")
    text = text.strip()
    if not text:
        return None
    expected = None
    m = _EXPECT_RE.match(comment.strip())
    if m is not None:
        try:
            classification = Classification(m.group("cls"))
        except ValueError:
            raise ValueError(f"line {number}: unknown classification {m.group('cls')!r}") from None
        expected = Expectation(classification, m.group("lemma"))
    return CorpusLine(number, text, expected)


def read_corpus(text: str) -> List[CorpusLine]:
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = parse_corpus_line(raw, number)
        if line is not None:
            lines.append(line)
    return lines


def meets(report: DiagnosisReport, expected: Expectation) -> bool:
    for d in report.top():
        if d.classification is expected.classification and (
            expected.lemma is None or expected.classification is Classification.NO_DIAGNOSIS or d.il_lemma == expected.lemma
        ):
            return True
    return False


@dataclass
class SentenceDone:
    index: int
    ok: bool
    report: Optional[DiagnosisReport] = None
    message: Optional[str] = None


class BatchRunner:
    """Diagnose many sentences on worker threads.

    Workers take (index, sentence) pairs from a queue and post a SentenceDone
    event per sentence; results are handed back in input order. A failing
    sentence yields ``ok=False`` and never stops the others.
    """

    def __init__(self, work: Callable[[str], DiagnosisReport], jobs: int = 1) -> None:
        self._work = work
        self._jobs = max(1, jobs)

    def _worker(self, tasks: "Queue[Optional[Tuple[int, str]]]", done: "Queue[SentenceDone]") -> None:
        while True:
            task = tasks.get()
            if task is None:
                return
            index, sentence = task
            try:
                done.put(SentenceDone(index=index, ok=True, report=self._work(sentence)))
            except Exception as e:
                done.put(SentenceDone(index=index, ok=False, message=str(e)))

    def run(self, sentences: Sequence[str]) -> List[SentenceDone]:
        tasks: "Queue[Optional[Tuple[int, str]]]" = Queue()
        done: "Queue[SentenceDone]" = Queue()
        for item in enumerate(sentences):
            tasks.put(item)
        workers = min(self._jobs, max(1, len(sentences)))
        for _ in range(workers):
            tasks.put(None)
        threads = [threading.Thread(target=self._worker, args=(tasks, done), daemon=True) for _ in range(workers)]
        for t in threads:
            t.start()
        results = [done.get() for _ in sentences]
        for t in threads:
            t.join()
        return sorted(results, key=lambda r: r.index)
