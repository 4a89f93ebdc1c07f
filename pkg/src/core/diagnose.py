"""Turn ranked repaired analyses into transfer-error diagnoses."""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from src.core.chart import as_tokens, parse_strict
from src.core.config import RepairConfig
from src.core.errors import InterlanguageError
from src.core.lexicon import Lexicon
from src.core.repair import Analysis, RankedAnalyses, RepairKind, RepairRecord, RepairStatus, repair_parse
from src.core.signs import Language
from src.utils.text import wrap_text

logger = logging.getLogger(__name__)

MACHINE_FIELDS = (
    "sentence",
    "span_start",
    "span_end",
    "il_lemma",
    "observed_frame",
    "lt_frames",
    "l1_lemma",
    "l1_frame",
    "classification",
    "rank",
    "cost",
    "paraphrase",
    "status",
)


class Classification(str, Enum):
    LEXICAL_TRANSFER_SUBCAT = "lexical_transfer_subcat"
    IDIOM_TRANSFER = "idiom_transfer"
    NO_DIAGNOSIS = "no_diagnosis"


_BY_KIND = {
    RepairKind.L1_FRAME_SUBSTITUTION: Classification.LEXICAL_TRANSFER_SUBCAT,
    RepairKind.IDIOM_TRANSFER: Classification.IDIOM_TRANSFER,
}


@dataclass(frozen=True)
class Diagnosis:
    sentence: str
    span: Optional[Tuple[int, int]]
    il_lemma: Optional[str]
    observed_frame: Optional[str]
    lt_frames: Tuple[str, ...]
    l1_lemma: Optional[str]
    l1_frame: Optional[str]
    classification: Classification
    rank: int
    cost: int
    paraphrase: Optional[str] = None
    status: str = RepairStatus.REPAIRED.value

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.classification is not Classification.NO_DIAGNOSIS and not (self.l1_lemma and self.l1_frame):
            raise ValueError("a transfer diagnosis names its L1 lemma and frame")

    def as_record(self) -> Dict[str, object]:
        return {
            "sentence": self.sentence,
            "span_start": self.span[0] if self.span else None,
            "span_end": self.span[1] if self.span else None,
            "il_lemma": self.il_lemma,
            "observed_frame": self.observed_frame,
            "lt_frames": list(self.lt_frames),
            "l1_lemma": self.l1_lemma,
            "l1_frame": self.l1_frame,
            "classification": self.classification.value,
            "rank": self.rank,
            "cost": self.cost,
            "paraphrase": self.paraphrase,
            "status": self.status,
        }


@dataclass(frozen=True)
class StatusRecord:
    """A machine line for a sentence that produced no diagnosis at all."""

    sentence: str
    status: str


@dataclass
class DiagnosisReport:
    sentence: str
    status: str
    diagnoses: List[Diagnosis]
    analyses: Optional[RankedAnalyses] = field(default=None, compare=False, repr=False)
    detail: Optional[str] = None

    def __iter__(self) -> Iterator[Diagnosis]:
        return iter(self.diagnoses)

    def __len__(self) -> int:
        return len(self.diagnoses)

    def __getitem__(self, index: int) -> Diagnosis:
        return self.diagnoses[index]

    @property
    def errors(self) -> List[Diagnosis]:
        return [d for d in self.diagnoses if d.classification is not Classification.NO_DIAGNOSIS]

    def top(self) -> List[Diagnosis]:
        return [d for d in self.diagnoses if d.rank == 1]


######################################################################
# Paraphrase
######################################################################


def _lt_preps(lexicon: Lexicon) -> List[str]:
    return sorted(e.forms[0] for e in lexicon.entries if e.kind == "prep" and e.language == Language.LT.value)


def _is_prep(token: str, lexicon: Lexicon) -> bool:
    return any(entry.kind == "prep" for entry, _ in lexicon.lexical_items(token))


def _accepted(tokens: Sequence[str], lexicon: Lexicon) -> bool:
    try:
        return parse_strict(tokens, lexicon).parsed
    except InterlanguageError:
        return False


def paraphrase(tokens: Sequence[str], record: RepairRecord, lexicon: Lexicon) -> Optional[str]:
    """Re-word the repaired complement so the target grammar accepts it.

    The only edits tried touch the preposition in front of the complement:
    drop it, replace it, or insert one.
    """
    if record.kind is not RepairKind.L1_FRAME_SUBSTITUTION or record.span is None:
        return None
    start, end = record.span
    candidates: List[List[str]] = []
    preps = _lt_preps(lexicon)
    if start < end and _is_prep(tokens[start], lexicon):
        candidates.append(list(tokens[:start]) + list(tokens[start + 1:]))
        for prep in preps:
            if prep != tokens[start]:
                candidates.append(list(tokens[:start]) + [prep] + list(tokens[start + 1:]))
    else:
        for prep in preps:
            candidates.append(list(tokens[:start]) + [prep] + list(tokens[start:]))
    for candidate in candidates:
        if _accepted(candidate, lexicon):
            return " ".join(candidate)
    return None


######################################################################
# Diagnosis
######################################################################


def _distinct(analyses: Sequence[Analysis]) -> List[Analysis]:
    seen: Set[Tuple[object, ...]] = set()
    kept = []
    for analysis in analyses:
        signature = analysis.signature()
        if signature not in seen:
            seen.add(signature)
            kept.append(analysis)
    return kept


def diagnose(
    tokens: Union[str, Sequence[str]], lexicon: Lexicon, config: Optional[RepairConfig] = None
) -> DiagnosisReport:
    """Repair-parse one sentence and explain each hypothesis.

    Raises UnknownWordError like the parser does; NO_ANALYSIS and a tripped
    edge cap come back as the report's status with no diagnoses.
    """
    words = as_tokens(tokens)
    sentence = tokens.strip() if isinstance(tokens, str) else " ".join(words)
    ranked = repair_parse(words, lexicon, config)
    status = ranked.status.value
    if ranked.status is RepairStatus.PARSED:
        well_formed = Diagnosis(
            sentence=sentence,
            span=None,
            il_lemma=None,
            observed_frame=None,
            lt_frames=(),
            l1_lemma=None,
            l1_frame=None,
            classification=Classification.NO_DIAGNOSIS,
            rank=1,
            cost=0,
            status=status,
        )
        return DiagnosisReport(sentence, status, [well_formed], ranked)

    diagnoses: List[Diagnosis] = []
    for rank_no, analysis in enumerate(_distinct(ranked.analyses), 1):
        for record in analysis.repairs:
            diagnoses.append(
                Diagnosis(
                    sentence=sentence,
                    span=record.span,
                    il_lemma=record.il_lemma,
                    observed_frame=record.observed,
                    lt_frames=record.lt_frames,
                    l1_lemma=record.l1_lemma,
                    l1_frame=record.l1_frame,
                    classification=_BY_KIND[record.kind],
                    rank=rank_no,
                    cost=analysis.cost,
                    paraphrase=paraphrase(words, record, lexicon),
                    status=status,
                )
            )
    logger.debug("%r: %d diagnoses (%s)", sentence, len(diagnoses), status)
    return DiagnosisReport(sentence, status, diagnoses, ranked)


######################################################################
# Output
######################################################################


def _explain(d: Diagnosis) -> str:
    if d.classification is Classification.NO_DIAGNOSIS:
        return f"{d.rank}. '{d.sentence}' is well formed; there is no transfer error to report."
    where = f" (words {d.span[0] + 1}-{d.span[1]})" if d.span else ""
    targets = " or ".join(d.lt_frames) or "another frame"
    if d.classification is Classification.IDIOM_TRANSFER:
        text = (
            f"{d.rank}. In '{d.sentence}', '{d.il_lemma}' is followed by {d.observed_frame}{where}, "
            f"but the target language has it take {targets}. The combination copies the L1 "
            f"pseudo-idiom '{d.l1_lemma}' {d.l1_frame} word for word, so idiom transfer is a "
            f"likely explanation (cost {d.cost})."
        )
    else:
        text = (
            f"{d.rank}. In '{d.sentence}', '{d.il_lemma}' takes {d.observed_frame}{where} where the "
            f"target language expects {targets}. Its L1 counterpart '{d.l1_lemma}' takes "
            f"{d.l1_frame}, so transfer of that subcategorisation frame is a likely explanation "
            f"(cost {d.cost})."
        )
    if d.paraphrase:
        text += f" Target form: '{d.paraphrase}'."
    return text


def render_text(report: DiagnosisReport) -> str:
    if not report.diagnoses:
        if report.detail:
            reason = report.detail
        elif report.status == RepairStatus.EDGE_CAP_EXCEEDED.value:
            reason = "the chart grew past its edge cap"
        else:
            reason = "neither the target grammar nor any anticipated transfer error accounts for it"
        paragraphs = [f"No analysis for '{report.sentence}': {reason}."]
    else:
        paragraphs = [_explain(d) for d in report.diagnoses]
    return "\n\n".join("\n".join(wrap_text(p, 72)) for p in paragraphs) + "\n"


def render_machine(report: DiagnosisReport) -> str:
    if not report.diagnoses:
        record: Dict[str, object] = {name: None for name in MACHINE_FIELDS}
        record["sentence"] = report.sentence
        record["lt_frames"] = []
        record["status"] = report.status
        return json.dumps(record, ensure_ascii=False) + "\n"
    return "".join(json.dumps(d.as_record(), ensure_ascii=False) + "\n" for d in report.diagnoses)


def render(report: DiagnosisReport, fmt: str = "text") -> str:
    if fmt == "machine":
        return render_machine(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def read_machine(line: str) -> Union[Diagnosis, StatusRecord]:
    data = json.loads(line)
    missing = [name for name in MACHINE_FIELDS if name not in data]
    if missing:
        raise ValueError(f"machine record lacks {', '.join(missing)}")
    if data["classification"] is None:
        return StatusRecord(data["sentence"], data["status"])
    span = None
    if data["span_start"] is not None:
        span = (int(data["span_start"]), int(data["span_end"]))
    return Diagnosis(
        sentence=data["sentence"],
        span=span,
        il_lemma=data["il_lemma"],
        observed_frame=data["observed_frame"],
        lt_frames=tuple(data["lt_frames"]),
        l1_lemma=data["l1_lemma"],
        l1_frame=data["l1_frame"],
        classification=Classification(data["classification"]),
        rank=int(data["rank"]),
        cost=int(data["cost"]),
        paraphrase=data["paraphrase"],
        status=data["status"],
    )
