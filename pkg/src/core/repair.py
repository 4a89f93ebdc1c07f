"""Anticipatory robust parsing.

When the target-language chart yields no sentence, transfer-stage signs from
the mal-lexicon are added for the tokens that have bilingual entries, and the
chart is closed again with a cost budget. Each mal edge carries a pending
RepairRecord; it is pinned to a span when its head cancels one of the frame
elements that differ from the target frame.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.core.chart import Chart, Edge, LexicalItem, as_tokens, parse_signs, strict_signs
from src.core.config import RepairConfig
from src.core.grammar import LocalTree
from src.core.lexicon import Lexicon
from src.core.signs import MalEntry, RepairKind, RepairTemplate, Sign

logger = logging.getLogger(__name__)

__all__ = [
    "Analysis",
    "RankedAnalyses",
    "RepairKind",
    "RepairRecord",
    "RepairStatus",
    "exhaustive_repair",
    "rank",
    "repair_parse",
]


@dataclass(frozen=True)
class RepairRecord:
    kind: RepairKind
    il_lemma: str
    l1_lemma: str
    l1_label: str
    l1_frame: str
    lt_frames: Tuple[str, ...]
    cancelled: str
    head_position: int
    cost: int = 1
    observed: Optional[str] = None
    span: Optional[Tuple[int, int]] = None
    complement_edge: Optional[int] = None

    @classmethod
    def from_template(cls, template: RepairTemplate, head_position: int, cost: int = 1) -> "RepairRecord":
        return cls(
            kind=template.kind,
            il_lemma=template.il_lemma,
            l1_lemma=template.l1_lemma,
            l1_label=template.l1_label,
            l1_frame=template.l1_frame,
            lt_frames=template.lt_frames,
            cancelled=template.cancelled,
            head_position=head_position,
            cost=cost,
        )

    @property
    def resolved(self) -> bool:
        return self.span is not None

    def resolve(self, complement: Edge) -> "RepairRecord":
        return replace(
            self,
            span=complement.span,
            observed=complement.sign.label(with_lex=True),
            complement_edge=complement.id,
        )

    def finalised(self) -> "RepairRecord":
        """A record whose marked element was never cancelled points at its head word."""
        if self.resolved:
            return self
        return replace(self, span=(self.head_position, self.head_position + 1), observed="")


def resolve_repairs(head: Edge, complement: Edge, local: LocalTree) -> Tuple[RepairRecord, ...]:
    repairs = head.repairs + complement.repairs
    if not local.cancelled_marked:
        return repairs
    out = []
    for record in repairs:
        if isinstance(record, RepairRecord) and not record.resolved and record.head_position == head.head_position:
            record = record.resolve(complement)
        out.append(record)
    return tuple(out)


@dataclass(frozen=True)
class Analysis:
    edge: Edge
    repairs: Tuple[RepairRecord, ...]
    cost: int

    @property
    def il_lemmas(self) -> Tuple[str, ...]:
        return tuple(sorted({r.il_lemma for r in self.repairs}))

    @property
    def leftmost(self) -> Tuple[int, int]:
        spans = [r.span for r in self.repairs if r.span is not None]
        return min(spans) if spans else (-1, -1)

    def rank_key(self) -> Tuple[object, ...]:
        return (self.cost, len(self.il_lemmas), self.leftmost, self.il_lemmas, self.edge.id)

    def signature(self) -> Tuple[object, ...]:
        """What two analyses must share to count as the same hypothesis."""
        return (
            self.cost,
            tuple(sorted((r.kind.value, r.il_lemma, r.l1_lemma, r.span or (-1, -1)) for r in self.repairs)),
        )


class RepairStatus(str, Enum):
    PARSED = "parsed"
    REPAIRED = "repaired"
    NO_ANALYSIS = "no_analysis"
    EDGE_CAP_EXCEEDED = "edge_cap_exceeded"


@dataclass
class RankedAnalyses:
    status: RepairStatus
    analyses: List[Analysis]
    chart: Chart
    strict_stats: Dict[str, int]
    repaired_stats: Dict[str, int]
    mal_tokens: int = 0

    @property
    def top(self) -> Optional[Analysis]:
        return self.analyses[0] if self.analyses else None


def rank(analyses: Sequence[Analysis], config: Optional[RepairConfig] = None) -> List[Analysis]:
    config = config or RepairConfig()
    return sorted(analyses, key=Analysis.rank_key)[: config.beam]


def _analyses(edges: Sequence[Edge]) -> List[Analysis]:
    out = []
    for edge in edges:
        repairs = tuple(r.finalised() for r in edge.repairs if isinstance(r, RepairRecord))
        out.append(Analysis(edge, repairs, edge.cost))
    return out


def _mal_items(
    tokens: Sequence[str], lexicon: Lexicon, config: RepairConfig
) -> List[List[Tuple[MalEntry, LexicalItem]]]:
    items = []
    for position, token in enumerate(tokens):
        here = []
        for mal, sign in lexicon.mal_signs(token):
            record = RepairRecord.from_template(mal.template, position, config.repair_cost)
            here.append((mal, LexicalItem(sign, config.repair_cost, (record,))))
        items.append(here)
    return items


def repair_parse(
    tokens: Union[str, Sequence[str]], lexicon: Lexicon, config: Optional[RepairConfig] = None
) -> RankedAnalyses:
    config = config or RepairConfig()
    words = as_tokens(tokens)
    signs = strict_signs(words, lexicon)
    chart = Chart(words, config.edge_cap)
    for position, options in enumerate(signs):
        for sign in options:
            chart.add_lexical(position, sign)
    chart.close(0)
    strict_stats = chart.stats.as_dict()
    strict = chart.sentences(0)
    if strict:
        return RankedAnalyses(RepairStatus.PARSED, rank(_analyses(strict), config), chart, strict_stats, strict_stats)
    if chart.truncated:
        return RankedAnalyses(RepairStatus.EDGE_CAP_EXCEEDED, [], chart, strict_stats, strict_stats)

    mal_items = _mal_items(words, lexicon, config)
    mal_tokens = sum(1 for here in mal_items if here)
    if config.repair_cost <= config.max_repairs:
        for position, here in enumerate(mal_items):
            for _, item in here:
                chart.add_lexical(position, item)
        chart.close(config.max_repairs, resolve_repairs)
    analyses = rank(_analyses(chart.sentences(config.max_repairs)), config)
    if chart.truncated:
        status = RepairStatus.EDGE_CAP_EXCEEDED
    elif analyses:
        status = RepairStatus.REPAIRED
    else:
        status = RepairStatus.NO_ANALYSIS
    logger.info("%r: %s, %d analyses, %d mal tokens", " ".join(words), status.value, len(analyses), mal_tokens)
    return RankedAnalyses(status, analyses, chart, strict_stats, chart.stats.as_dict(), mal_tokens)


def exhaustive_repair(
    tokens: Union[str, Sequence[str]], lexicon: Lexicon, config: Optional[RepairConfig] = None
) -> List[Analysis]:
    """Cheapest analyses found by parsing once per set of mal substitutions.

    A substituted position offers only its mal sign. Slow; a reference for
    checking ``repair_parse``.
    """
    config = config or RepairConfig()
    words = as_tokens(tokens)
    signs: List[List[Sign]] = strict_signs(words, lexicon)
    candidates = [
        (position, item) for position, here in enumerate(_mal_items(words, lexicon, config)) for _, item in here
    ]
    best: List[Analysis] = []
    max_size = config.max_repairs // config.repair_cost
    for size in range(0, max_size + 1):
        for subset in combinations(candidates, size):
            positions = [p for p, _ in subset]
            if len(set(positions)) != len(positions):
                continue
            chosen = dict(subset)
            per_position = [
                [chosen[p]] if p in chosen else list(options) for p, options in enumerate(signs)
            ]
            result = parse_signs(words, per_position, config.max_repairs, config.edge_cap, resolve_repairs)
            best.extend(_analyses(result.trees))
    if not best:
        return []
    cheapest = min(a.cost for a in best)
    return rank([a for a in best if a.cost == cheapest], config)
