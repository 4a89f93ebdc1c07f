"""Agenda-driven bottom-up chart parser over signs."""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Deque, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from nltk.tree import Tree

from src.core.avm import ListVal
from src.core.config import DEFAULT_EDGE_CAP
from src.core.errors import UnknownWordError
from src.core.grammar import SCHEMAS, LocalTree, Schema, apply_schema, optional_skip
from src.core.lexicon import Lexicon
from src.core.signs import CAT, HEAD_PATH, SEM, SUBCAT_PATH, VFORM, Language, SemValue, Sign, Stage, decode_sem
from src.utils.text import tokenize

logger = logging.getLogger(__name__)

LEX = "lex"


class ParseStatus(str, Enum):
    PARSED = "parsed"
    NO_PARSE = "no_parse"


@dataclass(frozen=True)
class Edge:
    id: int
    start: int
    end: int
    sign: Sign
    rule: str
    daughters: Tuple[int, ...] = ()
    repairs: Tuple[Any, ...] = ()
    cost: int = 0
    head_position: int = 0

    @property
    def span(self) -> Tuple[int, int]:
        return (self.start, self.end)

    @property
    def label(self) -> str:
        return self.sign.label()

    @property
    def lexical(self) -> bool:
        return self.rule == LEX


@dataclass(frozen=True)
class LexicalItem:
    """A sign offered for one token, with what it costs to believe it."""

    sign: Sign
    cost: int = 0
    repairs: Tuple[Any, ...] = ()


# Given the head and complement edges of a head-complement step, the repairs
# the mother carries.
Resolver = Callable[[Edge, Edge, LocalTree], Tuple[Any, ...]]


@dataclass
class ChartStats:
    lexical: int = 0
    stored: int = 0
    proposed: int = 0
    duplicates: int = 0
    fragments: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "lexical": self.lexical,
            "stored": self.stored,
            "proposed": self.proposed,
            "duplicates": self.duplicates,
            "fragments": self.fragments,
        }


def is_sentence(sign: Sign) -> bool:
    subcat = sign.fs.node_at(SUBCAT_PATH)
    return (
        sign.fs.atom_at(HEAD_PATH + (CAT,)) == "verb"
        and sign.fs.atom_at(HEAD_PATH + (VFORM,)) == "fin"
        and isinstance(subcat, ListVal)
        and not subcat.items
    )


class Chart:
    """Edges over a token sequence, closed under the schemata.

    Edges are stored when created and combined when taken off the agenda, so
    every pair of adjacent edges is tried exactly once, however many times
    ``close`` is called.
    """

    def __init__(self, tokens: Sequence[str], edge_cap: int = DEFAULT_EDGE_CAP) -> None:
        self.tokens: Tuple[str, ...] = tuple(tokens)
        self.edge_cap = edge_cap
        self.edges: List[Edge] = []
        self.agenda: Deque[Edge] = deque()
        self.truncated = False
        self.stats = ChartStats()
        self._ending: Dict[int, List[Edge]] = {}
        self._starting: Dict[int, List[Edge]] = {}
        self._seen: Set[Tuple[int, int, str, int, Tuple[Any, ...]]] = set()

    def __len__(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def indexed(self, start: int, end: int, cat: Optional[str] = None) -> List[Edge]:
        """Edges over [start, end), optionally only those whose head is ``cat``."""
        return [
            e for e in self._starting.get(start, ()) if e.end == end and (cat is None or e.sign.cat == cat)
        ] + [
            e
            for e in self.agenda
            if e.start == start and e.end == end and (cat is None or e.sign.cat == cat)
        ]

    def _add(
        self,
        start: int,
        end: int,
        sign: Sign,
        rule: str,
        daughters: Tuple[int, ...] = (),
        repairs: Tuple[Any, ...] = (),
        cost: int = 0,
        head_position: int = 0,
    ) -> Optional[Edge]:
        key = (start, end, sign.key(), cost, tuple(repairs))
        if key in self._seen:
            self.stats.duplicates += 1
            return None
        if len(self.edges) >= self.edge_cap:
            if not self.truncated:
                logger.warning("edge cap of %d reached on %r", self.edge_cap, " ".join(self.tokens))
            self.truncated = True
            return None
        self._seen.add(key)
        edge = Edge(len(self.edges), start, end, sign, rule, daughters, repairs, cost, head_position)
        self.edges.append(edge)
        self.agenda.append(edge)
        self.stats.stored += 1
        return edge

    def add_lexical(self, position: int, item: Union[LexicalItem, Sign]) -> List[Edge]:
        if isinstance(item, Sign):
            item = LexicalItem(item)
        added = []
        for sign in optional_skip(item.sign):
            edge = self._add(position, position + 1, sign, LEX, (), item.repairs, item.cost, position)
            if edge is not None:
                self.stats.lexical += 1
                added.append(edge)
        return added

    def _combine(self, left: Edge, right: Edge, max_cost: int, resolve: Optional[Resolver]) -> None:
        cost = left.cost + right.cost
        if cost > max_cost:
            return
        for schema in SCHEMAS:
            self.stats.proposed += 1
            local = apply_schema(schema, left.sign, right.sign)
            if local is None:
                continue
            head, other = (left, right) if schema.head_is_left else (right, left)
            if resolve is not None and schema is Schema.HEAD_COMPLEMENT:
                repairs = resolve(head, other, local)
            else:
                repairs = left.repairs + right.repairs
            self._add(
                left.start,
                right.end,
                local.mother,
                schema.value,
                (left.id, right.id),
                repairs,
                cost,
                head.head_position,
            )
            if self.truncated:
                return

    def close(self, max_cost: int = 0, resolve: Optional[Resolver] = None) -> None:
        while self.agenda and not self.truncated:
            edge = self.agenda.popleft()
            self._ending.setdefault(edge.end, []).append(edge)
            self._starting.setdefault(edge.start, []).append(edge)
            for left in list(self._ending.get(edge.start, ())):
                self._combine(left, edge, max_cost, resolve)
                if self.truncated:
                    break
            for right in list(self._starting.get(edge.end, ())):
                if self.truncated:
                    break
                self._combine(edge, right, max_cost, resolve)
        self.stats.fragments = sum(
            1 for e in self.edges if e.start == 0 and e.end == len(self.tokens) and not is_sentence(e.sign)
        )
        logger.debug("chart over %r: %s", " ".join(self.tokens), self.stats.as_dict())

    def sentences(self, max_cost: Optional[int] = None) -> List[Edge]:
        found = [
            e
            for e in self.edges
            if e.start == 0
            and e.end == len(self.tokens)
            and is_sentence(e.sign)
            and (max_cost is None or e.cost <= max_cost)
        ]
        return sorted(found, key=lambda e: (e.cost, e.id))


@dataclass
class ParseResult:
    status: ParseStatus
    trees: List[Edge]
    chart: Chart
    stats: Dict[str, int] = field(default_factory=dict)

    @property
    def parsed(self) -> bool:
        return self.status is ParseStatus.PARSED

    @property
    def truncated(self) -> bool:
        return self.chart.truncated


def _result(chart: Chart, max_cost: int) -> ParseResult:
    trees = chart.sentences(max_cost)
    status = ParseStatus.PARSED if trees else ParseStatus.NO_PARSE
    return ParseResult(status, trees, chart, chart.stats.as_dict())


def parse_signs(
    tokens: Sequence[str],
    signs_per_position: Sequence[Iterable[Union[LexicalItem, Sign]]],
    max_cost: int = 0,
    edge_cap: int = DEFAULT_EDGE_CAP,
    resolve: Optional[Resolver] = None,
) -> ParseResult:
    chart = Chart(tokens, edge_cap)
    for position, items in enumerate(signs_per_position):
        for item in items:
            chart.add_lexical(position, item)
    chart.close(max_cost, resolve)
    return _result(chart, max_cost)


def as_tokens(tokens: Union[str, Sequence[str]]) -> List[str]:
    return tokenize(tokens) if isinstance(tokens, str) else list(tokens)


def _signs_or_fail(tokens: Sequence[str], lookup: Callable[[str], List[Sign]]) -> List[List[Sign]]:
    signs = []
    for position, token in enumerate(tokens):
        found = lookup(token)
        if not found:
            raise UnknownWordError(token, position)
        signs.append(found)
    return signs


def strict_signs(tokens: Sequence[str], lexicon: Lexicon, language: str = Language.LT.value) -> List[List[Sign]]:
    return _signs_or_fail(tokens, lambda token: lexicon.lexical_signs(token, language))


def parse_strict(
    tokens: Union[str, Sequence[str]],
    lexicon: Lexicon,
    language: str = Language.LT.value,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> ParseResult:
    """Parse with the monolingual entries of one language only."""
    words = as_tokens(tokens)
    return parse_signs(words, strict_signs(words, lexicon, language), 0, edge_cap)


def parse_il(
    tokens: Union[str, Sequence[str]],
    lexicon: Lexicon,
    stage: Optional[Stage] = None,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> ParseResult:
    """Parse with a simulated learner lexicon; ``stage`` overrides every entry's own."""
    words = as_tokens(tokens)
    signs = _signs_or_fail(words, lambda token: lexicon.il_signs(token, stage))
    return parse_signs(words, signs, 0, edge_cap)


def extract_semantics(tree: Edge) -> SemValue:
    return decode_sem(tree.sign.fs.node_at((SEM,)))


def to_tree(chart: Chart, edge: Edge) -> Tree:
    if edge.lexical:
        return Tree(edge.label, [chart.tokens[edge.start]])
    return Tree(edge.label, [to_tree(chart, chart.edge(d)) for d in edge.daughters])
