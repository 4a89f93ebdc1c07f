"""Bottom-up sentence generation from a form -> signs table.

Uses the parser's schemata and linear order, so whatever it produces the
parser would accept with the same table. Used to enumerate what a simulated
learner grammar says.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple, Union

from src.core.chart import is_sentence
from src.core.grammar import SCHEMAS, apply_schema, optional_skip
from src.core.lexicon import Lexicon
from src.core.signs import BilingualEntry, Language, Sign, Stage

logger = logging.getLogger(__name__)

Source = Tuple[str, str]
Offer = Union[Sign, Tuple[Sign, Optional[BilingualEntry]]]


@dataclass(frozen=True)
class Generated:
    tokens: Tuple[str, ...]
    sign: Sign
    # (il_lemma, l1_lemma) of every transfer projection used
    sources: FrozenSet[Source] = frozenset()

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def il_vocabulary(lexicon: Lexicon, stage: Optional[Stage] = None) -> Dict[str, List[Tuple[Sign, Optional[BilingualEntry]]]]:
    forms = {form for e in lexicon.entries if e.language == Language.LT.value for form in e.forms}
    for bilingual in lexicon.bilinguals:
        forms.update(form for form, _ in lexicon.il_forms(bilingual.il_lemma))
    table = {form: lexicon.il_items(form, stage) for form in sorted(forms)}
    return {form: items for form, items in table.items() if items}


def _offers(options: Sequence[Offer]) -> List[Tuple[Sign, FrozenSet[Source]]]:
    out = []
    for option in options:
        sign, bilingual = option if isinstance(option, tuple) else (option, None)
        sources: FrozenSet[Source] = frozenset()
        if bilingual is not None:
            sources = frozenset({(bilingual.il_lemma, bilingual.l1_entry.lemma)})
        out.extend((variant, sources) for variant in optional_skip(sign))
    return out


def generate(signs_by_form: Mapping[str, Sequence[Offer]], max_tokens: int) -> List[Generated]:
    """Every sentence of at most ``max_tokens`` words the table licenses."""
    by_length: Dict[int, List[Generated]] = {n: [] for n in range(1, max_tokens + 1)}
    seen: Set[Tuple[Tuple[str, ...], str, FrozenSet[Source]]] = set()

    def add(item: Generated) -> None:
        key = (item.tokens, item.sign.key(), item.sources)
        if key not in seen:
            seen.add(key)
            by_length[len(item.tokens)].append(item)

    if max_tokens < 1:
        return []
    for form in sorted(signs_by_form):
        for sign, sources in _offers(signs_by_form[form]):
            add(Generated((form,), sign, sources))
    for length in range(2, max_tokens + 1):
        for left_len in range(1, length):
            for left in by_length[left_len]:
                for right in by_length[length - left_len]:
                    for schema in SCHEMAS:
                        local = apply_schema(schema, left.sign, right.sign)
                        if local is not None:
                            add(Generated(left.tokens + right.tokens, local.mother, left.sources | right.sources))
    sentences: Dict[Tuple[Tuple[str, ...], FrozenSet[Source]], Generated] = {}
    for length in sorted(by_length):
        for item in by_length[length]:
            if is_sentence(item.sign):
                sentences.setdefault((item.tokens, item.sources), item)
    logger.debug("generated %d sentences of up to %d words", len(sentences), max_tokens)
    return sorted(sentences.values(), key=lambda g: (len(g.tokens), g.tokens, sorted(g.sources)))
