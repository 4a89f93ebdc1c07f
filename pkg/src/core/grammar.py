"""Phrase-structure schemata over signs.

Linear order is fixed: complements follow their head and are cancelled
most-oblique-first, the subject (or a noun's determiner) precedes the head,
adjuncts precede what they modify.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Tuple

from src.core.avm import Atom, Avm, FeatureStructure, ListVal, Node, link
from src.core.signs import (
    ADJ_DTR,
    COMP_DTR,
    GF,
    HEAD,
    HEAD_DTR,
    HEAD_PATH,
    LOC,
    MAL,
    MOD,
    OPT,
    PLUS,
    SEM,
    SUBCAT,
    SUBCAT_PATH,
    SUBJ,
    SUBJ_DTR,
    SYN,
    Sign,
    SignSpec,
    decode_spec,
)


class Schema(str, Enum):
    HEAD_COMPLEMENT = "head-complement"
    HEAD_SUBJECT = "head-subject"
    HEAD_ADJUNCT = "head-adjunct"

    @property
    def head_is_left(self) -> bool:
        return self is Schema.HEAD_COMPLEMENT

    @property
    def non_head(self) -> str:
        return {
            Schema.HEAD_COMPLEMENT: COMP_DTR,
            Schema.HEAD_SUBJECT: SUBJ_DTR,
            Schema.HEAD_ADJUNCT: ADJ_DTR,
        }[self]


SCHEMAS: Tuple[Schema, ...] = tuple(Schema)


@dataclass(frozen=True)
class LocalTree:
    """One application of a schema.

    ``tree`` holds both daughters (HEAD-DTR and COMP-/SUBJ-/ADJ-DTR) after
    unification; ``mother`` is built from the very nodes of that structure.
    """

    schema: Schema
    mother: Sign
    tree: FeatureStructure
    cancelled: Optional[SignSpec] = None
    cancelled_marked: bool = False


def _feature(n: Optional[Node], name: str) -> Optional[Node]:
    return n.features.get(name) if isinstance(n, Avm) else None


def _subcat_items(fs: FeatureStructure) -> Tuple[Node, ...]:
    n = fs.node_at(SUBCAT_PATH)
    return n.items if isinstance(n, ListVal) else ()


def _node_subcat(n: Node) -> Tuple[Node, ...]:
    value = _feature(_feature(_feature(n, SYN), LOC), SUBCAT)
    return value.items if isinstance(value, ListVal) else ()


def _is_subject(n: Node) -> bool:
    value = _feature(n, GF)
    return isinstance(value, Atom) and value.symbol == SUBJ


def _with_subcat(root: Node, items: Tuple[Node, ...]) -> Node:
    """The same sign with another SUBCAT list; every other node is reused."""
    assert isinstance(root, Avm)
    syn = root.features[SYN]
    assert isinstance(syn, Avm)
    loc = syn.features[LOC]
    assert isinstance(loc, Avm)
    new_loc = Avm({**loc.features, SUBCAT: ListVal(items)})
    new_syn = Avm({**syn.features, LOC: new_loc})
    return Avm({**root.features, SYN: new_syn})


def _mother(head_dtr: Node, items: Tuple[Node, ...], sem: Optional[Node] = None) -> FeatureStructure:
    head = _feature(_feature(_feature(head_dtr, SYN), LOC), HEAD)
    assert head is not None
    features: Dict[str, Node] = {SYN: Avm({LOC: Avm({HEAD: head, SUBCAT: ListVal(items)})})}
    sem_node = sem if sem is not None else _feature(head_dtr, SEM)
    if sem_node is not None:
        features[SEM] = sem_node
    return FeatureStructure(Avm(features))


def _cancel(schema: Schema, head: Sign, other: Sign) -> Optional[LocalTree]:
    items = _subcat_items(head.fs)
    if not items:
        return None
    if schema is Schema.HEAD_COMPLEMENT:
        if _is_subject(items[0]):
            return None
    elif len(items) != 1 or not _is_subject(items[0]):
        return None
    tree = link({HEAD_DTR: head.fs, schema.non_head: other.fs}, (HEAD_DTR,) + SUBCAT_PATH + (0,), (schema.non_head,))
    if tree is None:
        return None
    head_dtr = tree.node_at((HEAD_DTR,))
    unified = tree.node_at((HEAD_DTR,) + SUBCAT_PATH)
    assert isinstance(unified, ListVal) and head_dtr is not None
    spec_node = unified.items[0]
    mal = _feature(spec_node, MAL)
    phon = f"{head.phon} {other.phon}" if schema.head_is_left else f"{other.phon} {head.phon}"
    return LocalTree(
        schema=schema,
        mother=Sign(phon, _mother(head_dtr, unified.items[1:])),
        tree=tree,
        cancelled=decode_spec(spec_node),
        cancelled_marked=isinstance(mal, Atom) and mal.symbol == PLUS,
    )


def _adjoin(adjunct: Sign, head: Sign) -> Optional[LocalTree]:
    if adjunct.fs.node_at(HEAD_PATH + (MOD,)) is None or _subcat_items(adjunct.fs):
        return None
    tree = link({HEAD_DTR: head.fs, ADJ_DTR: adjunct.fs}, (ADJ_DTR,) + HEAD_PATH + (MOD,), (HEAD_DTR,))
    if tree is None:
        return None
    head_dtr = tree.node_at((HEAD_DTR,))
    assert head_dtr is not None
    # the adjunct's relation takes the modified SEM as its argument
    sem = tree.node_at((ADJ_DTR, SEM))
    return LocalTree(
        schema=Schema.HEAD_ADJUNCT,
        mother=Sign(f"{adjunct.phon} {head.phon}", _mother(head_dtr, _node_subcat(head_dtr), sem)),
        tree=tree,
    )


def apply_schema(schema: Schema, left: Sign, right: Sign) -> Optional[LocalTree]:
    if schema is Schema.HEAD_COMPLEMENT:
        return _cancel(schema, left, right)
    if schema is Schema.HEAD_SUBJECT:
        return _cancel(schema, right, left)
    return _adjoin(left, right)


def combine(schema: Schema, left: Sign, right: Sign) -> Optional[Sign]:
    local = apply_schema(schema, left, right)
    return local.mother if local is not None else None


def optional_skip(sign: Sign) -> List[Sign]:
    """Every variant of ``sign`` with some subset of its optional complements removed."""
    items = _subcat_items(sign.fs)
    optional = [i for i, n in enumerate(items) if isinstance(_feature(n, OPT), Atom) and not _is_subject(n)]
    if not optional:
        return [sign]
    variants: List[Sign] = []
    for keep in product((True, False), repeat=len(optional)):
        dropped = {i for i, k in zip(optional, keep) if not k}
        kept = tuple(n for i, n in enumerate(items) if i not in dropped)
        fs = FeatureStructure(_with_subcat(sign.fs.root, kept)) if dropped else sign.fs
        variants.append(Sign(sign.phon, fs, sign.concept))
    return variants
