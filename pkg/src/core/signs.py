"""Lexical signs, bilingual entries and learner (IL) projections.

A lexical entry is described with plain dataclasses (``HeadInfo``,
``SignSpec``, ``SemRel``) and compiled into a ``Sign`` whose feature
structure the grammar works on:

    [SYN: [LOC: [HEAD: [CAT: verb, LEX: svare, VFORM: inf],
                 SUBCAT: < [GF: comp, SYN: ..NP.., SEM: #2],
                           [GF: subj, SYN: ..NP.., SEM: #1] >]],
     SEM: [RELN: answer, AGENT: #1, THEME: #2]]

SUBCAT is ordered most-oblique-first; the subject (or a noun's determiner)
is the last element and is marked ``GF: subj``.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.core.avm import Atom, Avm, Empty, FeatureStructure, ListVal, Node
from src.core.errors import TranslationError, UnknownRuleError

if TYPE_CHECKING:
    from src.core.lexicon import Lexicon

logger = logging.getLogger(__name__)

# Features of the grammar. Role names become features too (upper-cased).
SYN, LOC, HEAD, SUBCAT, SEM = "SYN", "LOC", "HEAD", "SUBCAT", "SEM"
CAT, PFORM, VFORM, LEX, MOD = "CAT", "PFORM", "VFORM", "LEX", "MOD"
GF, OPT, MAL = "GF", "OPT", "MAL"
RELN, HUMAN = "RELN", "HUMAN"
HEAD_DTR, COMP_DTR, SUBJ_DTR, ADJ_DTR = "HEAD-DTR", "COMP-DTR", "SUBJ-DTR", "ADJ-DTR"

GRAMMAR_FEATURES = frozenset(
    {SYN, LOC, HEAD, SUBCAT, SEM, CAT, PFORM, VFORM, LEX, MOD, GF, OPT, MAL, RELN, HUMAN,
     HEAD_DTR, COMP_DTR, SUBJ_DTR, ADJ_DTR}
)

HEAD_PATH = (SYN, LOC, HEAD)
SUBCAT_PATH = (SYN, LOC, SUBCAT)

PLUS, MINUS = "plus", "minus"
SUBJ, COMP = "subj", "comp"

HEAD_CATEGORIES = ("verb", "noun", "prep", "adv", "det", "adj")
SPEC_CATEGORIES = ("np", "n", "pp", "vp", "ap", "det", "s")
VFORMS = ("fin", "inf")

_SPEC_HEAD_CAT = {"np": "noun", "n": "noun", "pp": "prep", "vp": "verb", "ap": "adj", "det": "det", "s": "verb"}


def role_feature(role: str) -> str:
    return role.upper()


class Stage(str, Enum):
    TRANSFER = "transfer"
    DISTINCT = "distinct"
    VARIABLE = "variable"


class Language(str, Enum):
    LT = "lt"
    L1 = "l1"


######################################################################
# Descriptions
######################################################################


@dataclass(frozen=True)
class SignSpec:
    """One SUBCAT element (or a MOD target) as written in a lexicon."""

    cat: str
    pform: Optional[str] = None
    vform: Optional[str] = None
    lex: Optional[str] = None
    index: Optional[int] = None
    optional: bool = False
    human: Optional[bool] = None
    subject: bool = False

    def label(self) -> str:
        if self.cat == "pp":
            return f"PP[{self.pform}]" if self.pform else "PP"
        if self.cat == "vp":
            return f"VP[{self.vform}]" if self.vform else "VP"
        if self.cat == "n":
            return f"N[{self.lex}]" if self.lex else "N"
        return {"np": "NP", "ap": "AP", "det": "DET", "s": "S"}.get(self.cat, self.cat.upper())

    @property
    def shape(self) -> Tuple[str, Optional[str], Optional[str], Optional[str]]:
        """What a frame comparison looks at: category and its lexical restrictions."""
        return (self.cat, self.pform, self.vform, self.lex)


@dataclass(frozen=True)
class HeadInfo:
    cat: str
    pform: Optional[str] = None
    vform: Optional[str] = None
    mod: Optional[SignSpec] = None
    lex: Optional[str] = None


@dataclass(frozen=True)
class Unbound:
    """An existentially closed argument: nothing in the analysis bound it."""

    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


SemValue = Union[int, "SemRel", Unbound]


@dataclass(frozen=True)
class SemRel:
    reln: str
    args: Tuple[Tuple[str, SemValue], ...] = ()
    human: Optional[bool] = None

    def arg(self, role: str) -> Optional[SemValue]:
        for name, value in self.args:
            if name == role:
                return value
        return None

    @property
    def roles(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.reln
        inner = ", ".join(f"{name}={value}" for name, value in sorted(self.args, key=lambda a: a[0]))
        return f"{self.reln}({inner})"


def frame_label(subcat: Sequence[SignSpec]) -> str:
    """The non-subject part of a frame, as in ``<PP[a]>``."""
    labels = [spec.label() for spec in subcat if not spec.subject]
    return "<" + ", ".join(labels) + ">"


def frame_shape(subcat: Sequence[SignSpec]) -> Tuple[Tuple[str, Optional[str], Optional[str], Optional[str]], ...]:
    return tuple(spec.shape for spec in subcat if not spec.subject)


######################################################################
# Signs
######################################################################


@dataclass(frozen=True)
class Sign:
    """A category: orthographic PHON plus its compiled feature structure.

    ``concept`` is the lexicon-level SEM a lexical sign was compiled from;
    the projections of one bilingual entry all carry the same object.
    """

    phon: str
    fs: FeatureStructure
    concept: Optional[SemRel] = field(default=None, compare=False)

    @property
    def cat(self) -> Optional[str]:
        return self.fs.atom_at(HEAD_PATH + (CAT,))

    @property
    def head(self) -> HeadInfo:
        return decode_head(self.fs.node_at(HEAD_PATH))

    @property
    def subcat_nodes(self) -> Tuple[Node, ...]:
        n = self.fs.node_at(SUBCAT_PATH)
        return n.items if isinstance(n, ListVal) else ()

    @property
    def subcat(self) -> Tuple[SignSpec, ...]:
        return tuple(decode_spec(n) for n in self.subcat_nodes)

    @property
    def sem(self) -> SemValue:
        return decode_sem(self.fs.node_at((SEM,)))

    def label(self, with_lex: bool = False) -> str:
        return category_label(self.fs, with_lex=with_lex)

    def key(self) -> str:
        return self.fs.canonical()


def _atom(n: Optional[Node], feature: str) -> Optional[str]:
    if isinstance(n, Avm):
        value = n.features.get(feature)
        if isinstance(value, Atom):
            return value.symbol
    return None


def _feature(n: Optional[Node], feature: str) -> Optional[Node]:
    if isinstance(n, Avm):
        return n.features.get(feature)
    return None


def _subcat_of(n: Optional[Node]) -> Optional[Tuple[Node, ...]]:
    value = _feature(_feature(_feature(n, SYN), LOC), SUBCAT)
    return value.items if isinstance(value, ListVal) else None


def decode_head(n: Optional[Node]) -> HeadInfo:
    mod = _feature(n, MOD)
    return HeadInfo(
        cat=_atom(n, CAT) or "",
        pform=_atom(n, PFORM),
        vform=_atom(n, VFORM),
        mod=decode_spec(mod) if isinstance(mod, Avm) else None,
        lex=_atom(n, LEX),
    )


def decode_spec(n: Node) -> SignSpec:
    head = _feature(_feature(_feature(n, SYN), LOC), HEAD)
    cat = _atom(head, CAT) or ""
    subcat = _subcat_of(n)
    if cat == "noun":
        code = "np" if subcat is not None and len(subcat) == 0 else "n"
    elif cat == "verb":
        code = "s" if subcat is not None and len(subcat) == 0 else "vp"
    else:
        code = {"prep": "pp", "adj": "ap", "det": "det"}.get(cat, cat or "any")
    human = _atom(_feature(n, SEM), HUMAN)
    return SignSpec(
        cat=code,
        pform=_atom(head, PFORM),
        vform=_atom(head, VFORM),
        lex=_atom(head, LEX),
        optional=_atom(n, OPT) == PLUS,
        human=None if human is None else human == PLUS,
        subject=_atom(n, GF) == SUBJ,
    )


def category_label(fs: FeatureStructure, with_lex: bool = False) -> str:
    head = fs.node_at(HEAD_PATH)
    cat = _atom(head, CAT)
    subcat = _subcat_of(fs.root) or ()
    open_complements = [n for n in subcat if _atom(n, GF) != SUBJ]
    lex = _atom(head, LEX)
    if cat == "verb":
        vform = _atom(head, VFORM)
        if not subcat:
            return "S" if vform in (None, "fin") else f"S[{vform}]"
        if open_complements:
            return "V"
        return f"VP[{vform}]" if vform else "VP"
    if cat == "noun":
        if not subcat:
            return "NP"
        return f"N[{lex}]" if with_lex and lex else "N"
    if cat == "prep":
        pform = _atom(head, PFORM)
        return f"PP[{pform}]" if not subcat else f"P[{pform}]"
    if cat == "adj":
        return "A" if open_complements else "AP"
    if cat == "adv":
        return "ADV"
    if cat == "det":
        return "DET"
    return "X"


def decode_sem(n: Optional[Node]) -> SemValue:
    """Resolve a SEM node into nested relations; unbound slots get ?x names."""
    names: Dict[int, Unbound] = {}

    def walk(m: Optional[Node]) -> SemValue:
        reln = _atom(m, RELN)
        if reln is None:
            if m is None:
                return Unbound(f"x{len(names) + 1}")
            known = names.get(id(m))
            if known is None:
                known = Unbound(f"x{len(names) + 1}")
                names[id(m)] = known
            return known
        assert isinstance(m, Avm)
        args = []
        for feature in sorted(m.features):
            if feature in (RELN, HUMAN):
                continue
            args.append((feature.lower(), walk(m.features[feature])))
        human = _atom(m, HUMAN)
        return SemRel(reln, tuple(args), None if human is None else human == PLUS)

    return walk(n)


######################################################################
# Compilation
######################################################################


def _human_node(human: Optional[bool]) -> Node:
    if human is None:
        return Empty()
    return Avm({HUMAN: Atom(PLUS if human else MINUS)})


def _spec_node(spec: SignSpec, sem: Node, subject_sem: Optional[Node], marked: bool = False) -> Node:
    head: Dict[str, Node] = {CAT: Atom(_SPEC_HEAD_CAT.get(spec.cat, spec.cat))}
    if spec.pform:
        head[PFORM] = Atom(spec.pform)
    vform = spec.vform or ("fin" if spec.cat == "s" else None)
    if vform:
        head[VFORM] = Atom(vform)
    if spec.lex:
        head[LEX] = Atom(spec.lex)
    if spec.cat in ("vp", "ap"):
        # the complement's own subject is the head's subject (control)
        subj: Dict[str, Node] = {GF: Atom(SUBJ)}
        if subject_sem is not None:
            subj[SEM] = subject_sem
        subcat = ListVal([Avm(subj)])
    elif spec.cat == "n":
        subcat = ListVal([Empty()])
    else:
        subcat = ListVal([])
    features: Dict[str, Node] = {
        GF: Atom(SUBJ if spec.subject else COMP),
        SYN: Avm({LOC: Avm({HEAD: Avm(head), SUBCAT: subcat})}),
        SEM: sem,
    }
    if spec.optional:
        features[OPT] = Atom(PLUS)
    if marked:
        features[MAL] = Atom(PLUS)
    return Avm(features)


def compile_sign(
    phon: str,
    head: HeadInfo,
    subcat: Sequence[SignSpec],
    sem: Optional[SemRel],
    concept: Optional[SemRel] = None,
    marks: Sequence[int] = (),
) -> Sign:
    """Build the feature structure of a lexical sign.

    Indices become shared nodes: the node bound to a SEM role is the very node
    under the coindexed SUBCAT element's SEM. A ``sem`` of None makes the sign
    semantically transparent: its SEM is its first complement's SEM.
    """
    index_nodes: Dict[int, Node] = {}
    for spec in subcat:
        if spec.index is not None:
            index_nodes[spec.index] = _human_node(spec.human)
    if head.mod is not None and head.mod.index is not None:
        index_nodes.setdefault(head.mod.index, Empty())

    def bound(i: int) -> Node:
        n = index_nodes.get(i)
        if n is None:
            n = index_nodes[i] = Empty()
        return n

    def fresh(spec: SignSpec) -> Node:
        return bound(spec.index) if spec.index is not None else _human_node(spec.human)

    subject = next((s for s in reversed(subcat) if s.subject), None)
    subject_sem = fresh(subject) if subject is not None else None
    specs = [
        _spec_node(spec, fresh(spec), subject_sem, marked=i in marks) for i, spec in enumerate(subcat)
    ]

    head_features: Dict[str, Node] = {CAT: Atom(head.cat)}
    if head.pform:
        head_features[PFORM] = Atom(head.pform)
    if head.vform:
        head_features[VFORM] = Atom(head.vform)
    if head.lex:
        head_features[LEX] = Atom(head.lex)
    if head.mod is not None:
        mod_sem = fresh(head.mod)
        head_features[MOD] = _spec_node(head.mod, mod_sem, None)

    def sem_node(rel: SemRel) -> Node:
        features: Dict[str, Node] = {RELN: Atom(rel.reln)}
        if rel.human is not None:
            features[HUMAN] = Atom(PLUS if rel.human else MINUS)
        for role, value in rel.args:
            if isinstance(value, SemRel):
                features[role_feature(role)] = sem_node(value)
            elif isinstance(value, int):
                features[role_feature(role)] = bound(value)
            else:
                features[role_feature(role)] = Empty()
        return Avm(features)

    if sem is not None:
        sem_root = sem_node(sem)
    elif specs:
        sem_root = _feature(specs[0], SEM) or Empty()
    else:
        sem_root = Empty()

    root = Avm(
        {
            SYN: Avm({LOC: Avm({HEAD: Avm(head_features), SUBCAT: ListVal(specs)})}),
            SEM: sem_root,
        }
    )
    return Sign(phon=phon, fs=FeatureStructure(root), concept=concept if concept is not None else sem)


def check_frame(subcat: Sequence[SignSpec], sem: Optional[SemRel]) -> List[str]:
    """Problems with a frame: index clashes, misplaced subject, dangling roles."""
    problems: List[str] = []
    indices = [s.index for s in subcat if s.index is not None]
    if len(indices) != len(set(indices)):
        problems.append("index used twice in one SUBCAT list")
    for i, spec in enumerate(subcat):
        if spec.subject and i != len(subcat) - 1:
            problems.append("subject is not the last (least oblique) element")
        if spec.lex and spec.cat not in ("n", "np"):
            problems.append(f"lex constraint on {spec.label()}")
    if sem is not None:
        bindable = set(indices)
        for role, value in sem.args:
            if isinstance(value, int) and value not in bindable:
                problems.append(f"role {role} bound to index {value}, which no SUBCAT element carries")
    return problems


def check_sign(sign: Sign) -> List[str]:
    problems: List[str] = []
    if not sign.phon:
        problems.append("empty PHON")
    specs = sign.subcat
    for i, spec in enumerate(specs):
        if spec.subject and i != len(specs) - 1:
            problems.append("subject is not the last (least oblique) element")
    return problems


######################################################################
# Lexical entries
######################################################################


@dataclass(frozen=True)
class LexicalEntry:
    lemma: str
    language: str
    kind: str
    head: HeadInfo
    subcat: Tuple[SignSpec, ...]
    sem: Optional[SemRel]
    forms: Tuple[str, ...]
    vforms: Tuple[Tuple[str, str], ...] = ()

    def vform_of(self, form: str) -> Optional[str]:
        for text, vform in self.vforms:
            if text == form:
                return vform
        return None

    def sign(self, vform: Optional[str] = None, concept: Optional[SemRel] = None) -> Sign:
        head = replace(self.head, vform=vform) if vform else self.head
        return compile_sign(self.lemma, head, self.subcat, self.sem, concept=concept)

    @property
    def frame(self) -> str:
        return frame_label(self.subcat)


@dataclass(frozen=True)
class BilingualEntry:
    """An Lt entry and an L1 entry joined by one shared SEM (the concept)."""

    il_lemma: str
    lt_entry: LexicalEntry
    l1_entry: LexicalEntry
    stage: Stage
    shared_sem: SemRel

    @property
    def idiom(self) -> bool:
        return any(spec.lex for spec in self.l1_entry.subcat)

    @property
    def l1_label(self) -> str:
        lexes = [spec.lex for spec in self.l1_entry.subcat if spec.lex]
        return f"{self.l1_entry.lemma}({','.join(lexes)})" if lexes else self.l1_entry.lemma


######################################################################
# Transfer
######################################################################


def translate_spec(spec: SignSpec, lexicon: "Lexicon") -> SignSpec:
    """Re-express an L1 frame element in Lt orthography."""
    pform = spec.pform
    if pform is not None:
        pform = lexicon.prep_links.get(pform)
        if pform is None:
            raise TranslationError("preposition", spec.pform or "")
    lex = spec.lex
    if lex is not None:
        lex = lexicon.noun_links.get(lex)
        if lex is None:
            raise TranslationError("noun", spec.lex or "")
    return replace(spec, pform=pform, lex=lex)


def transfer_sign(
    entry: BilingualEntry, lexicon: "Lexicon", vform: Optional[str] = None, marks: Sequence[int] = ()
) -> Sign:
    """Lt PHON on the L1 frame: the learner's sign at the transfer stage."""
    l1 = entry.l1_entry
    subcat = tuple(translate_spec(spec, lexicon) for spec in l1.subcat)
    mod = translate_spec(l1.head.mod, lexicon) if l1.head.mod is not None else None
    head = replace(l1.head, lex=entry.il_lemma, vform=vform, mod=mod)
    return compile_sign(entry.il_lemma, head, subcat, entry.shared_sem, concept=entry.shared_sem, marks=marks)


def project_il_signs(
    entry: BilingualEntry, lexicon: "Lexicon", stage: Optional[Stage] = None, vform: Optional[str] = None
) -> List[Sign]:
    stage = stage or entry.stage
    signs: List[Sign] = []
    if stage in (Stage.TRANSFER, Stage.VARIABLE):
        signs.append(transfer_sign(entry, lexicon, vform))
    if stage in (Stage.DISTINCT, Stage.VARIABLE):
        signs.append(entry.lt_entry.sign(vform, concept=entry.shared_sem))
    return signs


def _human_object_pp(entry: LexicalEntry, lexicon: "Lexicon") -> List[LexicalEntry]:
    if entry.head.cat != "verb" or not entry.subcat:
        return []
    first = entry.subcat[0]
    if first.subject or first.cat != "np" or first.human is not True:
        return []
    if lexicon.entry("a", entry.language) is None:
        logger.warning("rule es-human-object-pp: no preposition 'a' in %s", entry.language)
        return []
    variant = replace(first, cat="pp", pform="a")
    return [replace(entry, subcat=(variant,) + entry.subcat[1:])]


LEXICAL_RULES: Mapping[str, Callable[[LexicalEntry, "Lexicon"], List[LexicalEntry]]] = {
    "es-human-object-pp": _human_object_pp,
}


def apply_lexical_rule(rule_id: str, entry: LexicalEntry, lexicon: "Lexicon") -> List[LexicalEntry]:
    rule = LEXICAL_RULES.get(rule_id)
    if rule is None:
        raise UnknownRuleError(rule_id)
    return rule(entry, lexicon)


######################################################################
# Mal-lexicon
######################################################################


class RepairKind(str, Enum):
    L1_FRAME_SUBSTITUTION = "lexical_transfer_subcat"
    IDIOM_TRANSFER = "idiom_transfer"


@dataclass(frozen=True)
class RepairTemplate:
    kind: RepairKind
    il_lemma: str
    l1_lemma: str
    l1_label: str
    l1_frame: str
    lt_frames: Tuple[str, ...]
    cancelled: str


@dataclass(frozen=True)
class MalEntry:
    """An anticipated learner sign, keyed by verb form for inflected lookup."""

    il_lemma: str
    sign: Sign
    template: RepairTemplate
    bilingual: BilingualEntry
    variants: Tuple[Tuple[Optional[str], Sign], ...]

    def sign_for(self, vform: Optional[str]) -> Sign:
        for key, sign in self.variants:
            if key == vform:
                return sign
        return self.sign


def mal_lexicon(lexicon: "Lexicon") -> List[MalEntry]:
    """Precompile the transfer-stage sign of every bilingual entry."""
    entries: List[MalEntry] = []
    for bilingual in lexicon.bilinguals:
        try:
            translated = tuple(translate_spec(spec, lexicon) for spec in bilingual.l1_entry.subcat)
        except TranslationError as exc:
            logger.warning("skipping %s <-> %s: %s", bilingual.il_lemma, bilingual.l1_entry.lemma, exc)
            continue
        targets = lexicon.lt_frames(bilingual.il_lemma) or [bilingual.lt_entry.subcat]
        target_shapes = {frame_shape(frame) for frame in targets}
        if frame_shape(translated) in target_shapes:
            logger.debug("%s: transferred frame coincides with a target frame", bilingual.il_lemma)
            continue
        marks = []
        for i, spec in enumerate(translated):
            if spec.subject:
                continue
            at_i = {
                tuple(s.shape for s in frame if not s.subject)[i:i + 1] for frame in targets
            }
            if (spec.shape,) not in at_i:
                marks.append(i)
        variants: List[Tuple[Optional[str], Sign]] = []
        for vform in sorted({v for _, v in lexicon.il_forms(bilingual.il_lemma)}, key=lambda v: v or ""):
            variants.append((vform, transfer_sign(bilingual, lexicon, vform, marks)))
        citation = transfer_sign(bilingual, lexicon, None, marks)
        template = RepairTemplate(
            kind=RepairKind.IDIOM_TRANSFER if bilingual.idiom else RepairKind.L1_FRAME_SUBSTITUTION,
            il_lemma=bilingual.il_lemma,
            l1_lemma=bilingual.l1_entry.lemma,
            l1_label=bilingual.l1_label,
            l1_frame=bilingual.l1_entry.frame,
            lt_frames=tuple(frame_label(frame) for frame in targets),
            cancelled=", ".join(translated[i].label() for i in marks),
        )
        entries.append(MalEntry(bilingual.il_lemma, citation, template, bilingual, tuple(variants)))
    return entries
