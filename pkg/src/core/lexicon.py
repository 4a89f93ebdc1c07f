"""Bilingual lexicon: the line-oriented file format, validation and lookup.

See docs/lexicon-format.md for the grammar of the format.
"""

import logging
import re
from dataclasses import dataclass, field, replace
import pathlib
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from src.core.avm import Path, features_used, parse_path
from src.core.errors import LexiconError, LexiconErrorCode, TranslationError
from src.core.signs import (
    GRAMMAR_FEATURES,
    VFORMS,
    BilingualEntry,
    HeadInfo,
    Language,
    LexicalEntry,
    MalEntry,
    SemRel,
    Sign,
    SignSpec,
    Stage,
    check_frame,
    mal_lexicon,
    project_il_signs,
    role_feature,
)

logger = logging.getLogger(__name__)

ENTRY_KINDS = ("verb", "noun", "pron", "prep", "adv", "det", "adj")
_HEAD_CAT = {"verb": "verb", "noun": "noun", "pron": "noun", "prep": "prep", "adv": "adv", "det": "det", "adj": "adj"}
_ALLOWED_KEYS = {
    "verb": {"lang", "forms", "sem", "subcat"},
    "adj": {"lang", "forms", "sem", "subcat"},
    "noun": {"lang", "forms", "sem"},
    "pron": {"lang", "forms", "sem"},
    "det": {"lang", "forms", "sem"},
    "adv": {"lang", "forms", "sem", "mod"},
    "prep": {"lang", "forms"},
}
_ALLOWED_FLAGS = {"noun": {"proper", "human"}, "pron": {"human"}}

_FIELD_RE = re.compile(r"([a-z][\w\-]*)=(\([^)]*\)|\S+)|(\S+)")
_ELEMENT_RE = re.compile(
    r"^(?P<cat>[a-z]+)(?:\[(?P<arg>[^\]]*)\])?(?::(?P<role>[a-z][\w\-]*))?(?P<flags>(?:\s+\S+)*)$"
)
_NAME_RE = re.compile(r"^[^\s=()\[\],:#]+$")


@dataclass
class _Record:
    line: int
    directive: str
    words: List[str] = field(default_factory=list)
    keys: Dict[str, str] = field(default_factory=dict)


def _fail(code: LexiconErrorCode, message: str, line: Optional[int]) -> LexiconError:
    return LexiconError(code, message, line)


def _split_line(text: str, line: int) -> Optional[_Record]:
    text = text.split("#", 1)[0].strip()
    if not text:
        return None
    record = _Record(line=line, directive="")
    for m in _FIELD_RE.finditer(text):
        key, value, word = m.group(1), m.group(2), m.group(3)
        if word is not None:
            record.words.append(word)
        elif key in record.keys:
            raise _fail(LexiconErrorCode.SYNTAX, f"key {key} given twice", line)
        else:
            record.keys[key] = value
    if not record.words:
        raise _fail(LexiconErrorCode.SYNTAX, "line does not start with a directive", line)
    record.directive = record.words.pop(0)
    return record


######################################################################
# Frames
######################################################################


@dataclass(frozen=True)
class _Element:
    spec: SignSpec
    role: Optional[str]


def _parse_element(text: str, language: str, line: int) -> _Element:
    m = _ELEMENT_RE.match(text.strip())
    if m is None:
        raise _fail(LexiconErrorCode.SYNTAX, f"bad frame element {text.strip()!r}", line)
    cat, arg, role = m.group("cat"), m.group("arg"), m.group("role")
    if cat not in ("np", "n", "pp", "vp", "ap", "det"):
        raise _fail(LexiconErrorCode.SYNTAX, f"unknown category {cat!r}", line)
    pform = vform = lex = None
    if arg is not None:
        if arg.startswith("lex="):
            lex = arg[4:]
            if cat != "n":
                raise _fail(
                    LexiconErrorCode.UNSUPPORTED_IDIOM,
                    f"lexical constraint on {cat}: only a bare noun complement may be fixed",
                    line,
                )
        elif cat == "pp":
            pform = arg
        elif cat == "vp":
            if arg not in VFORMS:
                raise _fail(LexiconErrorCode.SYNTAX, f"unknown verb form {arg!r}", line)
            vform = arg
        else:
            raise _fail(LexiconErrorCode.SYNTAX, f"{cat} takes no argument", line)
        if (lex or pform or vform) == "":
            raise _fail(LexiconErrorCode.SYNTAX, f"empty argument in {text.strip()!r}", line)
    optional = False
    human: Optional[bool] = None
    for flag in m.group("flags").split():
        if flag == "opt":
            optional = True
        elif flag in ("+human", "-human"):
            human = flag == "+human"
        else:
            raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"unknown frame flag {flag!r}", line)
    spec = SignSpec(cat=cat, pform=pform, vform=vform, lex=lex, optional=optional, human=human)
    return _Element(spec, role)


def _parse_frame(value: str, language: str, line: int) -> List[_Element]:
    if not (value.startswith("(") and value.endswith(")")):
        raise _fail(LexiconErrorCode.SYNTAX, "subcat must be a parenthesised list", line)
    inner = value[1:-1].strip()
    if not inner:
        return []
    return [_parse_element(part, language, line) for part in inner.split(",")]


def _element_text(spec: SignSpec, role: Optional[str]) -> str:
    text = spec.cat
    if spec.lex:
        text += f"[lex={spec.lex}]"
    elif spec.pform:
        text += f"[{spec.pform}]"
    elif spec.vform:
        text += f"[{spec.vform}]"
    if role:
        text += f":{role}"
    if spec.human is not None:
        text += " +human" if spec.human else " -human"
    if spec.optional:
        text += " opt"
    return text


def _parse_forms(value: Optional[str], lemma: str, line: int) -> Tuple[Tuple[str, ...], Tuple[Tuple[str, str], ...]]:
    if value is None:
        return (lemma,), ()
    forms: List[str] = []
    vforms: List[Tuple[str, str]] = []
    for item in value.split(","):
        form, _, vform = item.partition(":")
        if not form:
            raise _fail(LexiconErrorCode.SYNTAX, "empty form", line)
        if vform:
            if vform not in VFORMS:
                raise _fail(LexiconErrorCode.SYNTAX, f"unknown verb form {vform!r}", line)
            vforms.append((form, vform))
        if form not in forms:
            forms.append(form)
    return tuple(forms), tuple(vforms)


######################################################################
# Lexicon
######################################################################


Item = Tuple[LexicalEntry, Optional[str]]


def _form_match(pairs: Sequence[Tuple[str, Optional[str]]], token: str) -> List[Optional[str]]:
    """Verb forms of the pairs whose surface is ``token``; exact before case-folded."""
    exact = [v for form, v in pairs if form == token]
    if exact:
        return exact
    return [v for form, v in pairs if form.casefold() == token.casefold()]


def _match(token: str, table: Mapping[str, List[Item]], folded: Mapping[str, List[Item]]) -> List[Item]:
    exact = table.get(token)
    if exact:
        return list(exact)
    return list(folded.get(token.casefold(), ()))


class Lexicon:
    """A validated, immutable bilingual lexicon.

    Built by ``load_lexicon``; every cross reference is resolved and the
    mal-lexicon is precompiled on construction.
    """

    def __init__(
        self,
        lt_language: str,
        l1_language: str,
        entries: Sequence[LexicalEntry],
        bilinguals: Sequence[BilingualEntry],
        prep_links: Mapping[str, str],
        noun_links: Mapping[str, str],
        roles: Mapping[str, Tuple[str, ...]],
        name: str = "<string>",
    ) -> None:
        self.lt_language = lt_language
        self.l1_language = l1_language
        self.entries: Tuple[LexicalEntry, ...] = tuple(entries)
        self.bilinguals: Tuple[BilingualEntry, ...] = tuple(bilinguals)
        self.prep_links: Mapping[str, str] = dict(prep_links)
        self.noun_links: Mapping[str, str] = dict(noun_links)
        self.roles: Mapping[str, Tuple[str, ...]] = dict(roles)
        self.name = name
        self.feature_inventory = frozenset(GRAMMAR_FEATURES) | {
            role_feature(r) for names in self.roles.values() for r in names
        }

        self._by_key: Dict[Tuple[str, str], LexicalEntry] = {}
        self._forms: Dict[str, Dict[str, List[Item]]] = {lang.value: {} for lang in Language}
        self._folded: Dict[str, Dict[str, List[Item]]] = {lang.value: {} for lang in Language}
        self._signs: Dict[Tuple[str, str, Optional[str]], Sign] = {}
        for entry in self.entries:
            self._by_key[(entry.lemma, entry.language)] = entry
            for form in entry.forms:
                item = (entry, entry.vform_of(form))
                self._forms[entry.language].setdefault(form, []).append(item)
                self._folded[entry.language].setdefault(form.casefold(), []).append(item)
            for vform in {None} | {v for _, v in entry.vforms}:
                self._signs[(entry.lemma, entry.language, vform)] = entry.sign(vform)

        self.mal_entries: Tuple[MalEntry, ...] = tuple(mal_lexicon(self))

    def __repr__(self) -> str:
        return (
            f"Lexicon({self.name!r}, lt={self.lt_language}, l1={self.l1_language}, "
            f"entries={len(self.entries)}, bilinguals={len(self.bilinguals)})"
        )

    def entry(self, lemma: str, language: str) -> Optional[LexicalEntry]:
        return self._by_key.get((lemma, language))

    def path(self, text: str) -> Path:
        return parse_path(text, self.feature_inventory)

    def lexical_items(self, token: str, language: str = Language.LT.value) -> List[Item]:
        return _match(token, self._forms[language], self._folded[language])

    def sign(self, entry: LexicalEntry, vform: Optional[str] = None) -> Sign:
        cached = self._signs.get((entry.lemma, entry.language, vform))
        return cached if cached is not None else entry.sign(vform)

    def compiled_signs(self) -> List[Sign]:
        return list(self._signs.values())

    def lexical_signs(self, token: str, language: str = Language.LT.value) -> List[Sign]:
        return [self.sign(entry, vform) for entry, vform in self.lexical_items(token, language)]

    def lt_frames(self, lemma: str) -> List[Tuple[SignSpec, ...]]:
        entry = self.entry(lemma, Language.LT.value)
        return [entry.subcat] if entry is not None else []

    def il_forms(self, il_lemma: str) -> List[Tuple[str, Optional[str]]]:
        entry = self.entry(il_lemma, Language.LT.value)
        if entry is None:
            return [(il_lemma, None)]
        return [(form, entry.vform_of(form)) for form in entry.forms]

    def _il_match(self, bilingual: BilingualEntry, token: str) -> List[Optional[str]]:
        return _form_match(self.il_forms(bilingual.il_lemma), token)

    def il_items(self, token: str, stage: Optional[Stage] = None) -> List[Tuple[Sign, Optional[BilingualEntry]]]:
        """Signs of the learner-model lexicon for one token.

        Lt entries that no bilingual entry covers are taken as they are. A
        covered Lt entry is only reached through ``project_il_signs``: its
        transfer projection answers to the IL lemma's forms, its distinct
        projection to the Lt entry's own forms. Transfer projections come
        paired with their bilingual entry.
        """
        covered = {(b.lt_entry.lemma, b.lt_entry.language) for b in self.bilinguals}
        items: List[Tuple[Sign, Optional[BilingualEntry]]] = [
            (self.sign(entry, vform), None)
            for entry, vform in self.lexical_items(token)
            if (entry.lemma, entry.language) not in covered
        ]
        seen = {(sign.key(), None, None) for sign, _ in items}

        def add(sign: Sign, source: Optional[BilingualEntry]) -> None:
            key = (sign.key(), source.il_lemma if source else None, source.l1_entry.lemma if source else None)
            if key not in seen:
                seen.add(key)
                items.append((sign, source))

        for bilingual in self.bilinguals:
            own = stage or bilingual.stage
            if own in (Stage.TRANSFER, Stage.VARIABLE):
                for vform in self._il_match(bilingual, token):
                    try:
                        for sign in project_il_signs(bilingual, self, Stage.TRANSFER, vform):
                            add(sign, bilingual)
                    except TranslationError as exc:
                        logger.warning("no transfer projection for %s: %s", bilingual.il_lemma, exc)
            if own in (Stage.DISTINCT, Stage.VARIABLE):
                lt_entry = bilingual.lt_entry
                pairs = [(form, lt_entry.vform_of(form)) for form in lt_entry.forms]
                for vform in _form_match(pairs, token):
                    for sign in project_il_signs(bilingual, self, Stage.DISTINCT, vform):
                        add(sign, None)
        return items

    def il_signs(self, token: str, stage: Optional[Stage] = None) -> List[Sign]:
        return [sign for sign, _ in self.il_items(token, stage)]

    def mal_signs(self, token: str) -> List[Tuple[MalEntry, Sign]]:
        found: List[Tuple[MalEntry, Sign]] = []
        for mal in self.mal_entries:
            for vform in self._il_match(mal.bilingual, token):
                found.append((mal, mal.sign_for(vform)))
        return found

    def summary(self) -> Dict[str, int]:
        return {
            "lt_entries": sum(1 for e in self.entries if e.language == Language.LT.value),
            "l1_entries": sum(1 for e in self.entries if e.language == Language.L1.value),
            "bilingual": len(self.bilinguals),
            "prep_links": len(self.prep_links),
            "noun_links": len(self.noun_links),
            "mal_entries": len(self.mal_entries),
        }


def lookup(surface: str, lexicon: Lexicon, language: str = Language.LT.value) -> List[LexicalEntry]:
    """Entries listing ``surface`` among their forms; exact match before case-folded."""
    seen: List[LexicalEntry] = []
    for entry, _ in lexicon.lexical_items(surface, language):
        if entry not in seen:
            seen.append(entry)
    return seen


######################################################################
# Loading
######################################################################


class _Loader:
    def __init__(self, source: str, name: str) -> None:
        self.name = name
        self.records = [r for i, text in enumerate(source.splitlines(), 1) if (r := _split_line(text, i))]
        self.languages: Dict[str, str] = {}
        self.roles: Dict[str, Tuple[str, ...]] = {}

    def load(self) -> Lexicon:
        entries: Dict[Tuple[str, str], Tuple[LexicalEntry, int]] = {}
        links: List[_Record] = []
        bilingual_records: List[_Record] = []

        for record in self.records:
            if record.directive == "languages":
                self._languages(record)
            elif record.directive == "roles":
                self._roles(record)
        for record in self.records:
            directive = record.directive
            if directive in ENTRY_KINDS:
                entry = self._entry(record)
                key = (entry.lemma, entry.language)
                if key in entries:
                    raise _fail(
                        LexiconErrorCode.DUPLICATE_ENTRY,
                        f"{entry.lemma} ({entry.language}) already defined on line {entries[key][1]}",
                        record.line,
                    )
                entries[key] = (entry, record.line)
            elif directive == "link":
                links.append(record)
            elif directive == "bilingual":
                bilingual_records.append(record)
            elif directive == "idiom":
                raise _fail(LexiconErrorCode.UNSUPPORTED_IDIOM, "only pseudo-idioms (n[lex=...]) are supported", record.line)
            elif directive not in ("languages", "roles"):
                raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"unknown directive {directive!r}", record.line)

        for entry, line in entries.values():
            for spec in entry.subcat + ((entry.head.mod,) if entry.head.mod else ()):
                if spec.pform is None:
                    continue
                target = entries.get((spec.pform, entry.language))
                if target is None or target[0].kind != "prep":
                    raise _fail(
                        LexiconErrorCode.DANGLING_PFORM,
                        f"{entry.lemma} needs preposition {spec.pform!r}, which is not a {entry.language} prep",
                        line,
                    )

        prep_links: Dict[str, str] = {}
        noun_links: Dict[str, str] = {}
        for record in links:
            kind, l1, lt = self._link(record)
            for lemma, language in ((l1, Language.L1.value), (lt, Language.LT.value)):
                found = entries.get((lemma, language))
                if found is None or found[0].kind not in ((kind,) if kind == "prep" else ("noun", "pron")):
                    raise _fail(LexiconErrorCode.DANGLING_LINK, f"no {language} {kind} {lemma!r}", record.line)
            table = prep_links if kind == "prep" else noun_links
            if l1 in table:
                raise _fail(LexiconErrorCode.DUPLICATE_ENTRY, f"{kind} {l1!r} linked twice", record.line)
            table[l1] = lt

        flat = {key: entry for key, (entry, _) in entries.items()}
        bilinguals = [self._bilingual(record, flat) for record in bilingual_records]
        seen: Set[Tuple[str, str]] = set()
        for record, bilingual in zip(bilingual_records, bilinguals):
            key = (bilingual.il_lemma, bilingual.l1_entry.lemma)
            if key in seen:
                raise _fail(LexiconErrorCode.DUPLICATE_ENTRY, f"bilingual {key[0]} <-> {key[1]} repeated", record.line)
            seen.add(key)

        lexicon = Lexicon(
            lt_language=self.languages.get("lt", "lt"),
            l1_language=self.languages.get("l1", "l1"),
            entries=list(flat.values()),
            bilinguals=bilinguals,
            prep_links=prep_links,
            noun_links=noun_links,
            roles=self.roles,
            name=self.name,
        )
        for sign in lexicon.compiled_signs():
            unknown = features_used(sign.fs) - lexicon.feature_inventory
            if unknown:
                raise _fail(LexiconErrorCode.UNKNOWN_FEATURE, f"{sign.phon}: {sorted(unknown)}", None)
        logger.info("loaded lexicon %s: %s", self.name, lexicon.summary())
        return lexicon

    def _languages(self, record: _Record) -> None:
        for key, value in record.keys.items():
            if key not in ("lt", "l1"):
                raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"unknown key {key!r}", record.line)
            self.languages[key] = value
        if record.words:
            raise _fail(LexiconErrorCode.SYNTAX, "languages takes lt=<tag> l1=<tag>", record.line)

    def _roles(self, record: _Record) -> None:
        if record.keys or not record.words or not record.words[0].endswith(":"):
            raise _fail(LexiconErrorCode.SYNTAX, "expected: roles <relation>: <role> ...", record.line)
        reln = record.words[0][:-1]
        names = tuple(record.words[1:])
        if reln in self.roles:
            raise _fail(LexiconErrorCode.DUPLICATE_ENTRY, f"roles for {reln!r} declared twice", record.line)
        for name in names:
            if not re.match(r"^[a-z][a-z0-9_\-]*$", name):
                raise _fail(LexiconErrorCode.SYNTAX, f"bad role name {name!r}", record.line)
            if role_feature(name) in GRAMMAR_FEATURES:
                raise _fail(LexiconErrorCode.UNKNOWN_FEATURE, f"role {name!r} collides with a grammar feature", record.line)
        if len(set(names)) != len(names):
            raise _fail(LexiconErrorCode.SYNTAX, f"repeated role in {reln!r}", record.line)
        self.roles[reln] = names

    def _link(self, record: _Record) -> Tuple[str, str, str]:
        words = record.words
        if record.keys or len(words) != 4 or words[2] != "->" or words[0] not in ("prep", "noun"):
            raise _fail(LexiconErrorCode.SYNTAX, "expected: link prep|noun <l1> -> <lt>", record.line)
        return words[0], words[1], words[3]

    def _entry(self, record: _Record) -> LexicalEntry:
        kind, line = record.directive, record.line
        if len(record.words) < 1 or not _NAME_RE.match(record.words[0]):
            raise _fail(LexiconErrorCode.SYNTAX, f"{kind} needs a lemma", line)
        lemma, flags = record.words[0], record.words[1:]
        for key in record.keys:
            if key not in _ALLOWED_KEYS[kind]:
                raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"{kind} does not take {key!r}", line)
        for flag in flags:
            if flag not in _ALLOWED_FLAGS.get(kind, ()):
                raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"{kind} does not take flag {flag!r}", line)
        language = record.keys.get("lang")
        if language not in (Language.LT.value, Language.L1.value):
            raise _fail(LexiconErrorCode.SYNTAX, f"{lemma}: lang must be lt or l1", line)
        forms, vforms = _parse_forms(record.keys.get("forms"), lemma, line)

        reln = record.keys.get("sem", lemma)
        declared = self.roles.get(reln, ())
        fresh = len(declared) + 1
        bound: Dict[str, int] = {}

        def index_for(role: Optional[str]) -> int:
            nonlocal fresh
            if role is None:
                fresh += 1
                return fresh - 1
            if role not in declared:
                raise _fail(LexiconErrorCode.UNKNOWN_ROLE, f"{reln} has no role {role!r}", line)
            if role in bound:
                raise _fail(LexiconErrorCode.SYNTAX, f"role {role!r} bound twice", line)
            bound[role] = declared.index(role) + 1
            return bound[role]

        specs: List[SignSpec] = []
        mod: Optional[SignSpec] = None
        if kind in ("verb", "adj"):
            elements = _parse_frame(record.keys.get("subcat", "()"), language, line)
            subject_role = declared[0] if declared else None
            for element in elements:
                if element.role is not None and element.role == subject_role:
                    raise _fail(LexiconErrorCode.SYNTAX, f"{subject_role!r} is the implicit subject's role", line)
            subject = SignSpec("np", index=index_for(subject_role), subject=True)
            specs = [replace(e.spec, index=index_for(e.role)) for e in elements] + [subject]
        elif kind == "noun" and "proper" not in flags:
            specs = [SignSpec("det", index=index_for(declared[0] if declared else None), subject=True)]
        elif kind == "prep":
            specs = [SignSpec("np", index=1)]
        elif kind == "adv":
            if "mod" not in record.keys:
                raise _fail(LexiconErrorCode.SYNTAX, f"adverb {lemma} needs mod=", line)
            if not declared:
                raise _fail(LexiconErrorCode.SYNTAX, f"adverb relation {reln!r} declares no role to modify", line)
            element = _parse_element(record.keys["mod"], language, line)
            if element.role is not None:
                raise _fail(LexiconErrorCode.SYNTAX, "mod= takes no role", line)
            mod = replace(element.spec, index=index_for(declared[0]))

        sem: Optional[SemRel] = None
        if kind != "prep":
            args = tuple((role, bound[role]) for role in declared if role in bound)
            human = ("human" in flags) if kind in ("noun", "pron") else None
            sem = SemRel(reln, args, human)
        problems = check_frame(specs, sem)
        if problems:
            raise _fail(LexiconErrorCode.SYNTAX, f"{lemma}: {'; '.join(problems)}", line)
        head = HeadInfo(cat=_HEAD_CAT[kind], pform=lemma if kind == "prep" else None, mod=mod, lex=lemma)
        return LexicalEntry(
            lemma=lemma,
            language=language,
            kind=kind,
            head=head,
            subcat=tuple(specs),
            sem=sem,
            forms=forms,
            vforms=vforms,
        )

    def _bilingual(self, record: _Record, entries: Dict[Tuple[str, str], LexicalEntry]) -> BilingualEntry:
        words, line = record.words, record.line
        if len(words) != 3 or words[1] != "<->":
            raise _fail(LexiconErrorCode.SYNTAX, "expected: bilingual <il> <-> <l1> [lt=..] [stage=..]", line)
        for key in record.keys:
            if key not in ("lt", "stage"):
                raise _fail(LexiconErrorCode.UNKNOWN_KEY, f"bilingual does not take {key!r}", line)
        il_lemma, l1_lemma = words[0], words[2]
        try:
            stage = Stage(record.keys.get("stage", Stage.DISTINCT.value))
        except ValueError:
            raise _fail(LexiconErrorCode.SYNTAX, f"unknown stage {record.keys['stage']!r}", line) from None
        lt_key = (record.keys.get("lt", il_lemma), Language.LT.value)
        l1_key = (l1_lemma, Language.L1.value)
        lt_entry = entries.get(lt_key)
        if lt_entry is None:
            raise _fail(LexiconErrorCode.UNKNOWN_ENTRY, f"no lt entry {lt_key[0]!r}", line)
        l1_entry = entries.get(l1_key)
        if l1_entry is None:
            raise _fail(LexiconErrorCode.UNKNOWN_ENTRY, f"no l1 entry {l1_lemma!r}", line)
        if lt_entry.sem is None or lt_entry.sem != l1_entry.sem:
            raise _fail(
                LexiconErrorCode.SEM_MISMATCH,
                f"{lt_entry.lemma} means {lt_entry.sem}, {l1_lemma} means {l1_entry.sem}",
                line,
            )
        # one concept object, seen from both sides
        if l1_entry.sem is not lt_entry.sem:
            l1_entry = replace(l1_entry, sem=lt_entry.sem)
            entries[l1_key] = l1_entry
        return BilingualEntry(il_lemma, lt_entry, l1_entry, stage, lt_entry.sem)


def load_lexicon(source: str, name: str = "<string>") -> Lexicon:
    return _Loader(source, name).load()


def read_lexicon(path: str) -> Lexicon:
    p = pathlib.Path(path)
    return load_lexicon(p.read_text(encoding="utf-8"), name=str(p))


######################################################################
# Printing
######################################################################


def _entry_line(entry: LexicalEntry) -> str:
    parts = [entry.kind, entry.lemma]
    if entry.kind == "noun" and not entry.subcat:
        parts.append("proper")
    if entry.sem is not None and entry.sem.human:
        parts.append("human")
    parts.append(f"lang={entry.language}")
    def role_of(index: Optional[int]) -> Optional[str]:
        if index is None or entry.sem is None:
            return None
        for role, value in entry.sem.args:
            if value == index:
                return role
        return None

    if entry.kind in ("verb", "adj"):
        elements = [_element_text(s, role_of(s.index)) for s in entry.subcat if not s.subject]
        parts.append(f"subcat=({', '.join(elements)})")
    if entry.kind == "adv" and entry.head.mod is not None:
        parts.append(f"mod={_element_text(entry.head.mod, None)}")
    if entry.sem is not None:
        parts.append(f"sem={entry.sem.reln}")
    forms = []
    for form in entry.forms:
        vform = entry.vform_of(form)
        forms.append(f"{form}:{vform}" if vform else form)
    parts.append(f"forms={','.join(forms)}")
    return " ".join(parts)


def print_lexicon(lexicon: Lexicon) -> str:
    """The canonical text of a lexicon; loading it gives back the same entries."""
    lines = [f"languages lt={lexicon.lt_language} l1={lexicon.l1_language}"]
    for reln in sorted(lexicon.roles):
        lines.append(f"roles {reln}: {' '.join(lexicon.roles[reln])}".rstrip())
    order = {kind: i for i, kind in enumerate(ENTRY_KINDS)}
    for entry in sorted(lexicon.entries, key=lambda e: (e.language != "lt", order[e.kind], e.lemma)):
        lines.append(_entry_line(entry))
    for l1, lt in sorted(lexicon.prep_links.items()):
        lines.append(f"link prep {l1} -> {lt}")
    for l1, lt in sorted(lexicon.noun_links.items()):
        lines.append(f"link noun {l1} -> {lt}")
    for b in sorted(lexicon.bilinguals, key=lambda b: (b.il_lemma, b.l1_entry.lemma)):
        line = f"bilingual {b.il_lemma} <-> {b.l1_entry.lemma}"
        if b.lt_entry.lemma != b.il_lemma:
            line += f" lt={b.lt_entry.lemma}"
        lines.append(f"{line} stage={b.stage.value}")
    return "\n".join(lines) + "\n"
