"""Textual AVM notation.

    [CAT: verb, SUBCAT: < #1 [CAT: noun], #1 >]

Features are upper case, atoms lower case, ``#n`` tags mark shared nodes,
``[]`` is the empty (fully underspecified) value, lists are ``< a, b >`` and
``<>``. Atoms that start with an ASCII capital or contain anything but word
characters, ``+`` and ``-`` are written in double quotes with JSON escapes:
``"Oslo"``, ``"avoir(faim)"``. The writer sorts features and numbers tags in
first-visit order, so alphabetic variants print identically and the printed
form can serve as a canonical key.
"""

import json
import re
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from src.core.avm import (
    Atom,
    Avm,
    Empty,
    FeatureStructure,
    ListVal,
    Node,
    _ATOM,
    _AVM,
    _Cell,
    _EMPTY,
    _LIST,
    _from_cell,
    _unify_cells,
    children,
    reachable,
)
from src.core.errors import NotationError


def _reference_counts(root: Node) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for n in reachable(root):
        for child in children(n):
            counts[id(child)] = counts.get(id(child), 0) + 1
    return counts


def write_avm(value: Union[FeatureStructure, Node]) -> str:
    root = value.root if isinstance(value, FeatureStructure) else value
    counts = _reference_counts(root)
    tags: Dict[int, int] = {}
    out: List[str] = []

    def emit(n: Node) -> None:
        if counts.get(id(n), 0) > 1:
            tag = tags.get(id(n))
            if tag is not None:
                out.append(f"#{tag}")
                return
            tag = len(tags) + 1
            tags[id(n)] = tag
            out.append(f"#{tag} ")
        if isinstance(n, Atom):
            out.append(write_atom(n.symbol))
        elif isinstance(n, Avm):
            out.append("[")
            for i, name in enumerate(sorted(n.features)):
                if i:
                    out.append(", ")
                out.append(f"{name}: ")
                emit(n.features[name])
            out.append("]")
        elif isinstance(n, ListVal):
            if not n.items:
                out.append("<>")
                return
            out.append("< ")
            for i, item in enumerate(n.items):
                if i:
                    out.append(", ")
                emit(item)
            out.append(" >")
        else:
            out.append("[]")

    emit(root)
    return "".join(out)


_BARE_ATOM = r"[^\W_A-Z][\w+\-]*"
_BARE_ATOM_RE = re.compile(_BARE_ATOM)

_TOKEN_RE = re.compile(
    r"(?P<tag>#\d+)"
    r"|(?P<punct>[\[\]<>,:])"
    r"|(?P<feature>[A-Z][A-Z0-9_\-]*)"
    rf"|(?P<atom>{_BARE_ATOM})"
    r"|(?P<quoted>\"(?:[^\"\\]|\\.)*\")"
)


def write_atom(symbol: str) -> str:
    if _BARE_ATOM_RE.fullmatch(symbol):
        return symbol
    return json.dumps(symbol, ensure_ascii=False)


Token = Tuple[str, str, int]


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise NotationError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup or ""
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Reader:
    def __init__(self, text: str, inventory: Optional[Iterable[str]]) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.tags: Dict[str, _Cell] = {}
        self.inventory: Optional[Set[str]] = set(inventory) if inventory is not None else None

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _offset(self) -> int:
        tok = self._peek()
        return tok[2] if tok is not None else len(self.text)

    def _next(self) -> Token:
        tok = self._peek()
        if tok is None:
            raise NotationError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def _expect(self, text: str) -> None:
        kind, value, pos = self._next()
        if value != text:
            raise NotationError(f"expected {text!r}, found {value!r}", pos)

    def _starts_value(self) -> bool:
        tok = self._peek()
        return tok is not None and (tok[0] in ("atom", "quoted") or tok[1] in ("[", "<"))

    def read(self) -> FeatureStructure:
        cell = self._value()
        if self._peek() is not None:
            raise NotationError("trailing input", self._offset())
        fs = _from_cell(cell)
        if fs is None:
            raise NotationError("tags make the structure cyclic", 0)
        return fs

    def _value(self) -> _Cell:
        kind, value, pos = self._next()
        if kind == "tag":
            cell = self.tags.setdefault(value, _Cell(_EMPTY))
            if self._starts_value():
                if not _unify_cells(cell, self._value()):
                    raise NotationError(f"conflicting values for {value}", pos)
            return cell
        if kind == "atom":
            return _Cell(_ATOM, value)
        if kind == "quoted":
            try:
                return _Cell(_ATOM, json.loads(value))
            except ValueError:
                raise NotationError(f"bad quoted atom {value}", pos) from None
        if value == "[":
            return self._avm(pos)
        if value == "<":
            return self._list()
        raise NotationError(f"unexpected {value!r}", pos)

    def _avm(self, start: int) -> _Cell:
        tok = self._peek()
        if tok is not None and tok[1] == "]":
            self.i += 1
            return _Cell(_EMPTY)
        cell = _Cell(_AVM)
        while True:
            kind, name, pos = self._next()
            if kind != "feature":
                raise NotationError(f"expected a feature name, found {name!r}", pos)
            if name in cell.feats:
                raise NotationError(f"duplicate feature {name}", pos)
            if self.inventory is not None and name not in self.inventory:
                raise NotationError(f"unknown feature {name}", pos)
            self._expect(":")
            cell.feats[name] = self._value()
            kind, value, pos = self._next()
            if value == "]":
                return cell
            if value != ",":
                raise NotationError(f"expected ',' or ']', found {value!r}", pos)

    def _list(self) -> _Cell:
        cell = _Cell(_LIST)
        tok = self._peek()
        if tok is not None and tok[1] == ">":
            self.i += 1
            return cell
        while True:
            cell.items.append(self._value())
            kind, value, pos = self._next()
            if value == ">":
                return cell
            if value != ",":
                raise NotationError(f"expected ',' or '>', found {value!r}", pos)


def read_avm(text: str, inventory: Optional[Iterable[str]] = None) -> FeatureStructure:
    """Parse the textual notation; ``inventory`` closes the feature set."""
    return _Reader(text, inventory).read()
