"""Attribute-value matrices with structure sharing.

A feature structure is a rooted, acyclic graph of immutable nodes:

    - ``Avm``      a mapping from feature names to nodes (at least one feature)
    - ``Atom``     an interned symbol
    - ``ListVal``  an ordered sequence of nodes
    - ``Empty``    the fully underspecified value

Two paths are reentrant iff they reach the *same node object*. Nothing ever
mutates a node after construction, so nodes may be shared freely between
feature structures; every operation that produces new information works on a
private mutable copy and freezes the result.

The basic unification algorithm:
  1. Thaw both inputs into mutable cells (preserving reentrance).
  2. Destructively unify the cells, leaving forward pointers behind.
  3. Freeze the result, following forward pointers; a cycle is a failure.
"""

import sys
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from src.core.errors import PathError

Step = Union[str, int]
Path = Tuple[Step, ...]


######################################################################
# Nodes
######################################################################


class Node:
    __slots__ = ()


class Empty(Node):
    __slots__ = ()

    def __repr__(self) -> str:
        return "Empty()"


class Atom(Node):
    __slots__ = ("symbol",)

    def __init__(self, symbol: str) -> None:
        self.symbol = sys.intern(symbol)

    def __repr__(self) -> str:
        return f"Atom({self.symbol!r})"


class Avm(Node):
    __slots__ = ("features",)

    def __init__(self, features: Mapping[str, Node]) -> None:
        if not features:
            raise ValueError("an AVM node needs at least one feature; use Empty()")
        self.features: Mapping[str, Node] = MappingProxyType(dict(features))

    def __repr__(self) -> str:
        return f"Avm({dict(self.features)!r})"


class ListVal(Node):
    __slots__ = ("items",)

    def __init__(self, items: Sequence[Node] = ()) -> None:
        self.items: Tuple[Node, ...] = tuple(items)

    def __repr__(self) -> str:
        return f"ListVal({list(self.items)!r})"


def children(node: Node) -> Iterator[Node]:
    if isinstance(node, Avm):
        yield from node.features.values()
    elif isinstance(node, ListVal):
        yield from node.items


def reachable(root: Node) -> List[Node]:
    """All nodes reachable from ``root``, each once, in depth-first order."""
    seen: Set[int] = set()
    order: List[Node] = []
    stack = [root]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        order.append(node)
        stack.extend(reversed(list(children(node))))
    return order


######################################################################
# Feature structure
######################################################################


class FeatureStructure:
    """An immutable feature structure; equality is alphabetic variance."""

    __slots__ = ("root", "_canonical")

    def __init__(self, root: Node) -> None:
        self.root = root
        self._canonical: Optional[str] = None

    @property
    def nodes(self) -> Set[Node]:
        return set(reachable(self.root))

    def node_at(self, path: Iterable[Step]) -> Optional[Node]:
        node = self.root
        for step in path:
            if isinstance(step, int):
                if not isinstance(node, ListVal) or not 0 <= step < len(node.items):
                    return None
                node = node.items[step]
            else:
                if not isinstance(node, Avm):
                    return None
                nxt = node.features.get(step)
                if nxt is None:
                    return None
                node = nxt
        return node

    def get(self, path: Iterable[Step]) -> Optional["FeatureStructure"]:
        node = self.node_at(path)
        return FeatureStructure(node) if node is not None else None

    def atom_at(self, path: Iterable[Step]) -> Optional[str]:
        node = self.node_at(path)
        return node.symbol if isinstance(node, Atom) else None

    def unify(self, other: "FeatureStructure") -> Optional["FeatureStructure"]:
        return unify(self, other)

    def subsumes(self, other: "FeatureStructure") -> bool:
        return subsumes(self, other)

    def equivalent(self, other: "FeatureStructure") -> bool:
        return equivalent(self, other)

    def canonical(self) -> str:
        if self._canonical is None:
            from src.core.notation import write_avm

            self._canonical = write_avm(self)
        return self._canonical

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureStructure):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __str__(self) -> str:
        return self.canonical()

    def __repr__(self) -> str:
        return f"FeatureStructure({self.canonical()})"


FAILURE = None
"""Unification failure is a value, spelled ``None``."""


def node(value: object) -> Node:
    """Build a node from plain data.

    dict -> Avm (an empty dict is Empty), list/tuple -> ListVal, str -> Atom,
    None -> Empty. Node objects pass through untouched, so reusing one node in
    several places makes those places reentrant.
    """
    if isinstance(value, Node):
        return value
    if isinstance(value, FeatureStructure):
        return value.root
    if value is None:
        return Empty()
    if isinstance(value, str):
        return Atom(value)
    if isinstance(value, Mapping):
        if not value:
            return Empty()
        return Avm({name: node(v) for name, v in value.items()})
    if isinstance(value, (list, tuple)):
        return ListVal([node(v) for v in value])
    raise TypeError(f"cannot build a feature structure node from {type(value).__name__}")


def structure(value: object) -> FeatureStructure:
    return FeatureStructure(node(value))


def parse_path(text: str, inventory: Optional[Iterable[str]] = None) -> Path:
    """Parse ``SYN|LOC|SUBCAT|0`` into a path; integer steps index lists."""
    allowed = set(inventory) if inventory is not None else None
    steps: List[Step] = []
    for raw in text.split("|"):
        raw = raw.strip()
        if not raw:
            raise PathError(f"empty step in path {text!r}")
        if raw.isdigit():
            steps.append(int(raw))
            continue
        if allowed is not None and raw not in allowed:
            raise PathError(f"unknown feature {raw!r} in path {text!r}")
        steps.append(raw)
    return tuple(steps)


def features_used(fs: FeatureStructure) -> Set[str]:
    names: Set[str] = set()
    for n in reachable(fs.root):
        if isinstance(n, Avm):
            names.update(n.features)
    return names


######################################################################
# Mutable working copies
######################################################################

_EMPTY, _ATOM, _AVM, _LIST = "empty", "atom", "avm", "list"


class _Cell:
    __slots__ = ("kind", "symbol", "feats", "items", "fwd")

    def __init__(self, kind: str, symbol: Optional[str] = None) -> None:
        self.kind = kind
        self.symbol = symbol
        self.feats: Dict[str, "_Cell"] = {}
        self.items: List["_Cell"] = []
        self.fwd: Optional["_Cell"] = None


class _Cycle(Exception):
    pass


def _deref(cell: _Cell) -> _Cell:
    while cell.fwd is not None:
        cell = cell.fwd
    return cell


def _thaw(n: Node, memo: Dict[int, _Cell]) -> _Cell:
    cell = memo.get(id(n))
    if cell is not None:
        return cell
    if isinstance(n, Atom):
        cell = _Cell(_ATOM, n.symbol)
    elif isinstance(n, Avm):
        cell = _Cell(_AVM)
        memo[id(n)] = cell
        for name, value in n.features.items():
            cell.feats[name] = _thaw(value, memo)
    elif isinstance(n, ListVal):
        cell = _Cell(_LIST)
        memo[id(n)] = cell
        cell.items = [_thaw(value, memo) for value in n.items]
    else:
        cell = _Cell(_EMPTY)
    memo[id(n)] = cell
    return cell


def _unify_cells(a: _Cell, b: _Cell) -> bool:
    a = _deref(a)
    b = _deref(b)
    if a is b:
        return True
    if a.kind == _EMPTY:
        a.fwd = b
        return True
    if b.kind == _EMPTY:
        b.fwd = a
        return True
    if a.kind != b.kind:
        return False
    if a.kind == _ATOM:
        if a.symbol != b.symbol:
            return False
        b.fwd = a
        return True
    # Forward before recursing, so shared substructure is unified once.
    b.fwd = a
    if a.kind == _LIST:
        if len(a.items) != len(b.items):
            return False
        return all(_unify_cells(x, y) for x, y in zip(a.items, b.items))
    for name, value in sorted(b.feats.items()):
        mine = a.feats.get(name)
        if mine is None:
            a.feats[name] = value
        elif not _unify_cells(mine, value):
            return False
    return True


def _freeze(cell: _Cell, memo: Dict[int, Node], active: Set[int]) -> Node:
    cell = _deref(cell)
    key = id(cell)
    done = memo.get(key)
    if done is not None:
        return done
    if key in active:
        raise _Cycle()
    if cell.kind == _EMPTY:
        result: Node = Empty()
    elif cell.kind == _ATOM:
        result = Atom(cell.symbol or "")
    else:
        active.add(key)
        if cell.kind == _LIST:
            result = ListVal([_freeze(c, memo, active) for c in cell.items])
        else:
            result = Avm({name: _freeze(c, memo, active) for name, c in cell.feats.items()})
        active.discard(key)
    memo[key] = result
    return result


def _from_cell(cell: _Cell) -> Optional[FeatureStructure]:
    try:
        return FeatureStructure(_freeze(cell, {}, set()))
    except _Cycle:
        return FAILURE


def _walk_cells(cell: _Cell, path: Path) -> _Cell:
    """Follow ``path``, creating missing features; Empty nodes become AVMs."""
    for step in path:
        cell = _deref(cell)
        if isinstance(step, int):
            if cell.kind != _LIST:
                raise PathError(f"list index {step} applied to a {cell.kind} value")
            if not 0 <= step < len(cell.items):
                raise PathError(f"list index {step} out of range (length {len(cell.items)})")
            cell = cell.items[step]
            continue
        if cell.kind == _EMPTY:
            cell.kind = _AVM
        if cell.kind != _AVM:
            raise PathError(f"feature {step!r} applied to a {cell.kind} value")
        nxt = cell.feats.get(step)
        if nxt is None:
            nxt = _Cell(_EMPTY)
            cell.feats[step] = nxt
        cell = nxt
    return _deref(cell)


######################################################################
# Operations
######################################################################


def unify(a: FeatureStructure, b: FeatureStructure) -> Optional[FeatureStructure]:
    """The most general structure subsumed by both inputs, or None."""
    left = _thaw(a.root, {})
    right = _thaw(b.root, {})
    if not _unify_cells(left, right):
        return FAILURE
    return _from_cell(left)


def _subsumes_node(x: Node, y: Node, mapping: Dict[int, Node]) -> bool:
    seen = mapping.get(id(x))
    if seen is not None:
        # a reentrancy in x must be a reentrancy in y
        return seen is y
    mapping[id(x)] = y
    if isinstance(x, Empty):
        return True
    if isinstance(x, Atom):
        return isinstance(y, Atom) and x.symbol == y.symbol
    if isinstance(x, ListVal):
        return (
            isinstance(y, ListVal)
            and len(x.items) == len(y.items)
            and all(_subsumes_node(i, j, mapping) for i, j in zip(x.items, y.items))
        )
    if isinstance(x, Avm):
        if not isinstance(y, Avm):
            return False
        for name, value in x.features.items():
            other = y.features.get(name)
            if other is None or not _subsumes_node(value, other, mapping):
                return False
        return True
    return False


def subsumes(a: FeatureStructure, b: FeatureStructure) -> bool:
    """True iff ``b`` carries all the information in ``a``."""
    return _subsumes_node(a.root, b.root, {})


def equivalent(a: FeatureStructure, b: FeatureStructure) -> bool:
    return subsumes(a, b) and subsumes(b, a)


def get(fs: FeatureStructure, path: Iterable[Step]) -> Optional[FeatureStructure]:
    return fs.get(path)


def put(fs: FeatureStructure, path: Iterable[Step], value: FeatureStructure) -> Optional[FeatureStructure]:
    """Unify ``value`` into whatever ``fs`` holds at ``path``.

    The node at the path is refined, not replaced, so any path sharing it sees
    the new value. Returns None on a clash; raises PathError when the path
    runs through an atom or misuses a list.
    """
    root = _thaw(fs.root, {})
    target = _walk_cells(root, tuple(path))
    if not _unify_cells(target, _thaw(value.root, {})):
        return FAILURE
    return _from_cell(root)


def share(fs: FeatureStructure, p1: Iterable[Step], p2: Iterable[Step]) -> Optional[FeatureStructure]:
    """Make ``p1`` and ``p2`` reach one node, unifying what they held."""
    root = _thaw(fs.root, {})
    first = _walk_cells(root, tuple(p1))
    second = _walk_cells(root, tuple(p2))
    if not _unify_cells(first, second):
        return FAILURE
    return _from_cell(root)


def _joined_cell(parts: Mapping[str, FeatureStructure]) -> _Cell:
    root = _Cell(_AVM)
    for name, part in parts.items():
        # a fresh memo per part: nodes shared between inputs stay distinct
        root.feats[name] = _thaw(part.root, {})
    return root


def join(parts: Mapping[str, FeatureStructure]) -> FeatureStructure:
    """Place independent copies of several structures under fresh features."""
    return FeatureStructure(_freeze(_joined_cell(parts), {}, set()))


def link(parts: Mapping[str, FeatureStructure], p1: Iterable[Step], p2: Iterable[Step]) -> Optional[FeatureStructure]:
    """``share(join(parts), p1, p2)`` with a single copy."""
    root = _joined_cell(parts)
    first = _walk_cells(root, tuple(p1))
    second = _walk_cells(root, tuple(p2))
    if not _unify_cells(first, second):
        return FAILURE
    return _from_cell(root)
