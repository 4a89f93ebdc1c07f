"""Hypothesis strategies for random feature structures."""

from typing import List

from hypothesis import strategies as st

from src.core.avm import Atom, Avm, Empty, FeatureStructure, ListVal, Node

FEATURES = ("A", "B", "C", "D", "E", "F")
ATOMS = ("a", "b", "c", "øl", "Oslo", "avoir(faim)")


@st.composite
def nodes(draw, depth: int, shared: List[Node]) -> Node:
    if shared and draw(st.integers(0, 9)) == 0:
        return draw(st.sampled_from(shared))
    if depth <= 0:
        choice = draw(st.integers(0, 3))
    else:
        choice = draw(st.integers(0, 6))
    if choice == 0:
        return Empty()
    if choice in (1, 2, 3):
        return Atom(draw(st.sampled_from(ATOMS)))
    if choice == 6:
        size = draw(st.integers(0, 2))
        return ListVal([draw(nodes(depth - 1, shared)) for _ in range(size)])
    names = draw(st.lists(st.sampled_from(FEATURES), min_size=1, max_size=6, unique=True))
    return Avm({name: draw(nodes(depth - 1, shared)) for name in names})


@st.composite
def feature_structures(draw, max_depth: int = 4, max_shared: int = 2) -> FeatureStructure:
    """Depth <= max_depth, <= 6 features per node, <= max_shared reentrant nodes.

    Shared nodes are built first and then reused as leaves, so reusing one
    object in several places is what makes the paths reentrant.
    """
    shared = [draw(nodes(1, [])) for _ in range(draw(st.integers(0, max_shared)))]
    names = draw(st.lists(st.sampled_from(FEATURES), min_size=1, max_size=6, unique=True))
    return FeatureStructure(Avm({name: draw(nodes(max_depth - 1, shared)) for name in names}))
