import pytest

from src.core.avm import (
    Atom,
    Avm,
    Empty,
    FeatureStructure,
    ListVal,
    equivalent,
    get,
    join,
    link,
    parse_path,
    put,
    share,
    structure,
    subsumes,
    unify,
)
from src.core.errors import PathError
from src.core.notation import read_avm, write_avm


def test_atoms_clash():
    assert unify(structure({"CAT": "verb"}), structure({"CAT": "noun"})) is None
    assert unify(structure({"CAT": "verb"}), structure({"CAT": "verb"})) == structure({"CAT": "verb"})


def test_features_merge():
    result = unify(structure({"CAT": "verb"}), structure({"VFORM": "fin"}))
    assert result == structure({"CAT": "verb", "VFORM": "fin"})


def test_atom_against_avm_fails():
    assert unify(structure({"F": "a"}), structure({"F": {"G": "b"}})) is None


def test_list_lengths_must_agree():
    assert unify(structure({"L": ["a"]}), structure({"L": ["a", "b"]})) is None
    assert unify(structure({"L": [{}]}), structure({"L": ["a"]})) == structure({"L": ["a"]})


def test_reentrancy_propagates():
    shared = Empty()
    a = FeatureStructure(Avm({"F": shared, "G": shared}))
    result = unify(a, structure({"F": "x"}))
    assert result is not None
    assert result.atom_at(("G",)) == "x"
    assert result.node_at(("F",)) is result.node_at(("G",))


def test_reentrancy_clash_fails():
    shared = Empty()
    a = FeatureStructure(Avm({"F": shared, "G": shared}))
    assert unify(a, structure({"F": "x", "G": "y"})) is None


def test_cycle_is_failure():
    inner = Empty()
    a = FeatureStructure(Avm({"F": inner, "G": Avm({"H": inner})}))
    # F = G would make F contain itself
    assert share(a, ("F",), ("G",)) is None


def test_inputs_are_not_mutated():
    a = structure({"F": {}})
    before = a.canonical()
    unify(a, structure({"F": "x"}))
    assert a.canonical() == before


def test_subsumption_respects_sharing():
    shared = Empty()
    general = structure({"F": "x", "G": "x"})
    specific = FeatureStructure(Avm({"F": shared, "G": shared}))
    specific = unify(specific, structure({"F": "x"}))
    assert subsumes(general, specific)
    assert not subsumes(specific, general)


def test_equivalent_alphabetic_variants():
    one, two = Empty(), Empty()
    a = FeatureStructure(Avm({"F": one, "G": one}))
    b = FeatureStructure(Avm({"G": two, "F": two}))
    assert equivalent(a, b)
    assert a == b and hash(a) == hash(b)


def test_get_and_paths():
    fs = structure({"SYN": {"LOC": {"SUBCAT": [{"CAT": "np"}, {"CAT": "pp"}]}}})
    path = parse_path("SYN|LOC|SUBCAT|1|CAT")
    assert path == ("SYN", "LOC", "SUBCAT", 1, "CAT")
    assert fs.atom_at(path) == "pp"
    assert get(fs, parse_path("SYN|LOC|SUBCAT|2")) is None


def test_parse_path_checks_inventory():
    with pytest.raises(PathError):
        parse_path("SYN|BOGUS", inventory={"SYN"})
    with pytest.raises(PathError):
        parse_path("SYN||LOC")


def test_put_creates_and_refines():
    shared = Empty()
    fs = FeatureStructure(Avm({"F": shared, "G": shared}))
    result = put(fs, ("F", "CAT"), structure("noun"))
    assert result is not None
    assert result.atom_at(("G", "CAT")) == "noun"
    assert put(result, ("G", "CAT"), structure("verb")) is None


def test_put_through_atom_raises():
    with pytest.raises(PathError):
        put(structure({"F": "a"}), ("F", "G"), structure("b"))
    with pytest.raises(PathError):
        put(structure({"L": ["a"]}), ("L", 3), structure("b"))


def test_share_unifies_both_values():
    fs = structure({"F": {"A": "x"}, "G": {"B": "y"}})
    result = share(fs, ("F",), ("G",))
    assert result is not None
    assert result.node_at(("F",)) is result.node_at(("G",))
    assert result.atom_at(("F", "B")) == "y"


def test_join_keeps_parts_independent():
    part = structure({"F": "x"})
    joined = join({"LEFT": part, "RIGHT": part})
    assert joined.node_at(("LEFT",)) is not joined.node_at(("RIGHT",))


def test_link_joins_and_shares():
    head = structure({"SUBCAT": [{"CAT": "np"}]})
    comp = structure({"CAT": "np", "SEM": "per"})
    tree = link({"H": head, "C": comp}, ("H", "SUBCAT", 0), ("C",))
    assert tree is not None
    assert tree.node_at(("H", "SUBCAT", 0)) is tree.node_at(("C",))
    assert link({"H": head, "C": structure({"CAT": "pp"})}, ("H", "SUBCAT", 0), ("C",)) is None


def test_node_types():
    assert isinstance(structure({}).root, Empty)
    assert isinstance(structure("a").root, Atom)
    assert isinstance(structure([]).root, ListVal)
    with pytest.raises(ValueError):
        Avm({})


def test_canonical_print_uses_notation():
    fs = read_avm("[G: #1 [], F: #1]")
    assert write_avm(fs) == "[F: #1 [], G: #1]"
    assert str(fs) == fs.canonical()
