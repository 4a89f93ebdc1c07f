import pytest

from src.core.grammar import Schema, apply_schema, combine, optional_skip
from src.core.lexicon import load_lexicon
from src.core.signs import COMP_DTR, HEAD_DTR, HEAD_PATH, SUBCAT_PATH


def _sign(lexicon, form):
    (sign,) = lexicon.lexical_signs(form)
    return sign


def test_head_complement(no_es):
    vp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svare"), _sign(no_es, "Per"))
    assert vp is not None
    assert vp.label() == "VP[inf]"
    assert vp.phon == "svare per"
    assert str(vp.sem) == "answer(agent=?x1, theme=per)"


def test_head_complement_checks_category(no_es):
    pp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "til"), _sign(no_es, "Per"))
    assert pp is not None and pp.label() == "PP[til]"
    assert combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svare"), pp) is None


def test_head_complement_never_takes_the_subject(no_es):
    vp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svarte"), _sign(no_es, "Per"))
    assert combine(Schema.HEAD_COMPLEMENT, vp, _sign(no_es, "jeg")) is None


def test_head_subject(no_es):
    vp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svarte"), _sign(no_es, "Per"))
    s = combine(Schema.HEAD_SUBJECT, _sign(no_es, "jeg"), vp)
    assert s is not None and s.label() == "S"
    assert str(s.sem) == "answer(agent=jeg, theme=per)"
    # the subject waits until every complement is in
    assert combine(Schema.HEAD_SUBJECT, _sign(no_es, "jeg"), _sign(no_es, "svarte")) is None


def test_head_adjunct(no_es):
    vp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svare"), _sign(no_es, "Per"))
    modified = combine(Schema.HEAD_ADJUNCT, _sign(no_es, "ikke"), vp)
    assert modified is not None
    assert modified.label() == "VP[inf]"
    assert str(modified.sem) == "neg(arg=answer(agent=?x1, theme=per))"
    finite = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "svarte"), _sign(no_es, "Per"))
    assert combine(Schema.HEAD_ADJUNCT, _sign(no_es, "ikke"), finite) is None


def test_determiner_as_specifier(en_fr):
    np = combine(Schema.HEAD_SUBJECT, _sign(en_fr, "my"), _sign(en_fr, "friend"))
    assert np is not None and np.label() == "NP"
    assert str(np.sem) == "friend(poss=speaker)"


def test_local_tree_shares_nodes(no_es):
    local = apply_schema(Schema.HEAD_COMPLEMENT, _sign(no_es, "svare"), _sign(no_es, "Per"))
    assert local is not None
    tree = local.tree
    assert tree.node_at((HEAD_DTR,) + SUBCAT_PATH + (0,)) is tree.node_at((COMP_DTR,))
    assert local.mother.fs.node_at(HEAD_PATH) is tree.node_at((HEAD_DTR,) + HEAD_PATH)
    assert local.mother.fs.node_at(SUBCAT_PATH + (0,)) is tree.node_at((HEAD_DTR,) + SUBCAT_PATH + (1,))
    assert local.cancelled is not None and local.cancelled.cat == "np"
    assert not local.cancelled_marked


def test_mal_sign_marks_the_cancelled_element(no_es):
    (_, mal_sign), = no_es.mal_signs("svare")
    pp = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "til"), _sign(no_es, "Per"))
    local = apply_schema(Schema.HEAD_COMPLEMENT, mal_sign, pp)
    assert local is not None
    assert local.cancelled_marked
    assert local.cancelled.pform == "til"


def test_human_restriction(no_es):
    (_, mal_sign), = no_es.mal_signs("svare")
    lexicon = load_lexicon(
        """
languages lt=no l1=es
noun brev proper lang=lt
prep til lang=lt
"""
    )
    letter = combine(Schema.HEAD_COMPLEMENT, _sign(lexicon, "til"), _sign(lexicon, "brev"))
    assert letter is not None and letter.label() == "PP[til]"
    assert combine(Schema.HEAD_COMPLEMENT, mal_sign, letter) is None
    person = combine(Schema.HEAD_COMPLEMENT, _sign(no_es, "til"), _sign(no_es, "jeg"))
    assert combine(Schema.HEAD_COMPLEMENT, mal_sign, person) is not None


OPTIONAL = """
languages lt=no l1=es
roles give: agent theme goal
verb gi lang=lt subcat=(np:theme opt, pp[til]:goal opt) sem=give forms=gi:inf,ga:fin
prep til lang=lt
"""


@pytest.mark.parametrize("form, count", [("gi", 4), ("til", 1)])
def test_optional_skip(form, count):
    lexicon = load_lexicon(OPTIONAL)
    variants = optional_skip(_sign(lexicon, form))
    assert len(variants) == count
    lengths = sorted(len(v.subcat) for v in variants)
    if count == 4:
        assert lengths == [1, 2, 2, 3]
        assert all(v.subcat[-1].subject for v in variants)
