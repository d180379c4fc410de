import json
import os

import pytest

import igdep

ASSETS = os.environ.get("IGDEP_ASSETS", os.path.join(os.path.dirname(__file__), "..", "..", "assets"))


def test_compose():
    P = igdep.Polarity
    assert igdep.compose(P.Positive, P.Negative) == P.Saturated
    assert igdep.compose(P.VirtualCtx, P.Negative) == P.Negative
    assert igdep.compose(P.Positive, P.Positive) is None
    assert igdep.is_saturation_valid([P.Saturated, P.VirtualDep])
    assert P.from_token("~d") == P.VirtualDep
    with pytest.raises(igdep.UnknownPolarityToken):
        P.from_token("±")


def test_grammar():
    g = igdep.toy_grammar()
    assert "connaît" in g.words
    assert g.entry_count("le") == 2
    assert g.validate() == []
    assert g.connectivity_violations() == []
    again = igdep.load_grammar_string(g.to_json())
    assert json.loads(again.to_json()) == json.loads(g.to_json())
    assert igdep.load_grammar(os.path.join(ASSETS, "toy_grammar.json")).words == g.words
    with pytest.raises(igdep.ValidationError):
        igdep.load_grammar_string('{"words": {"hm": []}}')
    with pytest.raises(igdep.IgdepError):
        igdep.load_grammar_string("{")


def test_clitic_en_sentence():
    models = igdep.parse("jean en connaît la couleur")
    assert len(models) == 1
    m = models[0]
    assert m.verify() == []
    assert m.bracketed().startswith("(S (NP jean) (VN (CLIT en)")
    g = m.dependencies()
    assert sorted(g.edges) == sorted([
        (2, 0, "NP", "linear"),
        (2, 4, "NP", "linear"),
        (4, 3, "DET", "linear"),
        (4, 1, "N", "nonlinear"),
    ])
    assert g.reach(4) == [1, 3, 4]
    rec = igdep.metrics(g)
    assert rec["block_degree"] == 2 and rec["projective"] is False and rec["well_nested"] is True
    assert "5\tcouleur\t3:NP:linear" in g.to_tsv()
    assert "style=dashed" in g.to_dot()
    assert igdep.model_json(m)["tokens"][1] == "en"
    assert igdep.graph_json(g.only("linear"))["edges"][0]["kind"] == "linear"
    labels = {e[2] for e in m.dependencies(label_funct=True).edges}
    assert {"subj", "obj", "det"} <= labels


def test_relative_clause():
    (m,) = igdep.parse("la fille que jean aime vient")
    g = m.dependencies()
    assert sum(1 for e in g.edges if e[1] == 2) == 2
    assert igdep.metrics(g)["projective"] is True


def test_failures():
    assert igdep.parse("la la couleur") == []
    with pytest.raises(igdep.UnknownWord):
        igdep.parse("xyzzy")
    with pytest.raises(igdep.LimitExceeded):
        igdep.parse("jean en connaît la couleur", max_merges=2)


def test_oracle_agrees():
    s = "jean le connaît"
    engine = {m.canonical_key() for m in igdep.parse(s)}
    oracle = {m.canonical_key() for m in igdep.oracle_parse(igdep.toy_grammar(), s)}
    assert engine == oracle and len(engine) == 1
    with pytest.raises(igdep.OracleCapExceeded):
        igdep.oracle_parse(igdep.toy_grammar(), "jean en connaît la")
