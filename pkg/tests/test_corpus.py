import json
import pathlib

import pytest

from abeforge.corpus import (
    CorpusError,
    corpus_from_json,
    corpus_to_json,
    dumps_canonical,
    load_corpus,
)
from abeforge.kernel import verify_corpus
from abeforge.statements import Clause, Identity, QuasiIdentity


def test_registry_counts(corpus):
    axioms = [sid for sid in corpus.statements if sid.startswith("ax")]
    lemmas = [sid for sid in corpus.statements if sid.startswith("lem")]
    assert len(axioms) == 6
    assert len(lemmas) == 11
    assert "trans" in corpus.statements
    assert len(corpus.scripts) == 13


def test_axiom_systems(corpus):
    assert corpus.axiom_system("aBE").members == ("ax1", "ax2", "ax3", "ax4", "ax5")
    assert corpus.axiom_system("implicative-aBE").members == (
        "ax1", "ax2", "ax3", "ax4", "ax5", "ax6",
    )
    with pytest.raises(CorpusError):
        corpus.axiom_system("nosuch")


def test_statement_kinds(corpus):
    assert isinstance(corpus.statement("ax5"), QuasiIdentity)
    assert isinstance(corpus.statement("trans"), QuasiIdentity)
    assert isinstance(corpus.statement("lem8a"), Clause)
    assert isinstance(corpus.statement("lem18"), Clause)
    for sid in ("ax1", "ax2", "ax3", "ax4", "ax6", "lem10", "lem17", "commutativity"):
        assert isinstance(corpus.statement(sid), Identity)


def test_commutativity_has_no_script(corpus):
    assert "commutativity" in corpus.properties
    with pytest.raises(CorpusError):
        corpus.script("commutativity")


def test_every_script_reference_resolves(corpus):
    for script in corpus.scripts:
        corpus.statement(script.target)
        for dep in script.depends_on:
            corpus.statement(dep)


def test_dependency_order(corpus):
    proved = set(corpus.axiom_system("implicative-aBE").members)
    for script in corpus.scripts:
        assert set(script.depends_on) <= proved | {script.target}
        proved.add(script.target)


def test_full_replay(corpus):
    assert all(status == "verified" for _, status in verify_corpus(corpus))


def test_round_trip_byte_stable(corpus):
    s1 = dumps_canonical(corpus_to_json(corpus))
    again = corpus_from_json(json.loads(s1))
    s2 = dumps_canonical(corpus_to_json(again))
    assert s1 == s2


def test_reloaded_corpus_replays(corpus, tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(dumps_canonical(corpus_to_json(corpus)))
    again = load_corpus(str(path))
    assert all(status == "verified" for _, status in verify_corpus(again))


def test_reference_file_in_sync(corpus):
    path = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus.json"
    assert path.read_text() == dumps_canonical(corpus_to_json(corpus))


def test_unknown_dependency_rejected(corpus):
    obj = corpus_to_json(corpus)
    obj["scripts"][3]["depends_on"].append("lem99")
    with pytest.raises(CorpusError, match="lem99"):
        corpus_from_json(obj)


def test_unknown_step_rule_rejected(corpus):
    obj = corpus_to_json(corpus)
    obj["scripts"][0]["steps"][0]["rule"] = "frobnicate"
    with pytest.raises(CorpusError, match="frobnicate"):
        corpus_from_json(obj)


def test_bad_polarity_rejected(corpus):
    obj = corpus_to_json(corpus)
    obj["statements"][4]["hypotheses"][0]["polarity"] = "=="
    with pytest.raises(CorpusError):
        corpus_from_json(obj)


def test_duplicate_statement_id_rejected(corpus):
    obj = corpus_to_json(corpus)
    obj["statements"].append(obj["statements"][0])
    with pytest.raises(CorpusError, match="duplicate"):
        corpus_from_json(obj)
