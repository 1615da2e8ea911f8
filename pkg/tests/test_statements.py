from hypothesis import given
import hypothesis.strategies as st
import pytest

from abeforge.models import FiniteAlgebra, satisfies
from abeforge.statements import (
    Clause,
    Identity,
    Literal,
    QuasiIdentity,
    clause_form,
    clauses_equal,
    instantiate,
    literal_eq,
)
from abeforge.terms import parse_term

from conftest import terms


def lit(lhs, rhs, positive=True):
    return Literal(parse_term(lhs), parse_term(rhs), positive)


def test_identity_clause_form_is_single_literal():
    st_ = Identity("i", parse_term("x -> y"), parse_term("y"))
    cf = clause_form(st_)
    assert cf.literals == (Literal(parse_term("x -> y"), parse_term("y")),)


def test_quasi_clause_form_negates_hypotheses(corpus):
    cf = clause_form(corpus.statement("ax5"))
    assert clauses_equal(
        cf.literals,
        (lit("x", "y"), lit("x -> y", "1", False), lit("y -> x", "1", False)),
    )


def test_trans_clause_form(corpus):
    cf = clause_form(corpus.statement("trans"))
    assert clauses_equal(
        cf.literals,
        (lit("x -> z", "1"), lit("x -> y", "1", False), lit("y -> z", "1", False)),
    )


def test_clause_form_stable(corpus):
    for sid in ("ax1", "ax5", "trans", "lem8a", "lem18"):
        cf = clause_form(corpus.statement(sid))
        assert clause_form(cf) == cf


def test_instantiate_identity(corpus):
    got = instantiate(corpus.statement("ax6"), {"x": parse_term("x -> y"), "y": parse_term("z -> x")})
    assert isinstance(got, Identity)
    assert got.lhs == parse_term("((x -> y) -> (z -> x)) -> (x -> y)")
    assert got.rhs == parse_term("x -> y")


def test_instantiate_ax5_clause(corpus):
    got = clause_form(instantiate(corpus.statement("ax5"), {"y": parse_term("y -> x")}))
    assert clauses_equal(
        got.literals,
        (lit("x", "y -> x"), lit("x -> (y -> x)", "1", False), lit("(y -> x) -> x", "1", False)),
    )


def test_instantiate_identity_substitution_is_noop(corpus):
    for sid in ("ax4", "lem8a", "trans"):
        st_ = corpus.statement(sid)
        got = instantiate(st_, {}, new_id=sid)
        assert got == st_


def test_instantiate_commutes_with_clause_form(corpus):
    s = {"x": parse_term("x -> y"), "y": parse_term("1")}
    for sid in ("ax5", "trans", "lem18", "ax4"):
        st_ = corpus.statement(sid)
        a = clause_form(instantiate(st_, s, new_id="d"))
        b = instantiate(clause_form(st_), s, new_id="d")
        assert a == b


def test_quasi_parts_must_be_equations():
    with pytest.raises(ValueError):
        QuasiIdentity("bad", (lit("x", "1", False),), lit("x", "y"))


def test_empty_clause_rejected():
    with pytest.raises(ValueError):
        Clause("empty", ())


def test_literal_eq_symmetry():
    assert literal_eq(lit("x", "y"), lit("y", "x"))
    assert not literal_eq(lit("x", "y"), lit("y", "x", False))


M2 = FiniteAlgebra(2, 1, ((1, 1), (0, 1)))


@pytest.mark.parametrize("sid", ["ax1", "ax2", "ax3", "ax4", "ax5", "ax6", "trans", "lem18"])
def test_statement_and_clause_form_agree_on_models(corpus, sid):
    st_ = corpus.statement(sid)
    assert satisfies(M2, st_)[0] == satisfies(M2, clause_form(st_))[0]


def test_clause_form_agreement_on_falsifying_model(corpus):
    bad = FiniteAlgebra(2, 1, ((0, 1), (0, 1)))  # 0 -> 0 = 0 breaks ax3
    st_ = corpus.statement("ax3")
    assert satisfies(bad, st_)[0] is False
    assert satisfies(bad, clause_form(st_))[0] is False
