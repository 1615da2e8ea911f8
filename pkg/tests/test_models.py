import itertools

import pytest
from hypothesis import given
import hypothesis.strategies as st

from abeforge.models import (
    FiniteAlgebra,
    ModelFileError,
    are_isomorphic,
    canonical_form,
    canonicalize,
    evaluate,
    is_model,
    model_from_json,
    model_to_json,
    relabel,
    satisfies,
)
from abeforge.statements import clause_form
from abeforge.terms import parse_term

M2 = FiniteAlgebra(2, 1, ((1, 1), (0, 1)))
TRIVIAL = FiniteAlgebra(1, 0, ((0,),))


def random_algebra(draw_size=st.integers(2, 4)):
    @st.composite
    def build(draw):
        n = draw(draw_size)
        table = tuple(
            tuple(draw(st.integers(0, n - 1)) for _ in range(n)) for _ in range(n)
        )
        return FiniteAlgebra(n, draw(st.integers(0, n - 1)), table)

    return build()


def permutations_of(model):
    return st.permutations(list(range(model.size)))


class TestEvaluate:
    def test_unit_row(self):
        assert evaluate(M2, parse_term("1 -> x"), {"x": 0}) == 0

    def test_table_walk(self):
        # (0 -> 1) -> 0 = 1 -> 0 = 0 in M2
        assert evaluate(M2, parse_term("(x -> y) -> x"), {"x": 0, "y": 1}) == 0

    def test_unit_constant(self):
        assert evaluate(M2, parse_term("1"), {}) == M2.unit

    def test_unbound_name(self):
        with pytest.raises(KeyError):
            evaluate(M2, parse_term("x -> y"), {"x": 0})

    @given(random_algebra(), st.integers(0, 3), st.integers(0, 3))
    def test_substitution_compatibility(self, model, i, j):
        t = parse_term("(x -> y) -> (y -> x)")
        sigma = {"x": parse_term("y -> y"), "y": parse_term("x -> 1")}
        a = {"x": i % model.size, "y": j % model.size}
        a2 = {v: evaluate(model, img, a) for v, img in sigma.items()}
        from abeforge.terms import substitute

        assert evaluate(model, substitute(t, sigma), a) == evaluate(model, t, a2)


class TestSatisfies:
    def test_m2_satisfies_axioms(self, corpus):
        for sid in ("ax1", "ax2", "ax3", "ax4", "ax5", "ax6"):
            ok, _ = satisfies(M2, corpus.statement(sid))
            assert ok, sid

    def test_m2_satisfies_trans_vs_brute_force(self, corpus):
        # independent oracle: enumerate all assignments and check the
        # implication directly on the table
        trans = corpus.statement("trans")
        expected = all(
            not (M2.table[x][y] == M2.unit and M2.table[y][z] == M2.unit)
            or M2.table[x][z] == M2.unit
            for x, y, z in itertools.product(range(2), repeat=3)
        )
        assert satisfies(M2, trans)[0] == expected is True

    def test_violation_witness_is_first_in_order(self, corpus):
        bad = FiniteAlgebra(2, 1, ((0, 1), (0, 1)))  # 0 -> 0 = 0
        ok, witness = satisfies(bad, corpus.statement("ax3"))
        assert not ok
        assert witness.assignment == {"x": 0}

    def test_witness_replays(self, corpus):
        bad = FiniteAlgebra(3, 2, ((0, 2, 2), (2, 2, 2), (0, 1, 2)))
        for sid in ("ax3", "ax4", "trans"):
            ok, witness = satisfies(bad, corpus.statement(sid))
            if ok:
                continue
            clause = clause_form(corpus.statement(sid))
            for lit, (lv, rv) in zip(clause.literals, witness.literal_values):
                assert evaluate(bad, lit.lhs, witness.assignment) == lv
                assert evaluate(bad, lit.rhs, witness.assignment) == rv
                assert (lv == rv) != lit.positive

    @given(random_algebra(), st.permutations(list(range(4))))
    def test_relabeling_invariance(self, model, perm):
        from abeforge.corpus import load_corpus

        corpus = load_corpus()
        perm = [p % model.size for p in perm[: model.size]]
        if sorted(perm) != list(range(model.size)):
            return
        other = relabel(model, perm)
        for sid in ("ax3", "ax4", "ax5", "trans"):
            st_ = corpus.statement(sid)
            assert satisfies(model, st_)[0] == satisfies(other, st_)[0]


class TestIsModel:
    def test_m2_is_implicative_abe(self, corpus):
        ok, _ = is_model(M2, corpus.axiom_system("implicative-aBE"), corpus.statements)
        assert ok

    def test_broken_unit_row_fails_at_ax1(self, corpus):
        broken = FiniteAlgebra(2, 1, ((1, 1), (1, 1)))
        ok, witness = is_model(broken, corpus.axiom_system("aBE"), corpus.statements)
        assert not ok
        assert witness.statement_id == "ax1"

    def test_trivial_algebra(self, corpus):
        ok, _ = is_model(TRIVIAL, corpus.axiom_system("implicative-aBE"), corpus.statements)
        assert ok


class TestCanonical:
    def test_relabel_preserves_isomorphism(self):
        m = FiniteAlgebra(3, 2, ((2, 0, 2), (0, 2, 2), (0, 1, 2)))
        for perm in itertools.permutations(range(3)):
            assert are_isomorphic(m, relabel(m, list(perm)))

    def test_different_sizes_never_isomorphic(self):
        assert not are_isomorphic(M2, TRIVIAL)

    def test_canonical_unit_is_last_index(self):
        m = FiniteAlgebra(3, 0, ((0, 1, 2), (0, 0, 2), (0, 0, 0)))
        assert canonicalize(m).unit == 2

    def test_canonicalize_idempotent(self):
        m = FiniteAlgebra(3, 1, ((1, 1, 0), (0, 1, 0), (0, 1, 1)))
        c = canonicalize(m)
        assert canonicalize(c) == c
        assert canonical_form(c) == canonical_form(m)

    def test_canonical_separates_nonisomorphic(self):
        # same size, different number of idempotent-like cells
        a = FiniteAlgebra(2, 1, ((1, 1), (0, 1)))
        b = FiniteAlgebra(2, 1, ((0, 1), (0, 1)))
        assert canonical_form(a) != canonical_form(b)


class TestModelFiles:
    def test_round_trip(self):
        assert model_from_json(model_to_json(M2)) == M2

    def test_bad_file(self):
        with pytest.raises(ModelFileError):
            model_from_json({"size": 2, "unit": 5, "table": [[0, 0], [0, 0]]})
        with pytest.raises(ModelFileError):
            model_from_json([1, 2, 3])

    def test_invalid_table_shape(self):
        with pytest.raises(ModelFileError):
            model_from_json({"size": 2, "unit": 0, "table": [[0, 0]]})
