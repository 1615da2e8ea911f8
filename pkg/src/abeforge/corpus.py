"""The built-in statement registry and proof scripts, plus the file format.

Statement ids: ax1..ax6 (the defining axioms), trans (the transitivity
quasi-identity), lem8a/lem8b and lem10..lem18 (the lemma chain), plus the
model-checkable commutativity identity.  Scripts: one per lemma, the
antisymmetry clause-form note (script id "ax5-clause"), and the concluding
refutation (script id "thm", target "trans") -- 13 in total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .kernel import (
    L2R,
    R2L,
    ClauseInstantiate,
    ClauseLiteralRewrite,
    CloseConflict,
    CloseRefl,
    Environment,
    LiteralElim,
    ProofScript,
    Rewrite,
    Split,
)
from .statements import AxiomSystem, Clause, Identity, Literal, QuasiIdentity, Statement
from .terms import Term, TermSyntaxError, format_term, parse_term

__all__ = ["Corpus", "CorpusError", "load_corpus", "corpus_to_json", "corpus_from_json", "dumps_canonical"]

AXIOM_IDS = ("ax1", "ax2", "ax3", "ax4", "ax5", "ax6")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Corpus:
    statements: Mapping[str, Statement]
    axiom_systems: Mapping[str, AxiomSystem]
    properties: tuple[str, ...]
    scripts: tuple[ProofScript, ...]

    def statement(self, sid: str) -> Statement:
        if sid not in self.statements:
            raise CorpusError(f"unknown statement id {sid!r}")
        return self.statements[sid]

    def axiom_system(self, name: str) -> AxiomSystem:
        if name not in self.axiom_systems:
            raise CorpusError(f"unknown axiom system {name!r}")
        return self.axiom_systems[name]

    def script(self, sid: str) -> ProofScript:
        for s in self.scripts:
            if s.id == sid:
                return s
        raise CorpusError(f"unknown script id {sid!r}")

    def environment(self) -> Environment:
        return Environment(self.statements, axioms=AXIOM_IDS)


def _lit(lhs: str, rhs: str, positive: bool = True, consts=()) -> Literal:
    return Literal(parse_term(lhs, consts), parse_term(rhs, consts), positive)


def _ident(sid: str, lhs: str, rhs: str) -> Identity:
    return Identity(sid, parse_term(lhs), parse_term(rhs))


def _subst(consts=(), **kw: str) -> dict[str, Term]:
    return {v: parse_term(t, consts) for v, t in kw.items()}


def _build_statements() -> dict[str, Statement]:
    sts: list[Statement] = [
        _ident("ax1", "1 -> x", "x"),
        _ident("ax2", "x -> 1", "1"),
        _ident("ax3", "x -> x", "1"),
        _ident("ax4", "x -> (y -> z)", "y -> (x -> z)"),
        # Antisymmetry, kept in clause form; the quasi reading is display metadata.
        QuasiIdentity(
            "ax5",
            hypotheses=(_lit("x -> y", "1"), _lit("y -> x", "1")),
            conclusion=_lit("x", "y"),
        ),
        _ident("ax6", "(x -> y) -> x", "x"),
        QuasiIdentity(
            "trans",
            hypotheses=(_lit("x -> y", "1"), _lit("y -> z", "1")),
            conclusion=_lit("x -> z", "1"),
        ),
        Clause("lem8a", (_lit("x", "y -> x"), _lit("(y -> x) -> x", "1", False))),
        Clause("lem8b", (_lit("x", "(x -> y) -> y"), _lit("((x -> y) -> y) -> x", "1", False))),
        _ident("lem10", "x -> y", "(z -> x) -> (x -> y)"),
        _ident("lem11", "((y -> x) -> z) -> t", "((y -> x) -> z) -> ((x -> z) -> t)"),
        _ident("lem12", "(((x -> y) -> z) -> y) -> (x -> y)", "1"),
        _ident("lem13", "((((x -> y) -> y) -> x) -> y) -> y", "1"),
        _ident("lem14", "y", "(((x -> y) -> y) -> x) -> y"),
        _ident("lem15", "x -> y", "x -> (((x -> y) -> z) -> y)"),
        _ident("lem16", "((x -> y) -> y) -> x", "((x -> y) -> y) -> (y -> x)"),
        _ident("lem17", "y -> x", "((x -> y) -> y) -> x"),
        Clause("lem18", (_lit("(x -> y) -> y", "x"), _lit("y -> x", "1", False))),
        # Corollary-level claim; model-checked only, no proof script.
        _ident("commutativity", "(x -> y) -> y", "(y -> x) -> x"),
    ]
    return {st.id: st for st in sts}


def _build_scripts() -> tuple[ProofScript, ...]:
    abc = ("a", "b", "c")
    return (
        # Antisymmetry in disjunctive form, made explicit once so the lemma
        # scripts below can split and instantiate it.
        ProofScript(
            id="ax5-clause",
            target="ax5",
            steps=(ClauseInstantiate("ax5", {}),),
            depends_on=("ax5",),
            comment="x = y or x -> y != 1 or y -> x != 1",
        ),
        ProofScript(
            id="lem8a",
            target="lem8a",
            steps=(
                ClauseInstantiate("ax5", _subst(x="x", y="y -> x")),
                LiteralElim(
                    1,
                    (
                        Rewrite("ax4", _subst(x="x", y="y", z="x"), "", L2R),
                        Rewrite("ax3", _subst(x="x"), "R", L2R),
                        Rewrite("ax2", _subst(x="y"), "", L2R),
                    ),
                ),
            ),
            depends_on=("ax2", "ax3", "ax4", "ax5"),
        ),
        ProofScript(
            id="lem8b",
            target="lem8b",
            steps=(
                ClauseInstantiate("ax5", _subst(x="x", y="(x -> y) -> y")),
                LiteralElim(
                    1,
                    (
                        Rewrite("ax4", _subst(x="x", y="x -> y", z="y"), "", L2R),
                        Rewrite("ax3", _subst(x="x -> y"), "", L2R),
                    ),
                ),
            ),
            depends_on=("ax3", "ax4", "ax5"),
        ),
        ProofScript(
            id="lem10",
            target="lem10",
            steps=(
                Rewrite("ax6", _subst(x="x -> y", y="z -> x"), "", R2L),
                Rewrite("ax4", _subst(x="x -> y", y="z", z="x"), "L", L2R),
                Rewrite("ax6", _subst(x="x", y="y"), "LR", L2R),
            ),
            depends_on=("ax4", "ax6"),
        ),
        ProofScript(
            id="lem11",
            target="lem11",
            steps=(
                Rewrite("lem10", _subst(x="(y -> x) -> z", y="t", z="x"), "", L2R),
                Rewrite("ax4", _subst(x="x -> ((y -> x) -> z)", y="(y -> x) -> z", z="t"), "", L2R),
                Rewrite("ax4", _subst(x="x", y="y -> x", z="z"), "RL", L2R),
                Rewrite("lem10", _subst(x="x", y="z", z="y"), "RL", R2L),
            ),
            depends_on=("ax4", "lem10"),
        ),
        ProofScript(
            id="lem12",
            target="lem12",
            steps=(
                Rewrite("ax6", _subst(x="x -> y", y="z"), "R", R2L),
                Rewrite("ax4", _subst(x="(x -> y) -> z", y="x", z="y"), "R", L2R),
                Rewrite(
                    "ax4",
                    _subst(x="((x -> y) -> z) -> y", y="x", z="((x -> y) -> z) -> y"),
                    "",
                    L2R,
                ),
                Rewrite("ax3", _subst(x="((x -> y) -> z) -> y"), "R", L2R),
                Rewrite("ax2", _subst(x="x"), "", L2R),
            ),
            depends_on=("ax2", "ax3", "ax4", "ax6"),
        ),
        ProofScript(
            id="lem13",
            target="lem13",
            steps=(
                Rewrite("lem11", _subst(y="(x -> y) -> y", x="x", z="y", t="y"), "", L2R),
                Rewrite("lem12", _subst(x="x -> y", y="y", z="x"), "", L2R),
            ),
            depends_on=("lem11", "lem12"),
        ),
        ProofScript(
            id="lem14",
            target="lem14",
            steps=(
                ClauseInstantiate("lem8a", _subst(x="y", y="((x -> y) -> y) -> x")),
                LiteralElim(1, (Rewrite("lem13", _subst(x="x", y="y"), "", L2R),)),
            ),
            depends_on=("lem8a", "lem13"),
        ),
        ProofScript(
            id="lem15",
            target="lem15",
            steps=(
                Rewrite("ax6", _subst(x="x -> y", y="z"), "", R2L),
                Rewrite("ax4", _subst(x="(x -> y) -> z", y="x", z="y"), "", L2R),
            ),
            depends_on=("ax4", "ax6"),
        ),
        ProofScript(
            id="lem16",
            target="lem16",
            # Reconstructed intermediate step: expand with lem15 at z := y,
            # giving ((x->y)->y) -> (((((x->y)->y)->x)->y)->x), then collapse
            # the inner (((x->y)->y)->x)->y to y with lem14.
            steps=(
                Rewrite("lem15", _subst(x="(x -> y) -> y", y="x", z="y"), "", L2R),
                Rewrite("lem14", _subst(x="x", y="y"), "RL", R2L),
            ),
            depends_on=("lem14", "lem15"),
            comment="intermediate instance reconstructed: lem15 with z := y, then lem14 at RL",
        ),
        ProofScript(
            id="lem17",
            target="lem17",
            steps=(
                Rewrite("lem10", _subst(x="y", y="x", z="x -> y"), "", L2R),
                Rewrite("lem16", _subst(x="x", y="y"), "", R2L),
            ),
            depends_on=("lem10", "lem16"),
        ),
        ProofScript(
            id="lem18",
            target="lem18",
            steps=(
                ClauseInstantiate("lem8b", _subst(x="x", y="y")),
                ClauseLiteralRewrite(1, "lem17", _subst(x="x", y="y"), "L", R2L),
            ),
            depends_on=("lem8b", "lem17"),
        ),
        ProofScript(
            id="thm",
            target="trans",
            constants=abc,
            hypotheses=(
                _lit("a -> b", "1", True, abc),
                _lit("b -> c", "1", True, abc),
                _lit("a -> c", "1", False, abc),
            ),
            steps=(
                Split(
                    "lem18",
                    _subst(abc, x="c", y="b"),
                    branches=(
                        (
                            # (c -> b) -> b = c assumed; derive a -> c = 1
                            Rewrite(3, {}, "R", R2L),
                            Rewrite("ax4", _subst(abc, x="a", y="c -> b", z="b"), "", L2R),
                            Rewrite(0, {}, "R", L2R),
                            Rewrite("ax2", _subst(abc, x="c -> b"), "", L2R),
                            CloseConflict(2),
                        ),
                        (CloseConflict(1),),  # b -> c != 1 against hypothesis 1
                    ),
                ),
            ),
            depends_on=("lem18", "ax2", "ax4"),
        ),
    )


def load_corpus(path: str | None = None) -> Corpus:
    """The built-in corpus, or one loaded from a file in the exchange format."""
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            return corpus_from_json(json.load(fh))
    statements = _build_statements()
    systems = {
        "aBE": AxiomSystem("aBE", ("ax1", "ax2", "ax3", "ax4", "ax5")),
        "implicative-aBE": AxiomSystem("implicative-aBE", AXIOM_IDS),
    }
    corpus = Corpus(statements, systems, ("trans", "commutativity"), _build_scripts())
    _validate(corpus)
    return corpus


def _validate(corpus: Corpus):
    for name, system in corpus.axiom_systems.items():
        for sid in system.members:
            if sid not in corpus.statements:
                raise CorpusError(f"axiom system {name!r} references unknown id {sid!r}")
    for prop in corpus.properties:
        if prop not in corpus.statements:
            raise CorpusError(f"property references unknown id {prop!r}")
    seen: set[str] = set(AXIOM_IDS)
    for script in corpus.scripts:
        if script.target not in corpus.statements:
            raise CorpusError(f"script {script.id!r} targets unknown id {script.target!r}")
        for dep in script.depends_on:
            if dep not in corpus.statements:
                raise CorpusError(f"script {script.id!r} depends on unknown id {dep!r}")
            if dep not in seen:
                raise CorpusError(f"script {script.id!r} depends on {dep!r} before it is proved")
        seen.add(script.target)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def _lit_to_json(lit: Literal) -> dict:
    return {
        "lhs": format_term(lit.lhs),
        "polarity": "=" if lit.positive else "!=",
        "rhs": format_term(lit.rhs),
    }


def _lit_from_json(obj: dict, consts=()) -> Literal:
    if obj.get("polarity") not in ("=", "!="):
        raise CorpusError(f"bad literal polarity {obj.get('polarity')!r}")
    return _lit(obj["lhs"], obj["rhs"], obj["polarity"] == "=", consts)


def _statement_to_json(st: Statement) -> dict:
    if isinstance(st, Identity):
        return {"id": st.id, "kind": "identity", "lhs": format_term(st.lhs), "rhs": format_term(st.rhs)}
    if isinstance(st, Clause):
        return {"id": st.id, "kind": "clause", "literals": [_lit_to_json(l) for l in st.literals]}
    assert isinstance(st, QuasiIdentity)
    return {
        "id": st.id,
        "kind": "quasi",
        "hypotheses": [_lit_to_json(h) for h in st.hypotheses],
        "conclusion": _lit_to_json(st.conclusion),
    }


def _statement_from_json(obj: dict) -> Statement:
    try:
        kind = obj["kind"]
        if kind == "identity":
            return Identity(obj["id"], parse_term(obj["lhs"]), parse_term(obj["rhs"]))
        if kind == "clause":
            return Clause(obj["id"], tuple(_lit_from_json(l) for l in obj["literals"]))
        if kind == "quasi":
            return QuasiIdentity(
                obj["id"],
                tuple(_lit_from_json(h) for h in obj["hypotheses"]),
                _lit_from_json(obj["conclusion"]),
            )
    except (KeyError, TypeError, TermSyntaxError, ValueError) as e:
        raise CorpusError(f"bad statement object: {e}") from e
    raise CorpusError(f"unknown statement kind {obj.get('kind')!r}")


def _subst_to_json(s: Mapping[str, Term]) -> dict:
    return {v: format_term(t) for v, t in s.items()}


def _step_to_json(step) -> dict:
    if isinstance(step, Rewrite):
        return {
            "rule": "rewrite",
            "by": step.justification,
            "subst": _subst_to_json(step.substitution),
            "at": step.position,
            "dir": step.direction,
        }
    if isinstance(step, ClauseInstantiate):
        return {"rule": "clause-instantiate", "clause": step.clause, "subst": _subst_to_json(step.substitution)}
    if isinstance(step, LiteralElim):
        return {"rule": "literal-elim", "literal": step.index, "chain": [_step_to_json(s) for s in step.chain]}
    if isinstance(step, ClauseLiteralRewrite):
        return {
            "rule": "clause-literal-rewrite",
            "literal": step.index,
            "by": step.justification,
            "subst": _subst_to_json(step.substitution),
            "at": step.position,
            "dir": step.direction,
        }
    if isinstance(step, Split):
        return {
            "rule": "split",
            "clause": step.clause,
            "subst": _subst_to_json(step.substitution),
            "branches": [[_step_to_json(s) for s in br] for br in step.branches],
        }
    if isinstance(step, CloseConflict):
        return {"rule": "close-conflict", "hypothesis": step.hypothesis}
    if isinstance(step, CloseRefl):
        return {"rule": "close-refl"}
    raise TypeError(f"not a step: {step!r}")


def _step_from_json(obj: dict, consts=()):
    try:
        rule = obj["rule"]
        if rule == "rewrite":
            by = obj["by"]
            if not isinstance(by, (str, int)):
                raise CorpusError(f"bad justification {by!r}")
            return Rewrite(by, _subst(consts, **obj.get("subst", {})), obj.get("at", ""), obj.get("dir", L2R))
        if rule == "clause-instantiate":
            return ClauseInstantiate(obj["clause"], _subst(consts, **obj.get("subst", {})))
        if rule == "literal-elim":
            return LiteralElim(obj["literal"], tuple(_step_from_json(s, consts) for s in obj["chain"]))
        if rule == "clause-literal-rewrite":
            return ClauseLiteralRewrite(
                obj["literal"],
                obj["by"],
                _subst(consts, **obj.get("subst", {})),
                obj["at"],
                obj.get("dir", L2R),
            )
        if rule == "split":
            return Split(
                obj["clause"],
                _subst(consts, **obj.get("subst", {})),
                tuple(tuple(_step_from_json(s, consts) for s in br) for br in obj["branches"]),
            )
        if rule == "close-conflict":
            return CloseConflict(obj["hypothesis"])
        if rule == "close-refl":
            return CloseRefl()
    except (KeyError, TypeError, TermSyntaxError) as e:
        raise CorpusError(f"bad step object: {e}") from e
    raise CorpusError(f"unknown step rule {obj.get('rule')!r}")


def _script_to_json(script: ProofScript) -> dict:
    out = {
        "id": script.id,
        "target": script.target,
        "constants": list(script.constants),
        "hypotheses": [_lit_to_json(h) for h in script.hypotheses],
        "depends_on": list(script.depends_on),
        "steps": [_step_to_json(s) for s in script.steps],
    }
    if script.comment:
        out["comment"] = script.comment
    return out


def _script_from_json(obj: dict) -> ProofScript:
    try:
        consts = tuple(obj.get("constants", []))
        return ProofScript(
            id=obj.get("id", obj["target"]),
            target=obj["target"],
            constants=consts,
            hypotheses=tuple(_lit_from_json(h, consts) for h in obj.get("hypotheses", [])),
            steps=tuple(_step_from_json(s, consts) for s in obj["steps"]),
            depends_on=tuple(obj.get("depends_on", [])),
            comment=obj.get("comment", ""),
        )
    except (KeyError, TypeError, TermSyntaxError) as e:
        raise CorpusError(f"bad script object: {e}") from e


def corpus_to_json(corpus: Corpus) -> dict:
    return {
        "statements": [_statement_to_json(st) for st in corpus.statements.values()],
        "axiom_systems": {name: list(s.members) for name, s in corpus.axiom_systems.items()},
        "properties": list(corpus.properties),
        "scripts": [_script_to_json(s) for s in corpus.scripts],
    }


def corpus_from_json(obj: dict) -> Corpus:
    if not isinstance(obj, dict):
        raise CorpusError("corpus file must be a JSON object")
    statements: dict[str, Statement] = {}
    for sobj in obj.get("statements", []):
        st = _statement_from_json(sobj)
        if st.id in statements:
            raise CorpusError(f"duplicate statement id {st.id!r}")
        statements[st.id] = st
    systems = {
        name: AxiomSystem(name, tuple(members))
        for name, members in obj.get("axiom_systems", {}).items()
    }
    corpus = Corpus(
        statements,
        systems,
        tuple(obj.get("properties", [])),
        tuple(_script_from_json(s) for s in obj.get("scripts", [])),
    )
    _validate(corpus)
    return corpus


def dumps_canonical(obj: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
