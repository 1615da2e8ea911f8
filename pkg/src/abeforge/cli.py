"""Command-line front end.

Exit codes: 0 ok, 2 proof failure, 3 input error, 4 counterexample found.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .corpus import Corpus, CorpusError, corpus_to_json, dumps_canonical, load_corpus
from .kernel import (
    ClauseInstantiate,
    ClauseLiteralRewrite,
    CloseConflict,
    CloseRefl,
    LiteralElim,
    ProofScript,
    Rewrite,
    Split,
    verify_corpus,
)
from .models import (
    FiniteAlgebra,
    ModelFileError,
    Witness,
    is_model,
    load_model,
    model_to_json,
    satisfies,
)
from .search import (
    BruteForceBoundError,
    EnumerationReport,
    UnknownSystemError,
    brute_force_models,
    core_name,
    enumerate_with_stats,
    find_counterexample,
    run_enumeration_report,
)
from .statements import Clause, Identity, QuasiIdentity
from .terms import format_term

EXIT_OK = 0
EXIT_PROOF_FAILURE = 2
EXIT_INPUT_ERROR = 3
EXIT_COUNTEREXAMPLE = 4

click.UsageError.exit_code = EXIT_INPUT_ERROR


def _threads(requested: int) -> int:
    cap = os.environ.get("ABEFORGE_THREADS")
    if cap:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            pass
    return max(1, requested)


def _emit_json(obj: dict):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _witness_json(w: Witness) -> dict:
    return {
        "statement": w.statement_id,
        "assignment": dict(sorted(w.assignment.items())),
        "literals": [list(pair) for pair in w.literal_values],
    }


def _witness_text(w: Witness) -> str:
    vals = ", ".join(f"{k}={v}" for k, v in sorted(w.assignment.items()))
    return f"witness {vals}"


def _load_corpus_or_die(path: str | None) -> Corpus:
    try:
        return load_corpus(path)
    except (CorpusError, OSError, json.JSONDecodeError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


def _system_or_die(corpus: Corpus, name: str):
    try:
        return corpus.axiom_system(name)
    except CorpusError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


@click.group()
def main():
    """Verification workbench for implicative aBE algebras."""


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


def _show_step(step, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(step, Rewrite):
        by = f"hyp {step.justification}" if isinstance(step.justification, int) else step.justification
        subst = ", ".join(f"{v} := {format_term(t)}" for v, t in step.substitution.items())
        at = step.position or "root"
        return [f"{pad}rewrite {by} [{subst}] at {at} {step.direction}"]
    if isinstance(step, ClauseInstantiate):
        subst = ", ".join(f"{v} := {format_term(t)}" for v, t in step.substitution.items())
        return [f"{pad}instantiate clause {step.clause} [{subst}]"]
    if isinstance(step, LiteralElim):
        lines = [f"{pad}eliminate literal {step.index} by:"]
        for s in step.chain:
            lines.extend(_show_step(s, indent + 1))
        return lines
    if isinstance(step, ClauseLiteralRewrite):
        subst = ", ".join(f"{v} := {format_term(t)}" for v, t in step.substitution.items())
        return [f"{pad}rewrite literal {step.index} with {step.justification} [{subst}] at {step.position} {step.direction}"]
    if isinstance(step, Split):
        subst = ", ".join(f"{v} := {format_term(t)}" for v, t in step.substitution.items())
        lines = [f"{pad}split on {step.clause} [{subst}]"]
        for i, branch in enumerate(step.branches):
            lines.append(f"{pad}  branch {i}:")
            for s in branch:
                lines.extend(_show_step(s, indent + 2))
        return lines
    if isinstance(step, CloseConflict):
        return [f"{pad}close: conflicts hypothesis {step.hypothesis}"]
    if isinstance(step, CloseRefl):
        return [f"{pad}close: reflexivity"]
    return [f"{pad}{step!r}"]


def _show_script(corpus: Corpus, script: ProofScript):
    target = corpus.statement(script.target)
    click.echo(f"script {script.id}  (target {script.target}: {target})")
    if script.comment:
        click.echo(f"  # {script.comment}")
    if script.constants:
        click.echo(f"  constants: {', '.join(script.constants)}")
    for i, h in enumerate(script.hypotheses):
        click.echo(f"  hypothesis {i}: {h}")
    if script.depends_on:
        click.echo(f"  depends on: {', '.join(script.depends_on)}")
    for line in [l for s in script.steps for l in _show_step(s, 1)]:
        click.echo(line)


@main.command()
@click.option("--script", "script_path", type=click.Path(), help="verify a corpus file instead of the built-in one")
@click.option("--show", "show_id", help="pretty-print one script or statement and exit")
@click.option("--emit", type=click.Choice(["text", "json"]), default="text")
def replay(script_path, show_id, emit):
    """Replay proof scripts and report per-statement status."""
    corpus = _load_corpus_or_die(script_path)
    if show_id:
        try:
            _show_script(corpus, corpus.script(show_id))
        except CorpusError:
            try:
                st = corpus.statement(show_id)
            except CorpusError as e:
                click.echo(f"error: {e}", err=True)
                sys.exit(EXIT_INPUT_ERROR)
            click.echo(f"{st.id}: {st}")
        sys.exit(EXIT_OK)
    report = verify_corpus(corpus)
    verified = sum(1 for _, status in report if status == "verified")
    if emit == "json":
        _emit_json(
            {
                "scripts": [{"id": sid, "status": status} for sid, status in report],
                "verified": verified,
                "total": len(report),
            }
        )
    else:
        for sid, status in report:
            click.echo(f"{sid}: {status}")
        click.echo(f"{verified}/{len(report)} verified")
    sys.exit(EXIT_OK if verified == len(report) else EXIT_PROOF_FAILURE)


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def _report_json(report: EnumerationReport, timings: bool) -> dict:
    return {
        "axioms": report.axioms,
        "sizes": [
            {
                "n": s.size,
                "count": s.count,
                "nodes": s.nodes,
                "millis": round(s.millis, 3) if timings else None,
                "exceeded": s.exceeded,
            }
            for s in report.sizes
        ],
        "properties": [
            {
                "id": p.property_id,
                "status": p.status,
                **({"model": model_to_json(p.model)} if p.model else {}),
                **({"witness": _witness_json(p.witness)} if p.witness else {}),
            }
            for p in report.properties
        ],
    }


def _report_text(report: EnumerationReport, timings: bool):
    click.echo(f"axiom system: {report.axioms}")
    click.echo(f"{'n':>3} {'count':>8} {'nodes':>12}" + (f" {'millis':>10}" if timings else ""))
    for s in report.sizes:
        count = "exceeded" if s.exceeded else str(s.count)
        line = f"{s.size:>3} {count:>8} {s.nodes:>12}"
        if timings:
            line += f" {s.millis:>10.1f}"
        click.echo(line)
    for p in report.properties:
        if p.status == "holds":
            click.echo(f"property {p.property_id}: holds in all enumerated models")
        else:
            click.echo(f"property {p.property_id}: counterexample {model_to_json(p.model)}; {_witness_text(p.witness)}")


@main.command("enumerate")
@click.option("--axioms", "axioms_name", required=True)
@click.option("--max-size", type=int, required=True)
@click.option("--property", "property_ids", multiple=True, help="also model-check these statement ids")
@click.option("--emit", type=click.Choice(["text", "json"]), default="text")
@click.option("--threads", type=int, default=1)
@click.option("--budget-nodes", type=int, default=0)
@click.option("--timings", is_flag=True, help="include wall-clock timings (not byte-stable)")
def enumerate_cmd(axioms_name, max_size, property_ids, emit, threads, budget_nodes, timings):
    """Isomorph-free enumeration of all models up to a size bound."""
    corpus = _load_corpus_or_die(None)
    system = _system_or_die(corpus, axioms_name)
    if max_size < 1:
        click.echo("error: --max-size must be >= 1", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    try:
        props = [corpus.statement(pid) for pid in property_ids]
    except CorpusError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    report = run_enumeration_report(
        system, max_size, corpus.statements, props, budget_nodes, _threads(threads)
    )
    if emit == "json":
        _emit_json(_report_json(report, timings))
    else:
        _report_text(report, timings)
    sys.exit(EXIT_OK)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--axioms", "axioms_name", required=True)
@click.option("--property", "property_id", default=None)
@click.option("--emit", type=click.Choice(["text", "json"]), default="text")
def check(model_path, axioms_name, property_id, emit):
    """Check a model file against an axiom system and optional property."""
    corpus = _load_corpus_or_die(None)
    system = _system_or_die(corpus, axioms_name)
    try:
        model = load_model(model_path)
    except ModelFileError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    ok, witness = is_model(model, system, corpus.statements)
    out = {"model": "yes" if ok else "no", "axioms": axioms_name}
    violated = not ok
    if not ok:
        out["failed_axiom"] = witness.statement_id
        out["witness"] = _witness_json(witness)
    prop_ok = True
    if ok and property_id is not None:
        try:
            prop = corpus.statement(property_id)
        except CorpusError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        prop_ok, pw = satisfies(model, prop)
        out["property"] = {"id": property_id, "status": "holds" if prop_ok else "counterexample"}
        if not prop_ok:
            out["property"]["witness"] = _witness_json(pw)
            violated = True
    if emit == "json":
        _emit_json(out)
    else:
        if ok:
            click.echo(f"model: yes ({axioms_name})")
        else:
            click.echo(f"model: no; {witness.statement_id} violated, {_witness_text(witness)}")
        if ok and property_id is not None:
            if prop_ok:
                click.echo(f"{property_id}: holds")
            else:
                click.echo(f"{property_id}: violated, {_witness_text(pw)}")
    sys.exit(EXIT_COUNTEREXAMPLE if violated else EXIT_OK)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@main.command()
@click.option("--axioms", "axioms_name", required=True)
@click.option("--violates", "property_id", required=True)
@click.option("--max-size", type=int, required=True)
@click.option("--emit", type=click.Choice(["text", "json"]), default="text")
@click.option("--threads", type=int, default=1)
@click.option("--budget-nodes", type=int, default=0)
def search(axioms_name, property_id, max_size, emit, threads, budget_nodes):
    """Look for a model of the axioms that violates a property."""
    corpus = _load_corpus_or_die(None)
    system = _system_or_die(corpus, axioms_name)
    try:
        prop = corpus.statement(property_id)
    except CorpusError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    if max_size < 1:
        click.echo("error: --max-size must be >= 1", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    result = find_counterexample(system, prop, max_size, budget_nodes, _threads(threads))
    if result is None:
        if emit == "json":
            _emit_json({"axioms": axioms_name, "violates": property_id, "max_size": max_size, "status": "none"})
        else:
            click.echo(f"none up to {max_size}")
        sys.exit(EXIT_OK)
    model, witness = result
    if emit == "json":
        _emit_json(
            {
                "axioms": axioms_name,
                "violates": property_id,
                "max_size": max_size,
                "status": "counterexample",
                "model": model_to_json(model),
                "witness": _witness_json(witness),
            }
        )
    else:
        click.echo(f"counterexample of size {model.size}: {model_to_json(model)}")
        click.echo(_witness_text(witness))
    sys.exit(EXIT_COUNTEREXAMPLE)


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


@main.command()
@click.option("--axioms", "axioms_name", required=True)
@click.option("--size", type=int, required=True)
@click.option("--emit", type=click.Choice(["text", "json"]), default="text")
def oracle(axioms_name, size, emit):
    """Brute-force labeled and iso-class counts (small sizes only)."""
    corpus = _load_corpus_or_die(None)
    system = _system_or_die(corpus, axioms_name)
    try:
        labeled, classes = brute_force_models(system, size, corpus.statements)
    except (BruteForceBoundError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    if emit == "json":
        _emit_json({"axioms": axioms_name, "size": size, "labeled": labeled, "classes": classes})
    else:
        click.echo(f"labeled {labeled}, classes {classes}")
    sys.exit(EXIT_OK)


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


@main.group("corpus")
def corpus_group():
    """Inspect or export the built-in corpus."""


@corpus_group.command("export")
@click.option("--out", "out_path", required=True, type=click.Path())
def corpus_export(out_path):
    """Write the canonical corpus file."""
    corpus = _load_corpus_or_die(None)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(corpus_to_json(corpus)))
    click.echo(f"wrote {out_path}")
    sys.exit(EXIT_OK)


@corpus_group.command("show")
@click.argument("sid")
def corpus_show(sid):
    """Print a statement or script in human-readable form."""
    corpus = _load_corpus_or_die(None)
    shown = False
    try:
        st = corpus.statement(sid)
        kind = {Identity: "identity", Clause: "clause", QuasiIdentity: "quasi-identity"}[type(st)]
        click.echo(f"{st.id} ({kind}): {st}")
        shown = True
    except CorpusError:
        pass
    try:
        _show_script(corpus, corpus.script(sid))
        shown = True
    except CorpusError:
        pass
    if not shown:
        click.echo(f"error: unknown id {sid!r}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
