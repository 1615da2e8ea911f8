"""Finite algebras as operation tables: evaluation, satisfaction, isomorphism.

table[i][j] is i -> j.  Nothing about the type implies any axiom holds; a raw
table may violate everything.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .statements import AxiomSystem, Statement, clause_form
from .terms import Arrow, Const, Term, Unit, Var

__all__ = [
    "FiniteAlgebra",
    "Witness",
    "ModelFileError",
    "evaluate",
    "satisfies",
    "is_model",
    "relabel",
    "canonical_form",
    "canonicalize",
    "are_isomorphic",
    "model_to_json",
    "model_from_json",
    "load_model",
]


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    unit: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ValueError("size must be >= 1")
        if not 0 <= self.unit < n:
            raise ValueError("unit out of range")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table must be size x size")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise ValueError("table entry out of range")


@dataclass(frozen=True)
class Witness:
    statement_id: str
    assignment: dict[str, int]
    literal_values: tuple[tuple[int, int], ...]  # (lhs value, rhs value) per literal


class ModelFileError(ValueError):
    pass


def evaluate(model: FiniteAlgebra, t: Term, assignment: Mapping[str, int]) -> int:
    if isinstance(t, Unit):
        return model.unit
    if isinstance(t, (Var, Const)):
        if t.name not in assignment:
            raise KeyError(f"unbound name {t.name!r}")
        return assignment[t.name]
    assert isinstance(t, Arrow)
    return model.table[evaluate(model, t.left, assignment)][evaluate(model, t.right, assignment)]


def satisfies(model: FiniteAlgebra, st: Statement) -> tuple[bool, Optional[Witness]]:
    """Universal satisfaction of the statement's clause form.

    Assignments are enumerated in row-major order over the sorted variable
    names, so the witness of a failure is deterministic.
    """
    clause = clause_form(st)
    names = sorted(st.free_variables())
    for values in itertools.product(range(model.size), repeat=len(names)):
        assignment = dict(zip(names, values))
        evals = []
        ok = False
        for lit in clause.literals:
            lv = evaluate(model, lit.lhs, assignment)
            rv = evaluate(model, lit.rhs, assignment)
            evals.append((lv, rv))
            if (lv == rv) == lit.positive:
                ok = True
                break
        if not ok:
            return False, Witness(st.id, assignment, tuple(evals))
    return True, None


def is_model(
    model: FiniteAlgebra, system: AxiomSystem, statements: Mapping[str, Statement]
) -> tuple[bool, Optional[Witness]]:
    """Check every axiom in order; report the first failure."""
    for sid in system.members:
        ok, witness = satisfies(model, statements[sid])
        if not ok:
            return False, witness
    return True, None


def relabel(model: FiniteAlgebra, perm: Sequence[int]) -> FiniteAlgebra:
    """Apply the bijection perm (old index -> new index)."""
    n = model.size
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[perm[i]][perm[j]] = perm[model.table[i][j]]
    return FiniteAlgebra(n, perm[model.unit], tuple(tuple(row) for row in table))


def _canonical_tuple(model: FiniteAlgebra) -> tuple[int, ...]:
    """Lexicographically least row-major table over permutations sending the
    unit to index n-1."""
    n = model.size
    rest = [i for i in range(n) if i != model.unit]
    best: tuple[int, ...] | None = None
    for images in itertools.permutations(range(n - 1)):
        perm = [0] * n
        perm[model.unit] = n - 1
        for old, new in zip(rest, images):
            perm[old] = new
        flat = tuple(
            perm[model.table[i][j]]
            for i in sorted(range(n), key=perm.__getitem__)
            for j in sorted(range(n), key=perm.__getitem__)
        )
        if best is None or flat < best:
            best = flat
    assert best is not None
    return best


def canonical_form(model: FiniteAlgebra) -> bytes:
    """Relabeling-invariant key; equal iff the models are isomorphic."""
    return bytes([model.size]) + bytes(_canonical_tuple(model))


def canonicalize(model: FiniteAlgebra) -> FiniteAlgebra:
    n = model.size
    flat = _canonical_tuple(model)
    table = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
    return FiniteAlgebra(n, n - 1, table)


def are_isomorphic(m1: FiniteAlgebra, m2: FiniteAlgebra) -> bool:
    if m1.size != m2.size:
        return False
    return canonical_form(m1) == canonical_form(m2)


def model_to_json(model: FiniteAlgebra) -> dict:
    return {"size": model.size, "unit": model.unit, "table": [list(r) for r in model.table]}


def model_from_json(obj) -> FiniteAlgebra:
    if not isinstance(obj, dict):
        raise ModelFileError("model file must be a JSON object")
    try:
        return FiniteAlgebra(
            int(obj["size"]), int(obj["unit"]), tuple(tuple(int(v) for v in row) for row in obj["table"])
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFileError(f"bad model file: {e}") from e


def load_model(path: str) -> FiniteAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ModelFileError(f"cannot read model file: {e}") from e
    return model_from_json(obj)
