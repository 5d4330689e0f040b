"""Binary-fragment closure and the completeness decision.

The binary members of the clone generated by an operator set are found
breadth-first: start from the two binary projections, and at each depth apply
every operator to every tuple of already reached tables that uses at least one
table found at the previous depth. A set is complete (it represents level
reversal and level max) exactly when this closure reaches the binary NOR or
NAND table; NOR/NAND of any arity collapse to arity 2 by identifying
variables, so the binary fragment is enough.

Canonical visiting order within a depth: operators by name; for an operator
of arity r, tuples are grouped by the position of their first argument found
at the previous depth and are lexicographic (by discovery index) within a
group. The first tuple producing a table supplies its witness term, so
witnesses have minimal depth and are reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import (
    CompletenessError,
    InconclusiveSubsetError,
    NotCompleteError,
    PreconditionFailedError,
    WitnessInvalidError,
)
from .tables import (
    Apply,
    Domain,
    OperatorSet,
    Term,
    TruthTable,
    Var,
    all_tuples,
    compose,
    eval_term,
    max_table,
    nand_table,
    neg_table,
    nor_table,
    substitute,
    term_table,
)

NOR = "NOR"
NAND = "NAND"
UNKNOWN = "Unknown"

# elements per vectorised block; bounds peak memory of one block to a few tens of MB
_BLOCK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class Budget:
    max_tables: int = 200_000
    max_iterations: int = 64

    def __post_init__(self):
        if self.max_tables < 1 or self.max_iterations < 1:
            raise CompletenessError("budget limits must be positive")

    def as_dict(self) -> dict:
        return {"max_tables": self.max_tables, "max_iterations": self.max_iterations}


@dataclass(frozen=True)
class ClosureStats:
    iterations: int
    tables_generated: int
    budget_used: int


@dataclass(frozen=True, eq=False)
class ClosureResult:
    domain: Domain
    reached: tuple[TruthTable, ...]
    witness: dict[TruthTable, Term]
    exhausted: bool
    stats: ClosureStats

    def __contains__(self, table: TruthTable) -> bool:
        return table in self.witness

    def __len__(self) -> int:
        return len(self.reached)


class Status(str, enum.Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class Verdict:
    status: Status
    sheffer_witness: tuple[str, Term] | None
    neg_witness: Term | None
    or_witness: Term | None
    certificate: str | None
    budget: Budget
    closure: ClosureResult

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE


@dataclass(frozen=True, eq=False)
class SemiExpressive:
    found: str | None
    witness: Term | None
    closure: ClosureResult


class _Search:
    """Incremental breadth-first closure; each :meth:`step` completes one depth."""

    def __init__(self, opset: OperatorSet, budget: Budget):
        self.domain = opset.domain
        self.m = m = opset.domain.m
        self.width = m * m
        self.space = m**self.width
        self.budget = budget
        self.ops = [(name, opset[name]) for name in opset.names()]
        self.op_values = {name: np.asarray(t.values, dtype=np.int64) for name, t in self.ops}

        first = np.repeat(np.arange(m), m)
        second = np.tile(np.arange(m), m)
        self.matrix = np.stack([first, second]).astype(np.int64)
        self.terms: list[Term] = [Var(0), Var(1)]
        self.index = {self._key(row): i for i, row in enumerate(self.matrix)}
        self.frontier = 0
        self.depth = 0
        self.generated = 0
        self.exhausted = False
        self.truncated = False

    @staticmethod
    def _key(row) -> bytes:
        return np.asarray(row, dtype=np.int64).tobytes()

    def key_of(self, table: TruthTable) -> bytes:
        return self._key(table.values)

    @property
    def finished(self) -> bool:
        return self.exhausted or self.truncated

    def _blocks(self, arity: int, old: int, size: int) -> Iterator[list[tuple[int, int]]]:
        for p in range(arity):
            ranges = [(0, old)] * p + [(old, size)] + [(0, size)] * (arity - 1 - p)
            if all(hi > lo for lo, hi in ranges):
                yield ranges

    def step(self) -> None:
        if self.finished:
            return
        if self.depth >= self.budget.max_iterations:
            self.truncated = True
            return
        m = self.m
        old, size = self.frontier, len(self.terms)
        new_rows, new_terms = [], []
        for name, table in self.ops:
            values = self.op_values[name]
            for ranges in self._blocks(table.arity, old, size):
                shape = tuple(hi - lo for lo, hi in ranges)
                total = int(np.prod(shape, dtype=object))
                chunk = max(1, _BLOCK_ELEMENTS // self.width)
                for start in range(0, total, chunk):
                    flat = np.arange(start, min(total, start + chunk), dtype=np.int64)
                    picks = [ix + lo for ix, (lo, _) in zip(np.unravel_index(flat, shape), ranges)]
                    idx = np.zeros((len(flat), self.width), dtype=np.int64)
                    for pick in picks:
                        idx = idx * m + self.matrix[pick]
                    out = values[idx]
                    self.generated += len(flat)
                    rows, first = np.unique(out, axis=0, return_index=True)
                    for k in np.argsort(first, kind="stable"):
                        key = self._key(rows[k])
                        if key in self.index:
                            continue
                        if len(self.index) >= self.budget.max_tables:
                            self._extend(new_rows, new_terms)
                            self.truncated = True
                            return
                        j = first[k]
                        self.index[key] = size + len(new_rows)
                        new_rows.append(rows[k])
                        new_terms.append(Apply(name, tuple(self.terms[int(p[j])] for p in picks)))
        self.depth += 1
        if not new_rows:
            self.exhausted = True
            return
        self._extend(new_rows, new_terms)
        self.frontier = size
        if len(self.terms) == self.space:
            # every binary table reached: trivially a fixpoint
            self.exhausted = True

    def _extend(self, rows, terms) -> None:
        if rows:
            self.matrix = np.concatenate([self.matrix, np.asarray(rows, dtype=np.int64)])
            self.terms.extend(terms)

    def term_for(self, table: TruthTable) -> Term | None:
        i = self.index.get(self.key_of(table))
        return None if i is None else self.terms[i]

    def result(self) -> ClosureResult:
        reached = tuple(
            TruthTable(self.domain, 2, tuple(int(v) for v in row)) for row in self.matrix
        )
        return ClosureResult(
            domain=self.domain,
            reached=reached,
            witness=dict(zip(reached, self.terms)),
            exhausted=self.exhausted,
            stats=ClosureStats(self.depth, self.generated, len(self.terms)),
        )


def binary_closure(opset: OperatorSet, budget: Budget = Budget()) -> ClosureResult:
    search = _Search(opset, budget)
    while not search.finished:
        search.step()
    return search.result()


def semi_expressive(opset: OperatorSet, budget: Budget = Budget()) -> SemiExpressive:
    """Search the closure depth by depth for binary NOR, then NAND.

    Stops at the first depth reaching either; NOR wins when both appear at the
    same depth.
    """
    search = _Search(opset, budget)
    targets = [(NOR, nor_table(opset.domain)), (NAND, nand_table(opset.domain))]
    while True:
        for kind, table in targets:
            term = search.term_for(table)
            if term is not None:
                return SemiExpressive(kind, term, search.result())
        if search.exhausted:
            return SemiExpressive(None, None, search.result())
        if search.truncated:
            return SemiExpressive(UNKNOWN, None, search.result())
        search.step()


def _sheffer_table(domain: Domain, kind: str) -> TruthTable:
    if kind == NOR:
        return nor_table(domain)
    if kind == NAND:
        return nand_table(domain)
    raise ValueError(f"unknown Sheffer kind {kind!r}")


def _verify_sheffer(opset: OperatorSet, sheffer: tuple[str, Term]) -> bool:
    kind, term = sheffer
    return term_table(term, opset, 2) == _sheffer_table(opset.domain, kind)


def derive_basis(opset: OperatorSet, sheffer: tuple[str, Term]) -> tuple[Term, Term]:
    """Build negation and disjunction terms from a verified NOR or NAND term."""
    kind, s = sheffer
    if not _verify_sheffer(opset, sheffer):
        raise WitnessInvalidError(f"witness {s} does not denote {kind}")
    x, y = Var(0), Var(1)
    neg = substitute(s, [x, x])
    if kind == NOR:
        or_ = substitute(s, [s, s])
    else:
        or_ = substitute(s, [neg, substitute(neg, [y])])
    if term_table(neg, opset, 1) != neg_table(opset.domain):
        raise WitnessInvalidError(f"derived negation {neg} is not level reversal")
    if term_table(or_, opset, 2) != max_table(opset.domain):
        raise WitnessInvalidError(f"derived disjunction {or_} is not level max")
    return neg, or_


def decide_complete(opset: OperatorSet, budget: Budget = Budget()) -> Verdict:
    """Complete iff the set represents binary NOR or NAND, hence level reversal and max."""
    search = semi_expressive(opset, budget)
    closure = search.closure
    if search.found in (NOR, NAND):
        sheffer = (search.found, search.witness)
        neg, or_ = derive_basis(opset, sheffer)
        return Verdict(Status.COMPLETE, sheffer, neg, or_, None, budget, closure)
    if search.found is None:
        certificate = f"closure exhausted, {len(closure)} tables"
        return Verdict(Status.INCOMPLETE, None, None, None, certificate, budget, closure)
    certificate = (
        f"budget hit after {closure.stats.iterations} iterations and {len(closure)} tables"
    )
    return Verdict(Status.INCONCLUSIVE, None, None, None, certificate, budget, closure)


@dataclass
class ConstructionReport:
    n: int
    checked: int = 0
    mismatches: list[tuple[str, tuple[int, ...], int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def sheffer_composite(sheffer: tuple[str, Term], n: int) -> Term:
    """The ``n``-ary composite (NOR_n or NAND_n) built from a binary NOR/NAND term.

    ``s(x, x)`` reverses; ``s(s(a, b), s(a, b))`` is max for NOR and min for
    NAND, which is folded left over the first ``n - 1`` arguments before the
    final application of ``s``.
    """
    _, s = sheffer
    inner = Var(0)
    for i in range(1, n - 1):
        step = substitute(s, [inner, Var(i)])
        inner = substitute(s, [step, step])
    return substitute(s, [inner, Var(n - 1)])


def check_theorem5(opset: OperatorSet, sheffer: tuple[str, Term], n: int) -> ConstructionReport:
    """Verify the choice and modification constructions from an ``n``-ary composite.

    NOR branch: ``C(C(x), ..., C(x))`` is max over the n arguments.
    NAND branch: ``C(C(x1, ..., x1), ..., C(xn, ..., xn))`` is max.
    Both branches: ``C(x, ..., x)`` is level reversal.
    """
    if not 2 <= n <= 4:
        raise PreconditionFailedError(f"n must lie in 2..4, got {n}")
    if not _verify_sheffer(opset, sheffer):
        raise PreconditionFailedError(f"{sheffer[1]} does not denote {sheffer[0]}")
    kind = sheffer[0]
    domain = opset.domain
    xs = [Var(i) for i in range(n)]
    composite = sheffer_composite(sheffer, n)
    if kind == NOR:
        choice = substitute(composite, [composite] * n)
    else:
        choice = substitute(composite, [substitute(composite, [x] * n) for x in xs])
    modification = substitute(composite, [Var(0)] * n)

    report = ConstructionReport(n)
    for args in all_tuples(domain.m, n):
        report.checked += 1
        top = max(args)
        expected_composite = domain.reverse(top) if kind == NOR else domain.reverse(min(args))
        checks = [
            ("composite", composite, args, expected_composite),
            ("choice", choice, args, top),
            ("modification", modification, args[:1], domain.reverse(args[0])),
        ]
        for label, term, point, want in checks:
            got = eval_term(term, opset, point)
            if got != want:
                report.mismatches.append((label, args, got, want))
    return report


def is_minimal_complete(opset: OperatorSet, budget: Budget = Budget()) -> tuple[bool, list[str]]:
    """Drop-one minimality: which operators can be removed keeping the set complete."""
    verdict = decide_complete(opset, budget)
    if verdict.status is Status.INCONCLUSIVE:
        raise InconclusiveSubsetError("the full set itself is inconclusive under this budget")
    if not verdict.complete:
        raise NotCompleteError("set is not complete")
    removable = []
    if len(opset) > 1:
        for name in opset.names():
            sub = decide_complete(opset.without(name), budget)
            if sub.status is Status.INCONCLUSIVE:
                raise InconclusiveSubsetError(f"verdict without {name} is inconclusive")
            if sub.complete:
                removable.append(name)
    return not removable, removable


# Audits. These re-derive everything with plain table composition and share
# nothing with the vectorised search above.


def witnesses_hold(verdict: Verdict, opset: OperatorSet) -> bool:
    if not verdict.complete:
        return True
    domain = opset.domain
    kind, s = verdict.sheffer_witness
    return (
        term_table(s, opset, 2) == _sheffer_table(domain, kind)
        and term_table(verdict.neg_witness, opset, 1) == neg_table(domain)
        and term_table(verdict.or_witness, opset, 2) == max_table(domain)
    )


def fixpoint_escapes(closure: ClosureResult, opset: OperatorSet) -> list[tuple[str, tuple[int, ...]]]:
    """Operator applications to reached tables that leave the reached set (empty for a fixpoint)."""
    reached = list(closure.reached)
    members = set(reached)
    escapes = []
    for name in opset.names():
        table = opset[name]
        for picks in all_tuples(len(reached), table.arity):
            if compose(table, [reached[i] for i in picks], 2) not in members:
                escapes.append((name, picks))
    return escapes


def closure_witnesses_hold(closure: ClosureResult, opset: OperatorSet) -> bool:
    return all(term_table(t, opset, 2) == table for table, t in closure.witness.items())


def audit_verdict(verdict: Verdict, opset: OperatorSet) -> bool:
    """Pointwise witness check for Complete, fixpoint re-verification for Incomplete."""
    if verdict.status is Status.COMPLETE:
        return witnesses_hold(verdict, opset)
    if verdict.status is Status.INCOMPLETE:
        closure = verdict.closure
        nor, nand = nor_table(opset.domain), nand_table(opset.domain)
        return (
            closure.exhausted
            and nor not in closure
            and nand not in closure
            and not fixpoint_escapes(closure, opset)
        )
    return not verdict.closure.exhausted

