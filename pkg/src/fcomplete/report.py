"""Structured reports.

Every command produces one document::

    {"stable": {...}, "stable_digest": "sha256:...", "timing": {...}}

``stable`` depends only on the input and flags, with a fixed key order, so it
is byte-identical across runs; ``timing`` is the only volatile part. The text
format is rendered from the same document.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from typing import Any

from . import __version__
from .abstract_ops import OrderSpec, enumerate_modifications
from .closure import Budget, ClosureResult, Status, Verdict, audit_verdict, binary_closure, decide_complete
from .families import RegressionReport
from .post import class_membership, post_complete
from .errors import CapExceededError
from .tables import Domain, OperatorSet, TruthTable, all_tuples

SCHEMA = "fcomplete.report/1"
DEFINITION = (
    "complete = the set represents negation (level reversal i -> m-1-i) and "
    "disjunction (level max); for m = 2 this is classical functional completeness"
)


def digest_text(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def digest_args(args: dict) -> str:
    return digest_text(json.dumps(args, sort_keys=True))


def envelope(command: str, input_digest: str, body: dict, elapsed: float) -> dict:
    stable = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "input_digest": input_digest,
        **body,
    }
    return {
        "stable": stable,
        "stable_digest": digest_text(dump_stable(stable)),
        "timing": {"elapsed_seconds": round(elapsed, 6)},
    }


def dump_stable(stable: dict) -> str:
    return json.dumps(stable, indent=2, ensure_ascii=False)


def dump_machine(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _render(value: Any, indent: int, lines: list[str], key: str | None = None) -> None:
    pad = "  " * indent
    head = f"{pad}{key}:" if key is not None else f"{pad}-"
    if isinstance(value, dict):
        lines.append(head)
        for k, v in value.items():
            _render(v, indent + 1, lines, k)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(head)
        for v in value:
            _render(v, indent + 1, lines)
    else:
        if isinstance(value, list):
            text = ", ".join(map(str, value)) if value else "(none)"
        elif value is None:
            text = "-"
        elif isinstance(value, bool):
            text = "yes" if value else "no"
        else:
            text = str(value)
        lines.append(f"{head} {text}")


def dump_text(doc: dict) -> str:
    lines: list[str] = []
    for k, v in doc["stable"].items():
        _render(v, 0, lines, k)
    lines.append(f"elapsed: {doc['timing']['elapsed_seconds']:.3f}s")
    return "\n".join(lines)


# Blocks shared by several commands.


def operators_block(opset: OperatorSet) -> list[dict]:
    return [
        {"name": name, "arity": opset[name].arity, "values": str(opset[name])}
        for name in opset.names()
    ]


def closure_block(closure: ClosureResult) -> dict:
    return {
        "tables": len(closure),
        "iterations": closure.stats.iterations,
        "tables_generated": closure.stats.tables_generated,
        "exhausted": closure.exhausted,
    }


def verdict_block(verdict: Verdict) -> dict:
    sheffer = None
    if verdict.sheffer_witness is not None:
        kind, term = verdict.sheffer_witness
        sheffer = {"kind": kind, "term": str(term)}
    return {
        "status": verdict.status.value,
        "sheffer": sheffer,
        "neg": None if verdict.neg_witness is None else str(verdict.neg_witness),
        "or": None if verdict.or_witness is None else str(verdict.or_witness),
        "certificate": verdict.certificate,
    }


def oracle_block(opset: OperatorSet) -> dict:
    complete, cert = post_complete(opset)
    return {
        "status": (Status.COMPLETE if complete else Status.INCOMPLETE).value,
        "classes": {name: class_membership(opset[name]).as_dict() for name in opset.names()},
        "escapes": cert.escapes,
        "violated": cert.violated,
    }


# Command bodies.


def check_body(opset: OperatorSet, budget: Budget, audit: bool = False) -> tuple[dict, Verdict]:
    verdict = decide_complete(opset, budget)
    body = {
        "definition": DEFINITION,
        "domain": opset.domain.m,
        "operators": operators_block(opset),
        "budget": budget.as_dict(),
        "verdict": verdict_block(verdict),
        "closure": closure_block(verdict.closure),
    }
    if audit:
        body["audit"] = "passed" if audit_verdict(verdict, opset) else "FAILED"
    if opset.domain.m == 2:
        oracle = oracle_block(opset)
        body["oracle"] = oracle
        body["agreement"] = oracle["status"] == verdict.status.value
    else:
        body["oracle"] = None
        body["agreement"] = None
    return body, verdict


def oracle_body(opset: OperatorSet) -> dict:
    return {"domain": 2, "operators": operators_block(opset), "oracle": oracle_block(opset)}


def compare_body(opset: OperatorSet, budget: Budget) -> tuple[dict, Verdict, bool]:
    verdict = decide_complete(opset, budget)
    oracle = oracle_block(opset)
    agreement = oracle["status"] == verdict.status.value
    body = {
        "definition": DEFINITION,
        "domain": 2,
        "operators": operators_block(opset),
        "budget": budget.as_dict(),
        "engine": verdict_block(verdict),
        "closure": closure_block(verdict.closure),
        "oracle": oracle,
        "agreement": agreement,
    }
    return body, verdict, agreement


def closure_body(opset: OperatorSet, budget: Budget) -> tuple[dict, ClosureResult]:
    closure = binary_closure(opset, budget)
    body = {
        "domain": opset.domain.m,
        "operators": operators_block(opset),
        "budget": budget.as_dict(),
        "closure": closure_block(closure),
        "reached": [
            {"values": str(table), "witness": str(closure.witness[table])} for table in closure.reached
        ],
    }
    return body, closure


def modops_body(m: int, order_name: str) -> dict:
    order = OrderSpec.named(order_name, m)
    found = enumerate_modifications(Domain(m), order)
    return {
        "domain": m,
        "order": order_name.lower(),
        "ranking": list(order.ranking),
        "candidates": m**m,
        "modifications": [str(t) for t in found],
    }


def survey_tables(m: int = 2) -> list[tuple[str, TruthTable]]:
    """All unary then all binary tables over m levels, named by their values."""
    domain = Domain(m)
    out = []
    for arity in (1, 2):
        for values in all_tuples(m, m**arity):
            prefix = "U" if arity == 1 else "B"
            out.append((prefix + "".join(map(str, values)), TruthTable(domain, arity, values)))
    return out


def survey_sets(m: int = 2, max_size: int = 2) -> list[OperatorSet]:
    if m != 2:
        raise CapExceededError("the survey is limited to m = 2")
    if not 1 <= max_size <= 2:
        raise CapExceededError("the survey is limited to sets of size 1 or 2")
    tables = survey_tables(m)
    sets = []
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(tables, size):
            sets.append(OperatorSet(Domain(m), dict(combo)))
    return sets


def survey_body(m: int, max_size: int, budget: Budget, audit: bool = False) -> tuple[dict, bool]:
    rows = []
    agree_count = complete_count = inconclusive = 0
    audits_ok = True
    singletons = []
    for opset in survey_sets(m, max_size):
        verdict = decide_complete(opset, budget)
        oracle_ok, _ = post_complete(opset)
        oracle = Status.COMPLETE if oracle_ok else Status.INCOMPLETE
        agree = verdict.status is oracle
        agree_count += agree
        complete_count += verdict.complete
        inconclusive += verdict.status is Status.INCONCLUSIVE
        row = {
            "ops": opset.names(),
            "engine": verdict.status.value,
            "oracle": oracle.value,
            "agree": agree,
        }
        if audit:
            ok = audit_verdict(verdict, opset)
            audits_ok &= ok
            row["audit"] = ok
        rows.append(row)
        if len(opset) == 1 and verdict.complete:
            singletons.append(opset.names()[0])
    ok = agree_count == len(rows) and inconclusive == 0 and audits_ok
    body = {
        "domain": m,
        "max_size": max_size,
        "budget": budget.as_dict(),
        "summary": {
            "sets": len(rows),
            "complete": complete_count,
            "agreement": agree_count,
            "inconclusive": inconclusive,
        },
        "complete_singletons": singletons,
        "sets": rows,
    }
    return body, ok


def regression_body(report: RegressionReport, budget: Budget) -> dict:
    rows = []
    for row in report.rows:
        rows.append(
            {
                "instance": row.spec.label,
                "values": str(row.table),
                "claimed": None if row.claimed is None else row.claimed.value,
                "engine": row.engine.value,
                "oracle": row.oracle.value,
                "agree": row.agree,
                "discrepancy": row.discrepancy,
            }
        )
    return {
        "domain": 2,
        "budget": budget.as_dict(),
        "summary": {
            "instances": len(report.rows),
            "engine_oracle_splits": len(report.splits),
            "claim_discrepancies": len(report.discrepancies),
            "audits_passed": all(r.audited for r in report.rows),
        },
        "discrepancies": [r.spec.label for r in report.discrepancies],
        "instances": rows,
    }

