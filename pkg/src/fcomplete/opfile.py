"""Line-oriented operator files.

::

    # comment
    domain 3
    op NEG 1 : 2 1 0
    op MAX 2 : 0 1 2 1 1 2 2 2 2

Level codes are listed argument-major (first argument most significant).
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import re

from .errors import (
    CompletenessError,
    DuplicateNameError,
    LengthMismatchError,
    LevelOutOfRangeError,
    MissingDomainError,
    ParseError,
)
from .tables import Domain, OperatorSet, TruthTable

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_OP_RE = re.compile(r"op\s+(\S+)\s+(\S+)\s*:(.*)\Z")


def _int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {token!r}", lineno) from None


def parse_operator_file(text: str) -> OperatorSet:
    domain = None
    ops: dict[str, TruthTable] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "domain":
            if domain is not None:
                raise ParseError("second domain declaration", lineno)
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'domain <m>'", lineno)
            m = _int(parts[1], "level count", lineno)
            if m < 2:
                raise ParseError(f"domain needs at least 2 levels, got {m}", lineno)
            domain = Domain(m)
        elif keyword == "op":
            if domain is None:
                raise MissingDomainError("operator declared before 'domain'", lineno)
            match = _OP_RE.match(line)
            if not match:
                raise ParseError("expected 'op <name> <arity> : <levels>'", lineno)
            name, arity_text, rest = match.groups()
            if not NAME_RE.match(name):
                raise ParseError(f"invalid operator name {name!r}", lineno)
            if name in ops:
                raise DuplicateNameError(f"operator {name} declared twice", lineno)
            arity = _int(arity_text, "arity", lineno)
            if arity < 1:
                raise ParseError(f"arity must be at least 1, got {arity}", lineno)
            values = [_int(tok, "level", lineno) for tok in rest.split()]
            if len(values) != domain.m**arity:
                raise LengthMismatchError(
                    f"{name} needs {domain.m**arity} levels, got {len(values)}", lineno
                )
            for v in values:
                if not 0 <= v < domain.m:
                    raise LevelOutOfRangeError(f"level {v} outside 0..{domain.m - 1}", lineno)
            ops[name] = TruthTable(domain, arity, tuple(values))
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno)
    if domain is None:
        raise MissingDomainError("no 'domain' declaration")
    if not ops:
        raise ParseError("no operators declared")
    return OperatorSet(domain, ops)


def render_operator_file(opset: OperatorSet, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append(f"domain {opset.domain.m}")
    for name, table in opset.ops.items():
        if not NAME_RE.match(name):
            raise CompletenessError(f"operator name {name!r} cannot be written to a file")
        lines.append(f"op {name} {table.arity} : {table}")
    return "\n".join(lines) + "\n"
