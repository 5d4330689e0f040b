"""Post's criterion for two-valued operator sets.

A set of Boolean functions is complete iff, for each of the five maximal
clones (0-preserving, 1-preserving, monotone, self-dual, affine), some member
lies outside it. Everything here works from the class definitions directly and
does not touch the closure engine, so the two can be compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainNotBooleanError
from .tables import OperatorSet, TruthTable

CLASSES = ("preserves0", "preserves1", "monotone", "self_dual", "affine")


@dataclass(frozen=True)
class PostClasses:
    preserves0: bool
    preserves1: bool
    monotone: bool
    self_dual: bool
    affine: bool

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in CLASSES}


def _require_boolean(table: TruthTable) -> None:
    if table.m != 2:
        raise DomainNotBooleanError(f"Post's criterion needs 2 levels, table has {table.m}")


def _rows(n: int):
    return list(itertools.product((0, 1), repeat=n))


def anf(table: TruthTable) -> tuple[int, ...]:
    """Algebraic normal form coefficients via the binary Moebius transform.

    Coefficient ``k`` belongs to the monomial over the variables whose bits are
    set in ``k``, using the table's own bit layout (bit ``n-1-j`` is argument
    ``j``).
    """
    _require_boolean(table)
    coeffs = list(table.values)
    step = 1
    while step < len(coeffs):
        for block in range(0, len(coeffs), 2 * step):
            for i in range(block + step, block + 2 * step):
                coeffs[i] ^= coeffs[i - step]
        step *= 2
    return tuple(coeffs)


def anf_monomials(table: TruthTable) -> list[frozenset[int]]:
    """Monomials with coefficient 1, as sets of 1-based argument positions."""
    n = table.arity
    return [
        frozenset(j + 1 for j in range(n) if k >> (n - 1 - j) & 1)
        for k, c in enumerate(anf(table))
        if c
    ]


def from_anf(coeffs, arity: int) -> tuple[int, ...]:
    """Evaluate an ANF back into table values."""
    values = []
    for x in range(2**arity):
        bit = 0
        for k, c in enumerate(coeffs):
            # monomial k is 1 exactly when every variable in it is 1
            if c and x & k == k:
                bit ^= 1
        values.append(bit)
    return tuple(values)


def class_membership(table: TruthTable) -> PostClasses:
    _require_boolean(table)
    n = table.arity
    rows = _rows(n)
    f = dict(zip(rows, table.values))
    zeros, ones = (0,) * n, (1,) * n
    monotone = all(
        f[a] <= f[b]
        for a in rows
        for b in rows
        if all(x <= y for x, y in zip(a, b))
    )
    self_dual = all(f[tuple(1 - x for x in a)] == 1 - f[a] for a in rows)
    affine = all(c == 0 for k, c in enumerate(anf(table)) if bin(k).count("1") >= 2)
    return PostClasses(
        preserves0=f[zeros] == 0,
        preserves1=f[ones] == 1,
        monotone=monotone,
        self_dual=self_dual,
        affine=affine,
    )


@dataclass(frozen=True)
class PostCertificate:
    """For each class, the first operator (by name) escaping it, or None."""

    escapes: dict[str, str | None]

    @property
    def complete(self) -> bool:
        return all(self.escapes.values())

    @property
    def violated(self) -> list[str]:
        """Classes containing every member of the set."""
        return [name for name, op in self.escapes.items() if op is None]


def post_complete(opset: OperatorSet) -> tuple[bool, PostCertificate]:
    if opset.domain.m != 2:
        raise DomainNotBooleanError(f"Post's criterion needs 2 levels, set has {opset.domain.m}")
    membership = {name: class_membership(opset[name]) for name in opset.names()}
    escapes = {}
    for cls in CLASSES:
        escapes[cls] = next((name for name, pc in membership.items() if not getattr(pc, cls)), None)
    cert = PostCertificate(escapes)
    return cert.complete, cert
