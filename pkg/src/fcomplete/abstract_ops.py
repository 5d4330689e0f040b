"""Choice and modification operators under a total order on levels.

A choice operator returns the order-greatest of its arguments; a modification
operator is a unary involution that strictly reverses the order. Over the
natural orders GEQ/LEQ these are max (resp. min) and level reversal, and level
reversal is the only modification operator there is.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadArityError, CapExceededError, EmptyInputError, LevelOutOfRangeError, PreconditionFailedError
from .tables import Domain, TruthTable, all_tuples, compose, evaluate, projection

ENUMERATION_CAP = 8


@dataclass(frozen=True)
class OrderSpec:
    """A total order on levels, listed greatest first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"ranking {self.ranking} is not a permutation of levels")

    @classmethod
    def geq(cls, m: int) -> "OrderSpec":
        return cls(tuple(range(m - 1, -1, -1)))

    @classmethod
    def leq(cls, m: int) -> "OrderSpec":
        return cls(tuple(range(m)))

    @classmethod
    def named(cls, name: str, m: int) -> "OrderSpec":
        try:
            return {"geq": cls.geq, "leq": cls.leq}[name.lower()](m)
        except KeyError:
            raise ValueError(f"unknown order {name!r}; expected geq or leq") from None

    @property
    def m(self) -> int:
        return len(self.ranking)

    def rank(self, level: int) -> int:
        """0 for the greatest level."""
        return self.ranking.index(level)

    def above(self, x: int, y: int) -> bool:
        """True when ``x`` is strictly greater than ``y``."""
        return self.rank(x) < self.rank(y)


@dataclass
class AbstractOpReport:
    is_choice: bool = False
    is_modification: bool = False
    violations: list[tuple[tuple[int, ...], str]] = field(default_factory=list)


def _check_levels(order: OrderSpec, levels) -> None:
    for level in levels:
        if not 0 <= level < order.m:
            raise LevelOutOfRangeError(f"level {level} outside 0..{order.m - 1}")


def order_greatest(order: OrderSpec, levels) -> int:
    levels = list(levels)
    if not levels:
        raise EmptyInputError("cannot select from an empty list of levels")
    _check_levels(order, levels)
    return min(levels, key=order.rank)


def order_least(order: OrderSpec, levels) -> int:
    levels = list(levels)
    if not levels:
        raise EmptyInputError("cannot select from an empty list of levels")
    _check_levels(order, levels)
    return max(levels, key=order.rank)


def is_choice(table: TruthTable, order: OrderSpec) -> AbstractOpReport:
    if table.arity < 2:
        raise BadArityError("a choice operator takes at least two arguments")
    report = AbstractOpReport()
    for args in all_tuples(table.m, table.arity):
        got, want = evaluate(table, args), order_greatest(order, args)
        if got != want:
            report.violations.append((args, f"output {got} != greatest {want}"))
    report.is_choice = not report.violations
    return report


def is_modification(table: TruthTable, order: OrderSpec) -> AbstractOpReport:
    """Check strict order reversal on every strict pair, then the involution law."""
    if table.arity != 1:
        raise BadArityError("a modification operator is unary")
    f = table.values
    report = AbstractOpReport()
    for x in range(table.m):
        for y in range(table.m):
            if order.above(x, y) and not order.above(f[y], f[x]):
                report.violations.append(((x, y), "order reversal"))
    for x in range(table.m):
        if f[f[x]] != x:
            report.violations.append(((x,), "involution"))
    report.is_modification = not report.violations
    return report


def _modification_mask(cands: np.ndarray, order: OrderSpec) -> np.ndarray:
    m = order.m
    rows = np.arange(len(cands))[:, None]
    ok = np.all(cands[rows, cands] == np.arange(m), axis=1)
    rank = np.asarray([order.rank(level) for level in range(m)])
    ranked = rank[cands]
    for x in range(m):
        for y in range(m):
            if order.above(x, y):
                ok &= ranked[:, y] < ranked[:, x]
    return ok


def enumerate_modifications(domain: Domain, order: OrderSpec, cap: int = ENUMERATION_CAP) -> list[TruthTable]:
    """Every unary table passing :func:`is_modification`, in lexicographic order of values."""
    m = domain.m
    if m > cap:
        raise CapExceededError(f"{m}**{m} candidates exceeds the enumeration cap m <= {cap}")
    if order.m != m:
        raise ValueError(f"order over {order.m} levels used with a {m}-level domain")
    total = m**m
    chunk = 1 << 18
    weights = m ** np.arange(m - 1, -1, -1, dtype=np.int64)
    found = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cands = (codes[:, None] // weights) % m
        for row in cands[_modification_mask(cands, order)]:
            table = TruthTable(domain, 1, tuple(int(v) for v in row))
            # the vectorised screen is only a filter; the predicate decides
            if is_modification(table, order).is_modification:
                found.append(table)
    return found


@dataclass
class CompositeReport:
    checked: int = 0
    failures: list[tuple[str, tuple[int, ...], int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_composites(choice: TruthTable, modification: TruthTable, order: OrderSpec) -> CompositeReport:
    """Check both composites of a choice and a modification operator on every tuple.

    ``mod . choice`` must reverse the greatest argument; ``choice . mod`` (the
    modification applied to each argument first) must reverse the least one.
    """
    if not is_choice(choice, order).is_choice:
        raise PreconditionFailedError("first table is not a choice operator for this order")
    if not is_modification(modification, order).is_modification:
        raise PreconditionFailedError("second table is not a modification operator for this order")
    n = choice.arity
    mod_after = compose(modification, [choice], n)
    mod_first = compose(
        choice,
        [compose(modification, [projection(choice.domain, n, i)], n) for i in range(n)],
        n,
    )
    report = CompositeReport()
    for args in all_tuples(choice.m, n):
        report.checked += 1
        want = modification.values[order_greatest(order, args)]
        got = evaluate(mod_after, args)
        if got != want:
            report.failures.append(("mod.choice", args, got, want))
        want = modification.values[order_least(order, args)]
        got = evaluate(mod_first, args)
        if got != want:
            report.failures.append(("choice.mod", args, got, want))
    return report

