"""Truth levels, truth tables, terms and their evaluation.

A domain with ``m`` levels holds the codes ``0 .. m-1``; code ``i`` stands for
the truth degree ``i / (m - 1)``, so ``1 - v`` is the level reversal
``i -> m - 1 - i``.

Tables are stored argument-major: the value for ``(a1, ..., an)`` sits at
``sum(aj * m**(n - j))`` with the first argument most significant, which for
``m = 2`` is the usual 00, 01, 10, 11 row order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    ArityMismatchError,
    BadArityError,
    CompletenessError,
    DomainMismatchError,
    IndexOutOfRangeError,
    LengthMismatchError,
    LevelOutOfRangeError,
    UnknownOperatorError,
)


@dataclass(frozen=True)
class Domain:
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise CompletenessError(f"a domain needs at least 2 levels, got {self.m!r}")
        levels = set(self.levels)
        assert {self.reverse(i) for i in levels} == levels

    @property
    def levels(self) -> range:
        return range(self.m)

    def reverse(self, level: int) -> int:
        return self.m - 1 - level

    def value(self, level: int) -> float:
        """The truth degree a level code stands for."""
        return level / (self.m - 1)


def all_tuples(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """Every argument tuple of length ``n`` in table order."""
    return itertools.product(range(m), repeat=n)


def tuple_index(m: int, args: Sequence[int]) -> int:
    index = 0
    for a in args:
        index = index * m + a
    return index


def index_tuple(m: int, n: int, index: int) -> tuple[int, ...]:
    if not 0 <= index < m**n:
        raise IndexOutOfRangeError(f"index {index} outside 0..{m**n - 1}")
    out = []
    for _ in range(n):
        index, digit = divmod(index, m)
        out.append(digit)
    return tuple(reversed(out))


@dataclass(frozen=True)
class TruthTable:
    domain: Domain
    arity: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise BadArityError(f"arity must be at least 1, got {self.arity}")
        m = self.domain.m
        if len(self.values) != m**self.arity:
            raise LengthMismatchError(
                f"arity {self.arity} over {m} levels needs {m**self.arity} values, got {len(self.values)}"
            )
        for v in self.values:
            if not 0 <= v < m:
                raise LevelOutOfRangeError(f"level {v} outside 0..{m - 1}")

    @property
    def m(self) -> int:
        return self.domain.m

    def __call__(self, *args: int) -> int:
        return evaluate(self, args)

    def __str__(self) -> str:
        return " ".join(map(str, self.values))


def make_table(domain: Domain | int, arity: int, values: Iterable[int]) -> TruthTable:
    if isinstance(domain, int):
        domain = Domain(domain)
    return TruthTable(domain, arity, tuple(int(v) for v in values))


def table_from_function(domain: Domain, arity: int, fn) -> TruthTable:
    """Tabulate ``fn(*args)`` over every argument tuple."""
    return TruthTable(domain, arity, tuple(fn(*a) for a in all_tuples(domain.m, arity)))


def evaluate(table: TruthTable, args: Sequence[int]) -> int:
    if len(args) != table.arity:
        raise ArityMismatchError(f"table of arity {table.arity} applied to {len(args)} arguments")
    m = table.m
    for a in args:
        if not 0 <= a < m:
            raise LevelOutOfRangeError(f"level {a} outside 0..{m - 1}")
    return table.values[tuple_index(m, args)]


def compose(outer: TruthTable, inners: Sequence[TruthTable], var_count: int) -> TruthTable:
    """Pointwise composition ``outer(inner_1(a), ..., inner_r(a))`` over ``var_count`` variables."""
    if len(inners) != outer.arity:
        raise ArityMismatchError(f"outer arity {outer.arity} given {len(inners)} inner tables")
    for inner in inners:
        if inner.domain != outer.domain:
            raise DomainMismatchError(f"domains {outer.m} and {inner.m} differ")
        if inner.arity != var_count:
            raise ArityMismatchError(f"inner arity {inner.arity} differs from var_count {var_count}")
    m = outer.m
    values = []
    for position in range(m**var_count):
        values.append(outer.values[tuple_index(m, [t.values[position] for t in inners])])
    return TruthTable(outer.domain, var_count, tuple(values))


def projection(domain: Domain, var_count: int, i: int) -> TruthTable:
    if not 0 <= i < var_count:
        raise IndexOutOfRangeError(f"projection index {i} outside 0..{var_count - 1}")
    return table_from_function(domain, var_count, lambda *a: a[i])


# Canonical connectives over a chain of levels.


def _check_n(n: int) -> None:
    if n < 2:
        raise BadArityError(f"choice-derived tables need arity >= 2, got {n}")


def neg_table(domain: Domain) -> TruthTable:
    return table_from_function(domain, 1, domain.reverse)


def max_table(domain: Domain, n: int = 2) -> TruthTable:
    _check_n(n)
    return table_from_function(domain, n, lambda *a: max(a))


def min_table(domain: Domain, n: int = 2) -> TruthTable:
    _check_n(n)
    return table_from_function(domain, n, lambda *a: min(a))


def nor_table(domain: Domain, n: int = 2) -> TruthTable:
    _check_n(n)
    return table_from_function(domain, n, lambda *a: domain.reverse(max(a)))


def nand_table(domain: Domain, n: int = 2) -> TruthTable:
    _check_n(n)
    return table_from_function(domain, n, lambda *a: domain.reverse(min(a)))


def canonical_tables(domain: Domain, n: int = 2) -> dict[str, TruthTable]:
    """neg, max, min, nor, nand at arity 2, plus their ``n``-ary forms under ``*_n`` keys."""
    _check_n(n)
    return {
        "neg": neg_table(domain),
        "max": max_table(domain),
        "min": min_table(domain),
        "nor": nor_table(domain),
        "nand": nand_table(domain),
        "max_n": max_table(domain, n),
        "min_n": min_table(domain, n),
        "nor_n": nor_table(domain, n),
        "nand_n": nand_table(domain, n),
    }


# Terms


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Apply:
    op: str
    children: tuple["Term", ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        return f"{self.op}({','.join(map(str, self.children))})"


Term = Union[Var, Apply]


def term_depth(term: Term) -> int:
    if isinstance(term, Var):
        return 0
    return 1 + max(term_depth(c) for c in term.children)


def term_vars(term: Term) -> set[int]:
    if isinstance(term, Var):
        return {term.index}
    return set().union(*(term_vars(c) for c in term.children))


def substitute(term: Term, replacements: Sequence[Term]) -> Term:
    """Replace every ``Var(i)`` by ``replacements[i]``."""
    if isinstance(term, Var):
        return replacements[term.index]
    return Apply(term.op, tuple(substitute(c, replacements) for c in term.children))


@dataclass(frozen=True, eq=False)
class OperatorSet:
    domain: Domain
    ops: Mapping[str, TruthTable]

    def __post_init__(self):
        ops = dict(self.ops)
        if not ops:
            raise CompletenessError("an operator set needs at least one operator")
        for name, table in ops.items():
            if not name:
                raise CompletenessError("operator names must be nonempty")
            if table.domain != self.domain:
                raise DomainMismatchError(f"operator {name} has {table.m} levels, set has {self.domain.m}")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def of(cls, **ops: TruthTable) -> "OperatorSet":
        first = next(iter(ops.values()))
        return cls(first.domain, ops)

    def __getitem__(self, name: str) -> TruthTable:
        try:
            return self.ops[name]
        except KeyError:
            raise UnknownOperatorError(f"unknown operator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.ops

    def __len__(self) -> int:
        return len(self.ops)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorSet):
            return NotImplemented
        return self.domain == other.domain and self.ops == other.ops

    def names(self) -> list[str]:
        """Operator names in canonical (sorted) order."""
        return sorted(self.ops)

    def without(self, name: str) -> "OperatorSet":
        return OperatorSet(self.domain, {k: v for k, v in self.ops.items() if k != name})

    def with_op(self, name: str, table: TruthTable) -> "OperatorSet":
        return OperatorSet(self.domain, {**self.ops, name: table})


def eval_term(term: Term, opset: OperatorSet, args: Sequence[int]) -> int:
    if isinstance(term, Var):
        if not 0 <= term.index < len(args):
            raise IndexOutOfRangeError(f"variable x{term.index} not covered by {len(args)} arguments")
        return args[term.index]
    table = opset[term.op]
    if len(term.children) != table.arity:
        raise ArityMismatchError(f"{term.op} has arity {table.arity}, applied to {len(term.children)} terms")
    return evaluate(table, [eval_term(c, opset, args) for c in term.children])


def term_table(term: Term, opset: OperatorSet, var_count: int) -> TruthTable:
    """The ``var_count``-ary table a term denotes."""
    return table_from_function(opset.domain, var_count, lambda *a: eval_term(term, opset, a))


def fold(fn, items: Sequence[int]) -> int:
    """Left fold ``((a1 fn a2) fn ...) fn an``."""
    return reduce(fn, items)
