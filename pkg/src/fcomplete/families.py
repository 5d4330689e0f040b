"""Example operator families R1..R7 and their regression harness.

R1 = neg(x1 or ... or xn)            R2 = neg(x1 and ... and xn)
R3 = neg x1 or ... or neg xn          R4 = neg x1 and ... and neg xn
R5 = neg(x1 *1 x2 ... *n-1 xn)        R6 = neg x1 *1 ... *n-1 neg xn
R7 = L1 x1 *1 L2 x2 ... *n-1 Ln xn

where each ``*`` is OR or AND and each ``L`` is NEG or NEGNEG. Every chain is
folded strictly left to right: ((x1 * x2) * x3) * ...
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .closure import Budget, Status, audit_verdict, decide_complete
from .errors import SpecInvalidError
from .post import post_complete
from .tables import Domain, OperatorSet, TruthTable, table_from_function

FAMILIES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7")
STARS = ("OR", "AND")
LOZENGES = ("NEG", "NEGNEG")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    stars: tuple[str, ...] = ()
    lozenges: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.upper())
        object.__setattr__(self, "stars", tuple(s.upper() for s in self.stars))
        object.__setattr__(self, "lozenges", tuple(s.upper() for s in self.lozenges))
        if self.family not in FAMILIES:
            raise SpecInvalidError(f"unknown family {self.family!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise SpecInvalidError(f"family arity must be at least 2, got {self.n!r}")
        wants_stars = self.family in ("R5", "R6", "R7")
        wants_lozenges = self.family == "R7"
        if wants_stars:
            if len(self.stars) != self.n - 1:
                raise SpecInvalidError(f"{self.family} needs {self.n - 1} stars, got {len(self.stars)}")
            if any(s not in STARS for s in self.stars):
                raise SpecInvalidError(f"stars must be drawn from {STARS}")
        elif self.stars:
            raise SpecInvalidError(f"{self.family} takes no stars")
        if wants_lozenges:
            if len(self.lozenges) != self.n:
                raise SpecInvalidError(f"R7 needs {self.n} lozenges, got {len(self.lozenges)}")
            if any(s not in LOZENGES for s in self.lozenges):
                raise SpecInvalidError(f"lozenges must be drawn from {LOZENGES}")
        elif self.lozenges:
            raise SpecInvalidError(f"{self.family} takes no lozenges")

    @property
    def label(self) -> str:
        parts = [f"{self.family} n={self.n}"]
        if self.stars:
            parts.append("stars=" + ",".join(s.lower() for s in self.stars))
        if self.lozenges:
            parts.append("lozenges=" + ",".join(s.lower() for s in self.lozenges))
        return " ".join(parts)


def _chain(stars, args) -> int:
    acc = args[0]
    for star, x in zip(stars, args[1:]):
        acc = max(acc, x) if star == "OR" else min(acc, x)
    return acc


def build_family(spec: FamilySpec, domain: Domain) -> TruthTable:
    n, rev = spec.n, domain.reverse
    stars = {
        "R1": ("OR",) * (n - 1),
        "R2": ("AND",) * (n - 1),
        "R3": ("OR",) * (n - 1),
        "R4": ("AND",) * (n - 1),
    }.get(spec.family, spec.stars)

    if spec.family in ("R1", "R2", "R5"):
        def fn(*a):
            return rev(_chain(stars, a))
    elif spec.family in ("R3", "R4", "R6"):
        def fn(*a):
            return _chain(stars, [rev(x) for x in a])
    else:
        def fn(*a):
            return _chain(stars, [rev(x) if l == "NEG" else rev(rev(x)) for l, x in zip(spec.lozenges, a)])

    return table_from_function(domain, n, fn)


def regression_instances() -> list[FamilySpec]:
    """The regression corpus: R1..R4 at n = 2..4, then R5..R7 exhaustively at n = 2..3."""
    out = [FamilySpec(f, n) for f in ("R1", "R2", "R3", "R4") for n in (2, 3, 4)]
    for family in ("R5", "R6"):
        for n in (2, 3):
            for stars in itertools.product(STARS, repeat=n - 1):
                out.append(FamilySpec(family, n, stars))
    for n in (2, 3):
        for stars in itertools.product(STARS, repeat=n - 1):
            for lozenges in itertools.product(LOZENGES, repeat=n):
                out.append(FamilySpec("R7", n, stars, lozenges))
    return out


def claimed_status(spec: FamilySpec) -> Status | None:
    """The published verdict for ``{R}``; None where no claim is made."""
    if spec.family in ("R1", "R2", "R3", "R4", "R5", "R6"):
        return Status.COMPLETE
    if "NEGNEG" in spec.lozenges:
        return Status.INCOMPLETE
    return None


@dataclass
class RegressionRow:
    spec: FamilySpec
    table: TruthTable
    claimed: Status | None
    engine: Status
    oracle: Status
    audited: bool

    @property
    def agree(self) -> bool:
        return self.engine == self.oracle

    @property
    def discrepancy(self) -> bool:
        """Claim contradicted by both engine and oracle."""
        return self.claimed is not None and self.agree and self.engine != self.claimed


@dataclass
class RegressionReport:
    rows: list[RegressionRow] = field(default_factory=list)

    @property
    def splits(self) -> list[RegressionRow]:
        """Instances where engine and oracle disagree; any entry is a hard failure."""
        return [r for r in self.rows if not r.agree]

    @property
    def discrepancies(self) -> list[RegressionRow]:
        return [r for r in self.rows if r.discrepancy]

    @property
    def ok(self) -> bool:
        return not self.splits and all(r.audited for r in self.rows)


def lemma_regression(budget: Budget = Budget(), instances: list[FamilySpec] | None = None) -> RegressionReport:
    domain = Domain(2)
    report = RegressionReport()
    for spec in instances if instances is not None else regression_instances():
        table = build_family(spec, domain)
        opset = OperatorSet(domain, {spec.family: table})
        verdict = decide_complete(opset, budget)
        complete, _ = post_complete(opset)
        report.rows.append(
            RegressionRow(
                spec=spec,
                table=table,
                claimed=claimed_status(spec),
                engine=verdict.status,
                oracle=Status.COMPLETE if complete else Status.INCOMPLETE,
                audited=audit_verdict(verdict, opset),
            )
        )
    return report
