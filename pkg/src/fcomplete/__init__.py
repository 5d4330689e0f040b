"""Decide functional completeness of finite-valued truth-function operator sets."""

__version__ = "0.1.0"

from .abstract_ops import (
    OrderSpec,
    check_composites,
    enumerate_modifications,
    is_choice,
    is_modification,
    order_greatest,
)
from .closure import (
    Budget,
    Status,
    Verdict,
    binary_closure,
    check_theorem5,
    decide_complete,
    derive_basis,
    is_minimal_complete,
    semi_expressive,
)
from .families import FamilySpec, build_family, lemma_regression
from .opfile import parse_operator_file, render_operator_file
from .post import anf, class_membership, post_complete
from .tables import (
    Apply,
    Domain,
    OperatorSet,
    TruthTable,
    Var,
    canonical_tables,
    compose,
    eval_term,
    evaluate,
    make_table,
    max_table,
    min_table,
    nand_table,
    neg_table,
    nor_table,
    projection,
)
