import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcomplete.errors import DomainNotBooleanError
from fcomplete.post import CLASSES, anf, anf_monomials, class_membership, from_anf, post_complete
from fcomplete.tables import Domain, OperatorSet, TruthTable, compose, make_table, max_table, min_table, nand_table, neg_table

B = Domain(2)
XOR = make_table(B, 2, [0, 1, 1, 0])


def test_membership_examples():
    assert class_membership(min_table(B)).as_dict() == dict(
        preserves0=True, preserves1=True, monotone=True, self_dual=False, affine=False
    )
    assert class_membership(XOR).as_dict() == dict(
        preserves0=True, preserves1=False, monotone=False, self_dual=False, affine=True
    )
    assert not any(class_membership(nand_table(B)).as_dict().values())


def test_membership_of_identity_and_negation():
    assert all(class_membership(make_table(B, 1, [0, 1])).as_dict().values())
    neg = class_membership(neg_table(B))
    assert (neg.preserves0, neg.preserves1, neg.monotone, neg.self_dual, neg.affine) == (False, False, False, True, True)


def test_anf_examples():
    assert set(anf_monomials(XOR)) == {frozenset({1}), frozenset({2})}
    assert anf_monomials(min_table(B)) == [frozenset({1, 2})]
    assert set(anf_monomials(nand_table(B))) == {frozenset(), frozenset({1, 2})}
    # x or not y = 1 + y + xy
    assert set(anf_monomials(make_table(B, 2, [1, 0, 1, 1]))) == {frozenset(), frozenset({2}), frozenset({1, 2})}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_anf_round_trip(n):
    for values in itertools.product((0, 1), repeat=2**n):
        t = TruthTable(B, n, values)
        assert from_anf(anf(t), n) == values


def test_affine_matches_definition():
    # affine functions of two variables: c0 + c1 x + c2 y
    affine = {
        tuple((c0 + c1 * a + c2 * b) % 2 for a, b in itertools.product((0, 1), repeat=2))
        for c0, c1, c2 in itertools.product((0, 1), repeat=3)
    }
    for values in itertools.product((0, 1), repeat=4):
        assert class_membership(TruthTable(B, 2, values)).affine == (values in affine)


def test_rejects_non_boolean():
    t = Domain(3)
    with pytest.raises(DomainNotBooleanError):
        class_membership(neg_table(t))
    with pytest.raises(DomainNotBooleanError):
        anf(neg_table(t))
    with pytest.raises(DomainNotBooleanError):
        post_complete(OperatorSet(t, {"neg": neg_table(t)}))


def test_post_complete_examples():
    ok, cert = post_complete(OperatorSet(B, {"nand": nand_table(B)}))
    assert ok and set(cert.escapes.values()) == {"nand"}

    ok, cert = post_complete(OperatorSet(B, {"and": min_table(B), "or": max_table(B)}))
    assert not ok and "monotone" in cert.violated

    ok, cert = post_complete(OperatorSet(B, {"xor": XOR, "neg": neg_table(B)}))
    assert not ok and cert.violated == ["affine"]


ALL_TABLES = [TruthTable(B, n, v) for n in (1, 2, 3) for v in itertools.product((0, 1), repeat=2**n)]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(CLASSES), st.data())
def test_classes_are_closed_under_composition(cls, data):
    members = [t for t in ALL_TABLES if getattr(class_membership(t), cls)]
    outer = data.draw(st.sampled_from(members))
    n = data.draw(st.integers(1, 3))
    inners = [data.draw(st.sampled_from([t for t in members if t.arity == n])) for _ in range(outer.arity)]
    assert getattr(class_membership(compose(outer, inners, n)), cls)
