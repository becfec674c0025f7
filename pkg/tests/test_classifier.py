import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rcc5.algebra import Relation, Subclass, closure_mask
from rcc5.catalog import C1, C2, MAXIMAL_TRACTABLE, R5_17, R5_28
from rcc5.classifier import (Complexity, classify, enumerate_small_subsets, lift_c2_model,
                             reduce_c1_to_c2, verify_maximality, verify_theorem_4_2)
from rcc5.models import oracle_satisfiable, satisfies
from rcc5.network import Formula, Network, parse, relation_set

R = Relation.parse
subclasses = st.lists(st.integers(0, 31).map(Relation), max_size=5).map(Subclass)


def test_classify_examples():
    c = classify(C1)
    assert c.verdict is Complexity.NP_COMPLETE and c.kernels == ("C1",)
    assert classify(R5_28).algebras == ("R_5^28",)
    assert classify(Subclass()).algebras == tuple(MAXIMAL_TRACTABLE)
    assert classify(C2).render() == "NP-COMPLETE (C2)"
    assert classify(Subclass.parse("{EQ} {DR,EQ}")).render() == "POLYNOMIAL (R_5^28, R_5^20, R_5^17)"


@settings(max_examples=300, deadline=None)
@given(subclasses, subclasses)
def test_classify_monotone_toward_hardness(s, t):
    if classify(s).verdict is Complexity.NP_COMPLETE:
        assert classify(s | t).verdict is Complexity.NP_COMPLETE


@settings(max_examples=300, deadline=None)
@given(subclasses)
def test_classify_invariant_under_closure(s):
    assert classify(s).verdict == classify(Subclass(closure_mask(s.mask))).verdict


def test_enumeration_order_and_count():
    masks = enumerate_small_subsets(4).tolist()
    assert len(masks) == 41449 == len(set(masks))
    sizes = [bin(m).count("1") for m in masks]
    assert sizes == sorted(sizes)
    assert masks[:3] == [0, 1, 2]


def test_theorem_4_2_report():
    report = verify_theorem_4_2(keep_rows=True)
    assert report.total == 41449 and report.ok
    assert sum(report.tallies.values()) == 41449
    assert report.summary().splitlines()[0] == "41449 subsets checked, 0 failures"
    rows = dict(r.split(" ; ") for r in report.rows)
    assert rows["subset [{DR,PO,PP,PPI,EQ}]"] == "branch subset:R_5^28"
    assert rows["subset [{PO} {PP,PPI}]"] == "branch kernel:C1"
    assert report.rows == verify_theorem_4_2(keep_rows=True).rows


def test_maximality():
    report = verify_maximality()
    assert report.ok
    # one extension per relation outside each algebra: 4 + 12 + 15 + 18
    assert len(report.results) == sum(32 - len(m) for m in MAXIMAL_TRACTABLE.values()) == 49
    got = {(name, r): c for name, r, c in report.results}
    assert got["R_5^17", R("{DR}")].verdict is Complexity.NP_COMPLETE
    assert "C1" in got["R_5^28", R("{PP,PPI}")].kernels


def test_reduction_examples():
    assert reduce_c1_to_c2(parse("X {PO} Y")) == parse("X {DR,PO} Y")
    assert reduce_c1_to_c2(parse("X {PP,PPI} Y")) == parse("X {PP,PPI} Y")
    with pytest.raises(ValueError):
        reduce_c1_to_c2(parse("X {DR} Y"))


def c1_instances(max_vars=3):
    """Every C1 network over at most three variables: each ordered pair gets no formula or a label."""
    names = ["X", "Y", "Z"][:max_vars]
    pairs = [(a, b) for a in names for b in names]
    opts = [None] + C1.relations()
    for choice in itertools.product(opts, repeat=len(pairs)):
        fs = [Formula(a, r, b) for (a, b), r in zip(pairs, choice) if r is not None]
        if fs:
            yield Network(fs)


def test_reduction_preserves_verdicts_and_lifts_models():
    n = 0
    for net in c1_instances():
        n += 1
        reduced = reduce_c1_to_c2(net)
        assert relation_set(reduced) <= C2
        ok, model = oracle_satisfiable(reduced)
        assert ok == oracle_satisfiable(net)[0]
        if ok:
            assert satisfies(lift_c2_model(model), net)
    assert n == 3 ** 9 - 1
