import itertools
import random

import pytest
from hypothesis import given, strategies as st

from rcc5.algebra import BasicRelation, Relation
from rcc5.models import (CellPattern, Interpretation, TooManyVariables, UnassignedVariable,
                         acyclic_by_oracle, is_acyclic_relation, is_dag_satisfying_check,
                         oracle_models, oracle_satisfiable, relation_of, satisfies, uniform_cycle)
from rcc5.network import Formula, Network, parse

from conftest import ALL_RELATIONS, FULL, random_network

R = Relation.parse
B = BasicRelation


def test_relation_of_examples():
    i = Interpretation({"X": {1, 2}, "Y": {1, 2, 3}, "Z": {2, 3}, "W": {1}, "V": {1}})
    assert relation_of(i, "X", "Y") is B.PP
    assert relation_of(i, "W", "V") is B.EQ
    assert relation_of(Interpretation({"X": {1, 2}, "Y": {2, 3}}), "X", "Y") is B.PO
    assert relation_of(i, "Y", "X") is B.PPI
    assert relation_of(Interpretation({"X": {1}, "Y": {2}}), "X", "Y") is B.DR
    with pytest.raises(UnassignedVariable):
        relation_of(i, "X", "Q")


def test_interpretation_rejects_empty_region():
    with pytest.raises(ValueError):
        Interpretation({"X": set()})


def test_witness_serialization_round_trip():
    i = Interpretation({"X": {3, 1}, "Y": {2}})
    assert i.serialize() == "X = {1,3}\nY = {2}\n"
    assert dict(Interpretation.from_text(i.serialize())) == dict(i)


sets = st.frozensets(st.integers(0, 6), min_size=1)


@given(sets, sets)
def test_relation_of_exhaustive_exclusive_and_converse(a, b):
    i = Interpretation({"X": a, "Y": b})
    r = relation_of(i, "X", "Y")
    holds = {
        B.DR: not (a & b),
        B.PO: bool(a - b) and bool(a & b) and bool(b - a),
        B.PP: a < b,
        B.PPI: a > b,
        B.EQ: a == b,
    }
    assert [k for k, v in holds.items() if v] == [r]
    assert relation_of(i, "Y", "X") is r.converse


def test_satisfies_examples():
    same = Interpretation({v: {7} for v in "XYZ"})
    assert satisfies(same, parse("X {DR,EQ} Y\nY {PP,EQ} Z\nZ {EQ} X"))
    assert not satisfies(same, parse("X {} Y"))
    assert satisfies(Interpretation({"X": {1, 2}, "Y": {1, 2, 3}}), parse("X {PO,PP} Y"))


def test_oracle_examples():
    assert not oracle_satisfiable(parse("X {PP} Y\nY {PP} X"))[0]
    ok, w = oracle_satisfiable(parse("X {PO} Y"))
    assert ok and relation_of(w, "X", "Y") is B.PO
    assert not oracle_satisfiable(parse("X {PP} Y\nY {PP} Z\nX {DR} Z"))[0]
    assert oracle_satisfiable(Network()) == (True, Interpretation())


def test_oracle_limit():
    with pytest.raises(TooManyVariables):
        oracle_satisfiable(parse("A {PO} B\nC {PO} D\nE {PO} A"))


def test_oracle_witness_is_least_pattern():
    ok, w = oracle_satisfiable(parse("X {DR} Y"))
    # patterns 1..: cell X alone (bit 0) and cell Y alone (bit 1) -> index 3
    assert dict(w) == dict(CellPattern.from_index(2, 3).interpretation(["X", "Y"]))


def test_cell_pattern_requires_cover():
    with pytest.raises(ValueError):
        CellPattern(2, (1,))
    assert CellPattern(2, (1, 2, 3)).relation(0, 1) is B.PO


def test_oracle_witnesses_verify(rng):
    for _ in range(400):
        net = random_network(rng, FULL)
        ok, w = oracle_satisfiable(net)
        if ok:
            assert satisfies(w, net)
        models = list(oracle_models(net))
        assert bool(models) == ok
        assert all(satisfies(m, net) for m in models)


# --- acyclic and DAG-satisfying relations ----------------------------------------------

def test_acyclic_examples():
    assert is_acyclic_relation(R("{PP}"))
    assert not is_acyclic_relation(R("{PP,EQ}"))
    assert is_acyclic_relation(R("{}"))


def test_acyclic_characterisation_matches_oracle_everywhere():
    acyclic = [r for r in ALL_RELATIONS if is_acyclic_relation(r)]
    assert acyclic == [R("{}"), R("{PP}"), R("{PPI}")]
    # a four-cycle gives no extra refutations
    assert all(acyclic_by_oracle(r, 4) == (r in acyclic) for r in ALL_RELATIONS)


def test_subsets_of_acyclic_are_acyclic():
    for r in ALL_RELATIONS:
        if is_acyclic_relation(r):
            for s in ALL_RELATIONS:
                if s <= r:
                    assert is_acyclic_relation(s)


def _cycle(labels):
    names = [f"C{k}" for k in range(len(labels))]
    return Network(Formula(names[k], lab, names[(k + 1) % len(labels)]) for k, lab in enumerate(labels))


@pytest.mark.parametrize("acyclic", [R("{PP}"), R("{PPI}")])
def test_cycles_over_acyclic_and_eq_extensions_force_equality(acyclic):
    a = [s for s in ALL_RELATIONS if s <= acyclic]
    a_eq = [s | R("{EQ}") for s in a]
    labels = sorted(set(a) | set(a_eq), key=lambda r: r.mask)
    for n in range(1, 5):
        for combo in itertools.product(labels, repeat=n):
            net = _cycle(combo)
            ok, _ = oracle_satisfiable(net)
            assert ok == all(lab in a_eq for lab in combo)
            for m in oracle_models(net):
                assert len({m[v] for v in net.variables}) == 1


@pytest.mark.parametrize("b", list(BasicRelation))
def test_dag_satisfying_battery(b):
    assert is_dag_satisfying_check(b, trials=120, seed=int(b))


def test_single_node_dag_trivial():
    assert oracle_satisfiable(Network())[0]
    assert is_dag_satisfying_check(B.DR, trials=1)


def test_uniform_cycle_shape():
    assert len(uniform_cycle(R("{PO}"), 1).variables) == 1
    assert len(uniform_cycle(R("{PO}"), 3)) == 3
