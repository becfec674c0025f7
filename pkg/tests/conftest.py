import itertools
import random

import pytest

from rcc5.algebra import Relation, Subclass
from rcc5.network import Formula, Network

ALL_RELATIONS = Relation.all()
FULL = Subclass((1 << 32) - 1)

# criterion number -> (passed, detail); printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def triangles(subclass):
    """Every labelling of the triangle X->Y->Z->X with relations from ``subclass``."""
    rels = subclass.relations() if isinstance(subclass, Subclass) else list(subclass)
    for r1, r2, r3 in itertools.product(rels, repeat=3):
        yield Network([Formula("X", r1, "Y"), Formula("Y", r2, "Z"), Formula("Z", r3, "X")])


def random_network(rng: random.Random, subclass, n_vars: int = 4, max_formulas: int = 8,
                   reflexive: bool = True) -> Network:
    """Random instance over at most ``n_vars`` variables, labels drawn from ``subclass``."""
    rels = subclass.relations() if isinstance(subclass, Subclass) else list(subclass)
    names = [f"V{k}" for k in range(n_vars)]
    formulas = []
    for _ in range(rng.randint(1, max_formulas)):
        x = rng.choice(names)
        y = rng.choice(names) if reflexive and rng.random() < 0.1 else rng.choice([v for v in names if v != x])
        formulas.append(Formula(x, rng.choice(rels), y))
    return Network(formulas)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")


def reorientation_instance(rng: random.Random, n: int, density: float = 0.3):
    """Irreflexive graph: an acyclic part labelled by PP-supersets, the rest by {PP,PPI}-supersets.

    Returns ``(nodes, dag_arcs, free_arcs, network)``.
    """
    from rcc5.algebra import BasicRelation
    pp = [r for r in ALL_RELATIONS if BasicRelation.PP in r]
    both = [r for r in pp if BasicRelation.PPI in r]
    nodes = list(range(n))
    perm = nodes[:]
    rng.shuffle(perm)
    dag, free, formulas = [], [], []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                dag.append((perm[a], perm[b]))
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(nodes, 2)
        free.append((u, v))
    formulas = [Formula(f"N{u}", rng.choice(pp), f"N{v}") for u, v in dag]
    formulas += [Formula(f"N{u}", rng.choice(both), f"N{v}") for u, v in free]
    return nodes, dag, free, Network(formulas)
