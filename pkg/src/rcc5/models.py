"""Set interpretations, the Table-1 evaluator and the Venn-cell oracle."""
from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .algebra import BasicRelation, Relation, basic_from_cells
from .network import Formula, Network

__all__ = ["Interpretation", "UnassignedVariable", "TooManyVariables", "CellPattern",
           "relation_of", "satisfies", "oracle_satisfiable", "oracle_models",
           "is_acyclic_relation", "acyclic_by_oracle", "is_dag_satisfying_check",
           "uniform_cycle", "ORACLE_MAX_VARIABLES"]

ORACLE_MAX_VARIABLES = 4


class UnassignedVariable(KeyError):
    pass


class TooManyVariables(ValueError):
    pass


class Interpretation(Mapping):
    """Variables mapped to non-empty sets of integer element ids."""

    __slots__ = ("_sets",)

    def __init__(self, assignment: Mapping[str, frozenset[int] | set[int]] | None = None):
        sets = {}
        for v, s in (assignment or {}).items():
            s = frozenset(s)
            if not s:
                raise ValueError(f"region {v!r} is empty")
            sets[v] = s
        self._sets = sets

    def __getitem__(self, v: str) -> frozenset[int]:
        try:
            return self._sets[v]
        except KeyError:
            raise UnassignedVariable(v) from None

    def __iter__(self):
        return iter(self._sets)

    def __len__(self) -> int:
        return len(self._sets)

    def __repr__(self) -> str:
        return f"Interpretation({self._sets!r})"

    def restrict(self, variables) -> "Interpretation":
        return Interpretation({v: self[v] for v in variables})

    def serialize(self) -> str:
        """``X = {1,2}`` lines in variable order of the mapping."""
        return "".join(f"{v} = {{{','.join(map(str, sorted(s)))}}}\n" for v, s in self._sets.items())

    @classmethod
    def from_text(cls, text: str) -> "Interpretation":
        sets = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            name, _, body = line.partition("=")
            body = body.strip()
            if not (body.startswith("{") and body.endswith("}")):
                raise ValueError(f"malformed witness line: {line!r}")
            sets[name.strip()] = {int(t) for t in body[1:-1].split(",") if t.strip()}
        return cls(sets)


def relation_of(i: Interpretation, x: str, y: str) -> BasicRelation:
    a, b = i[x], i[y]
    if a.isdisjoint(b):
        return BasicRelation.DR
    if a == b:
        return BasicRelation.EQ
    if a < b:
        return BasicRelation.PP
    if a > b:
        return BasicRelation.PPI
    return BasicRelation.PO


def satisfies(i: Interpretation, net: Network) -> bool:
    return all(relation_of(i, f.x, f.y) in f.rel for f in net.formulas)


@dataclass(frozen=True)
class CellPattern:
    """Occupied Venn cells over ``n`` variables; a cell is a bitmask of variables."""

    n: int
    occupied: tuple[int, ...]

    def __post_init__(self):
        cover = 0
        for c in self.occupied:
            if not 0 < c < 1 << self.n:
                raise ValueError(f"cell {c} out of range for {self.n} variables")
            cover |= c
        if cover != (1 << self.n) - 1:
            raise ValueError("every variable must lie in some occupied cell")

    @classmethod
    def from_index(cls, n: int, p: int) -> "CellPattern":
        ncell = (1 << n) - 1
        return cls(n, tuple(c for c in range(1, ncell + 1) if p >> (c - 1) & 1))

    def interpretation(self, variables) -> Interpretation:
        # element id k+1 realises the k-th occupied cell
        sets: dict[str, set[int]] = {v: set() for v in variables}
        for eid, c in enumerate(self.occupied, start=1):
            for i, v in enumerate(variables):
                if c >> i & 1:
                    sets[v].add(eid)
        return Interpretation(sets)

    def relation(self, i: int, j: int) -> BasicRelation:
        return basic_from_cells(self.occupied, i, j)


def _encode(net: Network):
    variables = net.variables
    if len(variables) > ORACLE_MAX_VARIABLES:
        raise TooManyVariables(
            f"oracle handles at most {ORACLE_MAX_VARIABLES} variables, got {len(variables)}")
    index = {v: k for k, v in enumerate(variables)}
    xs = np.array([index[f.x] for f in net.formulas], dtype=np.int64)
    ys = np.array([index[f.y] for f in net.formulas], dtype=np.int64)
    masks = np.array([f.rel.mask for f in net.formulas], dtype=np.int64)
    return variables, xs, ys, masks


def oracle_satisfiable(net: Network) -> tuple[bool, Interpretation | None]:
    """Decide satisfiability by trying every cell pattern (at most four variables).

    The witness comes from the least satisfying pattern index.
    """
    variables, xs, ys, masks = _encode(net)
    if not variables:
        return True, Interpretation()
    p = kernels.first_model(len(variables), xs, ys, masks)
    if p < 0:
        return False, None
    return True, CellPattern.from_index(len(variables), p).interpretation(variables)


def oracle_models(net: Network) -> Iterator[Interpretation]:
    """Every satisfying cell pattern of ``net``, as interpretations."""
    variables, xs, ys, masks = _encode(net)
    if not variables:
        yield Interpretation()
        return
    hits = kernels.model_patterns(len(variables), xs, ys, masks)
    for p in np.flatnonzero(hits).tolist():
        yield CellPattern.from_index(len(variables), p).interpretation(variables)


# --- semantic properties of relations ----------------------------------------

_ACYCLIC = {Relation(0), Relation.of("PP"), Relation.of("PPI")}


def uniform_cycle(r: Relation, length: int) -> Network:
    """Directed cycle ``V0 r V1 r ... r V0``; length 1 is a self-loop."""
    names = [f"V{k}" for k in range(length)]
    return Network(Formula(names[k], r, names[(k + 1) % length]) for k in range(length))


def acyclic_by_oracle(r: Relation, max_length: int = 3) -> bool:
    return not any(oracle_satisfiable(uniform_cycle(r, n))[0] for n in range(1, max_length + 1))


def is_acyclic_relation(r: Relation) -> bool:
    """True iff no cycle labelled throughout with ``r`` is satisfiable.

    Only the empty relation, {PP} and {PPI} qualify. The answer is
    cross-checked against the oracle on uniform cycles of length 1 to 3 and a
    mismatch raises.
    """
    verdict = r in _ACYCLIC
    if verdict != acyclic_by_oracle(r):
        raise AssertionError(f"acyclicity characterisation disagrees with oracle on {r}")
    return verdict


def _random_dag(rng: random.Random, n: int, density: float) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[a], order[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < density]


def is_dag_satisfying_check(b: BasicRelation, trials: int = 200, seed: int = 0,
                            large_nodes: int = 40) -> bool:
    """Falsification battery for "every DAG labelled by relations containing ``b`` is satisfiable".

    Small DAGs (up to four nodes) go to the oracle; larger ones get a
    constructed model that must pass the evaluator. This can refute the
    property but never prove it.
    """
    from .solvers import build_model_dag

    rng = random.Random(seed)
    supersets = [r for r in Relation.all() if b in r]
    for t in range(trials):
        n = 1 + t % 4 if t % 2 == 0 else rng.randint(5, large_nodes)
        arcs = _random_dag(rng, n, rng.uniform(0.2, 0.9))
        names = [f"N{k}" for k in range(n)]
        net = Network(Formula(names[u], rng.choice(supersets), names[v]) for u, v in arcs)
        if n <= ORACLE_MAX_VARIABLES:
            if not oracle_satisfiable(net)[0]:
                return False
        else:
            model = build_model_dag(names, [(names[u], names[v]) for u, v in arcs], b)
            if not satisfies(model, net):
                return False
    return True
