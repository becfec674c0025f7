from __future__ import annotations

import enum
from dataclasses import dataclass

from ..algebra import Subclass
from ..models import Interpretation, satisfies
from ..network import Network, relation_set


class Verdict(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"

    def __str__(self) -> str:
        return self.value


class PreconditionError(ValueError):
    """The instance uses a relation outside the solver's subclass."""


class InternalError(RuntimeError):
    """A constructed model failed verification; this is a bug, never an answer."""


@dataclass(frozen=True)
class SolveResult:
    verdict: Verdict
    algorithm: str
    model: Interpretation | None = None

    @property
    def satisfiable(self) -> bool:
        return self.verdict is Verdict.SAT

    def render(self, with_model: bool = False) -> str:
        out = f"{self.verdict}\nalgorithm {self.algorithm}\n"
        if with_model and self.model is not None:
            out += self.model.serialize()
        return out


def require_subclass(net: Network, allowed: Subclass, name: str) -> None:
    used = relation_set(net)
    if not used <= allowed:
        bad = Subclass(used.mask & ~allowed.mask)
        raise PreconditionError(f"{name} does not accept relations {bad}")


def unsat(tag: str) -> SolveResult:
    return SolveResult(Verdict.UNSAT, tag)


def sat(net: Network, tag: str, sets: dict | None) -> SolveResult:
    """Package a model over all variables of ``net`` after checking it."""
    if sets is None:
        return SolveResult(Verdict.SAT, tag)
    sets = dict(sets)
    spare = max((e for s in sets.values() for e in s), default=0) + 1
    for v in net.variables:
        if v not in sets:
            # unconstrained after normalisation: any fresh region will do
            sets[v] = {spare}
            spare += 1
    model = Interpretation({v: sets[v] for v in net.variables})
    if not satisfies(model, net):
        raise InternalError(f"{tag} built a model that does not satisfy the instance")
    return SolveResult(Verdict.SAT, tag, model)


class UnionFind:
    """Union-find over names; a class is represented by its least name."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self.parent[hi] = lo
        return lo
