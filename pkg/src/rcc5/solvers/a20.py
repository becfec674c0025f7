"""The two rewriting-free fragments: EQ-containing labels and the DR/PO-heavy algebra."""
from __future__ import annotations

from ..algebra import EQ_REL, converse, Relation
from ..catalog import R5_17, R5_20
from ..network import Network
from ._base import SolveResult, UnionFind, require_subclass, sat, unsat

EQ = EQ_REL.mask
PO = 1 << 1


def solve_a17(net: Network) -> SolveResult:
    """Reject iff some label is empty; otherwise every region is the same set."""
    require_subclass(net, R5_17, "a17")
    if any(not f.rel for f in net.formulas):
        return unsat("a17")
    return sat(net, "a17", {v: {1} for v in net.variables})


def _orient(theta: set[tuple[str, int, str]]) -> set[tuple[str, int, str]]:
    # one formula per unordered pair: Y S X is read as X S~ Y, then parallel labels are intersected
    merged: dict[tuple[str, str], int] = {}
    for x, m, y in theta:
        if x != y and x > y:
            x, y, m = y, x, converse(Relation(m)).mask
        merged[x, y] = merged.get((x, y), 31) & m
    return {(x, m, y) for (x, y), m in merged.items()}


def a20_passes(net: Network):
    """Run the A20 loop, yielding ``(theta, union_find)`` at the start of every pass.

    Returns (via ``StopIteration.value``) None on rejection, else the final
    state. Each pass applies, in order: reflexive-without-EQ rejection, empty
    label rejection, EQ substitution, merging of parallel formulas, and
    removal of reflexive formulas that admit EQ.
    """
    uf = UnionFind(net.variables)
    # orientation is fixed up front so that a pass never just flips formulas
    theta = _orient({(f.x, f.rel.mask, f.y) for f in net.formulas})
    while True:
        yield theta, uf
        before = theta
        if any(x == y and not m & EQ for x, m, y in theta):
            return None
        if any(m == 0 for _, m, _ in theta):
            return None
        eqs = sorted((x, y) for x, m, y in theta if x != y and m == EQ)
        if eqs:
            for x, y in eqs:
                uf.union(x, y)
            theta = {(uf.find(x), m, uf.find(y)) for x, m, y in theta}
        theta = _orient(theta)
        theta = {(x, m, y) for x, m, y in theta if not (x == y and m & EQ)}
        if theta == before:
            return theta, uf


def _run(gen):
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value


def solve_a20(net: Network) -> SolveResult:
    """Decide an instance over R_5^20 and build the disjoint-plus-shared-element model."""
    require_subclass(net, R5_20, "a20")
    final = _run(a20_passes(net))
    if final is None:
        return unsat("a20")
    theta, uf = final
    reps = sorted({uf.find(v) for v in net.variables})
    sets = {r: {k} for k, r in enumerate(reps, start=1)}
    alpha = len(reps)
    for x, m, y in sorted(theta):
        if m in (PO, PO | EQ):
            alpha += 1
            sets[x].add(alpha)
            sets[y].add(alpha)
    return sat(net, "a20", {v: sets[uf.find(v)] for v in net.variables})
