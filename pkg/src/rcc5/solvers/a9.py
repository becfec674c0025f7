"""R_5^9 via strongly connected components, and R_5^14 by rewriting into R_5^9."""
from __future__ import annotations

from collections import deque
from itertools import count

import numpy as np

from .. import kernels
from ..algebra import BasicRelation, CompositionTable, DerivedRelation, Relation, Subclass, closure
from ..catalog import R5_9, R5_14
from ..models import Interpretation
from ..network import Formula, Network
from ._base import SolveResult, require_subclass, sat, unsat

EQ = 1 << 4
PP_EQ = (1 << 2) | EQ


class RewriteError(ValueError):
    pass


# --- model builders ----------------------------------------------------------

def topological_order(nodes, arcs) -> list:
    """Kahn order of ``nodes``; raises ValueError if ``arcs`` contain a cycle."""
    succ = {v: [] for v in nodes}
    indeg = dict.fromkeys(nodes, 0)
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    ready = deque(v for v in nodes if indeg[v] == 0)
    order = []
    while ready:
        u = ready.popleft()
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if len(order) != len(indeg):
        raise ValueError("graph has a cycle")
    return order


def build_model_dag(nodes, arcs, b: BasicRelation = BasicRelation.PP) -> Interpretation:
    """A model in which every arc ``u -> v`` of the DAG holds as ``b``.

    For PP this is the terminal-node induction: walking a topological order,
    each node receives everything assigned so far plus one fresh element.
    """
    order = topological_order(nodes, arcs)
    if b is BasicRelation.PP or b is BasicRelation.PPI:
        if b is BasicRelation.PPI:
            order.reverse()
        sets, acc = {}, set()
        for k, v in enumerate(order, start=1):
            acc.add(k)
            sets[v] = frozenset(acc)
        return Interpretation(sets)
    if b is BasicRelation.EQ:
        return Interpretation({v: {1} for v in order})
    if b is BasicRelation.DR:
        return Interpretation({v: {k} for k, v in enumerate(order, start=1)})
    return Interpretation({v: {0, k} for k, v in enumerate(order, start=1)})


def reorient(nodes, dag_arcs, free_arcs) -> list[tuple]:
    """Orient ``free_arcs`` so that together with ``dag_arcs`` no cycle remains.

    Each free arc points from the earlier to the later node of a
    topological order of the acyclic part. Returns ``(u, v, flipped)``.
    """
    rank = {v: k for k, v in enumerate(topological_order(nodes, dag_arcs))}
    out = []
    for u, v in free_arcs:
        if u == v:
            raise ValueError("reorientation needs an irreflexive graph")
        out.append((u, v, False) if rank[u] < rank[v] else (v, u, True))
    return out


def build_model_reorient(nodes, dag_arcs, free_arcs) -> Interpretation:
    """Model for an irreflexive graph whose acyclic part is PP-labelled and the rest PP/PPI-labelled."""
    oriented = [(u, v) for u, v, _ in reorient(nodes, dag_arcs, free_arcs)]
    return build_model_dag(nodes, list(dag_arcs) + oriented, BasicRelation.PP)


# --- A9 ----------------------------------------------------------------------

def a9_components(net: Network):
    """Index the instance and compute SCCs of its {PP,EQ} subgraph.

    Returns ``(variables, xs, ys, masks, comp, ncomp)`` with numpy arrays.
    """
    variables = net.variables
    index = {v: k for k, v in enumerate(variables)}
    fs = net.formulas
    xs = np.fromiter((index[f.x] for f in fs), dtype=np.int64, count=len(fs))
    ys = np.fromiter((index[f.y] for f in fs), dtype=np.int64, count=len(fs))
    masks = np.fromiter((f.rel.mask for f in fs), dtype=np.int64, count=len(fs))
    n = len(variables)
    keep = masks == PP_EQ
    src, dst = xs[keep], ys[keep]
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    comp, ncomp = kernels.strongly_connected(n, indptr, dst[order])
    return variables, xs, ys, masks, comp, ncomp


def solve_a9(net: Network, with_model: bool = True) -> SolveResult:
    """Decide an instance over R_5^9 in linear time.

    Rejects iff an arc whose label lacks EQ joins two nodes of one strongly
    connected component of the {PP,EQ} arcs. ``with_model=False`` skips the
    witness, whose chain of nested sets is quadratic in size.
    """
    require_subclass(net, R5_9, "a9")
    variables, xs, ys, masks, comp, ncomp = a9_components(net)
    noeq = (masks & EQ) == 0
    if np.any(comp[xs[noeq]] == comp[ys[noeq]]):
        return unsat("a9")
    if not with_model:
        return sat(net, "a9", None)
    # collapse components, then orient the remaining free arcs along the {PP,EQ} DAG
    cx, cy = comp[xs].tolist(), comp[ys].tolist()
    dag, free = set(), set()
    for a, b, m in zip(cx, cy, masks.tolist()):
        if a == b:
            continue
        (dag if m == PP_EQ else free).add((a, b))
    comp_model = build_model_reorient(range(ncomp), sorted(dag), sorted(free))
    return sat(net, "a9", {v: comp_model[c] for v, c in zip(variables, comp.tolist())})


# --- closure rewriting ---------------------------------------------------------

def closure_rewrite_table(base: Subclass, table: CompositionTable | None = None) -> dict[Relation, DerivedRelation]:
    """Derivation of every relation in the closure of ``base`` from members of ``base``."""
    return closure(base, table)


_R14_TABLE: dict[Relation, DerivedRelation] | None = None


def _r14_table() -> dict[Relation, DerivedRelation]:
    global _R14_TABLE
    if _R14_TABLE is None:
        _R14_TABLE = closure_rewrite_table(R5_9)
    return _R14_TABLE


def rewrite_closure_instance(net: Network, base: Subclass,
                             table: dict[Relation, DerivedRelation] | None = None) -> Network:
    """Replace every formula by a gadget over ``base`` following its derivation.

    Converse flips the endpoints, intersection emits both parts on the same
    pair, and composition routes through a fresh variable. The result is
    equisatisfiable with ``net`` and only uses relations of ``base``.
    """
    table = table if table is not None else closure_rewrite_table(base)
    used = set(net.variables)
    ids = count(1)

    def fresh() -> str:
        while True:
            name = f"_z{next(ids)}"
            if name not in used:
                used.add(name)
                return name

    out: list[Formula] = []

    def emit(d: DerivedRelation, x: str, y: str) -> None:
        if d.op == "given":
            if d.relation not in base:
                raise RewriteError(f"derivation leaf {d.relation} is not in the base subclass")
            out.append(Formula(x, d.relation, y))
        elif d.op == "converse":
            emit(d.args[0], y, x)
        elif d.op == "intersect":
            emit(d.args[0], x, y)
            emit(d.args[1], x, y)
        elif d.op == "compose":
            z = fresh()
            emit(d.args[0], x, z)
            emit(d.args[1], z, y)
        else:
            raise RewriteError(f"unknown derivation op {d.op!r}")

    for f in net.formulas:
        try:
            d = table[f.rel]
        except KeyError:
            raise RewriteError(f"no derivation for {f.rel}") from None
        emit(d, f.x, f.y)
    return Network(out)


def solve_r5_14(net: Network, with_model: bool = True) -> SolveResult:
    """Rewrite into R_5^9 and run A9; fresh gadget variables are dropped from the model."""
    require_subclass(net, R5_14, "r514")
    rewritten = rewrite_closure_instance(net, R5_9, _r14_table())
    res = solve_a9(rewritten, with_model=with_model)
    if not res.satisfiable:
        return unsat("r514")
    if res.model is None:
        return sat(net, "r514", None)
    return sat(net, "r514", {v: res.model[v] for v in net.variables if v in res.model})
