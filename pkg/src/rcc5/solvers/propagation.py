"""Path consistency, its use as the R_5^28 decision procedure, and backtracking for all of R_5."""
from __future__ import annotations

import numpy as np

from .. import kernels
from ..algebra import CompositionTable, Relation, default_table
from ..catalog import R5_28
from ..network import Formula, Network, normalize
from ._base import InternalError, SolveResult, UnionFind, require_subclass, sat, unsat

DR, PO, PP, PPI, EQ = (1 << k for k in range(5))
VALUE_ORDER = (EQ, PP, PPI, PO, DR)
TOP = 31


def label_matrix(variables, net: Network, table: CompositionTable) -> np.ndarray:
    """Dense label matrix; unconstrained pairs are TOP and the diagonal is EQ."""
    index = {v: k for k, v in enumerate(variables)}
    n = len(variables)
    lab = np.full((n, n), TOP, dtype=np.uint8)
    np.fill_diagonal(lab, EQ)
    conv = table.converse_list
    for f in net.formulas:
        i, j = index[f.x], index[f.y]
        lab[i, j] &= f.rel.mask
        lab[j, i] &= conv[f.rel.mask]
    return lab


def path_consistency(net: Network, table: CompositionTable | None = None) -> Network | None:
    """Tighten every label by ``R_xy &= R_xz o R_zy`` to a fixpoint; None if some label empties.

    The result keeps each input arc's orientation and adds an arc for every
    other pair whose label dropped below TOP.
    """
    table = table or default_table()
    norm = normalize(net)
    if norm is None:
        return None
    variables = norm.variables
    lab = label_matrix(variables, norm, table)
    if not kernels.path_consistency(lab, table):
        return None
    index = {v: k for k, v in enumerate(variables)}
    out, seen = [], set()
    for f in norm.formulas:
        i, j = index[f.x], index[f.y]
        out.append(Formula(f.x, Relation(int(lab[i, j])), f.y))
        seen.add((min(i, j), max(i, j)))
    n = len(variables)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in seen and lab[i, j] != TOP:
                out.append(Formula(variables[i], Relation(int(lab[i, j])), variables[j]))
    return Network(out)


def build_model_atomic(variables, lab: np.ndarray) -> dict[str, set[int]]:
    """Model of a complete, atomic, path-consistent label matrix.

    EQ classes are merged. A class owns one private element and one element
    per PO partner; a region is the union of what its class and all its
    proper parts own.
    """
    n = len(variables)
    L = lab.tolist()
    uf = UnionFind(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if L[i][j] == EQ:
                uf.union(i, j)
    reps = sorted({uf.find(i) for i in range(n)})
    owned = {r: {k} for k, r in enumerate(reps, start=1)}
    alpha = len(reps)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if L[reps[a]][reps[b]] == PO:
                alpha += 1
                owned[reps[a]].add(alpha)
                owned[reps[b]].add(alpha)
    region = {}
    for r in reps:
        s = set(owned[r])
        for d in reps:
            if L[d][r] == PP:
                s |= owned[d]
        region[r] = s
    return {v: region[uf.find(i)] for i, v in enumerate(variables)}


def _search(lab: np.ndarray, pairs: list[tuple[int, int]], k: int, table: CompositionTable):
    conv = table.converse_list
    while k < len(pairs):
        i, j = pairs[k]
        m = int(lab[i, j])
        if m & (m - 1):
            break
        k += 1
    else:
        return lab
    for b in VALUE_ORDER:
        if not m & b:
            continue
        trial = lab.copy()
        trial[i, j] = b
        trial[j, i] = conv[b]
        if kernels.path_consistency(trial, table):
            found = _search(trial, pairs, k + 1, table)
            if found is not None:
                return found
    return None


def refine_to_atomic(variables, net: Network, table: CompositionTable) -> np.ndarray | None:
    """Depth-first search for a complete atomic path-consistent refinement.

    Pairs with a formula come first, in input order, then the rest; values are
    tried as EQ, PP, PPI, PO, DR.
    """
    lab = label_matrix(variables, net, table)
    if not kernels.path_consistency(lab, table):
        return None
    index = {v: k for k, v in enumerate(variables)}
    pairs, seen = [], set()
    for f in net.formulas:
        i, j = sorted((index[f.x], index[f.y]))
        if i != j and (i, j) not in seen:
            seen.add((i, j))
            pairs.append((i, j))
    n = len(variables)
    pairs += [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in seen]
    return _search(lab, pairs, 0, table)


def solve_backtracking(net: Network, table: CompositionTable | None = None) -> SolveResult:
    table = table or default_table()
    norm = normalize(net)
    if norm is None:
        return unsat("bt")
    variables = norm.variables
    atomic = refine_to_atomic(variables, norm, table)
    if atomic is None:
        return unsat("bt")
    return sat(net, "bt", build_model_atomic(variables, atomic))


def solve_pc(net: Network, table: CompositionTable | None = None) -> SolveResult:
    """Path consistency as a decision procedure for R_5^28.

    A consistent verdict is backed by an atomic refinement; failing to find
    one would refute completeness on this fragment and raises.
    """
    require_subclass(net, R5_28, "pc")
    table = table or default_table()
    tightened = path_consistency(net, table)
    if tightened is None:
        return unsat("pc")
    atomic = refine_to_atomic(tightened.variables, tightened, table)
    if atomic is None:
        raise InternalError("path consistency accepted an R_5^28 instance with no atomic refinement")
    return sat(net, "pc", build_model_atomic(tightened.variables, atomic))
