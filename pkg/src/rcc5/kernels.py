"""Hot loops, each in a numba flavour (``*_nb``) and a numpy/Python flavour (``*_py``).

The public names at the bottom pick one flavour according to
:data:`rcc5._accel.USE_NUMBA`. Both flavours are importable regardless so
tests and the benchmark can compare them.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._accel import USE_NUMBA, njit

EQ_MASK = 1 << 4
TOP_MASK = 31


# --- subclass closure ------------------------------------------------------

@njit
def _closure_masks_nb(masks, comp, conv):
    out = np.empty(masks.size, dtype=np.uint32)
    members = np.empty(32, dtype=np.int64)
    for k in range(masks.size):
        m = np.int64(masks[k])
        cur = np.int64(0)
        n = 0
        for r in range(32):
            if (m >> r) & 1:
                members[n] = r
                n += 1
                cur |= np.int64(1) << r
        i = 0
        while i < n:
            r = members[i]
            c = np.int64(conv[r])
            if not (cur >> c) & 1:
                cur |= np.int64(1) << c
                members[n] = c
                n += 1
            top = n
            for j in range(top):
                t = members[j]
                for v in (r & t, np.int64(comp[r, t]), np.int64(comp[t, r])):
                    if not (cur >> v) & 1:
                        cur |= np.int64(1) << v
                        members[n] = v
                        n += 1
            i += 1
        out[k] = cur
    return out


_BITS = np.uint64(1) << np.arange(32, dtype=np.uint64)
_IDX = np.arange(32, dtype=np.int64)


def _closure_masks_py(masks, comp, conv):
    comp = np.asarray(comp, dtype=np.int64)
    conv = np.asarray(conv, dtype=np.int64)
    out = np.empty(len(masks), dtype=np.uint32)
    for k, m in enumerate(np.asarray(masks).tolist()):
        cur = int(m)
        while cur:
            mem = _IDX[(cur >> _IDX) & 1 == 1]
            vals = np.concatenate((conv[mem], comp[np.ix_(mem, mem)].ravel(),
                                   (mem[:, None] & mem[None, :]).ravel()))
            new = cur | int(np.bitwise_or.reduce(_BITS[vals]))
            if new == cur:
                break
            cur = new
        out[k] = cur
    return out


# --- Venn-cell oracle ------------------------------------------------------

@lru_cache(maxsize=None)
def cell_relation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Basic relation of every variable pair under every cell-occupancy pattern.

    Returns ``(rel, valid)``: ``rel[p, i, j]`` is the basic-relation index
    between variables ``i`` and ``j`` when the occupied cells are the set
    bits of ``p`` (bit ``c - 1`` stands for cell ``c``); ``valid[p]`` says
    that every variable is non-empty.
    """
    if not 1 <= n <= 4:
        raise ValueError("cell tables exist for 1..4 variables")
    ncell = (1 << n) - 1
    npat = 1 << ncell
    occ = ((np.arange(npat, dtype=np.int64)[:, None] >> np.arange(ncell)) & 1).astype(bool)
    cells = np.arange(1, ncell + 1)
    inside = [(cells >> i) & 1 == 1 for i in range(n)]
    valid = np.ones(npat, dtype=bool)
    for i in range(n):
        valid &= occ[:, inside[i]].any(axis=1)
    rel = np.empty((npat, n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(n):
            both = occ[:, inside[i] & inside[j]].any(axis=1)
            oi = occ[:, inside[i] & ~inside[j]].any(axis=1)
            oj = occ[:, ~inside[i] & inside[j]].any(axis=1)
            code = np.full(npat, 4, dtype=np.uint8)        # EQ
            code[both & oi & ~oj] = 3                       # PPI
            code[both & ~oi & oj] = 2                       # PP
            code[both & oi & oj] = 1                        # PO
            code[~both] = 0                                 # DR
            rel[:, i, j] = code
    rel.setflags(write=False)
    valid.setflags(write=False)
    return rel, valid


@njit
def _first_model_nb(rel, valid, xs, ys, masks):
    for p in range(rel.shape[0]):
        if not valid[p]:
            continue
        ok = True
        for k in range(xs.size):
            if not (masks[k] >> rel[p, xs[k], ys[k]]) & 1:
                ok = False
                break
        if ok:
            return p
    return -1


@njit
def _model_patterns_nb(rel, valid, xs, ys, masks):
    out = np.zeros(rel.shape[0], dtype=np.bool_)
    for p in range(rel.shape[0]):
        if not valid[p]:
            continue
        ok = True
        for k in range(xs.size):
            if not (masks[k] >> rel[p, xs[k], ys[k]]) & 1:
                ok = False
                break
        out[p] = ok
    return out


def _model_patterns_py(rel, valid, xs, ys, masks):
    ok = valid.copy()
    for x, y, m in zip(np.asarray(xs).tolist(), np.asarray(ys).tolist(), np.asarray(masks).tolist()):
        ok &= (np.int64(m) >> rel[:, x, y].astype(np.int64)) & 1 == 1
    return ok


def _first_model_py(rel, valid, xs, ys, masks):
    hits = np.flatnonzero(_model_patterns_py(rel, valid, xs, ys, masks))
    return int(hits[0]) if hits.size else -1


# --- path consistency ------------------------------------------------------

@njit
def _path_consistency_nb(lab, comp, conv):
    n = lab.shape[0]
    for i in range(n):
        for j in range(n):
            if lab[i, j] == 0:
                return False
    size = n * n + 1
    qa = np.empty(size, dtype=np.int64)
    qb = np.empty(size, dtype=np.int64)
    inq = np.zeros((n, n), dtype=np.bool_)
    head = 0
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            qa[(head + count) % size] = i
            qb[(head + count) % size] = j
            inq[i, j] = True
            count += 1
    while count > 0:
        i = qa[head]
        j = qb[head]
        head = (head + 1) % size
        count -= 1
        inq[i, j] = False
        for k in range(n):
            if k == i or k == j:
                continue
            t = lab[i, k] & comp[lab[i, j], lab[j, k]]
            if t != lab[i, k]:
                if t == 0:
                    return False
                lab[i, k] = t
                lab[k, i] = conv[t]
                a, b = (i, k) if i < k else (k, i)
                if not inq[a, b]:
                    inq[a, b] = True
                    qa[(head + count) % size] = a
                    qb[(head + count) % size] = b
                    count += 1
            t = lab[k, j] & comp[lab[k, i], lab[i, j]]
            if t != lab[k, j]:
                if t == 0:
                    return False
                lab[k, j] = t
                lab[j, k] = conv[t]
                a, b = (k, j) if k < j else (j, k)
                if not inq[a, b]:
                    inq[a, b] = True
                    qa[(head + count) % size] = a
                    qb[(head + count) % size] = b
                    count += 1
    return True


def _path_consistency_py(lab, comp, conv):
    from collections import deque

    n = lab.shape[0]
    L = lab.tolist()
    comp = comp.tolist() if isinstance(comp, np.ndarray) else comp
    conv = conv.tolist() if isinstance(conv, np.ndarray) else conv
    if any(0 in row for row in L):
        return False
    queue = deque((i, j) for i in range(n) for j in range(i + 1, n))
    inq = set(queue)
    ok = True
    while queue and ok:
        i, j = queue.popleft()
        inq.discard((i, j))
        for k in range(n):
            if k == i or k == j:
                continue
            t = L[i][k] & comp[L[i][j]][L[j][k]]
            if t != L[i][k]:
                if not t:
                    ok = False
                    break
                L[i][k] = t
                L[k][i] = conv[t]
                e = (i, k) if i < k else (k, i)
                if e not in inq:
                    inq.add(e)
                    queue.append(e)
            t = L[k][j] & comp[L[k][i]][L[i][j]]
            if t != L[k][j]:
                if not t:
                    ok = False
                    break
                L[k][j] = t
                L[j][k] = conv[t]
                e = (k, j) if k < j else (j, k)
                if e not in inq:
                    inq.add(e)
                    queue.append(e)
    lab[:, :] = np.asarray(L, dtype=lab.dtype).reshape(n, n)
    return ok


# --- strongly connected components ------------------------------------------

@njit
def _scc_nb(n, indptr, indices):
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    onstack = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    cnode = np.empty(n, dtype=np.int64)
    cpos = np.empty(n, dtype=np.int64)
    comp = np.full(n, -1, dtype=np.int64)
    sp = 0
    ncomp = 0
    counter = 0
    for s in range(n):
        if index[s] != -1:
            continue
        index[s] = counter
        low[s] = counter
        counter += 1
        stack[sp] = s
        sp += 1
        onstack[s] = True
        cnode[0] = s
        cpos[0] = indptr[s]
        csp = 1
        while csp > 0:
            v = cnode[csp - 1]
            p = cpos[csp - 1]
            if p < indptr[v + 1]:
                w = indices[p]
                cpos[csp - 1] = p + 1
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = True
                    cnode[csp] = w
                    cpos[csp] = indptr[w]
                    csp += 1
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                csp -= 1
                if csp > 0:
                    u = cnode[csp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return comp, ncomp


def _scc_py(n, indptr, indices):
    indptr = np.asarray(indptr).tolist()
    indices = np.asarray(indices).tolist()
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    ncomp = 0
    counter = 0
    for s in range(n):
        if index[s] != -1:
            continue
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        onstack[s] = True
        work = [(s, indptr[s])]
        while work:
            v, p = work[-1]
            if p < indptr[v + 1]:
                w = indices[p]
                work[-1] = (v, p + 1)
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, indptr[w]))
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return np.asarray(comp, dtype=np.int64), ncomp


# --- public dispatch ---------------------------------------------------------

def closure_masks(masks: np.ndarray, table) -> np.ndarray:
    """Closure masks for a batch of subclass masks."""
    masks = np.ascontiguousarray(masks, dtype=np.uint32)
    fn = _closure_masks_nb if USE_NUMBA else _closure_masks_py
    return fn(masks, table.compose_array, table.converse_array)


def _arrays(xs, ys, masks):
    return (np.ascontiguousarray(xs, dtype=np.int64), np.ascontiguousarray(ys, dtype=np.int64),
            np.ascontiguousarray(masks, dtype=np.int64))


def first_model(n: int, xs, ys, masks) -> int:
    """Least satisfying cell pattern for the given formulas over ``n`` variables, or -1."""
    rel, valid = cell_relation_table(n)
    fn = _first_model_nb if USE_NUMBA else _first_model_py
    return int(fn(rel, valid, *_arrays(xs, ys, masks)))


def model_patterns(n: int, xs, ys, masks) -> np.ndarray:
    """Boolean vector over all cell patterns marking the satisfying ones."""
    rel, valid = cell_relation_table(n)
    fn = _model_patterns_nb if USE_NUMBA else _model_patterns_py
    return fn(rel, valid, *_arrays(xs, ys, masks))


def path_consistency(lab: np.ndarray, table) -> bool:
    """Tighten the label matrix in place; False as soon as a label empties."""
    fn = _path_consistency_nb if USE_NUMBA else _path_consistency_py
    return bool(fn(lab, table.compose_array, table.converse_array))


def strongly_connected(n: int, indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, int]:
    """Tarjan SCC labels over a CSR graph.

    Components are numbered in completion order, which is a reverse
    topological order of the condensation.
    """
    if USE_NUMBA:
        comp, k = _scc_nb(n, np.ascontiguousarray(indptr, dtype=np.int64),
                          np.ascontiguousarray(indices, dtype=np.int64))
        return comp, int(k)
    return _scc_py(n, indptr, indices)
