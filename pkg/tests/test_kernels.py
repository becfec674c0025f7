"""Numba and fallback flavours of every kernel must agree."""
import random

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from rcc5 import kernels
from rcc5._accel import HAVE_NUMBA
from rcc5.algebra import default_table
from rcc5.classifier import enumerate_small_subsets

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
TABLE = default_table()


@needs_numba
def test_closure_flavours_agree():
    masks = enumerate_small_subsets(2)
    rng = np.random.default_rng(1)
    masks = np.concatenate([masks, rng.integers(0, 1 << 32, 300, dtype=np.uint64).astype(np.uint32)])
    a = kernels._closure_masks_nb(masks, TABLE.compose_array, TABLE.converse_array)
    b = kernels._closure_masks_py(masks, TABLE.compose_array, TABLE.converse_array)
    assert np.array_equal(a, b)


def test_cell_table_shapes():
    for n, cells in ((1, 1), (2, 3), (3, 7), (4, 15)):
        rel, valid = kernels.cell_relation_table(n)
        assert rel.shape == (1 << cells, n, n)
        # diagonal is always EQ
        assert np.all(rel[valid][:, range(n), range(n)] == 4)
    _, valid = kernels.cell_relation_table(2)
    # patterns over 2 variables where both regions are non-empty
    assert int(valid.sum()) == 5


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_oracle_flavours_agree(seed):
    rng = np.random.default_rng(seed)
    rel, valid = kernels.cell_relation_table(4)
    for _ in range(50):
        k = rng.integers(1, 7)
        xs, ys = rng.integers(0, 4, k), rng.integers(0, 4, k)
        masks = rng.integers(0, 32, k)
        p_nb = kernels._first_model_nb(rel, valid, xs, ys, masks)
        p_py = kernels._first_model_py(rel, valid, xs, ys, masks)
        assert p_nb == p_py
        assert np.array_equal(kernels._model_patterns_nb(rel, valid, xs, ys, masks),
                              kernels._model_patterns_py(rel, valid, xs, ys, masks))


@needs_numba
@pytest.mark.parametrize("seed", range(10))
def test_path_consistency_flavours_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    lab = np.full((n, n), 31, dtype=np.uint8)
    np.fill_diagonal(lab, 16)
    conv = TABLE.converse_array
    for _ in range(n * 2):
        i, j = rng.choice(n, 2, replace=False)
        m = int(rng.integers(1, 32))
        lab[i, j] &= m
        lab[j, i] &= conv[m]
    a, b = lab.copy(), lab.copy()
    ok_a = kernels._path_consistency_nb(a, TABLE.compose_array, conv)
    ok_b = kernels._path_consistency_py(b, TABLE.compose_array, conv)
    assert ok_a == ok_b
    if ok_a:
        assert np.array_equal(a, b)


def _random_csr(rng, n, m):
    src = np.array([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    dst = np.array([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return src, dst, indptr, dst[order]


@pytest.mark.parametrize("seed", range(8))
def test_scc_matches_scipy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 60), rng.randint(0, 150)
    src, dst, indptr, indices = _random_csr(rng, n, m)
    k_ref, ref = connected_components(csr_matrix((np.ones(m), (src, dst)), shape=(n, n)),
                                      directed=True, connection="strong")
    flavours = [kernels._scc_py] + ([kernels._scc_nb] if HAVE_NUMBA else [])
    for fn in flavours:
        comp, k = fn(n, indptr, indices)
        assert k == k_ref
        # same partition up to relabelling
        pairs = set(zip(np.asarray(comp).tolist(), ref.tolist()))
        assert len(pairs) == k
        # completion order is reverse topological on the condensation
        for u, v in zip(src.tolist(), dst.tolist()):
            assert comp[u] >= comp[v]
