"""Compiled and pure-Python kernels must be bit-identical."""

import importlib.util

import numpy as np
import pytest

from permwalk import _kernels_py
from permwalk._backend import available_backends
from permwalk.permgroup import random_permutation

compiled = pytest.importorskip("permwalk._kernels",
                               reason="compiled extension not built")


def test_both_backends_visible():
    assert set(available_backends()) == {"python", "compiled"}


@pytest.mark.parametrize("n,k", [(1, 0), (4, 0), (4, 2), (7, 3), (12, 6), (16, 2)])
def test_enumerate_states_identical(n, k):
    a = _kernels_py.enumerate_states(n, k)
    b = compiled.enumerate_states(n, k)
    assert a.dtype == b.dtype == np.uint64
    assert np.array_equal(a, b)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (9, 4), (12, 2)])
def test_realize_perm_identical(n, k):
    rng = np.random.default_rng(n + k)
    states = _kernels_py.enumerate_states(n, k)
    for _ in range(5):
        sigma = random_permutation(n, rng)
        images0 = np.array([sigma(i + 1) - 1 for i in range(n)], dtype=np.int64)
        rows_a, signs_a = _kernels_py.realize_perm(states, k, images0)
        rows_b, signs_b = compiled.realize_perm(states, k, images0)
        assert np.array_equal(rows_a, rows_b)
        assert np.array_equal(signs_a, signs_b)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (10, 5)])
@pytest.mark.parametrize("signed", [True, False])
def test_bilinear_accumulate_identical(n, k, signed):
    rng = np.random.default_rng(3 * n + k)
    states = _kernels_py.enumerate_states(n, k)
    weights = rng.normal(size=(n, n))
    weights[rng.random((n, n)) < 0.3] = 0.0
    got_a = _kernels_py.bilinear_accumulate(states, weights, signed)
    got_b = compiled.bilinear_accumulate(states, np.ascontiguousarray(weights),
                                         signed)
    import scipy.sparse as sp

    dim = len(states)
    mat_a = sp.coo_matrix((got_a[2], (got_a[0], got_a[1])), shape=(dim, dim)).toarray()
    mat_b = sp.coo_matrix((got_b[2], (got_b[0], got_b[1])), shape=(dim, dim)).toarray()
    assert np.array_equal(mat_a, mat_b)
