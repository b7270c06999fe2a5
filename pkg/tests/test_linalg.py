import random
from fractions import Fraction

import numpy as np
import pytest

from khtwist.errors import KhtwistError
from khtwist.linalg import (SparseRationalMatrix, _core_rank_int,
                            _is_probable_prime, _random_prime_62,
                            _structural_peel, rank, rank_int_coo)


def dense_rank_oracle(matrix):
    """Naive dense Gauss-Jordan over Fractions."""
    dense = matrix.to_dense()
    nr, nc = matrix.rows, matrix.cols
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if dense[i][col]), None)
        if piv is None:
            continue
        dense[r], dense[piv] = dense[piv], dense[r]
        inv = 1 / dense[r][col]
        dense[r] = [x * inv for x in dense[r]]
        for i in range(nr):
            if i != r and dense[i][col]:
                f = dense[i][col]
                dense[i] = [a - f * b for a, b in zip(dense[i], dense[r])]
        r += 1
    return r


def random_matrix(rng, max_dim=10, rational=True):
    nr, nc = rng.randint(1, max_dim), rng.randint(1, max_dim)
    density = rng.uniform(0.1, 0.9)
    entries = []
    for i in range(nr):
        for j in range(nc):
            if rng.random() < density:
                if rational:
                    v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                else:
                    v = rng.randint(-6, 6)
                if v:
                    entries.append((i, j, v))
    return SparseRationalMatrix(nr, nc, entries)


def test_validation_rejects_bad_entries():
    with pytest.raises(KhtwistError):
        SparseRationalMatrix(2, 2, [(2, 0, 1)])
    with pytest.raises(KhtwistError):
        SparseRationalMatrix(2, 2, [(0, 0, 0)])
    with pytest.raises(KhtwistError):
        SparseRationalMatrix(2, 2, [(0, 0, 1), (0, 0, 2)])


def test_transpose_and_matmul():
    a = SparseRationalMatrix(2, 3, [(0, 0, 1), (0, 2, 2), (1, 1, -1)])
    at = a.transpose()
    assert (at.rows, at.cols) == (3, 2)
    prod = a.matmul(at)
    dense = {(r, c): v for r, c, v in prod.entries}
    assert dense == {(0, 0): 5, (1, 1): 1}
    with pytest.raises(KhtwistError):
        a.matmul(a)


def test_rank_against_dense_oracle():
    rng = random.Random(1234)
    for _ in range(100):
        m = random_matrix(rng)
        assert rank(m) == dense_rank_oracle(m)


def test_rank_transpose_invariance():
    rng = random.Random(99)
    for _ in range(40):
        m = random_matrix(rng)
        assert rank(m) == rank(m.transpose())


def test_rank_with_modular_cross_check():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matrix(rng)
        assert rank(m, verify_mod_prime=True) == dense_rank_oracle(m)


def test_jit_core_agrees_with_python_core():
    rng = random.Random(777)
    for _ in range(60):
        m = random_matrix(rng, rational=False)
        trip = [(r, c, int(v)) for r, c, v in m.entries]
        if not trip:
            continue
        rows = np.array([t[0] for t in trip], np.int64)
        cols = np.array([t[1] for t in trip], np.int64)
        vals = np.array([t[2] for t in trip], np.int64)
        assert rank_int_coo(m.rows, m.cols, rows, cols, vals) \
            == _core_rank_int(trip) == dense_rank_oracle(m)


def test_overflow_falls_back_to_exact_path():
    # values beyond the jit operand guard must still give exact answers
    big = 1 << 40
    entries = [(0, 0, big + 1), (0, 1, big - 1), (1, 0, big - 3),
               (1, 1, big + 3), (2, 0, 7), (2, 1, 11)]
    m = SparseRationalMatrix(3, 2, entries)
    assert rank(m) == dense_rank_oracle(m)


def test_structural_peel_is_rank_preserving():
    rng = random.Random(31)
    for _ in range(40):
        m = random_matrix(rng, rational=False)
        if not m.entries:
            continue
        rows = np.array([t[0] for t in m.entries], np.int64)
        cols = np.array([t[1] for t in m.entries], np.int64)
        peeled, rem = _structural_peel(m.rows, m.cols, rows, cols)
        core = [(int(rows[i]), int(cols[i]), int(m.entries[i][2]))
                for i in rem]
        assert peeled + _core_rank_int(core) == dense_rank_oracle(m)


def test_prime_helpers():
    p = _random_prime_62(random.Random(0))
    assert p.bit_length() == 62
    assert _is_probable_prime(p)
    assert not _is_probable_prime(p * 3)
