"""Prime-field linear algebra: worked examples and randomized invariants."""

import random

import numpy as np
import pytest

from qupitcube import fp

PRIMES = (3, 5, 7)


def test_check_prime():
    for p in (2, 3, 5, 7, 11):
        assert fp.check_prime(p) == p
    for bad in (1, 4, 6, 9, 15):
        with pytest.raises(ValueError):
            fp.check_prime(bad)


def test_inverse_examples():
    for p in PRIMES:
        assert fp.fp_inv(1, p) == 1
    assert fp.fp_inv(2, 5) == 3       # extended Euclid by hand: 2*3 = 6 = 1 mod 5
    assert fp.fp_inv(3, 7) == 5       # 3*5 = 15 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        fp.fp_inv(0, 5)


def test_mat_reduce_examples():
    rank, ns, det = fp.mat_reduce(np.eye(2, dtype=int), 5)
    assert (rank, len(ns), det) == (2, 0, 1)

    rank, ns, det = fp.mat_reduce([[1, 0], [1, 4]], 5)
    assert (rank, det) == (2, 4)      # cofactor expansion: 1*4 - 0*1

    rank, ns, det = fp.mat_reduce(np.zeros((3, 3), dtype=int), 5)
    assert (rank, len(ns), det) == (0, 3, 0)


def test_mat_inverse_examples():
    assert (fp.mat_inverse(np.eye(3, dtype=int), 7) == np.eye(3, dtype=int)).all()
    inv = fp.mat_inverse([[2, 0], [0, 3]], 5)
    assert (inv == [[3, 0], [0, 2]]).all()
    inv = fp.mat_inverse([[1, 1], [0, 1]], 3)
    assert (inv == [[1, 2], [0, 1]]).all()
    with pytest.raises(fp.SingularMatrixError):
        fp.mat_inverse([[1, 2], [2, 4]], 5)


def test_krylov_min_poly_examples():
    p = 5
    assert fp.krylov_min_poly(np.eye(2, dtype=int), [1, 0], p) == [p - 1, 1]  # x - 1
    N = [[0, 1], [0, 0]]
    assert fp.krylov_min_poly(N, [1, 0], p) == [0, 1]       # Tv = 0, so x
    assert fp.krylov_min_poly(N, [0, 1], p) == [0, 0, 1]    # T^2 v = 0, so x^2
    assert fp.krylov_min_poly(N, [0, 0], p) == [1]          # zero vector


def test_matrix_min_poly_examples():
    p = 5
    assert fp.matrix_min_poly(np.eye(2, dtype=int), p) == [p - 1, 1]
    assert fp.matrix_min_poly([[0, 1], [0, 0]], p) == [0, 0, 1]
    # (x-1)(x-2) = x^2 - 3x + 2
    assert fp.matrix_min_poly([[1, 0], [0, 2]], p) == [2, 2, 1]


def test_poly_division():
    p = 5
    a = fp.poly_mul([1, 1], [2, 3], p)
    q, r = fp.poly_divmod(a, [1, 1], p)
    assert q == [2, 3] and fp.poly_is_zero(r)
    assert fp.poly_divides([1, 1], a, p)
    assert not fp.poly_divides([2, 1], a, p)
    assert fp.poly_gcd(a, [1, 1], p) == fp.poly_monic([1, 1], p)


def _random_matrix(rng, p, rows, cols):
    return np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
                    dtype=np.int64)


def test_rank_nullspace_invariants():
    rng = random.Random(11)
    for p in PRIMES:
        for _ in range(1000):
            n = rng.randrange(1, 6)
            M = _random_matrix(rng, p, n, n)
            rank, ns, det = fp.mat_reduce(M, p)
            assert rank == fp.mat_rank(M.T, p)
            assert rank + len(ns) == n
            for v in ns:
                assert not ((M @ v) % p).any()
            assert (det != 0) == (len(ns) == 0)
            if det != 0:
                assert (fp.mat_mul(fp.mat_inverse(M, p), M, p) == np.eye(n, dtype=int)).all()


def test_divisibility_chain_and_krylov_independence():
    rng = random.Random(13)
    for p in PRIMES:
        for _ in range(500):
            T = _random_matrix(rng, p, 2, 2)
            v = np.array([rng.randrange(p), rng.randrange(p)], dtype=np.int64)
            mv = fp.krylov_min_poly(T, v, p)
            mt = fp.matrix_min_poly(T, p)
            chi = fp.char_poly_2x2(T, p)
            assert fp.poly_divides(mv, mt, p)
            assert fp.poly_divides(mt, chi, p)
            assert not fp.poly_eval_mat(mt, T, p).any()
            d = fp.poly_deg(mv)
            if d > 0:
                krylov = [v]
                for _ in range(d - 1):
                    krylov.append((T @ krylov[-1]) % p)
                assert fp.mat_rank(np.stack(krylov), p) == d
        # krylov | matrix for larger sizes (char closed form is 2x2 only)
        for _ in range(100):
            n = rng.randrange(3, 6)
            T = _random_matrix(rng, p, n, n)
            v = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
            assert fp.poly_divides(fp.krylov_min_poly(T, v, p),
                                   fp.matrix_min_poly(T, p), p)


def test_solve_consistency():
    rng = random.Random(17)
    for p in PRIMES:
        for _ in range(200):
            m, n = rng.randrange(1, 5), rng.randrange(1, 5)
            A = _random_matrix(rng, p, m, n)
            x = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
            b = (A @ x) % p
            sol = fp.solve(A, b, p)
            assert sol is not None
            assert ((A @ sol) % p == b).all()
