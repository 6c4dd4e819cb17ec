from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import stirling

from sdlab.complex import face_vector, standard_simplex
from sdlab.polynomial import RationalPolynomial
from sdlab.spectral import (
    binomial_power_matrix,
    column_identity_holds,
    eigen_residual,
    increasing_sequences,
    lagrange_basis,
    lagrange_identity_check,
    lam,
    lambda_closed_form,
    lambda_recursive,
    limit_polynomial,
    limit_roots,
    q_partition,
    q_solve,
    transfer,
)
from sdlab.subdivision import interior_chains


def test_lambda_small_entries():
    L = lambda_recursive(4)
    assert (L(2, 1), L(2, 2), L(3, 2), L(3, 3)) == (1, 2, 6, 6)
    assert L(0, 0) == 1 and L(3, 0) == 0 and L(2, 3) == 0
    assert L.block(1) == [[1, 0], [1, 2]]


def test_lambda_counts_interior_faces():
    # lambda(i, j) = number of interior (j-1)-faces of Sd(Delta_{i-1})
    for i in range(1, 6):
        chains = interior_chains(i - 1)
        for j in range(1, i + 1):
            assert lam(i, j) == sum(1 for c in chains if len(c) == j)


def test_lambda_is_surjection_count():
    # independent oracle: surjections {1..i} -> {1..j} number j! S(i, j)
    L = lambda_closed_form(15)
    for i in range(1, 16):
        for j in range(1, i + 1):
            assert L(i, j) == factorial(j) * int(stirling(i, j))


def test_lambda_forms_agree():
    assert lambda_recursive(25) == lambda_closed_form(25)
    assert all(lam(i, i) == factorial(i) for i in range(1, 12))


def test_column_identity():
    assert column_identity_holds(15)


def test_binomial_power():
    assert binomial_power_matrix(1, 4)[3][1] == 6  # binom(4, 2)
    assert binomial_power_matrix(2, 3)[2][0] == 12
    M = binomial_power_matrix(4, 6)
    assert all(M[i][i] == 1 for i in range(6))


def test_lagrange():
    assert lagrange_basis(2) == RationalPolynomial([0, Fraction(-1, 2), Fraction(1, 2)])
    assert lagrange_identity_check(12) is None


def test_q_examples():
    assert q_solve(0) == [1]
    assert q_solve(1) == [1, 1]
    assert q_solve(2) == [Fraction(1, 2), Fraction(3, 2), 1]
    assert q_solve(3) == [Fraction(2, 11), Fraction(13, 11), 2, 1]


def test_partition_formula_examples():
    assert list(increasing_sequences(0, 2)) == [(1,), (1, 2)]
    assert q_partition(1) == [1, 1]
    assert q_partition(2) == q_solve(2)


@pytest.mark.parametrize("n", range(0, 10))
def test_q_routes_agree(n):
    q = q_solve(n)
    assert q == q_partition(n)
    assert all(x > 0 for x in q) and q[n] == 1


def test_q_matches_sympy_nullspace():
    # independent oracle: left eigenvector from sympy's exact linear algebra
    for n in range(1, 7):
        M = sympy.Matrix(lambda_recursive(n + 1).block(n)).T
        ns = (M - factorial(n + 1) * sympy.eye(n + 1)).nullspace()
        assert len(ns) == 1
        v = ns[0] / ns[0][n]
        assert [Fraction(int(x.p), int(x.q)) for x in v] == q_solve(n)


@pytest.mark.parametrize("n", range(0, 13))
def test_eigen_residual_zero(n):
    assert all(r == 0 for r in eigen_residual(n))


def test_transfer_examples():
    assert transfer((3, 3, 1), 2, 0) == (3, 3, 1)
    assert transfer((3, 3, 1), 2, 1) == (7, 12, 6)
    assert transfer((3, 3, 1), 2, 2) == (25, 60, 36)
    assert transfer((4, 6, 4), 2, 1) == (14, 36, 24)
    assert transfer(face_vector(standard_simplex(3)), 3, 2)[3] == 576
    with pytest.raises(ValueError):
        transfer((3, 3), 2, 1)


def test_ratio_table_approaches_q():
    q = q_solve(2)
    errs = []
    for d in range(1, 9):
        f = transfer((3, 3, 1), 2, d)
        errs.append(max(abs(Fraction(x, 6**d) - t) for x, t in zip(f, q)))
    assert all(b < a for a, b in zip(errs, errs[1:]))
    # the next eigenvalue of Lambda_2 is 2, so errors shrink by about 2/6 per level
    assert errs[-1] / errs[-2] < Fraction(1, 2)
    assert errs[-1] < Fraction(1, 10**3)


@given(st.integers(1, 5), st.integers(0, 4), st.lists(st.integers(0, 30), min_size=6, max_size=6))
def test_transfer_is_linear_and_composes(n, d, raw):
    f = tuple(raw[: n + 1])
    assert transfer(transfer(f, n, d), n, 1) == transfer(f, n, d + 1)
    assert transfer(tuple(2 * x for x in f), n, d) == tuple(2 * x for x in transfer(f, n, d))


def test_limit_roots_small():
    assert limit_roots(1).exact_roots() == [-1, 0]
    assert limit_roots(2).exact_roots() == [-1, Fraction(-1, 2), 0]
    assert limit_polynomial(2)(Fraction(-1, 2)) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_limit_roots_structure(n):
    iso = limit_roots(n)
    assert iso.count == n + 1
    assert all(m == 1 for m in iso.multiplicities)
    assert all(-1 <= lo and hi <= 0 for lo, hi in iso.intervals)
    mids = iso.midpoints()
    for i in range(n + 1):
        assert abs(mids[i] + mids[n - i] + 1) < Fraction(2, 10**12)
