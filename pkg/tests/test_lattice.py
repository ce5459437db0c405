import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qaffine.lattice import (Lattice, coordinate_section, determinant, hermite_normal_form,
                             integer_kernel, matmul, projection, rank, smith_normal_form,
                             solve_membership, transpose)

from helpers import random_matrix

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def is_hermite(H):
    last = -1
    zero_seen = False
    for row in H:
        nz = [j for j, a in enumerate(row) if a]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen, "zero rows must come last"
        p = nz[0]
        assert p > last and row[p] > 0
        last = p
    # entries above each pivot reduced into [0, pivot)
    for i, row in enumerate(H):
        nz = [j for j, a in enumerate(row) if a]
        if not nz:
            continue
        p = nz[0]
        for k in range(i):
            assert 0 <= H[k][p] < row[p]
    return True


def test_hnf_small_known():
    H, U = hermite_normal_form([[2, 4], [6, 8]])
    assert H == ((2, 0), (0, 4))
    assert matmul(U, [[2, 4], [6, 8]]) == H


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(determinant(U)) == 1
    assert is_hermite(H)
    assert rank(H) == sympy.Matrix(M).rank()


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_against_sympy(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    ref = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(diag) == ref_diag


def test_determinant_matches_sympy():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert determinant(M) == sympy.Matrix(M).det()


def brute_kernel(M, bound=3):
    cols = len(M[0])
    for x in itertools.product(range(-bound, bound + 1), repeat=cols):
        if all(sum(a * b for a, b in zip(row, x)) == 0 for row in M):
            yield x


def test_kernel_against_enumeration():
    rng = random.Random(11)
    for _ in range(60):
        M = random_matrix(rng)
        K = integer_kernel(M)
        cols = len(M[0])
        assert K.rank == cols - sympy.Matrix(M).rank()
        for v in K.basis:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        for x in brute_kernel(M):
            assert x in K


def test_kernel_is_saturated():
    # 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2)
    K = integer_kernel([[2, -4]])
    assert K.basis == ((2, 1),)


def test_kernel_empty_matrix():
    assert integer_kernel([], 3) == Lattice.full(3)
    with pytest.raises(ValueError):
        integer_kernel([])


def test_membership_and_sections():
    S = Lattice.from_generators([[1, 0, 1, -1], [0, 1, 1, -2]], 4)
    assert solve_membership(S, (1, -1, 0, 1)) == (1, -1)
    assert solve_membership(S, (1, 0, 0, 0)) is None
    sec = coordinate_section(S, [2])
    assert sec.rank == 1 and (1, -1, 0, 1) in sec
    proj = projection(S, [2, 3])
    assert proj.rank == 2


def test_transpose_shapes():
    assert transpose([[1, 2, 3]]) == ((1,), (2,), (3,))
    assert transpose([], 2) == ((), ())
