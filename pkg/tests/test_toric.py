import random

import pytest

from qaffine.algebra import LaurentCoefficient
from qaffine.bichar import eval_c, eval_sigma, validate
from qaffine.limit import poisson_matrix
from qaffine.toric import (GradedElement, GradingData, diagram_commute_check, generator, grading,
                           graded_poisson_bracket, pullback, twisted_multiply)

from helpers import random_antisymmetric


def random_grading(rng, max_d=3, max_n=4, max_m=2):
    d = rng.randint(1, max_d)
    n = rng.randint(1, max_n)
    D = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(d)]
    L = [random_antisymmetric(rng, d, 3) for _ in range(rng.randint(1, max_m))]
    return grading(D, L)


def test_pullback_examples():
    g = grading([[1, 0, 1], [0, 1, 1]], [[[0, 1], [-1, 0]]])
    # direct product D^T L D
    D = [[1, 0, 1], [0, 1, 1]]
    L = [[0, 1], [-1, 0]]
    want = [[sum(D[a][i] * L[a][c] * D[c][j] for a in range(2) for c in range(2)) for j in range(3)]
            for i in range(3)]
    assert [list(r) for r in pullback(g).L[0]] == want
    # deg r_3 = deg r_1 + deg r_2, so c^(e_2, e_3) = c(d_2, d_1) = lambda^-1
    assert want == [[0, 1, 1], [-1, 0, -1], [-1, 1, 0]]


def test_pullback_identity_and_rank_one():
    L = [[0, 2, -1], [-2, 0, 3], [1, -3, 0]]
    g = grading([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [L])
    assert [list(r) for r in pullback(g).L[0]] == L
    g = grading([[1, 1, 1]], [[[0]]])
    assert all(x == 0 for row in pullback(g).L[0] for x in row)


def test_pullback_matches_grading_pairing():
    rng = random.Random(51)
    for _ in range(30):
        g = random_grading(rng)
        hat = pullback(g)
        for _ in range(5):
            s = tuple(rng.randint(-3, 3) for _ in range(g.n))
            t = tuple(rng.randint(-3, 3) for _ in range(g.n))
            assert eval_c(hat, s, t) == eval_c(g.c_G, g.degree_of(s), g.degree_of(t))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        GradingData(((1, 0),), validate([[[0, 1], [-1, 0]]], 2))
    g = grading([[1, 0], [0, 1]], [[[0, 1], [-1, 0]]])
    with pytest.raises(ValueError):
        twisted_multiply(g, GradedElement.homogeneous((1,)), GradedElement.homogeneous((0, 1)))


def test_twisted_multiply_rules():
    g = grading([[1, 0], [0, 1]], [[[0, 1], [-1, 0]]])
    one = LaurentCoefficient.one(1)
    u = GradedElement.homogeneous((0, 0), one)
    a = GradedElement.homogeneous((2, 1), one)
    b = GradedElement.homogeneous((-1, 3), one)
    assert twisted_multiply(g, u, a) == a
    ab = twisted_multiply(g, a, b)
    assert ab.terms == {(1, 4): LaurentCoefficient.monomial(eval_c(g.c_G, (2, 1), (-1, 3)))}
    ba = twisted_multiply(g, b, a)
    ratio = ab.terms[(1, 4)] * ba.terms[(1, 4)] ** -1
    assert ratio == LaurentCoefficient.monomial(eval_sigma(g.c_G, (2, 1), (-1, 3)))


def test_twisted_associativity_random():
    rng = random.Random(52)
    for _ in range(20):
        g = random_grading(rng)
        one = LaurentCoefficient.one(g.c_G.m)
        elems = [GradedElement(g.d, {tuple(rng.randint(-2, 2) for _ in range(g.d)): one,
                                      tuple(rng.randint(-2, 2) for _ in range(g.d)): one * 2})
                 for _ in range(3)]
        x, y, z = elems
        assert twisted_multiply(g, twisted_multiply(g, x, y), z) == twisted_multiply(g, x, twisted_multiply(g, y, z))


def test_graded_bracket():
    g = grading([[1, 0, 1], [0, 1, 1]], [[[0, 1], [-1, 0]]])
    U = poisson_matrix(g.c_G)
    r = [generator(g, i, U.ring.one) for i in range(3)]
    br = graded_poisson_bracket(g, r[0], r[1], U)
    assert br == GradedElement(2, {(1, 1): 2 * U.mu[0]})
    assert not graded_poisson_bracket(g, r[2], r[2], U)
    rng = random.Random(53)
    for _ in range(10):
        gg = random_grading(rng)
        UU = poisson_matrix(gg.c_G)
        x, y, z = (GradedElement(gg.d, {tuple(rng.randint(-2, 2) for _ in range(gg.d)): UU.ring.one})
                   for _ in range(3))
        jac = (graded_poisson_bracket(gg, x, graded_poisson_bracket(gg, y, z, UU), UU)
               + graded_poisson_bracket(gg, y, graded_poisson_bracket(gg, z, x, UU), UU)
               + graded_poisson_bracket(gg, z, graded_poisson_bracket(gg, x, y, UU), UU))
        assert not jac


def test_diagram_check_example():
    g = grading([[1, 0, 1], [0, 1, 1]], [[[0, 1], [-1, 0]]])
    rep = diagram_commute_check(g, (2, 1, 1))
    assert rep.passed and rep.degree == (3, 2)
    with pytest.raises(ValueError):
        diagram_commute_check(g, (5, 5, 5))
    with pytest.raises(ValueError):
        diagram_commute_check(g, (-1, 0, 0))
