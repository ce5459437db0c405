import random
from fractions import Fraction

import pytest
import sympy

from qaffine.algebra import AlgebraElement
from qaffine.bichar import from_uniparameter
from qaffine.limit import (FactoredKUnit, FFamily, LimitFormulaError, SymbolicScalar,
                           evaluation_maps, explicit_family, monomial_family, poisson_bracket,
                           poisson_element, poisson_matrix, quadratic_family, solve_f_coefficients,
                           specialize_commutation, verify_exponents, verify_limit, verify_limit_box)

from helpers import example_bichar, random_bichar

z, q, alpha = sympy.symbols("z q alpha")


def example_family():
    return explicit_family(["z", "1 + alpha*(z - 1)"], [1, "alpha"])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_quadratic_conditions_by_substitution(m):
    fam = quadratic_family(m)
    for k in range(m):
        f = fam.f(k).as_expr()
        lam, mu = sympy.Symbol(f"lambda{k + 1}"), sympy.Symbol(f"mu{k + 1}")
        assert sympy.simplify(f.subs(z, 1) - 1) == 0
        assert sympy.simplify(f.subs(z, q) - lam) == 0
        assert sympy.simplify(sympy.diff(f, z).subs(z, 1) - mu) == 0
        assert sympy.degree(sympy.numer(sympy.together(f)), z) <= 2


def test_coefficients_denominator():
    a, b, c = solve_f_coefficients(0, 1)
    # the interpolation system has determinant (q - 1)^2
    for coeff in (a, b, c):
        den = sympy.factor(coeff.as_expr()).as_numer_denom()[1]
        assert set(sympy.factor_list(den)[1]) <= {(q - 1, 2), (q - 1, 1)}


def test_example_generator_pairs():
    b = example_bichar()
    fam = example_family()
    expected = {(0, 1): 2, (0, 2): 2 * alpha, (1, 2): 0}
    for (i, j), value in expected.items():
        s = tuple(int(k == i) for k in range(3))
        t = tuple(int(k == j) for k in range(3))
        rep = verify_limit(b, s, t, fam)
        assert sympy.sympify(rep.derivative) == value
        assert rep.route == "expand" and rep.commutator_route


def test_example_specialisation():
    b = example_bichar()
    fam = example_family()
    assert specialize_commutation(b, 0, 1, 3, fam) == 9
    assert specialize_commutation(b, 0, 1, 1, fam) == 1
    s = specialize_commutation(b, 0, 1, "q", fam)
    assert sympy.simplify(s.as_expr() - q ** 2) == 0
    s = specialize_commutation(b, 0, 2, 2, fam)
    assert sympy.expand(s.as_expr() - (1 + alpha) ** 2) == 0


def test_jet_and_expand_agree():
    fam = quadratic_family(2)
    rng = random.Random(8)
    for _ in range(15):
        a = rng.randint(-3, 3)
        e = (a, rng.randint(-(3 - abs(a)), 3 - abs(a)))
        big = verify_exponents(e, fam, max_expand_degree=100, describe=False)
        jet = verify_exponents(e, fam, max_expand_degree=-1, describe=False)
        assert big[0] == "expand" and jet[0] == "jet"
        assert big[1] and jet[1]
        assert big[2] == jet[2] == big[3]


def test_evaluation_maps():
    fam = quadratic_family(2)
    at1, atq, psi = evaluation_maps(FactoredKUnit({0: 2, 1: -1}), fam)
    lam1, lam2, mu1, mu2 = sympy.symbols("lambda1 lambda2 mu1 mu2")
    assert at1 == 1
    assert sympy.simplify(atq.as_expr() - lam1 ** 2 / lam2) == 0
    assert sympy.simplify(psi.as_expr() - (2 * mu1 - mu2)) == 0


def test_wrong_mu_is_detected():
    good = explicit_family(["z**2"])
    bad = FFamily(good.ring, good.nums, good.dens, (SymbolicScalar(good.ring(3)),), good.lam, "explicit")
    b = from_uniparameter([[0, 1], [-1, 0]])
    with pytest.raises(LimitFormulaError):
        verify_limit(b, (1, 0), (0, 1), bad)
    assert not verify_limit(b, (1, 0), (0, 1), bad, strict=False).passed
    assert verify_limit_box(b, 1, bad).failures


def test_explicit_family_rejects_mismatch():
    with pytest.raises(ValueError):
        explicit_family(["z"], [2])
    with pytest.raises(ValueError):
        explicit_family(["1/z"])


def test_monomial_family_negative_exponent():
    fam = monomial_family([-2])
    b = from_uniparameter([[0, 3], [-3, 0]])
    assert verify_limit(b, (2, 1), (0, 3), fam).passed


def test_box_matches_pairwise():
    rng = random.Random(9)
    b = random_bichar(rng, max_n=3)
    fam = quadratic_family(b.m)
    box = verify_limit_box(b, 2, fam)
    assert box.passed and box.pairs == 3 ** (2 * b.n)
    assert all(verify_limit(b, s, t, fam).passed
               for s in [(0,) * b.n, (1,) * b.n] for t in [(2,) * b.n, (0, 1) + (0,) * (b.n - 2)])


def test_poisson_matrix_example():
    U = poisson_matrix(example_bichar(), [1, "alpha"])
    assert U.as_sympy() == sympy.Matrix([[0, 2, 2 * alpha], [-2, 0, 0], [-2 * alpha, 0, 0]])
    U = poisson_matrix(example_bichar())
    assert U.rows()[0] == ["0", "2*mu1", "2*mu2"]
    U = poisson_matrix(example_bichar(), [Fraction(1, 2), 3])
    assert U.rows()[0] == ["0", "1", "6"]


def test_poisson_bracket_leibniz_jacobi_random():
    rng = random.Random(12)
    for _ in range(10):
        b = random_bichar(rng)
        U = poisson_matrix(b)
        vec = lambda: tuple(rng.randint(0, 3) for _ in range(b.n))
        x, y, w = (poisson_element(U, {vec(): 1, vec(): 2}) for _ in range(3))
        jac = (poisson_bracket(U, x, poisson_bracket(U, y, w))
               + poisson_bracket(U, y, poisson_bracket(U, w, x))
               + poisson_bracket(U, w, poisson_bracket(U, x, y)))
        assert jac == 0
        assert poisson_bracket(U, x, y * w) == poisson_bracket(U, x, y) * w + y * poisson_bracket(U, x, w)
        assert poisson_bracket(U, x, y) == -poisson_bracket(U, y, x)


def test_bracket_dimension_mismatch():
    U = poisson_matrix(example_bichar())
    with pytest.raises(ValueError):
        poisson_bracket(U, AlgebraElement.monomial((1, 0)), AlgebraElement.monomial((0, 1)))
