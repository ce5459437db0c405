"""Semiclassical limit of a quantum affine space.

The deformation lives over polynomials in ``z``.  Each parameter
``lambda_k`` is lifted to a polynomial ``f_k(z)`` with ``f_k(1) = 1``,
``f_k(q) = lambda_k`` and ``f_k'(1) = mu_k``; the lifted bicharacter is
``c~(s, t) = prod_k f_k ** l_k(s, t)``.  Specialising at ``z = q`` recovers the
quantum algebra, at ``z = 1`` the commutative polynomial ring, and the
first-order term at ``z = 1`` is the Poisson bracket
``{x^s, x^t} = u(s, t) x^s x^t`` with ``u(s, t) = sum_k 2 l_k(s, t) mu_k``.

All scalars are exact: numerators and denominators are sparse polynomials
over QQ in ``z``, ``q``, the parameters, the ``mu`` symbols and any extra
named symbols.  Fractions are compared by cross-multiplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Mapping, Optional, Sequence, Union

import numpy as np
import sympy
from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

from .algebra import AlgebraElement
from .bichar import Bicharacter, eval_c


class LimitFormulaError(AssertionError):
    """The computed semiclassical bracket disagrees with the closed formula."""


@lru_cache(maxsize=None)
def symbolic_ring(names: tuple[str, ...]) -> PolyRing:
    return PolyRing([sympy.Symbol(s) for s in names], QQ)


class SymbolicScalar:
    """A fraction ``num / den`` of polynomials in one ring.

    No gcd normalisation happens implicitly; ``reduce`` cancels on request.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyElement, den: Optional[PolyElement] = None):
        if den is None:
            den = num.ring.one
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other) -> "SymbolicScalar":
        if isinstance(other, SymbolicScalar):
            return other
        if isinstance(other, PolyElement):
            return SymbolicScalar(other)
        if isinstance(other, Rational):
            return SymbolicScalar(self.ring(QQ(other.numerator, other.denominator)))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return SymbolicScalar(self.num + o.num, self.den)
        return SymbolicScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicScalar(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SymbolicScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by a zero scalar")
        return SymbolicScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            if not self.num:
                raise ZeroDivisionError("negative power of zero")
            return SymbolicScalar(self.den ** -k, self.num ** -k)
        return SymbolicScalar(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __bool__(self):
        return bool(self.num)

    __hash__ = None

    def reduce(self) -> "SymbolicScalar":
        if self.den.is_ground:
            return SymbolicScalar(self.num.quo_ground(self.den.LC), self.ring.one)
        if self.num.is_ground:
            return self
        num, den = self.num.cancel(self.den)
        return SymbolicScalar(num, den)

    def at(self, gen: PolyElement, value) -> "SymbolicScalar":
        """Substitute ``gen := value`` (a rational or a ring element)."""
        num, den = _subs(self.num, gen, value), _subs(self.den, gen, value)
        if not den:
            raise ZeroDivisionError(f"denominator vanishes at {gen} = {value}")
        return SymbolicScalar(num, den)

    def as_expr(self):
        return sympy.cancel(self.num.as_expr() / self.den.as_expr())

    def __str__(self):
        return str(self.as_expr())

    def __repr__(self):
        return f"SymbolicScalar({self})"


def _subs(p: PolyElement, gen: PolyElement, value) -> PolyElement:
    if isinstance(value, PolyElement):
        return p.compose(gen, value)
    if isinstance(value, Rational):
        value = QQ(value.numerator, value.denominator)
    return p.subs(gen, value)


def _dz(p: PolyElement, z: PolyElement) -> PolyElement:
    return p.diff(z)


@dataclass(frozen=True)
class FFamily:
    """The lifting polynomials ``f_1..f_m``.

    ``nums[k] / dens[k]`` is ``f_k``; denominators are free of ``z``.  ``mu``
    holds the declared values ``f_k'(1)`` and ``lam`` the values ``f_k(q)``.
    """

    ring: PolyRing
    nums: tuple
    dens: tuple
    mu: tuple
    lam: tuple
    kind: str
    mu_names: tuple = ()
    _jets: dict = field(default_factory=dict, compare=False, repr=False)

    def jet(self, k: int) -> "Jet":
        """First-order expansion of ``f_k`` at ``z = 1`` (memoised)."""
        if k not in self._jets:
            self._jets[k] = Jet.of(self.f(k), self.z)
        return self._jets[k]

    @property
    def m(self) -> int:
        return len(self.nums)

    @property
    def z(self) -> PolyElement:
        return self.ring.gens[0]

    @property
    def q(self) -> PolyElement:
        return self.ring.gens[1]

    def f(self, k: int) -> SymbolicScalar:
        return SymbolicScalar(self.nums[k], self.dens[k])

    def z_degree(self, k: int) -> int:
        return max(self.nums[k].degree(self.z), 0)

    def check(self) -> None:
        """Confirm ``f_k(1) = 1``, ``f_k(q) = lambda_k`` and ``f_k'(1) = mu_k``."""
        z, q = self.z, self.q
        for k in range(self.m):
            f = self.f(k)
            if f.at(z, 1) != 1:
                raise ValueError(f"f_{k + 1}(1) != 1")
            if f.at(z, q) != self.lam[k]:
                raise ValueError(f"f_{k + 1}(q) != lambda_{k + 1}")
            if derivative_at(f, z, 1) != self.mu[k]:
                raise ValueError(f"f_{k + 1}'(1) != mu_{k + 1}")

    def gen(self, name: str) -> PolyElement:
        return self.ring.gens[[str(s) for s in self.ring.symbols].index(name)]


def derivative_at(f: SymbolicScalar, z: PolyElement, value) -> SymbolicScalar:
    """Formal ``d/dz`` of a fraction whose denominator may involve ``z``, evaluated."""
    num = _dz(f.num, z) * f.den - f.num * _dz(f.den, z)
    return SymbolicScalar(num, f.den ** 2).at(z, value)


def _cramer3(M, rhs) -> list:
    """Solve a 3x3 system of SymbolicScalars by Cramer's rule."""
    def det(A):
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))

    d = det(M)
    if not d:
        raise ZeroDivisionError("singular interpolation system")
    out = []
    for col in range(3):
        A = [[rhs[i] if j == col else M[i][j] for j in range(3)] for i in range(3)]
        out.append(det(A) / d)
    return out


def _quadratic_ring(m: int) -> PolyRing:
    names = ("z", "q") + tuple(f"lambda{k + 1}" for k in range(m)) + tuple(f"mu{k + 1}" for k in range(m))
    return symbolic_ring(names)


def solve_f_coefficients(i: int, m: int) -> tuple[SymbolicScalar, SymbolicScalar, SymbolicScalar]:
    """Coefficients ``(a_i, b_i, c_i)`` of the quadratic ``f_i = a z^2 + b z + c``.

    ``i`` is 0-based.  The conditions ``f(1) = 1``, ``f(q) = lambda_i`` and
    ``f'(1) = mu_i`` form a linear system with determinant ``(q - 1)^2``.
    """
    if not 0 <= i < m:
        raise IndexError(f"parameter index {i} outside range({m})")
    R = _quadratic_ring(m)
    q = R.gens[1]
    lam, mu = R.gens[2 + i], R.gens[2 + m + i]
    one = SymbolicScalar(R.one)
    Q = SymbolicScalar(q)
    M = [[one, one, one], [Q * Q, Q, one], [one * 2, one, one * 0]]
    a, b, c = _cramer3(M, [one, SymbolicScalar(lam), SymbolicScalar(mu)])
    return a.reduce(), b.reduce(), c.reduce()


@lru_cache(maxsize=None)
def quadratic_family(m: int) -> FFamily:
    """The default lifting: one quadratic per parameter, with symbolic lambda and mu."""
    R = _quadratic_ring(m)
    z = R.gens[0]
    nums, dens = [], []
    for i in range(m):
        a, b, c = solve_f_coefficients(i, m)
        f = (a * SymbolicScalar(z ** 2) + b * SymbolicScalar(z) + c).reduce()
        if f.den.degree(z) > 0:
            raise AssertionError("interpolation denominator depends on z")
        nums.append(f.num)
        dens.append(f.den)
    lam = tuple(SymbolicScalar(R.gens[2 + k]) for k in range(m))
    mu = tuple(SymbolicScalar(R.gens[2 + m + k]) for k in range(m))
    fam = FFamily(R, tuple(nums), tuple(dens), mu, lam, "quadratic",
                  tuple(f"mu{k + 1}" for k in range(m)))
    fam.check()
    return fam


def monomial_family(exponents: Sequence[int]) -> FFamily:
    """``f_k = z ** g_k``, so ``lambda_k = q ** g_k`` and ``mu_k = g_k``."""
    R = symbolic_ring(("z", "q"))
    z, q = R.gens
    nums, dens, mu, lam = [], [], [], []
    for g in exponents:
        g = int(g)
        if g == 0:
            raise ValueError("exponent 0 gives f = 1, which is not a basis element")
        if g > 0:
            nums.append(z ** g)
            dens.append(R.one)
            lam.append(SymbolicScalar(q ** g))
        else:
            nums.append(R.one)
            dens.append(z ** -g)
            lam.append(SymbolicScalar(R.one, q ** -g))
        mu.append(SymbolicScalar(R(g)))
    fam = FFamily(R, tuple(nums), tuple(dens), tuple(mu), tuple(lam), "monomial",
                  tuple(str(g) for g in exponents))
    fam.check()
    return fam


def explicit_family(polys: Sequence[Union[str, sympy.Expr]],
                    mu: Optional[Sequence[Union[str, int, Fraction]]] = None,
                    symbols: Sequence[str] = ()) -> FFamily:
    """User-supplied lifting polynomials in ``z`` (and ``q`` or named symbols).

    ``lambda_k`` is taken to be ``f_k(q)``.  When ``mu`` is given, each entry
    (a rational or a symbol name) must equal ``f_k'(1)``.
    """
    exprs = [sympy.sympify(p) for p in polys]
    extra = set(symbols)
    for e in exprs:
        extra |= {str(s) for s in e.free_symbols}
    if mu is not None:
        extra |= {str(v) for v in mu if isinstance(v, str)}
    extra -= {"z", "q"}
    R = symbolic_ring(("z", "q") + tuple(sorted(extra)))
    z, q = R.gens[:2]
    nums, dens, lam, mus = [], [], [], []
    for k, e in enumerate(exprs):
        num, den = sympy.fraction(sympy.together(e))
        num, den = R.from_expr(num), R.from_expr(den)
        if den.degree(z) > 0:
            raise ValueError(f"f_{k + 1} must be a polynomial in z")
        nums.append(num)
        dens.append(den)
        f = SymbolicScalar(num, den)
        lam.append(f.at(z, q))
        d = derivative_at(f, z, 1)
        if mu is None:
            mus.append(d)
        else:
            v = mu[k]
            mus.append(SymbolicScalar(R.from_expr(sympy.Symbol(v)) if isinstance(v, str)
                                      else R(QQ(Fraction(v).numerator, Fraction(v).denominator))))
    fam = FFamily(R, tuple(nums), tuple(dens), tuple(mus), tuple(lam), "explicit",
                  tuple(str(v) for v in (mu or [str(d) for d in mus])))
    fam.check()
    return fam


class FactoredKUnit:
    """A product ``prod_k f_k ** e_k`` stored as ``{k: e_k}`` with nonzero exponents."""

    __slots__ = ("exps",)

    def __init__(self, exps: Union[Mapping[int, int], Sequence[int]] = ()):
        if not isinstance(exps, Mapping):
            exps = dict(enumerate(exps))
        self.exps = {int(k): int(e) for k, e in sorted(exps.items()) if e}

    @classmethod
    def c_tilde(cls, b: Bicharacter, s, t) -> "FactoredKUnit":
        return cls(eval_c(b, s, t))

    def __mul__(self, other: "FactoredKUnit") -> "FactoredKUnit":
        out = dict(self.exps)
        for k, e in other.exps.items():
            out[k] = out.get(k, 0) + e
        return FactoredKUnit(out)

    def __pow__(self, n: int) -> "FactoredKUnit":
        return FactoredKUnit({k: n * e for k, e in self.exps.items()})

    def __eq__(self, other):
        return isinstance(other, FactoredKUnit) and self.exps == other.exps

    def __hash__(self):
        return hash(tuple(self.exps.items()))

    def z_degree(self, family: FFamily) -> int:
        return sum(abs(e) * family.z_degree(k) for k, e in self.exps.items())

    def fraction(self, family: FFamily) -> tuple[PolyElement, PolyElement]:
        """The explicit unreduced fraction ``P(z) / Q(z)``."""
        P, Q = family.ring.one, family.ring.one
        for k, e in self.exps.items():
            if e > 0:
                P *= family.nums[k] ** e
                Q *= family.dens[k] ** e
            else:
                P *= family.dens[k] ** -e
                Q *= family.nums[k] ** -e
        return P, Q

    def __repr__(self):
        return "FactoredKUnit(" + " ".join(f"f{k + 1}^{e}" for k, e in self.exps.items()) + ")"


class Jet:
    """Exact first-order expansion ``value + deriv * (z - 1)`` at ``z = 1``."""

    __slots__ = ("value", "deriv")

    def __init__(self, value: SymbolicScalar, deriv: SymbolicScalar):
        self.value = value
        self.deriv = deriv

    @classmethod
    def of(cls, f: SymbolicScalar, z: PolyElement) -> "Jet":
        return cls(f.at(z, 1).reduce(), derivative_at(f, z, 1).reduce())

    def __mul__(self, other: "Jet") -> "Jet":
        return Jet((self.value * other.value).reduce(),
                   (self.value * other.deriv + self.deriv * other.value).reduce())

    def inverse(self) -> "Jet":
        return Jet((1 / self.value).reduce(), (-self.deriv / self.value ** 2).reduce())

    def __pow__(self, n: int) -> "Jet":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        if n == 0:
            one = self.value * 0 + 1
            return Jet(one, self.value * 0)
        return Jet((base.value ** n).reduce(),
                   (base.value ** (n - 1) * base.deriv * n).reduce())


def unit_jet(f: FactoredKUnit, family: FFamily) -> Jet:
    one = SymbolicScalar(family.ring.one)
    out = Jet(one, one * 0)
    for k, e in f.exps.items():
        out = out * family.jet(k) ** e
    return out


def evaluation_maps(f: FactoredKUnit, family: FFamily) -> tuple[SymbolicScalar, SymbolicScalar, SymbolicScalar]:
    """``(f(1), f(q), f'(1))`` for a unit ``f`` in the group generated by the ``f_k``.

    The last entry is the additive map ``psi``; since ``f(1) = 1`` it is also
    the logarithmic derivative at 1.
    """
    jet = unit_jet(f, family)
    at_q = SymbolicScalar(family.ring.one)
    for k, e in f.exps.items():
        at_q = at_q * family.f(k).at(family.z, family.q) ** e
    return jet.value, at_q.reduce(), jet.deriv


@dataclass
class LimitReport:
    s: tuple
    t: tuple
    exponents: tuple
    route: str
    value_at_one: bool
    derivative: str
    expected: str
    passed: bool
    commutator_route: Optional[bool] = None
    sigma: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "s": list(self.s), "t": list(self.t), "exponents": list(self.exponents),
            "route": self.route, "sigma": self.sigma, "value_at_one": self.value_at_one,
            "derivative": self.derivative, "expected": self.expected,
            "commutator_route": self.commutator_route, "passed": self.passed,
        }


def expected_bracket(exponents: Sequence[int], family: FFamily) -> SymbolicScalar:
    """``sum_k 2 l_k mu_k`` from the declared ``mu`` values."""
    out = SymbolicScalar(family.ring.zero)
    for k, e in enumerate(exponents):
        if e:
            out = out + family.mu[k] * (2 * e)
    return out


def verify_exponents(exponents: Sequence[int], family: FFamily,
                     max_expand_degree: int = 12, describe: bool = True) -> tuple:
    """Check the limit formula for ``sigma~ = prod f_k ** (2 e_k)``.

    Returns ``(route, value_ok, derivative, expected, commutator_ok, sigma_str)``.
    Small cases expand the explicit fraction ``P/Q`` in ``z``; larger ones use
    exact first-order arithmetic at ``z = 1``.
    """
    sigma = FactoredKUnit(exponents) ** 2
    expected = expected_bracket(exponents, family)
    z = family.z
    if sigma.z_degree(family) <= max_expand_degree:
        P, Q = sigma.fraction(family)
        P1, Q1 = _subs(P, z, 1), _subs(Q, z, 1)
        value_ok = P1 == Q1
        dP1, dQ1 = _subs(P.diff(z), z, 1), _subs(Q.diff(z), z, 1)
        deriv = SymbolicScalar(dP1 * Q1 - P1 * dQ1, Q1 ** 2)
        # (c~(s,t) - c~(t,s)) / (z - 1) at z = 1, by exact division
        c = FactoredKUnit(exponents)
        F, G = c.fraction(family)
        quo, rem = divmod(F * F - G * G, z - 1)
        comm_ok = not rem and SymbolicScalar(_subs(quo, z, 1), _subs(F * G, z, 1)) == expected
        sigma_str = None
        if describe and len(P) + len(Q) < 200:
            sigma_str = str(sympy.factor(P.as_expr() / Q.as_expr()))
        return "expand", value_ok, deriv, expected, comm_ok, sigma_str
    jet = unit_jet(sigma, family)
    return "jet", jet.value == 1, jet.deriv, expected, None, None


def verify_limit(b: Bicharacter, s: Sequence[int], t: Sequence[int],
                 family: Optional[FFamily] = None, max_expand_degree: int = 12,
                 strict: bool = True) -> LimitReport:
    """Check ``d/dz sigma~(s,t)`` at ``z = 1`` against ``sum_k 2 l_k(s,t) mu_k``.

    Raises ``LimitFormulaError`` on disagreement unless ``strict`` is false.
    """
    if any(x < 0 for x in s) or any(x < 0 for x in t):
        raise ValueError("monomial exponents must be nonnegative")
    if family is None:
        family = quadratic_family(b.m)
    if family.m != b.m:
        raise ValueError(f"family has {family.m} polynomials, bicharacter has {b.m} parameters")
    e = eval_c(b, s, t)
    route, value_ok, deriv, expected, comm_ok, sigma_str = verify_exponents(e, family, max_expand_degree)
    passed = bool(value_ok and deriv == expected and comm_ok is not False)
    report = LimitReport(tuple(s), tuple(t), e, route, bool(value_ok), str(deriv), str(expected),
                         passed, comm_ok, sigma_str)
    if strict and not passed:
        raise LimitFormulaError(f"limit formula failed: {report.as_dict()}")
    return report


@dataclass
class BoxReport:
    bound: int
    pairs: int
    distinct_exponents: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_limit_box(b: Bicharacter, bound: int, family: Optional[FFamily] = None,
                     max_expand_degree: int = 4, cache: Optional[dict] = None) -> BoxReport:
    """``verify_limit`` on every pair ``(s, t)`` with entries in ``[0, bound]``.

    The check depends on ``(s, t)`` only through ``l(s, t)``, so the exponent
    vectors of all pairs are computed at once and each distinct one is
    verified a single time.  ``cache`` may be shared across calls that use
    the same family.
    """
    if family is None:
        family = quadratic_family(b.m)
    if family.m != b.m:
        raise ValueError(f"family has {family.m} polynomials, bicharacter has {b.m} parameters")
    V = np.array(list(itertools.product(range(bound + 1), repeat=b.n)), dtype=np.int64)
    if b.m == 0:
        return BoxReport(bound, len(V) ** 2, 0, [])
    # |entries| of V L V^T are at most n^2 * bound^2 * max|L|; keep far from int64 overflow
    big = max((abs(x) for M in b.L for row in M for x in row), default=0)
    if b.n * b.n * bound * bound * big >= 2 ** 62:
        raise OverflowError("exponents too large for the bulk check")
    E = np.stack([V @ np.array(M, dtype=np.int64) @ V.T for M in b.L], axis=-1)
    flat = E.reshape(-1, b.m)
    distinct, first = np.unique(flat, axis=0, return_index=True)
    cache = {} if cache is None else cache
    failures = []
    for e, idx in zip(map(tuple, distinct.tolist()), first.tolist()):
        if e not in cache:
            route, value_ok, deriv, expected, comm_ok, _ = verify_exponents(e, family, max_expand_degree,
                                                                          describe=False)
            cache[e] = bool(value_ok and deriv == expected and comm_ok is not False)
        if not cache[e]:
            i, j = divmod(idx, len(V))
            failures.append((tuple(V[i].tolist()), tuple(V[j].tolist()), e))
    return BoxReport(bound, len(V) ** 2, len(distinct), failures)


def specialize_commutation(b: Bicharacter, i: int, j: int, z0,
                           family: Optional[FFamily] = None) -> SymbolicScalar:
    """``q~_ij(z0)``: the commutation scalar of the algebra ``R_{z0}``.

    ``z0`` is a rational, the string ``"q"``, or an element of the family's ring.
    """
    if family is None:
        family = quadratic_family(b.m)
    if isinstance(z0, str):
        if z0 != "q":
            raise ValueError("symbolic specialisation point must be 'q'")
        z0 = family.q
    elif isinstance(z0, (int, Fraction)):
        z0 = Fraction(z0)
    out = SymbolicScalar(family.ring.one)
    for k, e in enumerate(b.L):
        x = 2 * e[i][j]
        if x:
            out = out * family.f(k).at(family.z, z0) ** x
    return out.reduce()


def lambda_monomial(exponents: Sequence[int], family: FFamily) -> SymbolicScalar:
    out = SymbolicScalar(family.ring.one)
    for k, e in enumerate(exponents):
        out = out * family.lam[k] ** e
    return out


# --- Poisson side -----------------------------------------------------------

@dataclass(frozen=True)
class PoissonMatrix:
    """The antisymmetric matrix of the bracket ``{x_i, x_j} = U_ij x_i x_j``.

    Entry ``(i, j)`` is the linear form ``sum_k 2 L_k[i][j] mu_k``, stored as
    its integer coefficient vector.  ``mu`` holds the values of the symbols
    (ring elements of ``ring``): indeterminates by default, or rationals and
    named symbols after an assignment.
    """

    n: int
    forms: tuple
    ring: PolyRing
    mu: tuple = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.mu)

    def form(self, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        """Integer coefficients of ``u(s, t)`` on ``mu_1..mu_m``."""
        out = [0] * self.m
        for i, si in enumerate(s):
            if not si:
                continue
            for j, tj in enumerate(t):
                if tj:
                    for k, a in enumerate(self.forms[i][j]):
                        out[k] += si * tj * a
        return tuple(out)

    def u(self, s: Sequence[int], t: Sequence[int]) -> PolyElement:
        return sum((self.mu[k] * a for k, a in enumerate(self.form(s, t)) if a), self.ring.zero)

    def entry(self, i: int, j: int) -> PolyElement:
        return sum((self.mu[k] * a for k, a in enumerate(self.forms[i][j]) if a), self.ring.zero)

    def as_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.n, self.n, lambda i, j: self.entry(i, j).as_expr())

    def rows(self) -> list[list[str]]:
        return [[str(self.entry(i, j).as_expr()) for j in range(self.n)] for i in range(self.n)]


MuValue = Union[str, int, Fraction, None]


def poisson_matrix(b: Bicharacter, mu: Optional[Sequence[MuValue]] = None) -> PoissonMatrix:
    """Poisson matrix of the semiclassical limit.

    ``mu`` optionally assigns each ``mu_k`` a rational or a symbol name;
    ``None`` or ``"symbolic"`` keeps the indeterminate ``mu<k>``.
    """
    if mu is None:
        mu = [None] * b.m
    if len(mu) != b.m:
        raise ValueError(f"{len(mu)} mu values for {b.m} parameters")
    names = []
    for k, v in enumerate(mu):
        if v is None or v == "symbolic":
            names.append(f"mu{k + 1}")
        elif isinstance(v, str):
            names.append(v)
    R = symbolic_ring(tuple(dict.fromkeys(names)))
    values = []
    for k, v in enumerate(mu):
        if v is None or v == "symbolic":
            values.append(R.gens[R.symbols.index(sympy.Symbol(f"mu{k + 1}"))])
        elif isinstance(v, str):
            values.append(R.gens[R.symbols.index(sympy.Symbol(v))])
        else:
            f = Fraction(v)
            values.append(R(QQ(f.numerator, f.denominator)))
    forms = tuple(
        tuple(tuple(2 * M[i][j] for M in b.L) for j in range(b.n)) for i in range(b.n)
    )
    return PoissonMatrix(b.n, forms, R, tuple(values))


def _coerce(U: PoissonMatrix, a):
    if isinstance(a, PolyElement):
        return a
    if isinstance(a, Rational):
        return U.ring(QQ(a.numerator, a.denominator))
    raise TypeError(f"cannot use {type(a).__name__} as a Poisson-side coefficient")


def poisson_element(U: PoissonMatrix, terms: Mapping[Sequence[int], object]) -> AlgebraElement:
    return AlgebraElement(U.n, {tuple(s): _coerce(U, a) for s, a in terms.items()})


def poisson_bracket(U: PoissonMatrix, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``{x^s, x^t} = u(s, t) x^(s+t)`` extended as a biderivation."""
    if a.n != U.n or b.n != U.n:
        raise ValueError(f"dimension mismatch: matrix is {U.n}x{U.n}")
    terms: dict = {}
    for s, x in a.terms.items():
        for t, y in b.terms.items():
            c = U.u(s, t)
            if not c:
                continue
            st = tuple(i + j for i, j in zip(s, t))
            term = c * _coerce(U, x) * _coerce(U, y)
            terms[st] = terms[st] + term if st in terms else term
    return AlgebraElement(U.n, terms)
