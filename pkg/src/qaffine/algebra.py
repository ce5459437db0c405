"""Twisted monoid algebras over Laurent coefficients.

``AlgebraElement`` is a finite sum of monomials ``x^s`` (``s`` a tuple of
nonnegative ints).  Its coefficients may be any exact ring elements that
support ``+``, ``*`` and truth testing: ``LaurentCoefficient`` on the quantum
side, polynomial ring elements (in the mu symbols) on the Poisson side, or
plain ints/Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .bichar import Bicharacter, eval_c, eval_sigma


class LaurentCoefficient:
    """An exact Laurent polynomial in ``m`` parameters with rational coefficients."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Sequence[int], object] = ()):
        self.m = m
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, a in dict(terms).items():
            e = tuple(e)
            if len(e) != m:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {m}")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(a)
        self.terms = {e: a for e, a in sorted(acc.items()) if a}

    @classmethod
    def monomial(cls, e: Sequence[int], coeff=1) -> "LaurentCoefficient":
        return cls(len(e), {tuple(e): coeff})

    @classmethod
    def one(cls, m: int) -> "LaurentCoefficient":
        return cls(m, {(0,) * m: 1})

    def _coerce(self, other) -> "LaurentCoefficient":
        if isinstance(other, LaurentCoefficient):
            if other.m != self.m:
                raise ValueError("Laurent coefficients over different parameter counts")
            return other
        if isinstance(other, Rational):
            return LaurentCoefficient(self.m, {(0,) * self.m: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, a in other.terms.items():
            terms[e] = terms.get(e, 0) + a
        return LaurentCoefficient(self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentCoefficient(self.m, {e: -a for e, a in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                terms[g] = terms.get(g, 0) + a * b
        return LaurentCoefficient(self.m, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only Laurent monomials are invertible")
            (e, a), = self.terms.items()
            return LaurentCoefficient.monomial(tuple(-x * -k for x in e), Fraction(1) / a ** -k)
        out = LaurentCoefficient.one(self.m)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.m, tuple(self.terms.items())))

    def to_str(self, names: Sequence[str] = ()) -> str:
        if not self.terms:
            return "0"
        names = list(names) or [f"lambda{k + 1}" for k in range(self.m)]
        parts = []
        for e, a in self.terms.items():
            mono = "*".join(
                names[k] if x == 1 else f"{names[k]}^{x}" if x > 0 else f"{names[k]}^({x})"
                for k, x in enumerate(e) if x
            )
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentCoefficient({self.to_str()})"


class AlgebraElement:
    """A finite linear combination of monomials ``x^s`` with ``s`` in N^n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Sequence[int], object] = ()):
        self.n = n
        acc: dict = {}
        for s, a in dict(terms).items():
            s = tuple(s)
            if len(s) != n:
                raise ValueError(f"monomial exponent {s} has length {len(s)}, expected {n}")
            if any(x < 0 for x in s):
                raise ValueError(f"monomial exponent {s} has a negative entry")
            acc[s] = acc[s] + a if s in acc else a
        self.terms = {s: a for s, a in sorted(acc.items()) if a}

    @classmethod
    def monomial(cls, s: Sequence[int], coeff=1) -> "AlgebraElement":
        return cls(len(s), {tuple(s): coeff})

    @classmethod
    def generator(cls, n: int, i: int, coeff=1) -> "AlgebraElement":
        return cls.monomial(tuple(int(j == i) for j in range(n)), coeff)

    def _check(self, other: "AlgebraElement") -> None:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for s, a in other.terms.items():
            terms[s] = terms[s] + a if s in terms else a
        return AlgebraElement(self.n, terms)

    def __neg__(self):
        return AlgebraElement(self.n, {s: -a for s, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.n, {s: c * a for s, a in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Untwisted (commutative) product."""
        self._check(other)
        terms: dict = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                u = tuple(x + y for x, y in zip(s, t))
                terms[u] = terms[u] + a * b if u in terms else a * b
        return AlgebraElement(self.n, terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.n != other.n or self.terms.keys() != other.terms.keys():
            return False
        return all(not (a - other.terms[s]) for s, a in self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def to_str(self, coeff_str=str) -> str:
        if not self.terms:
            return "0"
        parts = []
        for s, a in self.terms.items():
            mono = "*".join(
                f"x_{i + 1}" if e == 1 else f"x_{i + 1}^{e}" for i, e in enumerate(s) if e
            )
            c = coeff_str(a)
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self.to_str()})"


def _check_dims(b: Bicharacter, *elems: AlgebraElement) -> None:
    for u in elems:
        if u.n != b.n:
            raise ValueError(f"element has {u.n} generators, bicharacter has {b.n}")


def multiply(b: Bicharacter, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Twisted product ``x^s * x^t = c(s, t) x^(s+t)``, extended bilinearly."""
    _check_dims(b, u, v)
    terms: dict = {}
    for s, a in u.terms.items():
        for t, bb in v.terms.items():
            st = tuple(x + y for x, y in zip(s, t))
            c = LaurentCoefficient.monomial(eval_c(b, s, t))
            term = c * a * bb
            terms[st] = terms[st] + term if st in terms else term
    return AlgebraElement(b.n, terms)


def commutator(b: Bicharacter, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    return multiply(b, u, v) - multiply(b, v, u)


def sigma_coefficient(b: Bicharacter, s: Sequence[int], t: Sequence[int]) -> LaurentCoefficient:
    """``sigma(s, t)`` as a Laurent monomial."""
    return LaurentCoefficient.monomial(eval_sigma(b, s, t))


def power(b: Bicharacter, u: AlgebraElement, k: int) -> AlgebraElement:
    out = AlgebraElement.monomial((0,) * b.n, LaurentCoefficient.one(b.m))
    for _ in range(k):
        out = multiply(b, out, u)
    return out


def ordered_monomial(b: Bicharacter, s: Sequence[int]) -> AlgebraElement:
    """The product ``x_1^s_1 * ... * x_n^s_n`` computed in the twisted algebra."""
    out = AlgebraElement.monomial((0,) * b.n, LaurentCoefficient.one(b.m))
    for i, e in enumerate(s):
        out = multiply(b, out, power(b, AlgebraElement.generator(b.n, i), e))
    return out


def laurent_elements(b: Bicharacter, terms: Iterable[tuple[Sequence[int], object]]) -> AlgebraElement:
    """Convenience constructor coercing rational coefficients to Laurent constants."""
    return AlgebraElement(
        b.n,
        {tuple(s): (a if isinstance(a, LaurentCoefficient) else LaurentCoefficient.one(b.m) * a)
         for s, a in terms},
    )
