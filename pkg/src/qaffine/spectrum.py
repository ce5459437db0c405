"""Stratified prime, primitive and Poisson-primitive spectra.

For each index set ``w`` (0-based) the stratum is described by the radical
lattice ``S_w``; its members are labelled by characters on a basis of
``S_w``.  A label ``(w, chi)`` stands for the ideal generated by ``x_i``
(``i`` in ``w``) and the binomials ``x^(a+) - chi(a) x^(a-)``, taken in the
localisation at the remaining generators and contracted back.  The same
label names a Poisson primitive ideal of the polynomial ring and, read
monomial by monomial, a primitive ideal of the quantum algebra.

Characters are sympy numbers (exact rationals) or monomials in named
symbols.  Distinct symbols are unconstrained, so comparisons between
symbolic characters may be indeterminate and ``contains`` returns None.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import sympy

from .bichar import Bicharacter, complement, radical
from .lattice import Lattice, coordinate_section, projection, solve_membership

POISSON, QUANTUM = "poisson", "quantum"
MAX_STRATA_N = 16

_RULE = ("containment via the whole radical lattice: sign patterns of its projection onto the "
         "new zero coordinates, and its coordinate section against the target radical")


def subsets(n: int) -> list[tuple[int, ...]]:
    """All index sets, ordered by size and then lexicographically."""
    return [w for k in range(n + 1) for w in itertools.combinations(range(n), k)]


def bitstring(n: int, w: Iterable[int]) -> str:
    w = set(w)
    return "".join("1" if i in w else "0" for i in range(n))


def show_set(w: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(w)) + "}"


def _var(i: int) -> str:
    return f"x_{i + 1}"


def _letter(i: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[i] if i < 26 else f"a{i}"


def _split(a: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(max(x, 0) for x in a), tuple(max(-x, 0) for x in a)


def _monomial_str(e: Sequence[int]) -> str:
    parts = [_var(i) if x == 1 else f"{_var(i)}^{x}" for i, x in enumerate(e) if x]
    return "*".join(parts) if parts else "1"


def as_char(v) -> sympy.Expr:
    if isinstance(v, sympy.Basic):
        return v
    if isinstance(v, str):
        return sympy.Symbol(v)
    if isinstance(v, float):
        raise TypeError("characters must be exact")
    f = Fraction(v)
    return sympy.Rational(f.numerator, f.denominator)


def same_value(x: sympy.Expr, y: sympy.Expr) -> Optional[bool]:
    """Three-valued equality of two nonzero characters."""
    r = sympy.powsimp(x / y)
    if r == 1:
        return True
    if r.is_Rational:
        return False
    return None


@dataclass(frozen=True)
class StratumReport:
    n: int
    w: tuple[int, ...]
    S: Lattice

    @property
    def rank(self) -> int:
        return self.S.rank

    @property
    def family_dimension(self) -> int:
        return self.S.rank

    @property
    def is_singleton(self) -> bool:
        return self.S.rank == 0

    @property
    def center_monomials(self) -> tuple[tuple[int, ...], ...]:
        return self.S.basis

    def generic_label(self, side: str = POISSON, tag: bool = False) -> "IdealLabel":
        return generic_label(self, side, tag)

    def family_text(self) -> str:
        lab = self.generic_label()
        text = lab.ideal_text()
        if self.is_singleton:
            return "{" + text + "}"
        params = ", ".join(str(c) for c in lab.chi)
        return "{" + text + " | " + params + " in k^x}"

    def as_dict(self) -> dict:
        return {
            "w": show_set(self.w),
            "rank": self.rank,
            "center_monomials": [_monomial_str(a) if all(x >= 0 for x in a) else list(a)
                                 for a in self.S.basis],
            "S_basis": [list(a) for a in self.S.basis],
            "family_dimension": self.family_dimension,
            "is_singleton": self.is_singleton,
            "family": self.family_text(),
        }


def stratum_report(b: Bicharacter, w: Iterable[int]) -> StratumReport:
    w = tuple(sorted(set(w)))
    return StratumReport(b.n, w, radical(b, w))


def full_spectrum(b: Bicharacter, max_n: int = MAX_STRATA_N) -> list[StratumReport]:
    if b.n > max_n:
        raise ValueError(f"n = {b.n} exceeds the stratum bound {max_n}")
    return [stratum_report(b, w) for w in subsets(b.n)]


@dataclass(frozen=True)
class IdealLabel:
    """``(w, chi)`` with ``chi`` given on the Hermite basis of ``S_w``."""

    n: int
    w: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    chi: tuple
    side: str = POISSON

    def __post_init__(self):
        if len(self.chi) != len(self.basis):
            raise ValueError(f"{len(self.chi)} character values for a rank {len(self.basis)} lattice")
        if any(c == 0 for c in self.chi):
            raise ValueError("character values must be nonzero")
        if self.side not in (POISSON, QUANTUM):
            raise ValueError(f"unknown side {self.side!r}")

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.n, self.basis)

    def char(self, a: Sequence[int]) -> sympy.Expr:
        """``chi(a)`` for any ``a`` in ``S_w``."""
        coords = solve_membership(self.lattice, a)
        if coords is None:
            raise ValueError(f"{tuple(a)} is not in the radical lattice")
        out = sympy.Integer(1)
        for c, v in zip(coords, self.chi):
            out *= v ** c
        return out

    def generators(self) -> list[str]:
        """Generator strings, ordered by their first variable."""
        keyed = [(i, _var(i)) for i in self.w]
        for a, c in zip(self.basis, self.chi):
            plus, minus = _split(a)
            lhs, rhs = _monomial_str(plus), _monomial_str(minus)
            if c.could_extract_minus_sign():
                sign, c = "+", -c
            else:
                sign = "-"
            if c == 1:
                term = rhs
            elif rhs == "1":
                term = str(c)
            else:
                term = f"{_paren(c)}*{rhs}"
            first = next(i for i, x in enumerate(a) if x)
            keyed.append((first, f"{lhs} {sign} {term}"))
        return [g for _, g in sorted(keyed)]

    def ideal_text(self) -> str:
        gens = self.generators()
        return "<" + (", ".join(gens) if gens else "0") + ">"

    def as_dict(self) -> dict:
        return {
            "w": show_set(self.w),
            "chi": [str(c) for c in self.chi],
            "side": self.side,
            "ideal": self.ideal_text(),
        }


def _paren(c) -> str:
    s = str(c)
    return f"({s})" if any(ch in s for ch in "+-/ ") else s


def make_label(b: Bicharacter, w: Iterable[int], chi: Sequence, side: str = POISSON) -> IdealLabel:
    rep = stratum_report(b, w)
    return IdealLabel(b.n, rep.w, rep.S.basis, tuple(as_char(c) for c in chi), side)


def generic_label(rep: StratumReport, side: str = POISSON, tag: bool = False) -> IdealLabel:
    """Label of a generic member: one fresh symbol per basis vector of ``S_w``.

    Unit basis vectors ``e_i`` get the letter of coordinate ``i``.  With
    ``tag`` the names also carry the stratum bitstring, so labels from
    different strata never share symbols.
    """
    chi = []
    for k, a in enumerate(rep.S.basis):
        nz = [i for i, x in enumerate(a) if x]
        name = _letter(nz[0]) if len(nz) == 1 and a[nz[0]] == 1 else f"t{k + 1}"
        if tag:
            name = f"{name}_{bitstring(rep.n, rep.w)}"
        chi.append(sympy.Symbol(name))
    return IdealLabel(rep.n, rep.w, rep.S.basis, tuple(chi), side)


def _point(point: Sequence) -> tuple:
    return tuple(as_char(p) if not isinstance(p, sympy.Basic) else p for p in point)


def poisson_core(b: Bicharacter, point: Sequence) -> IdealLabel:
    """Label of the largest Poisson ideal inside the maximal ideal of ``point``."""
    if len(point) != b.n:
        raise ValueError(f"point has {len(point)} coordinates, expected {b.n}")
    p = _point(point)
    w = tuple(i for i, x in enumerate(p) if x == 0)
    S = radical(b, w)
    chi = []
    for a in S.basis:
        v = sympy.Integer(1)
        for i, x in enumerate(a):
            if x:
                v *= p[i] ** x
        chi.append(v)
    return IdealLabel(b.n, w, S.basis, tuple(chi), POISSON)


@dataclass(frozen=True)
class CoreDescriptor:
    """A symplectic core: points vanishing exactly on ``w`` with ``x^a = chi(a)`` for ``a`` in ``S_w``."""

    n: int
    w: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    chi: tuple

    @property
    def point_pattern(self) -> tuple[int, ...]:
        return self.w

    @property
    def dimension(self) -> int:
        return self.n - len(self.w) - len(self.basis)

    @property
    def is_point(self) -> bool:
        return self.dimension == 0

    @property
    def is_full_stratum(self) -> bool:
        return not self.basis

    def equations(self) -> list[str]:
        out = []
        for a, c in zip(self.basis, self.chi):
            plus, minus = _split(a)
            if any(minus):
                out.append(f"{_monomial_str(plus)} = {_paren(c)}*{_monomial_str(minus)}"
                           if c != 1 else f"{_monomial_str(plus)} = {_monomial_str(minus)}")
            else:
                out.append(f"{_monomial_str(plus)} = {c}")
        return out

    def contains(self, point: Sequence) -> bool:
        p = _point(point)
        if tuple(i for i, x in enumerate(p) if x == 0) != self.w:
            return False
        for a, c in zip(self.basis, self.chi):
            v = sympy.Integer(1)
            for i, x in enumerate(a):
                if x:
                    v *= p[i] ** x
            if same_value(v, c) is not True:
                return False
        return True

    def describe(self) -> str:
        live = [i for i in range(self.n) if i not in self.w]
        zero = ", ".join(f"{_var(i)} = 0" for i in self.w)
        if self.is_point:
            if not live:
                return "the origin"
            eqs = "; ".join(self.equations())
            return f"a single point ({eqs}" + (f"; {zero}" if zero else "") + ")"
        if not self.w:
            where = f"k^{self.n} with the coordinate hyperplanes removed"
        else:
            plane = "".join(_var(i).replace("_", "") for i in live)
            where = f"the {plane}-subspace ({zero}) with its coordinate hyperplanes removed"
        if self.is_full_stratum:
            return where
        return f"{where}, cut by " + "; ".join(self.equations())

    def as_dict(self) -> dict:
        return {
            "zero_pattern": show_set(self.w),
            "dimension": self.dimension,
            "is_point": self.is_point,
            "is_full_stratum": self.is_full_stratum,
            "nonzero_coordinates": [_var(i) for i in range(self.n) if i not in self.w],
            "equations": self.equations(),
            "description": self.describe(),
        }


def symplectic_core(b: Bicharacter, point: Sequence) -> CoreDescriptor:
    lab = poisson_core(b, point)
    return CoreDescriptor(b.n, lab.w, lab.basis, lab.chi)


def phi_transport(label: IdealLabel, direction: Optional[str] = None) -> IdealLabel:
    """Move a label across the basis-fixing linear isomorphism between the two algebras.

    The label and its generator list are unchanged; only the side flips.
    ``direction`` is ``"to_quantum"``, ``"to_poisson"`` or None (flip).
    """
    target = QUANTUM if label.side == POISSON else POISSON
    if direction is not None:
        want = {"to_quantum": QUANTUM, "to_poisson": POISSON}.get(direction)
        if want is None:
            raise ValueError(f"unknown direction {direction!r}")
        if want != target:
            raise ValueError(f"label already lives on the {label.side} side")
    return IdealLabel(label.n, label.w, label.basis, label.chi, target)


def has_semidefinite_vector(L: Lattice) -> bool:
    """Whether ``L`` contains a nonzero vector whose entries all share one sign.

    Such a vector exists iff the cone ``span(L) & R_{>=0}^d`` is nonzero, iff
    it has an extreme ray; extreme rays are the one-dimensional
    intersections of ``span(L)`` with coordinate subspaces.
    """
    d = L.ambient_rank
    if L.rank == 0:
        return False
    for k in range(d):
        for Z in itertools.combinations(range(d), k):
            sec = coordinate_section(L, Z)
            if sec.rank == 1:
                g = sec.basis[0]
                if all(x >= 0 for x in g) or all(x <= 0 for x in g):
                    return True
    return False


def contains(b: Bicharacter, P: IdealLabel, Q: IdealLabel) -> Optional[bool]:
    """Whether the ideal labelled ``P`` lies inside the one labelled ``Q``.

    Returns True, False, or None when the answer depends on the values of
    unconstrained symbols.  The test quantifies over the whole radical
    lattice of ``P``, so it does not depend on the chosen basis:

    * ``w_P`` must be contained in ``w_Q``;
    * no ``a`` in ``S_P`` may have exactly one of ``a+``, ``a-`` meeting
      ``w_Q`` (such a binomial is a nonzero monomial on ``Q``'s points);
    * every ``a`` in ``S_P`` supported off ``w_Q`` must lie in ``S_Q`` with
      ``chi_Q(a) = chi_P(a)``.
    """
    if P.side != Q.side:
        raise ValueError("labels live on different sides")
    for lab in (P, Q):
        if lab.n != b.n or lab.basis != radical(b, lab.w).basis:
            raise ValueError(f"label {lab.as_dict()} does not match the bicharacter")
    if not set(P.w) <= set(Q.w):
        return False
    new = [j for j in Q.w if j not in P.w]
    SP = P.lattice
    if new and has_semidefinite_vector(projection(SP, new)):
        return False
    SQ = Q.lattice
    verdict: Optional[bool] = True
    for a in coordinate_section(SP, new).basis:
        if solve_membership(SQ, a) is None:
            return False
        same = same_value(P.char(a), Q.char(a))
        if same is False:
            return False
        if same is None:
            verdict = None
    return verdict


def stratum_order(b: Bicharacter, strata: Optional[list[StratumReport]] = None) -> dict:
    """``(w, w') -> bool``: some member of stratum ``w`` lies inside some member of ``w'``."""
    strata = strata if strata is not None else full_spectrum(b)
    labels = {r.w: r.generic_label(tag=True) for r in strata}
    return {(r.w, s.w): contains(b, labels[r.w], labels[s.w]) is not False
            for r in strata for s in strata}


def cover_relations(keys: list, leq: dict) -> list[tuple]:
    """Covers of a finite order given as a ``(x, y) -> bool`` table."""
    out = []
    for x in keys:
        for y in keys:
            if x == y or not leq[x, y]:
                continue
            if any(z not in (x, y) and leq[x, z] and leq[z, y] and not leq[z, x] and not leq[y, z]
                   for z in keys):
                continue
            out.append((x, y))
    return out


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def hasse_diagram(b: Bicharacter, granularity: str = "stratum",
                  labels: Optional[Sequence[IdealLabel]] = None,
                  max_n: int = MAX_STRATA_N) -> str:
    """Graphviz DOT text for the containment order.

    ``granularity="stratum"``: one node per stratum named ``w_<bitstring>``,
    edges are covers of the order "some member lies below some member".
    ``granularity="labels"``: one node per given label, edges are covers of
    ``contains`` (indeterminate answers count as no edge).
    """
    lines = ["digraph prim {", "  rankdir=BT;", "  node [shape=box, fontname=\"monospace\"];",
             f"  // {_RULE}"]
    if granularity == "stratum":
        strata = full_spectrum(b, max_n)
        leq = stratum_order(b, strata)
        keys = [r.w for r in strata]
        for r in strata:
            text = f"w = {show_set(r.w)}\\ndim = {r.rank}\\n{_dot_escape(r.family_text())}"
            lines.append(f"  w_{bitstring(b.n, r.w)} [label=\"{text}\"];")
        for x, y in cover_relations(keys, leq):
            lines.append(f"  w_{bitstring(b.n, x)} -> w_{bitstring(b.n, y)};")
    elif granularity == "labels":
        if labels is None:
            raise ValueError("label granularity needs labels")
        keys = list(range(len(labels)))
        leq = {(i, j): contains(b, labels[i], labels[j]) is True for i in keys for j in keys}
        for i, lab in enumerate(labels):
            lines.append(f"  p_{i} [label=\"{_dot_escape(lab.ideal_text())}\"];")
        for x, y in cover_relations(keys, leq):
            lines.append(f"  p_{x} -> p_{y};")
    else:
        raise ValueError(f"unknown granularity {granularity!r}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cover_edges(b: Bicharacter) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    strata = full_spectrum(b)
    return cover_relations([r.w for r in strata], stratum_order(b, strata))


def rank_vector(b: Bicharacter) -> tuple[int, ...]:
    return tuple(r.rank for r in full_spectrum(b))


__all__ = [
    "StratumReport", "IdealLabel", "CoreDescriptor", "stratum_report", "full_spectrum",
    "poisson_core", "symplectic_core", "phi_transport", "contains", "hasse_diagram",
    "generic_label", "make_label", "subsets", "stratum_order", "cover_edges", "rank_vector",
    "complement",
]
