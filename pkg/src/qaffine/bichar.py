"""Alternating bicharacters on Z^n in exponent form.

A bicharacter ``c`` with values in a free abelian group on symbols
``lambda_1..lambda_m`` is stored as ``m`` antisymmetric integer matrices
``L_k``, so that ``c(s, t) = prod_k lambda_k ** (s^T L_k t)``.  The squared
bicharacter ``sigma = c**2`` simply doubles every exponent.

Index sets ``w`` are collections of 0-based generator indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .lattice import IntMatrix, Lattice, as_matrix, integer_kernel


class BicharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Bicharacter:
    n: int
    L: tuple[IntMatrix, ...]
    names: tuple[str, ...]

    @property
    def m(self) -> int:
        return len(self.L)

    def pair(self, k: int, s: Sequence[int], t: Sequence[int]) -> int:
        """The integer ``s^T L_k t``."""
        M = self.L[k]
        return sum(si * sum(a * tj for a, tj in zip(M[i], t)) for i, si in enumerate(s) if si)

    def exponents(self, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        return eval_c(self, s, t)

    def restricted(self, keep: Sequence[int]) -> tuple[IntMatrix, ...]:
        return tuple(tuple(tuple(M[i][j] for j in keep) for i in keep) for M in self.L)


def validate(L: Sequence[Sequence[Sequence[int]]], n: int,
             names: Optional[Sequence[str]] = None) -> Bicharacter:
    """Check the exponent matrices of an alternating bicharacter on Z^n."""
    mats = []
    for k, raw in enumerate(L):
        try:
            M = as_matrix(raw)
        except ValueError:
            raise BicharacterError(f"L[{k}] is ragged") from None
        if len(M) != n or any(len(row) != n for row in M):
            raise BicharacterError(f"L[{k}] must be {n}x{n}")
        for i in range(n):
            if M[i][i] != 0:
                raise BicharacterError(f"diagonal must vanish: L[{k}][{i}][{i}] = {M[i][i]}")
            for j in range(i + 1, n):
                if M[i][j] != -M[j][i]:
                    raise BicharacterError(
                        f"matrix must be antisymmetric: L[{k}][{i}][{j}] = {M[i][j]}"
                        f" but L[{k}][{j}][{i}] = {M[j][i]}"
                    )
        mats.append(M)
    if names is None:
        names = tuple(f"lambda{k + 1}" for k in range(len(mats)))
    names = tuple(names)
    if len(names) != len(mats):
        raise BicharacterError(f"{len(names)} parameter names for {len(mats)} matrices")
    if len(set(names)) != len(names):
        raise BicharacterError("parameter names must be distinct")
    return Bicharacter(n, tuple(mats), names)


def _check_vec(b: Bicharacter, v: Sequence[int], what: str) -> None:
    if len(v) != b.n:
        raise BicharacterError(f"{what} has length {len(v)}, expected {b.n}")


def eval_c(b: Bicharacter, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """Exponent vector of ``c(s, t)`` over the parameter basis."""
    _check_vec(b, s, "s")
    _check_vec(b, t, "t")
    return tuple(b.pair(k, s, t) for k in range(b.m))


def eval_sigma(b: Bicharacter, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * e for e in eval_c(b, s, t))


def complement(n: int, w: Iterable[int]) -> tuple[int, ...]:
    w = set(w)
    if any(i < 0 or i >= n for i in w):
        raise BicharacterError(f"index set {sorted(w)} not inside range({n})")
    return tuple(i for i in range(n) if i not in w)


def radical(b: Bicharacter, w: Iterable[int] = ()) -> Lattice:
    """The radical ``S_w`` of ``c`` restricted to the coordinates outside ``w``.

    Computed as the integer kernel of the stacked restricted exponent
    matrices and embedded back into Z^n with zeros on ``w``.  Because the
    exponents live in a free abelian group, this is also the radical of
    ``sigma`` restricted to the same coordinates.
    """
    keep = complement(b.n, w)
    if not keep:
        return Lattice(b.n, ())
    stacked = [row for M in b.restricted(keep) for row in M]
    K = integer_kernel(stacked, len(keep))
    rows = []
    for v in K.basis:
        full = [0] * b.n
        for j, x in zip(keep, v):
            full[j] = x
        rows.append(full)
    return Lattice.from_generators(rows, b.n)


def from_uniparameter(r: Sequence[Sequence[int]], reduce: bool = False,
                      name: str = "q") -> Bicharacter:
    """Bicharacter with ``c(e_i, e_j) = q ** r_ij`` for a nonzero antisymmetric ``r``.

    With ``reduce=True`` the single exponent matrix is divided by the gcd of
    the entries of ``r`` and the parameter becomes ``q**gcd``.
    """
    M = as_matrix(r)
    n = len(M)
    if all(a == 0 for row in M for a in row):
        raise BicharacterError("nonzero matrix required")
    if reduce:
        g = 0
        for row in M:
            for a in row:
                g = gcd(g, a)
        M = tuple(tuple(a // g for a in row) for row in M)
        if g != 1:
            name = f"{name}^{g}"
    return validate([M], n, [name])


def from_sigma(S: Sequence[Sequence[Sequence[int]]], n: int,
               names: Optional[Sequence[str]] = None) -> Bicharacter:
    """Build ``c`` from exponent matrices of ``sigma = c**2``.

    A matrix with only even entries is halved.  A matrix with an odd entry is
    kept as is and its parameter is replaced by a formal square root, named
    ``sqrt(<name>)``, so exponents stay integral.
    """
    if names is None:
        names = [f"lambda{k + 1}" for k in range(len(S))]
    mats, out_names = [], []
    for M, name in zip(S, names):
        M = as_matrix(M)
        if all(a % 2 == 0 for row in M for a in row):
            mats.append(tuple(tuple(a // 2 for a in row) for row in M))
            out_names.append(name)
        else:
            mats.append(M)
            out_names.append(f"sqrt({name})")
    return validate(mats, n, out_names)
