"""Exact integer matrix normal forms and sublattices of Z^n.

Matrices are plain nested tuples of Python ints (row-major).  Every routine
here is pure and works with arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return ()
    if len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A[0])} times {len(B)}x?")
    if not B:
        return tuple(() for _ in A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    H, _ = hermite_normal_form(M)
    return sum(1 for row in H if any(row))


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * M == H``.  ``H`` is in
    row echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)`` and zero rows sit at the bottom.

    >>> hermite_normal_form([[2, 4], [6, 8]])[0]
    ((2, 0), (0, 4))
    """
    H = [list(r) for r in as_matrix(M)]
    r = len(H)
    c = len(H[0]) if r else 0
    U = [list(row) for row in identity(r)]

    def sub(i: int, p: int, k: int) -> None:
        # row_i -= k * row_p
        if k:
            H[i] = [a - k * b for a, b in zip(H[i], H[p])]
            U[i] = [a - k * b for a, b in zip(U[i], U[p])]

    p = 0
    for col in range(c):
        if p == r:
            break
        found = False
        while True:
            live = [i for i in range(p, r) if H[i][col] != 0]
            if not live:
                break
            found = True
            best = min(live, key=lambda i: abs(H[i][col]))
            H[p], H[best] = H[best], H[p]
            U[p], U[best] = U[best], U[p]
            clean = True
            for i in range(p + 1, r):
                if H[i][col]:
                    sub(i, p, H[i][col] // H[p][col])
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if H[p][col] < 0:
            H[p] = [-a for a in H[p]]
            U[p] = [-a for a in U[p]]
        for i in range(p):
            sub(i, p, H[i][col] // H[p][col])
        p += 1
    return as_matrix(H), as_matrix(U)


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U * M * V == D``.

    ``U`` and ``V`` are unimodular and the diagonal of ``D`` is nonnegative
    with each entry dividing the next.
    """
    A = [list(r) for r in as_matrix(M)]
    r = len(A)
    c = len(A[0]) if r else 0
    U = [list(row) for row in identity(r)]
    V = [list(row) for row in identity(c)]

    def row_sub(i, j, k):  # row_i -= k * row_j
        A[i] = [a - k * b for a, b in zip(A[i], A[j])]
        U[i] = [a - k * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, k):  # col_i -= k * col_j
        for row in A:
            row[i] -= k * row[j]
        for row in V:
            row[i] -= k * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(r, c)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            row_swap(t, i)
            col_swap(t, j)
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    row_sub(i, t, A[i][t] // piv)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    col_sub(j, t, A[t][j] // piv)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            # divisibility: fold an offending row into row t and go again
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < r and t < c and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return as_matrix(A), as_matrix(U), as_matrix(V)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank with a basis in Hermite normal form."""

    ambient_rank: int
    basis: IntMatrix = ()

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        rows = as_matrix(rows)
        if any(len(v) != ambient_rank for v in rows):
            raise ValueError("generator length differs from ambient rank")
        if not rows:
            return cls(ambient_rank, ())
        H, _ = hermite_normal_form(rows)
        return cls(ambient_rank, tuple(row for row in H if any(row)))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(row) if a) for row in self.basis)

    def __contains__(self, v) -> bool:
        return solve_membership(self, v) is not None

    def issubset(self, other: "Lattice") -> bool:
        return all(b in other for b in self.basis)

    def vector(self, coords: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.ambient_rank
        for c, row in zip(coords, self.basis):
            for j, a in enumerate(row):
                out[j] += c * a
        return tuple(out)


def integer_kernel(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Lattice:
    """The lattice ``{v in Z^cols : M v = 0}``.

    ``ncols`` is only needed when ``M`` has no rows.
    """
    M = as_matrix(M)
    cols = len(M[0]) if M else ncols
    if cols is None:
        raise ValueError("column count of an empty matrix must be given")
    if not M:
        return Lattice.full(cols)
    H, U = hermite_normal_form(transpose(M))
    r = sum(1 for row in H if any(row))
    return Lattice.from_generators(U[r:], cols)


def solve_membership(S: Lattice, v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coordinates of ``v`` in the basis of ``S``, or None if ``v`` is not in ``S``."""
    if len(v) != S.ambient_rank:
        raise ValueError("vector length differs from ambient rank")
    rest = list(v)
    coords = []
    for row, p in zip(S.basis, S.pivots()):
        k, rem = divmod(rest[p], row[p])
        if rem:
            return None
        coords.append(k)
        if k:
            rest = [a - k * b for a, b in zip(rest, row)]
    if any(rest):
        return None
    return tuple(coords)


def coordinate_section(S: Lattice, J: Iterable[int]) -> Lattice:
    """``{v in S : v_j = 0 for j in J}`` (0-based indices)."""
    J = sorted(set(J))
    if any(j < 0 or j >= S.ambient_rank for j in J):
        raise ValueError("index outside the ambient coordinates")
    if not J or S.rank == 0:
        return S
    # y^T B restricted to J must vanish
    C = tuple(tuple(row[j] for row in S.basis) for j in J)
    K = integer_kernel(C, S.rank)
    return Lattice.from_generators((S.vector(y) for y in K.basis), S.ambient_rank)


def projection(S: Lattice, J: Sequence[int]) -> Lattice:
    """Image of ``S`` under the coordinate projection onto ``J`` (in the given order)."""
    return Lattice.from_generators(
        (tuple(row[j] for j in J) for row in S.basis), len(J)
    )
