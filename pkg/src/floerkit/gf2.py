"""Sparse linear algebra over the two-element field.

A vector is a Python ``int`` read as a bitset: bit ``i`` set means the
coefficient of generator ``i`` is 1. Addition is XOR. A matrix is a tuple
of such column bitsets together with a row count.

The pivot of a nonzero column is its largest set index, which is the
convention persistence-style reductions use when generators are sorted
by filtration value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Gf2Vector = int


def vector(indices: Iterable[int]) -> Gf2Vector:
    """Build a vector from an iterable of support indices (repeats cancel)."""
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def support(v: Gf2Vector) -> list[int]:
    """Return the sorted support of ``v``."""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def pivot(v: Gf2Vector) -> int:
    """Largest index in the support, or -1 for the zero vector."""
    return v.bit_length() - 1


def weight(v: Gf2Vector) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class Gf2Matrix:
    columns: tuple[int, ...]
    n_rows: int

    def __post_init__(self):
        bound = 1 << self.n_rows
        for c in self.columns:
            if c < 0 or c >= bound:
                raise ValueError(f"column {c:b} has an index >= n_rows={self.n_rows}")

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, len(self.columns)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return (self.columns[j] >> i) & 1

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        return matmul(self, other)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Gf2Matrix(tuple(a ^ b for a, b in zip(self.columns, other.columns)), self.n_rows)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def entries(self) -> list[tuple[int, int]]:
        """Nonzero entries as (row, column) pairs."""
        return [(i, j) for j, c in enumerate(self.columns) for i in support(c)]

    def to_rows(self) -> list[list[int]]:
        return [[self[i, j] for j in range(self.n_cols)] for i in range(self.n_rows)]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "Gf2Matrix":
        n_rows = len(rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        cols = [0] * n_cols
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x % 2:
                    cols[j] |= 1 << i
        return cls(tuple(cols), n_rows)


def zeros(n_rows: int, n_cols: int) -> Gf2Matrix:
    return Gf2Matrix((0,) * n_cols, n_rows)


def identity(n: int) -> Gf2Matrix:
    return Gf2Matrix(tuple(1 << i for i in range(n)), n)


def matvec(m: Gf2Matrix, x: Gf2Vector) -> Gf2Vector:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= m.columns[j]
        x >>= 1
        j += 1
    return out


def matmul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    if a.n_cols != b.n_rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return Gf2Matrix(tuple(matvec(a, c) for c in b.columns), a.n_rows)


def transpose(m: Gf2Matrix) -> Gf2Matrix:
    rows = [0] * m.n_rows
    for j, c in enumerate(m.columns):
        for i in support(c):
            rows[i] |= 1 << j
    return Gf2Matrix(tuple(rows), m.n_cols)


def select(m: Gf2Matrix, rows: Sequence[int], cols: Sequence[int]) -> Gf2Matrix:
    """Submatrix on the given rows and columns, re-indexed in the given order."""
    position = {r: k for k, r in enumerate(rows)}
    out = []
    for j in cols:
        c = 0
        for i in support(m.columns[j]):
            k = position.get(i)
            if k is not None:
                c |= 1 << k
        out.append(c)
    return Gf2Matrix(tuple(out), len(rows))


def reduce(m: Gf2Matrix) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Left-to-right column reduction.

    Returns ``(reduced, transform)`` with ``reduced == m @ transform``,
    ``transform`` upper unitriangular, and distinct nonzero columns of
    ``reduced`` having distinct pivots.
    """
    cols = list(m.columns)
    trans = [1 << j for j in range(m.n_cols)]
    owner: dict[int, int] = {}
    for j in range(len(cols)):
        c = cols[j]
        t = trans[j]
        while c:
            p = c.bit_length() - 1
            k = owner.get(p)
            if k is None:
                owner[p] = j
                break
            c ^= cols[k]
            t ^= trans[k]
        cols[j] = c
        trans[j] = t
    return Gf2Matrix(tuple(cols), m.n_rows), Gf2Matrix(tuple(trans), m.n_cols)


def pivot_map(reduced: Gf2Matrix) -> dict[int, int]:
    """Map pivot row -> column index for a reduced matrix."""
    return {c.bit_length() - 1: j for j, c in enumerate(reduced.columns) if c}


def rank(m: Gf2Matrix) -> int:
    reduced, _ = reduce(m)
    return sum(1 for c in reduced.columns if c)


def reduce_vector(b: Gf2Vector, reduced: Gf2Matrix, transform: Gf2Matrix,
                  pivots: dict[int, int] | None = None) -> tuple[Gf2Vector, Gf2Vector]:
    """Eliminate pivots of ``b`` using the reduced columns.

    Returns ``(residue, x)`` with ``b == residue + m @ x``. The residue has
    the smallest possible pivot among all elements of ``b + colspan(m)``.
    """
    if pivots is None:
        pivots = pivot_map(reduced)
    x = 0
    while b:
        k = pivots.get(b.bit_length() - 1)
        if k is None:
            break
        b ^= reduced.columns[k]
        x ^= transform.columns[k]
    return b, x


def solve(m: Gf2Matrix, b: Gf2Vector) -> Gf2Vector | None:
    """Return some ``x`` with ``m @ x == b``, or ``None`` if ``b`` is not in the column span."""
    if b >> m.n_rows:
        raise ValueError("right-hand side has an index >= n_rows")
    reduced, transform = reduce(m)
    residue, x = reduce_vector(b, reduced, transform)
    return x if residue == 0 else None


def in_span(m: Gf2Matrix, b: Gf2Vector) -> bool:
    return solve(m, b) is not None


def kernel_basis(m: Gf2Matrix) -> list[Gf2Vector]:
    reduced, transform = reduce(m)
    return [transform.columns[j] for j, c in enumerate(reduced.columns) if c == 0]


def image_basis(m: Gf2Matrix) -> list[Gf2Vector]:
    reduced, _ = reduce(m)
    return [c for c in reduced.columns if c]


def quotient_basis(ambient_dim: int, subspace: Gf2Matrix) -> list[Gf2Vector]:
    """Coset representatives for ``F^ambient_dim / colspan(subspace)``.

    The unit vectors outside the pivot set of the reduced subspace complete
    a basis of the subspace to a basis of the ambient space.
    """
    if subspace.n_rows != ambient_dim:
        raise ValueError("subspace rows must equal the ambient dimension")
    pivots = pivot_map(reduce(subspace)[0])
    return [1 << i for i in range(ambient_dim) if i not in pivots]


def from_columns(columns: Iterable[Gf2Vector], n_rows: int) -> Gf2Matrix:
    return Gf2Matrix(tuple(columns), n_rows)
