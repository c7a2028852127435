"""Dense bit-packed linear algebra over the field with two elements.

Rows are Python integers used as bit masks (bit ``i`` is column ``i``),
which gives word-parallel XOR row operations with no dependencies.
Pivoting is deterministic: lowest column index first, first available
row first, so every echelon form and every basis produced downstream is
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class F2Vector:
    """Immutable vector over GF(2); bit ``i`` of ``bits`` is entry ``i``."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        if self.bits >> self.length:
            raise ValueError("padding bits beyond length must be zero")

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "F2Vector":
        bits = 0
        n = 0
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
            n = i + 1
        return cls(bits, n)

    @classmethod
    def zero(cls, length: int) -> "F2Vector":
        return cls(0, length)

    @classmethod
    def unit(cls, i: int, length: int) -> "F2Vector":
        return cls(1 << i, length)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return F2Vector(self.bits ^ other.bits, self.length)

    def dot(self, other: "F2Vector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def to_entries(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over GF(2) stored as a tuple of bit-mask rows."""

    rows: tuple[int, ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __post_init__(self) -> None:
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits outside column range")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: Optional[int] = None) -> "F2Matrix":
        packed = []
        width = 0
        for row in rows:
            bits = 0
            n = 0
            for i, e in enumerate(row):
                if e & 1:
                    bits |= 1 << i
                n = i + 1
            packed.append(bits)
            width = max(width, n)
        if ncols is None:
            ncols = width
        return cls(tuple(packed), ncols)

    @classmethod
    def from_vectors(cls, vectors: Iterable[F2Vector], ncols: Optional[int] = None) -> "F2Matrix":
        vectors = list(vectors)
        if ncols is None:
            if not vectors:
                raise ValueError("ncols required for an empty matrix")
            ncols = vectors[0].length
        for v in vectors:
            if v.length != ncols:
                raise ValueError("length mismatch")
        return cls(tuple(v.bits for v in vectors), ncols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.rows[i], self.ncols)

    def mul_vec(self, v: F2Vector) -> F2Vector:
        if v.length != self.ncols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return F2Vector(bits, len(self.rows))

    def mul(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                i = (rr & -rr).bit_length() - 1
                acc ^= other.rows[i]
                rr &= rr - 1
            out.append(acc)
        return F2Matrix(tuple(out), other.ncols)

    def transpose(self) -> "F2Matrix":
        cols = []
        for j in range(self.ncols):
            bits = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    bits |= 1 << i
            cols.append(bits)
        return F2Matrix(tuple(cols), len(self.rows))


def rref(m: F2Matrix) -> tuple[int, list[int], F2Matrix]:
    """Reduced row echelon form; returns (rank, pivot columns, reduced)."""
    rows = list(m.rows)
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        mask = 1 << col
        pivot_row = -1
        for i in range(r, len(rows)):
            if rows[i] & mask:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return r, pivots, F2Matrix(tuple(rows), m.ncols)


def rank(m: F2Matrix) -> int:
    return rref(m)[0]


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Deterministic basis of the right kernel, one vector per free column."""
    nrank, pivots, red = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for i, p in enumerate(pivots):
            if (red.rows[i] >> free) & 1:
                bits |= 1 << p
        basis.append(F2Vector(bits, m.ncols))
    return basis


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """One solution of m x = b, or None when b is outside the column span."""
    if b.length != m.nrows:
        raise ValueError("dimension mismatch: b must have one entry per row")
    aug_col = 1 << m.ncols
    rows = [m.rows[i] | (aug_col if (b.bits >> i) & 1 else 0) for i in range(m.nrows)]
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        mask = 1 << col
        pivot_row = -1
        for i in range(r, len(rows)):
            if rows[i] & mask:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i] & aug_col:
            return None
    bits = 0
    for i, p in enumerate(pivots):
        if rows[i] & aug_col:
            bits |= 1 << p
    return F2Vector(bits, m.ncols)


def span_contains(basis_rows: list[int], ncols: int, vector_bits: int) -> bool:
    """Membership of a vector in the row span (echelonizes a copy)."""
    _, pivots, red = rref(F2Matrix(tuple(basis_rows), ncols))
    v = vector_bits
    for i, p in enumerate(pivots):
        if (v >> p) & 1:
            v ^= red.rows[i]
    return v == 0


class EchelonSpan:
    """Incrementally maintained echelon basis of a subspace of GF(2)^n.

    Rows are kept fully reduced with ascending pivot columns, so
    membership reduction is deterministic and the stored basis is
    canonical for the subspace.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[int] = []
        self.pivots: list[int] = []

    def reduce(self, bits: int) -> int:
        for row, p in zip(self.rows, self.pivots):
            if (bits >> p) & 1:
                bits ^= row
        return bits

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    def add(self, bits: int) -> bool:
        """Add a vector; returns True when it enlarged the span."""
        bits = self.reduce(bits)
        if bits == 0:
            return False
        p = (bits & -bits).bit_length() - 1
        for i in range(len(self.rows)):
            if (self.rows[i] >> p) & 1:
                self.rows[i] ^= bits
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < p:
            idx += 1
        self.rows.insert(idx, bits)
        self.pivots.insert(idx, p)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)
