"""Dense GF(2) linear algebra on int bitsets.

Bit ``k`` of a row word is column ``k``; message ``x_k`` lives at bit ``k - 1``.
Rows are plain Python ints, so a matrix is a tuple of ints plus a column count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence


def _mask(width: int) -> int:
    return (1 << width) - 1


def bits_of(word: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``word`` in ascending order."""
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("BitVector length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        word = 0
        for k, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError(f"entry {v!r} is not a GF(2) value")
            word |= v << k
        return cls(len(values), word)

    @classmethod
    def unit(cls, length: int, k: int) -> BitVector:
        return cls(length, 1 << k)

    def to_list(self) -> list[int]:
        return [(self.bits >> k) & 1 for k in range(self.length)]

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.length:
            raise IndexError(k)
        return (self.bits >> k) & 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return list(bits_of(self.bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative shape")
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = _mask(self.ncols)
        for r in self.rows:
            if r < 0 or r & ~limit:
                raise ValueError(f"row {r:#x} does not fit in {self.ncols} columns")

    # construction

    @classmethod
    def from_words(cls, words: Iterable[int], ncols: int) -> BitMatrix:
        rows = tuple(words)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> BitMatrix:
        if not data:
            raise ValueError("need at least one row")
        ncols = len(data[0])
        words = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            words.append(BitVector.from_list(row).bits)
        return cls.from_words(words, ncols)

    @classmethod
    def from_strings(cls, data: Sequence[str]) -> BitMatrix:
        """Parse rows written as '0'/'1' strings, leftmost character = column 0."""
        return cls.from_lists([[int(ch) for ch in row.replace(" ", "")] for row in data])

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> BitMatrix:
        return cls.from_words(columns, nrows).transpose()

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << k for k in range(n)))

    # access

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(index)
        return (self.rows[i] >> j) & 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> int:
        word = 0
        for i, r in enumerate(self.rows):
            word |= ((r >> j) & 1) << i
        return word

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    # algebra

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.column(j) for j in range(self.ncols)))

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            for k in bits_of(r):
                acc ^= other.rows[k]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __add__ = __xor__

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        shift = self.ncols
        return BitMatrix(
            self.nrows,
            self.ncols + other.ncols,
            tuple(a | (b << shift) for a, b in zip(self.rows, other.rows)),
        )

    def block_diag(self, other: BitMatrix) -> BitMatrix:
        top = self.hstack(BitMatrix.zeros(self.nrows, other.ncols))
        bottom = BitMatrix.zeros(other.nrows, self.ncols).hstack(other)
        return top.vstack(bottom)


def _eliminate(words: list[int], ncols: int) -> list[int]:
    """In-place Gauss-Jordan over the first ``ncols`` bits; returns pivot columns."""
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        for r in range(top, len(words)):
            if words[r] & bit:
                break
        else:
            continue
        words[top], words[r] = words[r], words[top]
        for r2 in range(len(words)):
            if r2 != top and words[r2] & bit:
                words[r2] ^= words[top]
        pivots.append(col)
        top += 1
        if top == len(words):
            break
    return pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns (ascending)."""
    words = list(m.rows)
    pivots = _eliminate(words, m.ncols)
    return BitMatrix(m.nrows, m.ncols, tuple(words)), pivots


def rank(m: BitMatrix) -> int:
    return len(rref(m)[1])


def rank_of_words(words: Iterable[int]) -> int:
    basis: list[int] = []
    for w in words:
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis.append(w)
    return len(basis)


def span_dimension(vectors: Sequence[BitVector]) -> int:
    if vectors and len({v.length for v in vectors}) != 1:
        raise ValueError("vectors must share one length")
    return rank_of_words(v.bits for v in vectors)


class InconsistentSystem(ValueError):
    """Raised when a linear system over GF(2) has no solution."""


@dataclass(frozen=True)
class AffineSolution:
    """All solutions ``particular + span(nullspace)`` of a linear system."""

    particular: BitVector
    nullspace: tuple[BitVector, ...]

    def __len__(self) -> int:
        return 1 << len(self.nullspace)

    def __iter__(self) -> Iterator[BitVector]:
        n = self.particular.length
        for word in affine_words(self.particular.bits, [v.bits for v in self.nullspace]):
            yield BitVector(n, word)

    def __contains__(self, x: BitVector) -> bool:
        if x.length != self.particular.length:
            return False
        basis = [v.bits for v in self.nullspace]
        return rank_of_words(basis + [x.bits ^ self.particular.bits]) == len(basis)


def affine_words(base: int, generators: Sequence[int]) -> Iterator[int]:
    """Enumerate ``base + span(generators)`` in Gray-code order (generators independent)."""
    word = base
    yield word
    for step in range(1, 1 << len(generators)):
        word ^= generators[(step & -step).bit_length() - 1]
        yield word


def solve_affine(
    a: BitMatrix, b: BitVector, forced_zero: Iterable[int] = ()
) -> AffineSolution:
    """Solve ``a x = b`` with ``x[k] = 0`` for every ``k`` in ``forced_zero``."""
    if a.nrows != b.length:
        raise ValueError("a must have as many rows as b has entries")
    n = a.ncols
    forced = frozenset(forced_zero)
    if any(not 0 <= k < n for k in forced):
        raise ValueError("forced_zero index out of range")
    allowed = _mask(n) & ~sum(1 << k for k in forced)
    rhs_bit = 1 << n
    words = [(r & allowed) | (rhs_bit if b[i] else 0) for i, r in enumerate(a.rows)]
    pivots = _eliminate(words, n)
    if any(w == rhs_bit for w in words):
        raise InconsistentSystem("no solution under the given constraints")

    particular = 0
    for row, col in zip(words, pivots):
        if row & rhs_bit:
            particular |= 1 << col
    pivot_set = set(pivots)
    nullspace = []
    for f in bits_of(allowed):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, col in zip(words, pivots):
            if (row >> f) & 1:
                v |= 1 << col
        nullspace.append(BitVector(n, v))
    return AffineSolution(BitVector(n, particular), tuple(nullspace))


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^n held by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[int | BitVector], ambient_dim: int) -> Subspace:
        words = [v.bits if isinstance(v, BitVector) else v for v in vectors]
        if any(w >> ambient_dim for w in words):
            raise ValueError("vector exceeds ambient dimension")
        pivots = _eliminate(words, ambient_dim)
        return cls(ambient_dim, tuple(words[: len(pivots)]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int | BitVector) -> bool:
        w = v.bits if isinstance(v, BitVector) else v
        for b in self.basis:
            low = b & -b
            if w & low:
                w ^= b
        return w == 0

    def elements(self) -> Iterator[int]:
        return affine_words(0, self.basis)

    def basis_vectors(self) -> list[BitVector]:
        return [BitVector(self.ambient_dim, b) for b in self.basis]


def count_bases(c: int) -> int:
    """Number of unordered bases of a c-dimensional GF(2) space."""
    ordered = 1
    for i in range(c):
        ordered *= (1 << c) - (1 << i)
    return ordered // factorial(c)


def enumerate_bases(s: Subspace) -> Iterator[tuple[BitVector, ...]]:
    """Yield every unordered basis of ``s`` once, vectors sorted by integer value."""
    if not s.basis:
        raise ValueError("subspace must be nonzero")
    c = s.dim
    pool = sorted(w for w in s.elements() if w)

    def extend(chosen: list[int], reduced: list[int], start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == c:
            yield tuple(chosen)
            return
        for idx in range(start, len(pool)):
            w = pool[idx]
            r = w
            for b in reduced:
                r = min(r, r ^ b)
            if r:
                yield from extend(chosen + [w], reduced + [r], idx + 1)

    for words in extend([], [], 0):
        yield tuple(BitVector(s.ambient_dim, w) for w in words)


def enumerate_subspaces(ambient_dim: int, dim: int) -> Iterator[Subspace]:
    """Yield each ``dim``-dimensional subspace of GF(2)^ambient_dim once."""
    n, c = ambient_dim, dim
    if not 0 <= c <= n:
        raise ValueError("need 0 <= dim <= ambient_dim")
    for pivots in itertools.combinations(range(n), c):
        pivot_mask = sum(1 << p for p in pivots)
        free_per_row = [
            [j for j in range(p + 1, n) if not (pivot_mask >> j) & 1] for p in pivots
        ]
        slots = [(r, j) for r, cols in enumerate(free_per_row) for j in cols]
        for fill in range(1 << len(slots)):
            rows = [1 << p for p in pivots]
            for t, (r, j) in enumerate(slots):
                if (fill >> t) & 1:
                    rows[r] |= 1 << j
            yield Subspace(n, tuple(rows))


def gaussian_binomial(n: int, c: int) -> int:
    if not 0 <= c <= n:
        return 0
    num = den = 1
    for i in range(c):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den
