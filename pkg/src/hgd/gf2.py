"""Square bit matrices over GF(2) and their rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from hgd.errors import InvalidArgument


@dataclass(frozen=True)
class Gf2Matrix:
    """A ``dim x dim`` matrix over GF(2), one Python int bitmask per row.

    Bit ``j`` of ``rows[i]`` is entry ``(i, j)``.
    """

    dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.dim < 0 or len(self.rows) != self.dim:
            raise InvalidArgument(f"expected {self.dim} rows, got {len(self.rows)}")
        limit = 1 << self.dim
        if any(r < 0 or r >= limit for r in self.rows):
            raise InvalidArgument("row bitmask wider than matrix dimension")

    @classmethod
    def zeros(cls, dim: int) -> Gf2Matrix:
        return cls(dim, (0,) * dim)

    @classmethod
    def identity(cls, dim: int) -> Gf2Matrix:
        return cls(dim, tuple(1 << i for i in range(dim)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> Gf2Matrix:
        dim = len(entries)
        rows = []
        for row in entries:
            if len(row) != dim:
                raise InvalidArgument("matrix must be square")
            mask = 0
            for j, v in enumerate(row):
                if v & 1:
                    mask |= 1 << j
            rows.append(mask)
        return cls(dim, tuple(rows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.dim)] for r in self.rows]

    def transpose(self) -> Gf2Matrix:
        cols = []
        for j in range(self.dim):
            mask = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    mask |= 1 << i
            cols.append(mask)
        return Gf2Matrix(self.dim, tuple(cols))

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def permuted(self, perm: Sequence[int]) -> Gf2Matrix:
        """Simultaneous row/column permutation: new ``(a, b)`` = old ``(perm[a], perm[b])``."""
        rows = []
        for a in range(self.dim):
            old = self.rows[perm[a]]
            mask = 0
            for b in range(self.dim):
                if (old >> perm[b]) & 1:
                    mask |= 1 << b
            rows.append(mask)
        return Gf2Matrix(self.dim, tuple(rows))

    def rank(self) -> int:
        return rank_rows(self.rows)


def rank_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a list of row bitmasks by XOR elimination."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def rank(m: Gf2Matrix) -> int:
    return rank_rows(m.rows)


class RankContext:
    """Incremental matrix state for walking assignments one bit flip at a time.

    Each free bit toggles a fixed symmetric pair of entries (or a single
    diagonal entry). Flipping a bit updates the row masks in O(1); the rank
    is then recomputed from the maintained rows, so no per-step rebuild
    from the assignment is needed.
    """

    def __init__(self, dim: int, positions: Sequence[tuple[int, int]]):
        self.dim = dim
        self.positions = tuple(positions)
        self.rows = [0] * dim
        self.assignment = 0

    def flip(self, bit: int) -> int:
        i, j = self.positions[bit]
        self.rows[i] ^= 1 << j
        if i != j:
            self.rows[j] ^= 1 << i
        self.assignment ^= 1 << bit
        return rank_rows(self.rows)

    def matrix(self) -> Gf2Matrix:
        return Gf2Matrix(self.dim, tuple(self.rows))

    def gray_sweep(self):
        """Yield ``(assignment, rank)`` for every assignment in reflected Gray-code order."""
        nbits = len(self.positions)
        yield self.assignment, rank_rows(self.rows)
        for step in range(1, 1 << nbits):
            bit = (step & -step).bit_length() - 1
            r = self.flip(bit)
            yield self.assignment, r


def rank_incremental(context: RankContext, next_assignment_delta: int) -> int:
    """Apply a single-bit delta (bit index) to ``context`` and return the new rank."""
    return context.flip(next_assignment_delta)
