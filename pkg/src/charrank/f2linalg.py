"""Linear algebra over F_2 on bit-packed row vectors.

Vectors are packed into Python ints: coordinate ``k`` is bit ``1 << k``.
:class:`RowSpace` keeps its rows in echelon form keyed by the lowest set
bit of each row, so reduction never reintroduces an already cleared pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import CapacityError, DimensionError

MAX_WIDTH = 4096


def _check_width(width: int) -> None:
    if width < 0:
        raise DimensionError(f"negative width {width}")
    if width > MAX_WIDTH:
        raise CapacityError(f"width {width} exceeds capacity {MAX_WIDTH}")


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BitVector:
    """A vector in F_2^width."""

    width: int
    bits: int = 0

    def __post_init__(self):
        _check_width(self.width)
        if self.bits < 0 or self.bits >> self.width:
            raise DimensionError(f"bits {self.bits:#x} do not fit width {self.width}")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse ``"101"``; character ``k`` is coordinate ``k``."""
        bits = 0
        for k, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << k
            elif ch != "0":
                raise ValueError(f"not a bit string: {s!r}")
        return cls(len(s), bits)

    def to_string(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(self.width))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.width != self.width:
            raise DimensionError(f"width {self.width} != {other.width}")
        return BitVector(self.width, self.bits ^ other.bits)

    __add__ = __xor__

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)


Vector = Union[BitVector, int]


class RowSpace:
    """Subspace of F_2^width spanned by the inserted vectors.

    ``rows`` is a list of nonzero vectors with strictly increasing pivot
    columns (lowest set bit). Mutated in place by :meth:`insert`; use
    :meth:`copy` to branch.
    """

    __slots__ = ("width", "_pivots")

    def __init__(self, width: int, vectors: Iterable[Vector] = ()):
        _check_width(width)
        self.width = width
        self._pivots: dict[int, int] = {}
        for v in vectors:
            self.insert(v)

    def _coerce(self, v: Vector) -> int:
        if isinstance(v, BitVector):
            if v.width != self.width:
                raise DimensionError(f"vector width {v.width} != space width {self.width}")
            return v.bits
        if v < 0 or v >> self.width:
            raise DimensionError(f"vector {v:#x} does not fit width {self.width}")
        return v

    def reduce(self, v: Vector) -> int:
        """Return the residue of ``v`` after clearing every pivot it hits."""
        x = self._coerce(v)
        pivots = self._pivots
        while x:
            low = x & -x
            row = pivots.get(low.bit_length() - 1)
            if row is None:
                return x
            x ^= row
        return 0

    def insert(self, v: Vector) -> bool:
        """Add ``v`` to the span; return True iff it was outside the old span."""
        x = self._coerce(v)
        pivots = self._pivots
        while x:
            low = x & -x
            col = low.bit_length() - 1
            row = pivots.get(col)
            if row is None:
                pivots[col] = x
                return True
            x ^= row
        return False

    def contains(self, v: Vector) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> list[int]:
        return [self._pivots[c] for c in sorted(self._pivots)]

    @property
    def pivots(self) -> list[int]:
        return sorted(self._pivots)

    def is_full(self) -> bool:
        return len(self._pivots) == self.width

    def copy(self) -> "RowSpace":
        other = RowSpace(self.width)
        other._pivots = dict(self._pivots)
        return other

    def __contains__(self, v: Vector) -> bool:
        return self.contains(v)

    def __len__(self) -> int:
        return len(self._pivots)

    def __repr__(self) -> str:
        rows = ", ".join(BitVector(self.width, r).to_string() for r in self.rows)
        return f"RowSpace(width={self.width}, rows=[{rows}])"


def rank_of(vectors: Iterable[Vector], width: int) -> int:
    """Rank of a list of vectors; uses the compiled kernel when it applies."""
    from . import kernel

    _check_width(width)
    space = RowSpace(width)
    ints = [space._coerce(v) for v in vectors]
    if width <= 64:
        return kernel.rank_u64(ints)
    for v in ints:
        space.insert(v)
    return space.rank
