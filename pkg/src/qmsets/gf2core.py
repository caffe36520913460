"""Subsets of a finite universe as GF(2) vectors, and GF(2) linear maps.

A subset of an ``n``-element universe is stored as an ``n``-bit integer,
bit ``i`` set iff the ``i``-th label is a member.  Vector addition is
symmetric difference (xor), so the power set is the vector space Z_2^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import IncompatibleUniverseError, SingularMatrixError

MAX_DIMENSION = 64


class Universe:
    """An ordered finite set of distinct outcome labels.

    Universes compare by identity: two universes with the same labels are
    still different sample spaces, and their subsets cannot be mixed.
    """

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(u) for u in labels)
        if not 1 <= len(labels) <= MAX_DIMENSION:
            raise ValueError(
                f"universe size must be between 1 and {MAX_DIMENSION}, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"universe labels must be distinct: {labels}")
        for u in labels:
            if not u or any(ch in u for ch in "{},") or u != u.strip():
                raise ValueError(f"invalid universe label {u!r}")
        self.labels = labels
        self._index = {u: i for i, u in enumerate(labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Universe({list(self.labels)!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not in universe {list(self.labels)}") from None

    def subset(self, labels: Iterable[str] = ()) -> SubsetVector:
        bits = 0
        for u in labels:
            bits |= 1 << self.index(u)
        return SubsetVector(self, bits)

    def from_bits(self, bits: int) -> SubsetVector:
        return SubsetVector(self, bits)

    def parse(self, text: str) -> SubsetVector:
        """Parse a set literal such as ``"{a,c}"``; ``"{}"`` and ``"∅"`` are empty."""
        text = text.strip()
        if text in ("∅", "{}"):
            return self.empty()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"not a set literal: {text!r}")
        body = text[1:-1].strip()
        if not body:
            return self.empty()
        return self.subset(part.strip() for part in body.split(","))

    def empty(self) -> SubsetVector:
        return SubsetVector(self, 0)

    def full(self) -> SubsetVector:
        return SubsetVector(self, self.full_mask)

    def singleton(self, label: str) -> SubsetVector:
        return SubsetVector(self, 1 << self.index(label))

    def singletons(self) -> list[SubsetVector]:
        return [SubsetVector(self, 1 << i) for i in range(self.n)]

    def all_subsets(self) -> Iterator[SubsetVector]:
        """All 2^n subsets in ascending bitmask order."""
        for bits in range(1 << self.n):
            yield SubsetVector(self, bits)


def _check_same(x: Universe, y: Universe) -> None:
    if x is not y:
        raise IncompatibleUniverseError(
            f"incompatible universes {list(x.labels)} and {list(y.labels)}"
        )


@dataclass(frozen=True, eq=False)
class SubsetVector:
    """A subset of a universe, read both as an event and as a GF(2) vector."""

    universe: Universe
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe.n:
            raise ValueError(f"bitmask {self.bits:#x} exceeds universe of size {self.universe.n}")

    def __eq__(self, other):
        if not isinstance(other, SubsetVector):
            return NotImplemented
        return self.universe is other.universe and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.universe), self.bits))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: str) -> bool:
        return bool(self.bits >> self.universe.index(label) & 1)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(u for i, u in enumerate(self.universe.labels) if self.bits >> i & 1)

    def indices(self) -> list[int]:
        return [i for i in range(self.universe.n) if self.bits >> i & 1]

    def __add__(self, other: SubsetVector) -> SubsetVector:
        return add(self, other)

    def __and__(self, other: SubsetVector) -> SubsetVector:
        return intersect(self, other)

    def __invert__(self) -> SubsetVector:
        return complement(self)

    def issubset(self, other: SubsetVector) -> bool:
        _check_same(self.universe, other.universe)
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"

    def __repr__(self) -> str:
        return f"SubsetVector({self})"


def add(s: SubsetVector, t: SubsetVector) -> SubsetVector:
    """GF(2) sum: the symmetric difference ``(S-T) | (T-S)``."""
    _check_same(s.universe, t.universe)
    return SubsetVector(s.universe, s.bits ^ t.bits)


def intersect(s: SubsetVector, t: SubsetVector) -> SubsetVector:
    _check_same(s.universe, t.universe)
    return SubsetVector(s.universe, s.bits & t.bits)


def complement(s: SubsetVector) -> SubsetVector:
    return SubsetVector(s.universe, ~s.bits & s.universe.full_mask)


def _rank(vectors: Sequence[int]) -> int:
    rank = 0
    rows = list(vectors)
    for col in range(MAX_DIMENSION):
        pivot = next((k for k in range(rank, len(rows)) if rows[k] >> col & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k] >> col & 1:
                rows[k] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass(frozen=True, eq=False)
class Gf2Matrix:
    """A square GF(2) matrix acting on subsets.

    ``columns[j]`` is the bitmask image of the singleton of label ``j``.
    """

    universe_in: Universe
    universe_out: Universe
    columns: tuple[int, ...]

    def __post_init__(self):
        if self.universe_in.n != self.universe_out.n:
            raise ValueError("input and output universes must have equal size")
        if len(self.columns) != self.universe_in.n:
            raise ValueError(
                f"expected {self.universe_in.n} columns, got {len(self.columns)}"
            )
        limit = self.universe_out.full_mask
        for c in self.columns:
            if c < 0 or c & ~limit:
                raise ValueError(f"column {c:#x} does not fit {self.universe_out.n} bits")

    @classmethod
    def from_rows(cls, universe: Universe, rows: Sequence[Sequence[int]]) -> Gf2Matrix:
        """Build from a row-major 0/1 matrix (row i, column j = entry A_ij)."""
        n = universe.n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        cols = [0] * n
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if entry not in (0, 1):
                    raise ValueError(f"GF(2) entries must be 0 or 1, got {entry!r}")
                if entry:
                    cols[j] |= 1 << i
        return cls(universe, universe, tuple(cols))

    @classmethod
    def from_images(cls, images: Sequence[SubsetVector]) -> Gf2Matrix:
        """Build from the images of the singletons, in label order."""
        if not images:
            raise ValueError("need at least one image")
        universe = images[0].universe
        for im in images:
            _check_same(universe, im.universe)
        return cls(universe, universe, tuple(im.bits for im in images))

    @classmethod
    def identity(cls, universe: Universe) -> Gf2Matrix:
        return cls(universe, universe, tuple(1 << j for j in range(universe.n)))

    @property
    def n(self) -> int:
        return self.universe_in.n

    def rows(self) -> list[list[int]]:
        return [[c >> i & 1 for c in self.columns] for i in range(self.n)]

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        _check_same(self.universe_in, other.universe_out)
        cols = tuple(_apply_bits(self.columns, c) for c in other.columns)
        return Gf2Matrix(other.universe_in, self.universe_out, cols)

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows())


def _apply_bits(columns: Sequence[int], bits: int) -> int:
    out = 0
    j = 0
    while bits:
        if bits & 1:
            out ^= columns[j]
        bits >>= 1
        j += 1
    return out


def rank(m: Gf2Matrix) -> int:
    return _rank(m.columns)


def is_nonsingular(m: Gf2Matrix) -> bool:
    return rank(m) == m.n


def apply(m: Gf2Matrix, s: SubsetVector) -> SubsetVector:
    """Image of ``s``: the xor of the columns selected by the members of ``s``."""
    _check_same(m.universe_in, s.universe)
    return SubsetVector(m.universe_out, _apply_bits(m.columns, s.bits))


def inverse(m: Gf2Matrix) -> Gf2Matrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError`."""
    n = m.n
    # rows of [A | I]; row i holds A's row i in the low n bits
    work = []
    for i, row in enumerate(m.rows()):
        bits = sum(bit << j for j, bit in enumerate(row))
        work.append(bits | 1 << (n + i))
    for col in range(n):
        pivot = next((k for k in range(col, n) if work[k] >> col & 1), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix has rank {rank(m)} < {n}; it is singular")
        work[col], work[pivot] = work[pivot], work[col]
        for k in range(n):
            if k != col and work[k] >> col & 1:
                work[k] ^= work[col]
    inv_rows = [[work[i] >> (n + j) & 1 for j in range(n)] for i in range(n)]
    cols = [0] * n
    for i, row in enumerate(inv_rows):
        for j, bit in enumerate(row):
            if bit:
                cols[j] |= 1 << i
    return Gf2Matrix(m.universe_out, m.universe_in, tuple(cols))


def solve(m: Gf2Matrix, b: SubsetVector) -> SubsetVector:
    """The unique ``x`` with ``apply(m, x) == b``."""
    _check_same(m.universe_out, b.universe)
    return apply(inverse(m), b)


def orbits(m: Gf2Matrix) -> list[tuple[SubsetVector, ...]]:
    """Cycle decomposition of the nonzero vectors under repeated application.

    Each cycle starts at its least bitmask; cycles are sorted by that
    representative.
    """
    if m.universe_in is not m.universe_out:
        raise IncompatibleUniverseError("orbits need an endomorphism of one universe")
    if not is_nonsingular(m):
        raise SingularMatrixError("orbits are only defined for a non-singular matrix")
    seen = set()
    cycles = []
    for start in range(1, 1 << m.n):
        if start in seen:
            continue
        cycle = []
        v = start
        while v not in seen:
            seen.add(v)
            cycle.append(v)
            v = _apply_bits(m.columns, v)
        # bijection: the walk returns to start, which is the least unseen mask
        cycles.append(tuple(SubsetVector(m.universe_in, b) for b in cycle))
    return cycles
