"""Set partitions, the refinement order, join, distinctions and logical entropy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import EnumerationLimitError, IncompatibleUniverseError
from .gf2core import SubsetVector, Universe

MAX_ENUMERATION = 10


@dataclass(frozen=True, eq=False)
class Relation:
    """A binary relation on a universe stored as an ``n*n``-bit mask.

    Pair ``(u_j, u_k)`` lives at bit ``j*n + k``.
    """

    universe: Universe
    mask: int

    def _bit(self, j: int, k: int) -> int:
        return j * self.universe.n + k

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.universe is other.universe and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.universe), self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, pair: tuple[str, str]) -> bool:
        j, k = (self.universe.index(u) for u in pair)
        return bool(self.mask >> self._bit(j, k) & 1)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        labels = self.universe.labels
        n = self.universe.n
        for j in range(n):
            for k in range(n):
                if self.mask >> (j * n + k) & 1:
                    yield labels[j], labels[k]

    def _same(self, other: Relation) -> None:
        if self.universe is not other.universe:
            raise IncompatibleUniverseError("relations over different universes")

    def issubset(self, other: Relation) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __or__(self, other: Relation) -> Relation:
        self._same(other)
        return Relation(self.universe, self.mask | other.mask)

    def complement(self) -> Relation:
        n = self.universe.n
        return Relation(self.universe, ~self.mask & ((1 << n * n) - 1))

    def incidence(self) -> list[list[int]]:
        n = self.universe.n
        return [[self.mask >> (j * n + k) & 1 for k in range(n)] for j in range(n)]


# The distinctions of a partition; kept as a name for readability at call sites.
DitSet = Relation


class Partition:
    """Disjoint nonempty blocks covering the universe, sorted by least element."""

    __slots__ = ("universe", "blocks")

    def __init__(self, universe: Universe, blocks: Iterable[SubsetVector]):
        blocks = list(blocks)
        seen = 0
        for b in blocks:
            if b.universe is not universe:
                raise IncompatibleUniverseError("block belongs to a different universe")
            if not b:
                raise ValueError("partition blocks must be nonempty")
            if b.bits & seen:
                raise ValueError(f"block {b} overlaps another block")
            seen |= b.bits
        if seen != universe.full_mask:
            missing = universe.from_bits(universe.full_mask & ~seen)
            raise ValueError(f"blocks do not cover the universe; missing {missing}")
        blocks.sort(key=lambda b: (b.bits & -b.bits))
        self.universe = universe
        self.blocks: tuple[SubsetVector, ...] = tuple(blocks)

    @classmethod
    def discrete(cls, universe: Universe) -> Partition:
        return cls(universe, universe.singletons())

    @classmethod
    def indiscrete(cls, universe: Universe) -> Partition:
        return cls(universe, [universe.full()])

    @classmethod
    def parse(cls, universe: Universe, text: str) -> Partition:
        """Parse ``"{{a},{b,c}}"``."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"not a partition literal: {text!r}")
        body = text[1:-1]
        blocks = []
        depth = 0
        start = None
        for i, ch in enumerate(body):
            if ch == "{":
                if depth:
                    raise ValueError(f"nested braces in {text!r}")
                depth, start = 1, i
            elif ch == "}":
                if not depth:
                    raise ValueError(f"unbalanced braces in {text!r}")
                depth = 0
                blocks.append(universe.parse(body[start:i + 1]))
            elif not depth and ch not in ", ":
                raise ValueError(f"unexpected {ch!r} in {text!r}")
        if depth:
            raise ValueError(f"unbalanced braces in {text!r}")
        return cls(universe, blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe is other.universe and self.blocks == other.blocks

    def __hash__(self):
        return hash((id(self.universe), tuple(b.bits for b in self.blocks)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[SubsetVector]:
        return iter(self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join(str(b) for b in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"Partition({self})"

    def block_of(self, label: str) -> SubsetVector:
        for b in self.blocks:
            if label in b:
                return b
        raise KeyError(label)

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.universe.n


def _check(pi: Partition, sigma: Partition) -> None:
    if pi.universe is not sigma.universe:
        raise IncompatibleUniverseError("partitions over different universes")


def refines(pi: Partition, sigma: Partition) -> bool:
    """True iff every block of ``pi`` sits inside some block of ``sigma``."""
    _check(pi, sigma)
    return all(any(b.bits & ~c.bits == 0 for c in sigma.blocks) for b in pi.blocks)


def join(pi: Partition, sigma: Partition) -> Partition:
    _check(pi, sigma)
    blocks = [b & c for b in pi.blocks for c in sigma.blocks]
    return Partition(pi.universe, [x for x in blocks if x])


def indit_set(pi: Partition) -> Relation:
    """Pairs lying in a common block: the equivalence relation of ``pi``."""
    n = pi.universe.n
    mask = 0
    for b in pi.blocks:
        idx = b.indices()
        for j in idx:
            for k in idx:
                mask |= 1 << (j * n + k)
    return Relation(pi.universe, mask)


def dit_set(pi: Partition) -> DitSet:
    """Ordered pairs of elements in distinct blocks."""
    return indit_set(pi).complement()


def logical_entropy(pi: Partition) -> Fraction:
    n = pi.universe.n
    return Fraction(len(dit_set(pi)), n * n)


def enumerate_partitions(universe: Universe) -> list[Partition]:
    """All Bell(n) partitions, generated from restricted growth strings.

    Output order is lexicographic in the growth string, so the indiscrete
    partition comes first and the discrete one last.
    """
    n = universe.n
    if n > MAX_ENUMERATION:
        raise EnumerationLimitError(f"enumeration is limited to n <= {MAX_ENUMERATION}, got {n}")
    out = []

    def grow(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            masks = [0] * (top + 1)
            for i, blk in enumerate(prefix):
                masks[blk] |= 1 << i
            out.append(Partition(universe, [universe.from_bits(m) for m in masks]))
            return
        for blk in range(top + 2):
            prefix.append(blk)
            grow(prefix, max(top, blk))
            prefix.pop()

    grow([0], 0)
    return out
