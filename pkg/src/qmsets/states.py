"""Bases of the power set, basis-free kets, brackets and the U-norm."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import DependentBasisError, IncompatibleUniverseError
from .gf2core import Gf2Matrix, SubsetVector, Universe, apply, intersect, solve


@dataclass(frozen=True, eq=False)
class Basis:
    """``n`` independent subsets read as the singletons of a new universe.

    ``labels`` is that new universe (``a′, b′, ...``); ``matrix`` maps a
    coordinate subset over ``labels`` to its expression over ``universe``.
    """

    name: str
    vectors: tuple[SubsetVector, ...]
    labels: Universe
    matrix: Gf2Matrix

    @property
    def universe(self) -> Universe:
        return self.matrix.universe_out

    def expand(self, coords: SubsetVector) -> SubsetVector:
        """Sum of the basis vectors selected by ``coords``."""
        return apply(self.matrix, coords)

    def __repr__(self) -> str:
        return f"Basis({self.name!r}, {[str(v) for v in self.vectors]})"


def _dependence(vectors: Sequence[SubsetVector]) -> Optional[tuple[int, list[int]]]:
    """Find the first vector in the span of its predecessors.

    Returns its index and the indices of the predecessors summing to it.
    """
    reduced: list[tuple[int, int]] = []  # (bits, combination mask over indices)
    for i, v in enumerate(vectors):
        bits, combo = v.bits, 0
        for rb, rc in reduced:
            top = rb.bit_length() - 1
            if bits >> top & 1:
                bits ^= rb
                combo ^= rc
        if bits == 0:
            return i, [j for j in range(i) if combo >> j & 1]
        reduced.append((bits, combo | 1 << i))
        reduced.sort(key=lambda p: -p[0].bit_length())
    return None


def make_basis(
    name: str,
    vectors: Sequence[SubsetVector],
    labels: Union[Universe, Sequence[str], None] = None,
    suffix: str = "′",
) -> Basis:
    """Validate ``vectors`` as a basis named ``name``.

    The basis-singleton labels default to the universe labels with
    ``suffix`` appended.
    """
    vectors = tuple(vectors)
    if not vectors:
        raise DependentBasisError("a basis needs at least one vector")
    universe = vectors[0].universe
    for v in vectors:
        if v.universe is not universe:
            raise IncompatibleUniverseError(f"basis {name}: vectors from different universes")
    if len(vectors) != universe.n:
        raise DependentBasisError(
            f"basis {name}: expected {universe.n} vectors, got {len(vectors)}"
        )
    dep = _dependence(vectors)
    if dep is not None:
        i, combo = dep
        if combo:
            rhs = "+".join(str(vectors[j]) for j in combo)
            raise DependentBasisError(
                f"basis {name}: {vectors[i]} is dependent ({vectors[i]} = {rhs})"
            )
        raise DependentBasisError(f"basis {name}: {vectors[i]} is the zero vector")
    if labels is None:
        labels = Universe(u + suffix for u in universe.labels)
    elif not isinstance(labels, Universe):
        labels = Universe(labels)
    if labels.n != universe.n:
        raise ValueError(f"basis {name}: need {universe.n} labels, got {labels.n}")
    matrix = Gf2Matrix(labels, universe, tuple(v.bits for v in vectors))
    return Basis(name, vectors, labels, matrix)


def standard_basis(universe: Universe, name: str = "U") -> Basis:
    """The singleton basis; its labels are the universe itself."""
    return make_basis(name, universe.singletons(), labels=universe)


@dataclass(frozen=True)
class Ket:
    """A basis-free vector, held by its expression in the singleton basis."""

    coords: SubsetVector

    @property
    def universe(self) -> Universe:
        return self.coords.universe

    def __str__(self) -> str:
        return f"|{self.coords}⟩"


def express(k: Union[Ket, SubsetVector], basis: Basis) -> SubsetVector:
    """Coordinates of ``k`` in ``basis``, as a subset of the basis labels."""
    coords = k.coords if isinstance(k, Ket) else k
    return solve(basis.matrix, coords)


def _default_order(universe: Universe) -> list[SubsetVector]:
    return sorted(universe.all_subsets(), key=lambda s: (-len(s), s.indices()))


@dataclass(frozen=True)
class KetTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[SubsetVector, ...], ...]

    def string_rows(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.string_rows())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"columns": list(self.columns), "rows": self.string_rows()},
            ensure_ascii=False,
            indent=2,
        )

    def to_ascii(self) -> str:
        cells = [list(self.columns)] + self.string_rows()
        widths = [max(len(r[c]) for r in cells) for c in range(len(self.columns))]
        lines = [" | ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
        lines.insert(1, "-+-".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def ket_table(bases: Sequence[Basis], order: Optional[Iterable[SubsetVector]] = None) -> KetTable:
    """Every ket of the space expressed in each of ``bases``.

    Rows run by descending cardinality of the singleton-basis expression,
    then by label index; pass ``order`` to list the kets differently.
    """
    if not bases:
        raise ValueError("ket table needs at least one basis")
    universe = bases[0].universe
    for b in bases:
        if b.universe is not universe:
            raise IncompatibleUniverseError("bases over different universes")
    kets = list(order) if order is not None else _default_order(universe)
    if len({s.bits for s in kets}) != len(kets) or len(kets) != 1 << universe.n:
        raise ValueError("row order must list every ket exactly once")
    rows = tuple(tuple(express(s, b) for b in bases) for s in kets)
    return KetTable(tuple(b.name for b in bases), rows)


def bracket(t: SubsetVector, s: SubsetVector) -> int:
    """Overlap count ``|T ∩ S|`` of two singleton-basis expressions."""
    return len(intersect(t, s))


def norm_squared(s: SubsetVector) -> int:
    return len(s)


def norm(s: SubsetVector) -> float:
    """Display value only; compare with :func:`norm_squared`."""
    return math.sqrt(len(s))
