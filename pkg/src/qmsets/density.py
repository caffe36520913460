"""Exact-rational density matrices of blocks, partitions and measured states.

Rows and columns follow the universe label order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyStateError, IncompatibleUniverseError
from .formatting import frac
from .gf2core import SubsetVector, Universe
from .observables import Attribute, spectral_decomposition
from .partitions import Partition, indit_set

Matrix = tuple[tuple[Fraction, ...], ...]


def _zeros(n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(n)]


def _freeze(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


class DensityMatrix:
    """Symmetric, nonnegative, trace-one ``n×n`` matrix of exact rationals."""

    __slots__ = ("universe", "entries")

    def __init__(self, universe: Universe, entries: Sequence[Sequence]):
        n = universe.n
        m = _freeze(entries)
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError(f"expected a {n}x{n} matrix")
        for j in range(n):
            for k in range(n):
                if m[j][k] < 0:
                    raise ValueError(f"negative entry at ({j},{k})")
                if m[j][k] != m[k][j]:
                    raise ValueError(f"not symmetric at ({j},{k})")
        if trace(m) != 1:
            raise ValueError(f"trace is {trace(m)}, not 1")
        self.universe = universe
        self.entries = m

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.universe is other.universe and self.entries == other.entries

    def __hash__(self):
        return hash((id(self.universe), self.entries))

    def __getitem__(self, jk: tuple[int, int]) -> Fraction:
        j, k = jk
        return self.entries[j][k]

    def trace(self) -> Fraction:
        return trace(self.entries)

    def squared_entries(self) -> Matrix:
        """Entrywise squares: the two-draw probabilities of each ordered pair."""
        return tuple(tuple(x * x for x in row) for row in self.entries)

    def string_entries(self) -> list[list[str]]:
        return [[frac(x) for x in row] for row in self.entries]

    def to_json(self) -> str:
        return json.dumps(
            {"order": list(self.universe.labels), "entries": self.string_entries()},
            ensure_ascii=False,
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + list(self.universe.labels))
        for u, row in zip(self.universe.labels, self.string_entries()):
            writer.writerow([u] + row)
        return buf.getvalue()

    def to_ascii(self) -> str:
        cells = self.string_entries()
        labels = self.universe.labels
        w = max([len(x) for row in cells for x in row] + [len(u) for u in labels])
        lw = max(len(u) for u in labels)
        lines = [" " * lw + " | " + " ".join(u.rjust(w) for u in labels)]
        lines.append("-" * len(lines[0]))
        for u, row in zip(labels, cells):
            lines.append(u.ljust(lw) + " | " + " ".join(x.rjust(w) for x in row))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"DensityMatrix({self.string_entries()})"


@dataclass(frozen=True)
class ProjectorMatrix:
    """Diagonal 0/1 matrix of the projection ``B ∩ ()``."""

    block: SubsetVector

    @property
    def universe(self) -> Universe:
        return self.block.universe

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.block.bits >> i & 1 for i in range(self.universe.n))

    @property
    def entries(self) -> Matrix:
        d = self.diagonal
        n = len(d)
        return tuple(tuple(Fraction(d[i] if i == j else 0) for j in range(n)) for i in range(n))

    def sandwich(self, m: Matrix) -> Matrix:
        """``P m P``; for a diagonal 0/1 ``P`` this masks rows and columns."""
        d = self.diagonal
        n = len(d)
        return tuple(
            tuple(m[j][k] if d[j] and d[k] else Fraction(0) for k in range(n)) for j in range(n)
        )


def rho_block(b: SubsetVector) -> DensityMatrix:
    """Pure-state density of block ``b``: ``χ_B χ_Bᵀ / |B|``."""
    if not b:
        raise EmptyStateError("density matrix of the empty set is undefined")
    n = b.universe.n
    w = Fraction(1, len(b))
    chi = [b.bits >> i & 1 for i in range(n)]
    return DensityMatrix(b.universe, [[w * chi[j] * chi[k] for k in range(n)] for j in range(n)])


rho_state = rho_block


def rho_partition_weighted(pi: Partition) -> Matrix:
    """``Σ_B (|B|/n) ρ(B)``."""
    n = pi.universe.n
    acc = _zeros(n)
    for b in pi.blocks:
        p = Fraction(len(b), n)
        m = rho_block(b).entries
        for j in range(n):
            for k in range(n):
                acc[j][k] += p * m[j][k]
    return _freeze(acc)


def rho_partition_incidence(pi: Partition) -> Matrix:
    """``(1/n) · I(indit(π))``."""
    n = pi.universe.n
    return _freeze(
        [[Fraction(x, n) for x in row] for row in indit_set(pi).incidence()]
    )


def rho_partition(pi: Partition) -> DensityMatrix:
    weighted = rho_partition_weighted(pi)
    incidence = rho_partition_incidence(pi)
    if weighted != incidence:
        raise AssertionError(f"density constructions disagree for {pi}")
    return DensityMatrix(pi.universe, weighted)


def prob_via_trace(b: SubsetVector, s: SubsetVector) -> Fraction:
    """``tr[P_B ρ(S)]``, which equals ``|B ∩ S| / |S|``."""
    if b.universe is not s.universe:
        raise IncompatibleUniverseError("block and state on different universes")
    return trace(matmul(ProjectorMatrix(b).entries, rho_block(s).entries))


def measure_density(f: Attribute, s: SubsetVector) -> DensityMatrix:
    """Mixed state after measuring ``f``: ``Σ_r P_{f⁻¹(r)} ρ(S) P_{f⁻¹(r)}``."""
    if f.universe is not s.universe:
        raise IncompatibleUniverseError("attribute and state on different universes")
    rho = rho_block(s).entries
    n = s.universe.n
    acc = _zeros(n)
    for _, block in spectral_decomposition(f):
        p = ProjectorMatrix(block).entries
        term = matmul(matmul(p, rho), p)
        for j in range(n):
            for k in range(n):
                acc[j][k] += term[j][k]
    return DensityMatrix(s.universe, acc)


def join_via_density(pi: Partition, sigma: Partition) -> DensityMatrix:
    """``Σ_{C∈σ} P_C ρ(π) P_C``, the density of ``π ∨ σ``."""
    if pi.universe is not sigma.universe:
        raise IncompatibleUniverseError("partitions over different universes")
    rho = rho_partition(pi).entries
    n = pi.universe.n
    acc = _zeros(n)
    for c in sigma.blocks:
        p = ProjectorMatrix(c).entries
        term = matmul(matmul(p, rho), p)
        for j in range(n):
            for k in range(n):
                acc[j][k] += term[j][k]
    return DensityMatrix(pi.universe, acc)
