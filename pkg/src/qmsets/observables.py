"""Numerical attributes as observables, and projective measurement.

An attribute ``f: U -> Q`` has the blocks ``f⁻¹(r)`` as eigenspaces: ``S`` is an
eigenvector with eigenvalue ``r`` exactly when ``f`` is constant ``r`` on ``S``.
Measuring ``f`` in state ``S`` yields ``r`` with the Laplace-Boole probability
``|f⁻¹(r) ∩ S| / |S|`` and jumps to ``f⁻¹(r) ∩ S``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, Optional, Sequence

from .errors import EmptyStateError, IncompatibleUniverseError, NotCSCAError, NotInSpectrumError
from .formatting import dec, frac, parse_fraction
from .gf2core import SubsetVector, Universe
from .partitions import Partition, join
from .sampling import sample_exact


class Attribute:
    """A total map from universe labels to exact rationals."""

    __slots__ = ("universe", "_values")

    def __init__(self, universe: Universe, values: Mapping[str, object]):
        unknown = set(values) - set(universe.labels)
        if unknown:
            raise KeyError(f"labels not in universe: {sorted(unknown)}")
        missing = [u for u in universe.labels if u not in values]
        if missing:
            raise ValueError(f"attribute has no value for {missing}")
        self.universe = universe
        self._values = tuple(parse_fraction(values[u]) for u in universe.labels)

    @classmethod
    def characteristic(cls, s: SubsetVector) -> Attribute:
        """The 0/1 indicator ``χ_S``."""
        return cls(s.universe, {u: int(u in s) for u in s.universe.labels})

    @classmethod
    def constant(cls, universe: Universe, value=0) -> Attribute:
        return cls(universe, {u: value for u in universe.labels})

    def __call__(self, label: str) -> Fraction:
        return self._values[self.universe.index(label)]

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(zip(self.universe.labels, self._values))

    def spectrum(self) -> list[Fraction]:
        return sorted(set(self._values))

    def inverse_image(self, r) -> SubsetVector:
        r = Fraction(r)
        bits = sum(1 << i for i, v in enumerate(self._values) if v == r)
        return SubsetVector(self.universe, bits)

    def __repr__(self) -> str:
        body = ", ".join(f"{u}: {frac(v)}" for u, v in self.values.items())
        return f"Attribute({{{body}}})"


def _require_state(f: Attribute, s: SubsetVector) -> None:
    if f.universe is not s.universe:
        raise IncompatibleUniverseError("attribute and state live on different universes")
    if not s:
        raise EmptyStateError("measurement of the zero vector is undefined")


def inverse_image_partition(f: Attribute) -> Partition:
    return Partition(f.universe, [f.inverse_image(r) for r in f.spectrum()])


def eigen_check(f: Attribute, s: SubsetVector) -> Optional[Fraction]:
    """The eigenvalue ``r`` if ``f`` is constant ``r`` on nonempty ``s``, else None."""
    if f.universe is not s.universe:
        raise IncompatibleUniverseError("attribute and subset live on different universes")
    vals = {f(u) for u in s}
    if len(vals) == 1:
        return vals.pop()
    return None


def spectral_decomposition(f: Attribute) -> list[tuple[Fraction, SubsetVector]]:
    return [(r, f.inverse_image(r)) for r in f.spectrum()]


def is_degenerate(f: Attribute, r) -> bool:
    return len(f.inverse_image(r)) >= 2


@dataclass(frozen=True)
class Projector:
    """The idempotent linear map ``T ↦ block ∩ T``."""

    block: SubsetVector

    def __call__(self, t: SubsetVector) -> SubsetVector:
        return self.block & t


def projector(f: Attribute, r) -> Projector:
    r = Fraction(r)
    block = f.inverse_image(r)
    if not block:
        spec = ", ".join(frac(x) for x in f.spectrum())
        raise NotInSpectrumError(f"{frac(r)} is not an eigenvalue; spectrum is {{{spec}}}")
    return Projector(block)


def born_distribution(f: Attribute, s: SubsetVector) -> dict[Fraction, Fraction]:
    """``Pr(r|S) = |f⁻¹(r) ∩ S| / |S|`` for attainable ``r``, ascending."""
    _require_state(f, s)
    out = {}
    for r, block in spectral_decomposition(f):
        k = len(block & s)
        if k:
            out[r] = Fraction(k, len(s))
    return out


def born_basis_distribution(s: SubsetVector) -> dict[str, Fraction]:
    """Outcome probabilities of a singleton-basis (position) measurement."""
    if not s:
        raise EmptyStateError("measurement of the zero vector is undefined")
    p = Fraction(1, len(s))
    return {u: p for u in s}


@dataclass(frozen=True)
class MeasurementOutcome:
    eigenvalue: Fraction
    probability: Fraction
    post_state: SubsetVector

    def to_dict(self) -> dict:
        return {
            "eigenvalue": frac(self.eigenvalue),
            "prob": frac(self.probability),
            "decimal": dec(self.probability),
            "post_state": str(self.post_state),
        }


def outcomes(f: Attribute, s: SubsetVector) -> list[MeasurementOutcome]:
    """Every possible result of measuring ``f`` in ``s``, ascending eigenvalue."""
    return [
        MeasurementOutcome(r, p, f.inverse_image(r) & s)
        for r, p in born_distribution(f, s).items()
    ]


def measure(f: Attribute, s: SubsetVector, rng: random.Random) -> MeasurementOutcome:
    possible = outcomes(f, s)
    return sample_exact([(o, o.probability) for o in possible], rng)


def measure_sequence(
    attrs: Sequence[Attribute], s: SubsetVector, rng: random.Random
) -> list[MeasurementOutcome]:
    """Measure ``attrs`` in turn, each on the previous post-measurement state."""
    if not s:
        raise EmptyStateError("measurement of the zero vector is undefined")
    results = []
    state = s
    for f in attrs:
        out = measure(f, state, rng)
        results.append(out)
        state = out.post_state
    return results


def _joint_partition(attrs: Sequence[Attribute]) -> Partition:
    if not attrs:
        raise ValueError("need at least one attribute")
    universe = attrs[0].universe
    if any(f.universe is not universe for f in attrs):
        raise IncompatibleUniverseError("attributes on different universes")
    return reduce(join, (inverse_image_partition(f) for f in attrs))


def is_csca(attrs: Sequence[Attribute]) -> bool:
    """Whether the attributes' inverse-image partitions join to the discrete partition."""
    return _joint_partition(attrs).is_discrete()


def eigenket_labels(attrs: Sequence[Attribute]) -> dict[str, tuple[Fraction, ...]]:
    if not is_csca(attrs):
        raise NotCSCAError("attributes do not form a complete set of compatible attributes")
    universe = attrs[0].universe
    return {u: tuple(f(u) for f in attrs) for u in universe.labels}
