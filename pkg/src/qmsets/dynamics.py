"""Non-singular GF(2) dynamics and the two-slit experiment."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import EmptyStateError, IncompatibleUniverseError, SingularMatrixError
from .formatting import dec, frac
from .gf2core import Gf2Matrix, SubsetVector, apply, is_nonsingular, orbits
from .observables import born_basis_distribution
from .sampling import sample_exact
from .states import bracket, express, make_basis


@dataclass(frozen=True)
class Dynamics:
    """One application of ``matrix`` is one time period."""

    matrix: Gf2Matrix

    def __post_init__(self):
        if self.matrix.universe_in is not self.matrix.universe_out:
            raise IncompatibleUniverseError("dynamics must map a universe to itself")
        if not is_nonsingular(self.matrix):
            raise SingularMatrixError("dynamics matrix is singular")

    @property
    def universe(self):
        return self.matrix.universe_in

    def orbits(self) -> list[tuple[SubsetVector, ...]]:
        return orbits(self.matrix)


def evolve(d: Dynamics, s: SubsetVector, t: int = 1) -> SubsetVector:
    if t < 0:
        raise ValueError("time steps must be nonnegative")
    for _ in range(t):
        s = apply(d.matrix, s)
    return s


def bracket_preserved(d: Union[Dynamics, Gf2Matrix], s: SubsetVector, t: SubsetVector) -> bool:
    """Check ``⟨S|_U T⟩ = ⟨A(S)|_{A(U)} A(T)⟩``.

    The evolved vectors are expressed in the image basis ``A(U)`` and their
    coordinate subsets are intersected there.
    """
    if isinstance(d, Gf2Matrix):
        d = Dynamics(d)
    m = d.matrix
    image = make_basis("A(U)", [apply(m, u) for u in d.universe.singletons()])
    after = bracket(express(apply(m, s), image), express(apply(m, t), image))
    return bracket(s, t) == after


@dataclass(frozen=True)
class TwoSlitConfig:
    dynamics: Dynamics
    slit_state: SubsetVector
    measure_at_slits: bool
    periods: int = 1

    def __post_init__(self):
        if self.slit_state.universe is not self.dynamics.universe:
            raise IncompatibleUniverseError("slit state and dynamics on different universes")
        if not self.slit_state:
            raise EmptyStateError("slit state must be nonempty")

    @property
    def positions(self) -> tuple[str, ...]:
        return self.dynamics.universe.labels


@dataclass
class TwoSlitResult:
    mode: str
    exact: dict[str, Fraction]
    sampled: Optional[dict[str, int]]
    trials: int
    seed: Optional[int] = None
    positions: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "exact": {u: frac(p) for u, p in self.exact.items()},
            "exact_decimal": {u: dec(p) for u, p in self.exact.items()},
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.sampled is not None:
            out["sampled"] = dict(self.sampled)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _wall_distribution(config: TwoSlitConfig) -> dict[str, Fraction]:
    d, t = config.dynamics, config.periods
    dist = {u: Fraction(0) for u in config.positions}
    if config.measure_at_slits:
        for slit, p_slit in born_basis_distribution(config.slit_state).items():
            arrived = evolve(d, d.universe.singleton(slit), t)
            for u, p in born_basis_distribution(arrived).items():
                dist[u] += p_slit * p
    else:
        arrived = evolve(d, config.slit_state, t)
        if not arrived:
            raise EmptyStateError("evolved state is empty")
        dist.update(born_basis_distribution(arrived))
    return dist


def two_slit(
    config: TwoSlitConfig,
    rng: Optional[random.Random] = None,
    trials: int = 0,
    seed: Optional[int] = None,
) -> TwoSlitResult:
    """Exact wall distribution plus an optional seeded Monte-Carlo replay.

    With ``measure_at_slits`` the particle is first found at one slit, that
    position eigenstate evolves, and the wall reads position; otherwise the
    whole slit superposition evolves before the single wall reading.
    """
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    exact = _wall_distribution(config)
    sampled = None
    if trials:
        if rng is None:
            raise ValueError("sampling needs a random source")
        d, t = config.dynamics, config.periods
        counts = Counter()
        slit_dist = list(born_basis_distribution(config.slit_state).items())
        unmeasured_wall = None
        if not config.measure_at_slits:
            unmeasured_wall = list(born_basis_distribution(evolve(d, config.slit_state, t)).items())
        for _ in range(trials):
            if config.measure_at_slits:
                slit = sample_exact(slit_dist, rng)
                arrived = evolve(d, d.universe.singleton(slit), t)
                wall = sample_exact(list(born_basis_distribution(arrived).items()), rng)
            else:
                wall = sample_exact(unmeasured_wall, rng)
            counts[wall] += 1
        sampled = {u: counts[u] for u in config.positions}
    mode = "measured" if config.measure_at_slits else "unmeasured"
    return TwoSlitResult(mode, exact, sampled, trials, seed, config.positions)
