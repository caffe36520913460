"""Exit criteria; each test carries its criterion number and prints in the summary."""

import itertools
import math
from fractions import Fraction as F

import pytest

from qmsets.density import join_via_density, prob_via_trace, rho_block, rho_partition
from qmsets.dynamics import Dynamics, TwoSlitConfig, two_slit
from qmsets.gf2core import Gf2Matrix, Universe
from qmsets.observables import (
    born_distribution,
    eigenket_labels,
    is_csca,
    projector,
)
from qmsets.partitions import Partition, dit_set, enumerate_partitions, indit_set, join, refines
from qmsets.sampling import make_rng
from qmsets.states import bracket, express, ket_table, make_basis, norm_squared, standard_basis

from conftest import all_attributes, universes

acceptance = pytest.mark.acceptance

PUBLISHED_KET_ROWS = [
    ["{a,b,c}", "{c′}", "{a″,b″,c″}"],
    ["{a,b}", "{a′}", "{b″}"],
    ["{b,c}", "{b′}", "{b″,c″}"],
    ["{a,c}", "{a′,b′}", "{c″}"],
    ["{a}", "{b′,c′}", "{a″}"],
    ["{b}", "{a′,b′,c′}", "{a″,b″}"],
    ["{c}", "{a′,c′}", "{a″,c″}"],
    ["{}", "{}", "{}"],
]


@acceptance(1, "ket table reproduces all 8 published rows")
def test_ac01_ket_table(U, three_bases):
    rows = ket_table(three_bases).string_rows()
    assert len(rows) == 8
    assert sorted(rows) == sorted(PUBLISHED_KET_ROWS)
    printed = ket_table(three_bases, order=[U.parse(r[0]) for r in PUBLISHED_KET_ROWS])
    assert printed.string_rows() == PUBLISHED_KET_ROWS


@acceptance(2, "U-norm squared of {a′} is exactly 2")
def test_ac02_norm(three_bases):
    up = three_bases[1]
    a_prime = up.expand(up.labels.parse("{a′}"))
    assert norm_squared(a_prime) == 2


@acceptance(3, "nondegenerate measurement gives 1/3, 1/3, 1/3")
def test_ac03_nondegenerate(U, f_ordinal):
    assert born_distribution(f_ordinal, U.full()) == {1: F(1, 3), 2: F(1, 3), 3: F(1, 3)}


@acceptance(4, "degenerate measurement chain and CSCA eigenkets")
def test_ac04_degenerate_chain(U, chi_bc, chi_ab):
    assert born_distribution(chi_bc, U.full()) == {0: F(1, 3), 1: F(2, 3)}
    bc = U.parse("{b,c}")
    assert born_distribution(chi_ab, bc) == {0: F(1, 2), 1: F(1, 2)}
    assert is_csca([chi_bc, chi_ab])
    assert eigenket_labels([chi_bc, chi_ab]) == {"a": (0, 1), "b": (1, 1), "c": (1, 0)}


@acceptance(5, "repeated measurement is certain, exhaustive n<=4")
@pytest.mark.parametrize("universe", universes(4), ids=lambda u: f"n{u.n}")
def test_ac05_repeated_measurement(universe):
    for f in all_attributes(universe):
        for s in universe.all_subsets():
            for r in f.spectrum():
                post = f.inverse_image(r) & s
                if post:
                    assert born_distribution(f, post)[r] == 1


@acceptance(6, "density matrices equal the published ones")
def test_ac06_density_matrices():
    V = Universe(["u1", "u2", "u3"])
    t, h = F(1, 3), F(1, 2)
    assert rho_block(V.parse("{u1,u2}")).entries == ((h, h, 0), (h, h, 0), (0, 0, 0))
    assert rho_block(V.parse("{u3}")).entries == ((0, 0, 0), (0, 0, 0), (0, 0, 1))
    pi = Partition.parse(V, "{{u1,u2},{u3}}")
    assert rho_partition(pi).entries == ((t, t, 0), (t, t, 0), (0, 0, t))


@acceptance(7, "projector sum over sigma of rho(pi) equals rho(pi join sigma), n=3 and n=4")
@pytest.mark.parametrize("n", [3, 4])
def test_ac07_partition_join_identity(n):
    universe = Universe("abcd"[:n])
    parts = enumerate_partitions(universe)
    assert len(parts) == {3: 5, 4: 15}[n]
    count = 0
    for pi, sigma in itertools.product(parts, repeat=2):
        assert join_via_density(pi, sigma) == rho_partition(join(pi, sigma))
        count += 1
    assert count == len(parts) ** 2


@acceptance(8, "trace rule equals |f⁻¹(r)∩S|/|S| for all attributes over {0,1,2,3}, n<=4")
@pytest.mark.parametrize("universe", universes(4), ids=lambda u: f"n{u.n}")
def test_ac08_trace_rule(universe):
    for f in all_attributes(universe):
        for s in universe.all_subsets():
            if not s:
                continue
            for r in f.spectrum():
                members = [u for u in s if f(u) == r]
                assert prob_via_trace(f.inverse_image(r), s) == F(len(members), len(s))


@acceptance(9, "two-slit dynamics has the published 4-, 2- and 1-orbits")
def test_ac09_orbits(U, A):
    got = [[str(x) for x in c] for c in Dynamics(A).orbits()]
    assert got == [["{a}", "{a,b}", "{c}", "{b,c}"], ["{b}", "{a,b,c}"], ["{a,c}"]]


@acceptance(10, "two-slit exact distributions and seeded sampling within 4 sigma")
def test_ac10_two_slit(U, A):
    d = Dynamics(A)
    slits = U.parse("{a,c}")
    expected = {
        True: {"a": F(1, 4), "b": F(1, 2), "c": F(1, 4)},
        False: {"a": F(1, 2), "b": F(0), "c": F(1, 2)},
    }
    trials = 100_000
    for mode, exact in expected.items():
        res = two_slit(TwoSlitConfig(d, slits, mode), make_rng(0), trials, seed=0)
        assert res.exact == exact
        for u, p in exact.items():
            assert abs(res.sampled[u] / trials - p) <= 4 * math.sqrt(p * (1 - p) / trials)


@acceptance(11, "property suites exhaustive at n<=4, zero failures")
@pytest.mark.parametrize("universe", universes(4), ids=lambda u: f"n{u.n}")
def test_ac11_property_suites(universe):
    subsets = list(universe.all_subsets())
    singles = universe.singletons()
    empty = universe.empty()
    for f in all_attributes(universe):
        spec = f.spectrum()
        for s in subsets:
            pieces = [projector(f, r)(s) for r in spec]
            total = empty
            for x in pieces:
                total = total + x
            assert total == s
            assert norm_squared(s) == sum(norm_squared(x) for x in pieces)
            for r, r2 in itertools.permutations(spec, 2):
                assert projector(f, r)(projector(f, r2)(s)) == empty
    for t, s in itertools.product(subsets, repeat=2):
        assert bracket(t, s) == sum(bracket(t, u) * bracket(u, s) for u in singles)
    for s in subsets:
        assert norm_squared(s) == sum(bracket(u, s) ** 2 for u in singles) == len(s)
    parts = enumerate_partitions(universe)
    for pi, sigma in itertools.product(parts, repeat=2):
        assert refines(pi, sigma) == dit_set(sigma).issubset(dit_set(pi))
    n = universe.n
    for pi in parts:
        rho = rho_partition(pi)
        indit = indit_set(pi)
        for (j, u), (k, v) in itertools.product(enumerate(universe.labels), repeat=2):
            assert rho[j, k] == (F(1, n) if (u, v) in indit else 0)
    # an arbitrary basis still expresses every ket reversibly
    if n >= 2:
        vecs = [universe.singleton(universe.labels[0])] + [
            universe.parse("{" + universe.labels[i - 1] + "," + universe.labels[i] + "}")
            for i in range(1, n)
        ]
        b = make_basis("B", vecs)
        for s in subsets:
            assert b.expand(express(s, b)) == s
    assert express(universe.full(), standard_basis(universe)) == universe.full()


@acceptance(12, "bracket non-linearity witness: 0 != 2")
def test_ac12_nonlinearity(U):
    a = U.parse("{a}")
    lhs = bracket(a + a, a)
    rhs = bracket(a, a) + bracket(a, a)
    assert (lhs, rhs) == (0, 2)
