import csv
import io
import json
import math

import pytest

from qmsets.errors import DependentBasisError, IncompatibleUniverseError
from qmsets.gf2core import Universe
from qmsets.states import (
    Ket,
    bracket,
    express,
    ket_table,
    make_basis,
    norm,
    norm_squared,
    standard_basis,
)

from conftest import universes

# transcribed from the published ket table, in its printed row order
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


def all_bases(universe):
    """Every ordered basis of a small universe (brute force)."""
    import itertools

    from qmsets.gf2core import Gf2Matrix, is_nonsingular

    nonzero = [s for s in universe.all_subsets() if s]
    for combo in itertools.permutations(nonzero, universe.n):
        m = Gf2Matrix(universe, universe, tuple(s.bits for s in combo))
        if is_nonsingular(m):
            yield make_basis("B", combo)


def test_make_basis_examples(U):
    b = make_basis("U′", [U.parse(s) for s in ("{a,b}", "{b,c}", "{a,b,c}")])
    assert [str(v) for v in b.vectors] == ["{a,b}", "{b,c}", "{a,b,c}"]
    assert b.labels.labels == ("a′", "b′", "c′")
    make_basis("U", U.singletons())


def test_make_basis_dependent_names_subset(U):
    with pytest.raises(DependentBasisError, match=r"\{a,b\} is dependent \(\{a,b\} = \{a\}\+\{b\}\)"):
        make_basis("bad", [U.parse("{a}"), U.parse("{b}"), U.parse("{a,b}")])
    with pytest.raises(DependentBasisError, match="zero vector"):
        make_basis("bad", [U.parse("{a}"), U.empty(), U.parse("{c}")])


def test_make_basis_wrong_count(U):
    with pytest.raises(DependentBasisError, match="expected 3 vectors"):
        make_basis("short", [U.parse("{a}"), U.parse("{b}")])


def test_express_examples(U, three_bases):
    _, up, _ = three_bases
    assert str(express(Ket(U.parse("{a,c}")), up)) == "{a′,b′}"
    assert str(express(U.parse("{a,b,c}"), up)) == "{c′}"
    for b in three_bases:
        assert not express(U.empty(), b)


def test_express_in_standard_basis_is_identity(U):
    ub = standard_basis(U)
    for s in U.all_subsets():
        assert express(s, ub) == s


def test_express_rejects_foreign_ket(three_bases):
    with pytest.raises(IncompatibleUniverseError):
        express(Universe("abc").parse("{a}"), three_bases[1])


def test_ket_table_rows_match_published(three_bases, U):
    table = ket_table(three_bases)
    assert table.columns == ("U", "U′", "U″")
    got = table.string_rows()
    assert sorted(got) == sorted(PUBLISHED_KET_ROWS)
    printed = ket_table(three_bases, order=[U.parse(r[0]) for r in PUBLISHED_KET_ROWS])
    assert printed.string_rows() == PUBLISHED_KET_ROWS


def test_ket_table_default_order(three_bases):
    firsts = [r[0] for r in ket_table(three_bases).string_rows()]
    assert firsts == ["{a,b,c}", "{a,b}", "{a,c}", "{b,c}", "{a}", "{b}", "{c}", "{}"]


def test_ket_table_single_and_duplicate_basis(U):
    ub = standard_basis(U)
    rows = ket_table([ub]).string_rows()
    assert all(len(r) == 1 for r in rows) and len(rows) == 8
    twice = ket_table([ub, ub]).string_rows()
    assert all(r[0] == r[1] for r in twice)


def test_ket_table_serialization(three_bases):
    table = ket_table(three_bases)
    parsed = list(csv.reader(io.StringIO(table.to_csv())))
    assert parsed[0] == ["U", "U′", "U″"]
    assert parsed[1:] == table.string_rows()
    doc = json.loads(table.to_json())
    assert doc["columns"] == ["U", "U′", "U″"]
    assert doc["rows"][-1] == ["{}", "{}", "{}"]


def test_bracket_examples(U):
    for x in U.labels:
        for y in U.labels:
            assert bracket(U.singleton(x), U.singleton(y)) == (1 if x == y else 0)
    assert bracket(U.parse("{a,b}"), U.parse("{b,c}")) == 1
    s = U.parse("{a,c}")
    assert bracket(s, U.full()) == len(s)


def test_norm_examples(U, three_bases):
    up = three_bases[1]
    a_prime = up.expand(up.labels.parse("{a′}"))
    assert a_prime == U.parse("{a,b}")
    assert norm_squared(a_prime) == 2
    assert math.isclose(norm(a_prime), math.sqrt(2))
    assert norm(U.empty()) == 0
    assert norm_squared(U.full()) == 3


def test_bracket_not_additive_witness(U):
    a = U.parse("{a}")
    assert bracket(a + a, a) == 0
    assert bracket(a, a) + bracket(a, a) == 2


@pytest.mark.parametrize("universe", universes(4), ids=lambda u: f"n{u.n}")
def test_ket_bra_resolution_and_basis_pythagoras(universe):
    singles = universe.singletons()
    subsets = list(universe.all_subsets())
    for t in subsets:
        for s in subsets:
            assert bracket(t, s) == sum(bracket(t, u) * bracket(u, s) for u in singles)
    for s in subsets:
        assert norm_squared(s) == sum(bracket(u, s) ** 2 for u in singles) == len(s)


@pytest.mark.parametrize("universe", universes(3), ids=lambda u: f"n{u.n}")
def test_express_round_trip_all_bases(universe):
    subsets = list(universe.all_subsets())
    for b in all_bases(universe):
        images = set()
        for s in subsets:
            coords = express(s, b)
            images.add(coords.bits)
            # re-expand by explicit xor of the selected basis vectors
            acc = universe.empty()
            for j in coords.indices():
                acc = acc + b.vectors[j]
            assert acc == s
            for t in subsets:
                assert express(s + t, b) == coords + express(t, b)
        assert len(images) == len(subsets)


def test_express_round_trip_n4_sample():
    V = Universe("abcd")
    b = make_basis("B", [V.parse(x) for x in ("{a,b}", "{b,c}", "{c,d}", "{a,b,c}")])
    for s in V.all_subsets():
        assert b.expand(express(s, b)) == s
