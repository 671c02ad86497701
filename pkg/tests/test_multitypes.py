from collections import Counter
from math import prod

import pytest
from hypothesis import given, strategies as st

from charstack.exact_algebra import var
from charstack.lambda_series import divisors, moebius
from charstack.multitypes import (
    C_o,
    F_gen,
    F_level,
    MultiType,
    SemisimpleMultiType,
    enumerate_mergings,
    enumerate_multitypes,
    enumerate_semisimple,
    family_genus,
    family_kronecker,
    family_unit,
    regular_count,
    set_partitions,
    verify_plexp_identity,
)

t = var("t")


def exact_degree_count(d: int, q: int) -> int:
    return sum(moebius(d // e) * (q ** e - 1) for e in divisors(d))


def ordered_distinct_orbits(nu: SemisimpleMultiType, q: int) -> int:
    """Tuples of pairwise distinct Frobenius orbits in the multiplicative groups, one per block."""
    total = 1
    for d, m in Counter(d for d, _ in nu.blocks).items():
        n = exact_degree_count(d, q)
        total *= prod(n - i * d for i in range(m))
    return total


def test_class_type_counts():
    assert [len(enumerate_multitypes((n,))) for n in (1, 2, 3, 4)] == [1, 4, 8, 22]


def test_weights_and_moebius_constants():
    two_ones = SemisimpleMultiType(((1, (1,)), (1, (1,))))
    assert two_ones.weight() == 2
    assert C_o(two_ones) == -1
    assert C_o(SemisimpleMultiType(((2, (1,)),))) == -1
    assert C_o(SemisimpleMultiType(((1, (1,)), (2, (1,))))) == 0


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(list(range(n)))) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_mergings_of_two_degree_one_blocks():
    nu = SemisimpleMultiType(((1, (1,)), (1, (1,))))
    assert len(enumerate_mergings(nu)) == 2


semisimple = st.sampled_from([nu for a in [(1,), (2,), (3,), (4,), (1, 1), (2, 1), (2, 2)]
                              for nu in enumerate_semisimple(a)])


@given(semisimple, st.sampled_from([2, 3, 4, 5, 7]))
def test_regular_count_matches_orbit_count(nu, q):
    assert regular_count(nu, q) == ordered_distinct_orbits(nu, q)


def test_unrestricted_level_size_two():
    assert F_level(family_unit(), (2,), None) == t ** 2 - 1
    assert F_gen(family_unit(), (1,)) == t - 1


def test_kronecker_family_vanishes_below_diagonal():
    assert F_gen(family_kronecker(), (1, 2)).is_zero()
    assert F_level(family_kronecker(), (1, 1), [(1, 0), (0, 1), (1, 1)]) == t / (t - 1)


def test_kronecker_family_requires_two_vertices():
    omega = enumerate_multitypes((1,))[0]
    with pytest.raises(ValueError):
        family_kronecker()(omega)


@pytest.mark.parametrize("family", [family_unit(), family_genus(0), family_genus(1)], ids=lambda f: f.name)
@pytest.mark.parametrize("V", [None, {1, 3}, {2}, {1, 2, 3}])
def test_plexp_identity_one_vertex(family, V):
    levels = [(v,) for v in range(1, 4)] if V is None else [(v,) for v in V]
    assert all(r["pass"] for r in verify_plexp_identity(family, (3,), levels))


def test_plexp_identity_two_vertices():
    levels = [(1, 0), (0, 1), (1, 1)]
    assert all(r["pass"] for r in verify_plexp_identity(family_genus(0), (1, 1), levels))


def test_adams_and_product_of_types():
    a = MultiType(((1, ((1,),)),))
    assert a.adams(2) == MultiType(((2, ((1,),)),))
    assert (a * a).size == (2,)
