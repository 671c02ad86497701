import pytest
from hypothesis import given, strategies as st

from charstack.exact_algebra import ONE, ZERO, var
from charstack.partitions import conjugate, partitions
from charstack.symmetric_functions import (
    BASES,
    SymFunc,
    character,
    hall_pairing,
    modified_macdonald,
    modified_macdonald_qt,
    schur_product,
    tensor,
)
from conftest import partitions_up_to

q, t = var("q"), var("t")


def s(*lam):
    return SymFunc.single("s", lam)


def test_character_table_s3():
    assert [character((2, 1), rho) for rho in partitions(3)] == [-1, 0, 2]
    assert [character((1, 1, 1), rho) for rho in partitions(3)] == [1, -1, 1]


def test_basis_changes_degree_two():
    assert SymFunc.single("h", (2,)).convert("s") == s(2)
    assert SymFunc.single("e", (2,)).convert("s") == s(1, 1)
    assert SymFunc.single("h", (1, 1)).convert("s") == s(2) + s(1, 1)
    assert SymFunc.single("p", (2,)).convert("s") == s(2) - s(1, 1)
    assert SymFunc.single("m", (1, 1)).convert("e") == SymFunc.single("e", (2,))


def test_schur_product_pieri():
    assert schur_product((1,), (1,)) == {(2,): 1, (1, 1): 1}
    assert s(2, 1) * s(1) == s(3, 1) + s(2, 2) + s(2, 1, 1)


def test_macdonald_closed_forms():
    assert modified_macdonald_qt((2,)) == s(2) + s(1, 1).scale(q)
    assert modified_macdonald_qt((1, 1)) == s(2) + s(1, 1).scale(t)
    assert modified_macdonald_qt((2, 1)) == s(3) + s(2, 1).scale(q + t) + s(1, 1, 1).scale(q * t)


@pytest.mark.parametrize("mu", [mu for n in range(1, 5) for mu in partitions(n)])
def test_macdonald_at_one_is_power_of_h1(mu):
    n = sum(mu)
    specialized = modified_macdonald(mu, ONE, ONE)
    assert specialized == SymFunc.single("h", (1,) * n).convert("s")


def test_tensor_pairs_factorwise():
    a = tensor([s(2), s(1, 1)])
    b = tensor([s(2), s(1, 1)])
    assert hall_pairing(a, b) == ONE
    assert hall_pairing(a, tensor([s(1, 1), s(1, 1)])) == ZERO


def test_unknown_basis_rejected():
    with pytest.raises(ValueError):
        SymFunc(("x",), {})


@given(partitions_up_to(5), partitions_up_to(5))
def test_schur_orthonormal(a, b):
    expected = ONE if a == b else ZERO
    assert hall_pairing(s(*a), s(*b)) == expected


@given(partitions_up_to(5), partitions_up_to(5))
def test_h_and_m_dual(a, b):
    expected = ONE if a == b else ZERO
    assert hall_pairing(SymFunc.single("h", a), SymFunc.single("m", b)) == expected


@given(partitions_up_to(5), st.sampled_from(BASES), st.sampled_from(BASES))
def test_basis_round_trip(lam, src, dst):
    f = SymFunc.single(src, lam, q + 1)
    assert f.convert(dst).convert(src) == f


@given(partitions_up_to(3), partitions_up_to(3), partitions_up_to(2))
def test_product_commutative_associative(a, b, c):
    x, y, z = s(*a), SymFunc.single("h", b), SymFunc.single("e", c)
    assert (x * y).convert("s") == (y * x).convert("s")
    assert ((x * y) * z).convert("s") == (x * (y * z)).convert("s")


@given(partitions_up_to(3), partitions_up_to(3), st.integers(1, 3))
def test_adams_is_multiplicative(a, b, d):
    x, y = s(*a).convert("p"), s(*b).convert("p")
    assert (x * y).adams(d) == x.adams(d) * y.adams(d)


@given(partitions_up_to(4))
def test_omega_involution_on_schur(lam):
    """e-expansion of s_lam matches the h-expansion of s_lam' term by term."""
    a = s(*lam).convert("e").terms
    b = s(*conjugate(lam)).convert("h").terms
    assert a == b


@given(st.sampled_from([mu for n in range(1, 5) for mu in partitions(n)]))
def test_macdonald_symmetry(mu):
    swapped = modified_macdonald_qt(conjugate(mu)).substitute({"q": t, "t": q})
    assert modified_macdonald_qt(mu) == swapped


def test_json_round_trip():
    f = tensor([s(2), SymFunc.single("s", (1,), q / (1 - t))])
    assert SymFunc.from_json(f.to_json()) == f
