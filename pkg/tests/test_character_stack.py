import json

import pytest

from charstack.character_stack import (
    CharStackConfig,
    EigenGroup,
    InconsistentParameters,
    PunctureSpec,
    build,
    euler_form,
    eseries,
    eseries_in_s,
    four_punctured_sphere,
    h_star,
    hermite_normal_form,
    is_generic,
    leg_multipartition,
    mixed_poincare,
    twisted_config,
)
from charstack.exact_algebra import var
from charstack.hlrv import hlrv_H

q, t = var("q"), var("t")

NONGENERIC_E = (q ** 3 + 4 * q ** 2 - 3 * q - 1) / (q - 1) ** 2
NONGENERIC_H = (q ** 3 * t ** 6 + 4 * q ** 2 * t ** 4 + q * t ** 4 - 4 * q * t ** 2 - t ** 2) / (q * t ** 2 - 1) ** 2
GENERIC_E = (q ** 2 + 4 * q + 1) / (q - 1)
GENERIC_H = (q ** 2 * t ** 4 + 4 * q * t ** 2 + t ** 2) / (q * t ** 2 - 1)

# values confirmed by the brute-force counts in test_finite_field
TWISTED_E = {
    (1, 0, 0): 1 / (q - 1),
    (1, 0, 1): q - 1,
    (2, 0, 1): q ** 2 - 1,
    (2, 1, 1): q - 1,
    (3, 0, 1): q ** 3 - q,
    (3, 1, 1): q - 1,
    (2, 1, 2): q ** 9 - 3 * q ** 8 + q ** 7 + 5 * q ** 6 - 8 * q ** 5 + 8 * q ** 4 - 5 * q ** 3 - q ** 2 + 3 * q - 1,
    (2, 0, 2): (q ** 9 - 2 * q ** 8 - 2 * q ** 7 + 11 * q ** 6 - 18 * q ** 5 + 17 * q ** 4 - 8 * q ** 3 - q ** 2
                + 3 * q - 1),
}


def test_hermite_normal_form():
    assert hermite_normal_form([[2, 4], [1, 1]], 2) == [[1, 1], [0, 2]]


def test_eigen_group_membership():
    g = EigenGroup(2, ((2, 0), (1, 1)))
    assert g.is_identity((0, 2))
    assert not g.is_identity((1, 0))
    assert g.equal((1, 0), (0, 1))


def test_config_validation():
    grp = EigenGroup(1, ())
    with pytest.raises(ValueError, match="repeated"):
        CharStackConfig(0, (PunctureSpec((((1,), 1), ((1,), 1))),), grp)
    with pytest.raises(ValueError, match="mismatch"):
        CharStackConfig(0, (PunctureSpec((((1,), 1),)), PunctureSpec((((0,), 2),))), grp)


def test_config_json_round_trip():
    c = four_punctured_sphere(True)
    assert CharStackConfig.from_json(json.loads(json.dumps(c.to_json()))) == c
    closed = CharStackConfig.from_json({"genus": 1, "n": 2})
    assert closed.n == 2 and closed.genus == 1


def test_star_quiver_of_four_punctured_sphere():
    data = build(four_punctured_sphere(True))
    assert data.alpha == (2, 1, 1, 1, 1)
    assert euler_form(data, data.alpha, data.alpha) == 0
    assert len(data.arrows()) == 4


def test_level_members_and_genericity():
    data = build(four_punctured_sphere(True))
    assert h_star(data) == [(1, 0, 0, 0, 0), (1, 1, 1, 1, 1), (2, 0, 0, 0, 0), (2, 1, 1, 1, 1)]
    report = is_generic(data)
    assert not report.generic
    assert report.complementary_pairs == (((1, 0, 0, 0, 0), (1, 1, 1, 1, 1)),)
    assert is_generic(build(four_punctured_sphere(False))).generic


def test_doubled_level_member_contributes_nothing():
    data = build(four_punctured_sphere(True))
    mus = leg_multipartition(data, (2, 0, 0, 0, 0))
    assert mus == ((2,),) * 4
    assert hlrv_H(mus, 0).is_zero()


def test_four_punctured_sphere_values():
    non, gen = build(four_punctured_sphere(True)), build(four_punctured_sphere(False))
    assert eseries(non) == NONGENERIC_E
    assert mixed_poincare(non) == NONGENERIC_H
    assert eseries(gen) == GENERIC_E
    assert mixed_poincare(gen) == GENERIC_H


@pytest.mark.parametrize("key", sorted(TWISTED_E))
def test_twisted_closed_surfaces(key):
    n, d, g = key
    data = build(twisted_config(n, d, g))
    assert eseries(data) == TWISTED_E[key]
    assert mixed_poincare(data).substitute({"t": -1}) == TWISTED_E[key]
    assert eseries_in_s(data).is_even_in("s")


def test_inconsistent_determinant():
    bad = CharStackConfig(0, (PunctureSpec((((1,), 2),)),), EigenGroup(1, ()))
    with pytest.raises(InconsistentParameters):
        eseries(build(bad))
    assert eseries(build(bad), allow_empty=True).is_zero()
