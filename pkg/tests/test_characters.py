from collections import Counter
from fractions import Fraction

import pytest

from wronskforms.characters import (
    AFFINE_IDENTITY_READING,
    VIRASORO_SIGN_RULE,
    AffineCharSpec,
    VirasoroCharSpec,
    affine_basis_specs,
    affine_char,
    affine_exponent,
    affine_theta,
    central_charge_affine,
    character_rank,
    classify_vanishing_affine,
    classify_vanishing_virasoro,
    conformal_weight_affine,
    integral_power_modules,
    solve_almost_linear_dependence,
    verify_affine_identity,
    verify_jacobi_rearrangement,
    verify_virasoro_identity,
    virasoro_basis_specs,
    virasoro_char,
    virasoro_exponent,
)
from wronskforms.errors import (
    IdentityFails,
    InvalidSpec,
    NonCoprimeSpec,
    NotAVanishingCase,
)
from wronskforms.qseries import QSeries, first_difference, invert, mul


def product_series(factors, count, shift=Fraction(0)):
    """``q^shift * prod (1 - q^a)^e`` over ``factors = [(a, e)]``, ``a`` rational."""
    out = QSeries.constant(1, count)
    for a, e in factors:
        if a < count:
            out = mul(out, QSeries.from_exponents({0: 1, a: -1}, count) ** e)
    return out.shift(shift) if shift else out


def euler_inverse(count):
    return invert(product_series([(n, 1) for n in range(1, count)], count))


# -- weights ----------------------------------------------------------------------


def test_weights():
    assert central_charge_affine(1) == 1
    assert conformal_weight_affine(1, 1) == 0
    assert affine_exponent(1, 1) == Fraction(-1, 24)
    assert conformal_weight_affine(2, 2) == Fraction(3, 16)
    assert affine_exponent(6, 2) == 0
    assert AffineCharSpec(2, 3).exponent == Fraction(7, 16)


@pytest.mark.parametrize("k", range(1, 12))
def test_leading_exponent_and_coefficient(k):
    for i in range(1, k + 2):
        e, c = affine_char(k, i, 6).leading_term()
        assert e == affine_exponent(k, i)
        assert c == i


def test_theta_examples():
    t = affine_theta(1, 1, 5)
    assert dict(t.items()) == {Fraction(1, 12): 1, Fraction(25, 12): -5, Fraction(49, 12): 7}
    t = affine_theta(1, 2, 6)
    assert dict(t.items()) == {Fraction(1, 3): 2, Fraction(4, 3): -4, Fraction(16, 3): 8}


def test_level_one_matches_lattice_construction():
    # basic and spin modules at level 1: theta functions of the A1 root lattice over eta
    count = 40
    inv = euler_inverse(count + 1)
    vac = QSeries.from_exponents(Counter(n * n for n in range(-7, 8)), count + 1)
    spin = QSeries.from_exponents(Counter(n * n + n for n in range(-7, 7)), count + 1)
    ch1 = affine_char(1, 1, Fraction(-1, 24) + count)
    ch2 = affine_char(1, 2, Fraction(5, 24) + count)
    assert first_difference(ch1.shift(Fraction(1, 24)), mul(vac, inv), count) is None
    assert first_difference(ch2.shift(Fraction(-5, 24)), mul(spin, inv), count) is None


def test_vanishing_level_characters_are_integral_powers():
    ch = affine_char(6, 2, 20)
    assert ch.leading_term() == (0, 2)
    assert all(e.denominator == 1 and c > 0 for e, c in ch.items())


# -- Virasoro ---------------------------------------------------------------------


def test_trivial_minimal_model():
    assert virasoro_char(2, 3, 1, 1, 30) == QSeries.constant(1, 30)


def test_rogers_ramanujan_products():
    count = 40
    g = product_series([(n, -1) for n in range(1, count) if n % 5 in (1, 4)], count)
    h = product_series([(n, -1) for n in range(1, count) if n % 5 in (2, 3)], count)
    assert virasoro_exponent(2, 5, 1, 2) == Fraction(-1, 60)
    assert virasoro_exponent(2, 5, 1, 1) == Fraction(11, 60)
    vac = virasoro_char(2, 5, 1, 1, Fraction(11, 60) + count).shift(Fraction(-11, 60))
    other = virasoro_char(2, 5, 1, 2, Fraction(-1, 60) + count).shift(Fraction(1, 60))
    assert first_difference(vac, h, count) is None
    assert first_difference(other, g, count) is None


def test_ising_products():
    # ch_0 +- ch_{1/2} = q^(-1/48) prod (1 +- q^(n - 1/2))
    count = 30
    ch0 = virasoro_char(3, 4, 1, 1, count)
    ch_half = virasoro_char(3, 4, 2, 1, count)
    for sign in (1, -1):
        prod = QSeries.constant(1, count)
        for n in range(1, count + 1):
            prod = mul(prod, QSeries.from_exponents({0: 1, Fraction(2 * n - 1, 2): sign}, count))
        lhs = (ch0 + ch_half.scale(sign)).shift(Fraction(1, 48))
        assert first_difference(lhs, prod, count - 1) is None
    for ch in (ch0, ch_half, virasoro_char(3, 4, 2, 2, count)):
        assert all(c > 0 and int(c) == c for _, c in ch.items())


@pytest.mark.parametrize("p,pp", [(3, 4), (2, 5), (3, 5), (2, 7), (8, 3)])
def test_virasoro_symmetry(p, pp):
    for r in range(1, p):
        for s in range(1, pp):
            a = virasoro_char(p, pp, r, s, 8)
            b = virasoro_char(p, pp, p - r, pp - s, 8)
            assert a == b


def test_canonical_representative():
    spec = VirasoroCharSpec(3, 4, 2, 3).canonical()
    assert (spec.r, spec.s) == (1, 1)
    assert len(virasoro_basis_specs(3, 4)) == 3
    assert all(s.pp * s.r - s.p * s.s > 0 for s in virasoro_basis_specs(5, 7))


@pytest.mark.parametrize("p,pp", [(8, 3), (2, 27), (2, 3), (50, 3), (2, 75)])
def test_integral_characters_start_at_pentagonal_numbers(p, pp):
    pentagonal = {(3 * l * l + l) // 2 for l in range(-20, 21)}
    for r, s in integral_power_modules("virasoro", p, pp):
        e, _ = virasoro_char(p, pp, r, s, 40).leading_term()
        assert e.denominator == 1 and int(e) in pentagonal


# -- independence -----------------------------------------------------------------


@pytest.mark.parametrize("family", [("affine", 3), ("affine", 6), ("virasoro", 2, 7), ("virasoro", 8, 3)])
def test_family_characters_are_independent(family):
    if family[0] == "affine":
        specs = affine_basis_specs(family[1])
    else:
        specs = virasoro_basis_specs(*family[1:])
    chars = [s.expand(s.exponent + 30) for s in specs]
    assert character_rank(chars) == len(specs)


def test_no_almost_linear_dependence_for_nonvanishing_level():
    chars = [s.expand(20) for s in affine_basis_specs(5)]
    assert solve_almost_linear_dependence(chars) is None


# -- vanishing classification -------------------------------------------------------


def test_affine_classification():
    assert classify_vanishing_affine(6).witness == 2
    assert classify_vanishing_affine(16).witness == 3
    assert not classify_vanishing_affine(5).vanishes
    assert [k for k in range(1, 80) if classify_vanishing_affine(k).vanishes] == [6, 16, 30, 48, 70]


def test_virasoro_classification():
    c = classify_vanishing_virasoro(8, 3)
    assert c.vanishes and c.witness == (2, 1)
    c = classify_vanishing_virasoro(25, 6)
    assert c.necessary_condition and not c.vanishes
    assert classify_vanishing_virasoro(3, 8).vanishes
    assert not classify_vanishing_virasoro(2, 5).vanishes


@pytest.mark.parametrize("k", range(1, 20))
def test_integral_exponent_iff_integral_module(k):
    cls = classify_vanishing_affine(k)
    ints = set(integral_power_modules("affine", k)) if cls.vanishes else set()
    for i in range(1, k + 2):
        e = affine_exponent(k, i)
        assert (e.denominator == 1) == (i in ints)
        # only the first integral module carries a constant term
        assert (e == 0) == (cls.vanishes and i == cls.witness)


def test_integral_power_modules():
    assert integral_power_modules("affine", 6) == [2, 6]
    assert integral_power_modules("affine", 16) == [3, 9, 15]
    assert integral_power_modules("virasoro", 8, 3) == [(2, 1), (6, 1)]
    with pytest.raises(NotAVanishingCase):
        integral_power_modules("affine", 5)


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        AffineCharSpec(0, 1)
    with pytest.raises(InvalidSpec):
        AffineCharSpec(2, 4)
    with pytest.raises(NonCoprimeSpec):
        VirasoroCharSpec(4, 6, 1, 1)
    with pytest.raises(InvalidSpec):
        VirasoroCharSpec(3, 4, 3, 1)


# -- identities: frozen readings ----------------------------------------------------


def test_frozen_affine_reading():
    assert AFFINE_IDENTITY_READING == "i(2j+1)"
    for i in (2, 3):
        rep = verify_affine_identity(i, 40)
        assert rep.reading == "i(2j+1)"
        assert rep.readings_tried == {"i(2j+1)": True, "j(2i+1)": False}
        assert rep.constant == i
        assert rep.brute_force_coefficients == [(-1) ** j for j in range(i)]


def test_affine_identity_index_range():
    # only j = 0..i-1 stay inside 1..k+1
    for i in range(2, 6):
        k = 2 * i * i - 2
        assert i * (2 * (i - 1) + 1) <= k + 1 < i * (2 * i + 1)


def test_frozen_virasoro_sign_rule():
    assert VIRASORO_SIGN_RULE == "pentagonal"
    expected = {
        (1, 1): {"statement": False, "proof": False, "pentagonal": True},
        (2, 1): {"statement": None, "proof": True, "pentagonal": True},
        (1, 3): {"statement": True, "proof": False, "pentagonal": True},
    }
    for (pt, ppt), tried in expected.items():
        rep = verify_virasoro_identity(pt, ppt, 40)
        assert rep.readings_tried == tried
        assert rep.reading == "pentagonal"
        assert rep.constant == 1


def test_virasoro_identity_brute_force_agrees():
    rep = verify_virasoro_identity(1, 3, 40)
    assert rep.brute_force_coefficients == rep.signs


def test_identity_errors():
    with pytest.raises(InvalidSpec):
        verify_affine_identity(1)
    with pytest.raises(InvalidSpec):
        verify_jacobi_rearrangement(1)
    with pytest.raises(NonCoprimeSpec):
        verify_virasoro_identity(3, 2)


@pytest.mark.parametrize("i", [2, 3, 4, 5, 6])
def test_jacobi_rearrangement(i):
    assert verify_jacobi_rearrangement(i, 50)


def test_identity_fails_is_reported():
    # an unrelated signed sum must not be accepted as an identity
    ch = [affine_char(6, i, 20) for i in (1, 3)]
    assert solve_almost_linear_dependence(ch) is None
    assert issubclass(IdentityFails, Exception)
