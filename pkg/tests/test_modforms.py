from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from wronskforms.errors import InsufficientOrder, NonzeroRemainder, WeightUnrepresentable
from wronskforms.modforms import (
    Decomposition,
    JPolynomial,
    bernoulli,
    decompose,
    delta_form,
    divisor_sigma,
    e2m3,
    eisenstein,
    j_function,
    jacobi_moment,
    weight_exponents,
)
from wronskforms.modp import congruent_mod, is_p_integral
from wronskforms.qseries import QSeries, eta_power, first_difference, mul


def akiyama_tanigawa(n):
    # independent route to B_n (with B_1 = +1/2, so only even n are compared)
    a = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(n + 1):
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


# -- Bernoulli and divisor sums -----------------------------------------------------


def test_bernoulli_values():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(7) == 0


@pytest.mark.parametrize("n", range(2, 40, 2))
def test_bernoulli_two_routes(n):
    assert bernoulli(n) == akiyama_tanigawa(n)


@pytest.mark.parametrize("n", range(1, 30))
def test_bernoulli_recurrence(n):
    assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


@pytest.mark.parametrize("k", range(1, 20))
def test_clausen_von_staudt(k):
    n = 2 * k
    primes = [p for p in range(2, n + 2) if all(p % d for d in range(2, p)) and n % (p - 1) == 0]
    total = bernoulli(n) + sum(Fraction(1, p) for p in primes)
    assert total.denominator == 1


@pytest.mark.parametrize("power", [0, 1, 3, 5])
def test_divisor_sigma_naive(power):
    sig = divisor_sigma(power, 60)
    for n in range(1, 60):
        assert sig[n] == sum(d ** power for d in range(1, n + 1) if n % d == 0)


# -- Eisenstein, Delta, j -------------------------------------------------------------


def test_eisenstein_coefficients():
    e4, e6 = eisenstein(4, 4), eisenstein(6, 4)
    assert [e4[n] for n in range(4)] == [1, 240, 2160, 6720]
    assert [e6[n] for n in range(4)] == [1, -504, -16632, -122976]
    assert eisenstein(2, 3)[1] == -24


def test_one_dimensional_weights():
    n = 50
    assert eisenstein(4, n) ** 2 == eisenstein(8, n)
    assert mul(eisenstein(4, n), eisenstein(6, n)) == eisenstein(10, n)
    assert mul(eisenstein(4, n), eisenstein(10, n)) == eisenstein(14, n)


def test_delta_two_routes():
    d = delta_form(80)
    assert first_difference(d, eta_power(24, 80)) is None
    assert [d[n] for n in range(1, 6)] == [1, -24, 252, -1472, 4830]


def test_j_expansion():
    j = j_function(4)
    assert dict(j.items()) == {-1: 1, 0: 744, 1: 196884, 2: 21493760, 3: 864299970}


def test_delta_times_j_is_e4_cubed():
    n = 40
    lhs = mul(delta_form(n + 1), j_function(n))
    assert first_difference(lhs, eisenstein(4, n) ** 3, n) is None


def test_eisenstein_rejects_odd_weight():
    with pytest.raises(ValueError):
        eisenstein(5, 10)


# -- decomposition --------------------------------------------------------------------


def test_weight_exponents():
    assert weight_exponents(0) == (0, 0, 0)
    assert weight_exponents(4) == (0, 1, 0)
    assert weight_exponents(14) == (0, 2, 1)
    assert weight_exponents(24) == (2, 0, 0)
    assert weight_exponents(22) == (1, 1, 1)
    for bad in (2, 3, -4):
        with pytest.raises(WeightUnrepresentable):
            weight_exponents(bad)


def _build(t, dl, eps, poly, order):
    base = QSeries.constant(1, order)
    if t:
        base = mul(base, delta_form(order) ** t)
    base = mul(base, eisenstein(4, order) ** dl) if dl else base
    base = mul(base, eisenstein(6, order)) if eps else base
    return mul(base, poly.of_series(j_function(order)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2), st.integers(0, 1), st.data())
def test_decompose_round_trip(t, dl, eps, data):
    coeffs = data.draw(st.lists(st.fractions(-50, 50, max_denominator=9), min_size=t + 1, max_size=t + 1))
    coeffs[-1] = coeffs[-1] or Fraction(1)
    poly = JPolynomial(tuple(coeffs))
    f = _build(t, dl, eps, poly, 20)
    weight = 12 * t + 4 * dl + 6 * eps
    assert decompose(f, weight) == Decomposition(t, dl, eps, poly)


def test_decompose_level_five():
    f = _build(1, 0, 0, JPolynomial((Fraction(-1302528, 1075), 1)), 30)
    dec = decompose(f, 12)
    assert str(dec.g) == "j - 1302528/1075"


def test_decompose_zero_and_errors():
    assert decompose(QSeries.zero(10), 14).g.is_zero()
    with pytest.raises(NonzeroRemainder):
        decompose(QSeries.from_exponents({Fraction(1, 2): 1}, 10), 12)
    with pytest.raises(InsufficientOrder):
        decompose(QSeries.from_exponents({0: 1}, 1), 24)
    with pytest.raises(NonzeroRemainder):
        # weight 12 with a pole in j beyond t = 1
        decompose(_build(2, 0, 0, JPolynomial((0, 0, 1)), 20), 12)


def test_decomposition_json():
    d = Decomposition(2, 0, 0, JPolynomial((Fraction(1, 3), -2, 1)))
    assert Decomposition.from_json(d.to_json()) == d
    assert d.weight == 24
    with pytest.raises(ValueError):
        Decomposition(0, 0, 0, JPolynomial((0, 1)))


def test_jpolynomial_format():
    assert str(JPolynomial((Fraction(-1302528, 1075), 1))) == "j - 1302528/1075"
    assert str(JPolynomial((3, 0, -1))) == "-j^2 + 3"
    assert str(JPolynomial(())) == "0"
    assert JPolynomial((1, 2, 0, 0)).degree == 1


# -- quasimodular moments -------------------------------------------------------------


def test_jacobi_moment_zero_is_one():
    assert jacobi_moment(0, 30) == QSeries.constant(1, 30)


def test_e2m3_quasimodular_identities():
    n = 50
    e2, e4, e6 = (eisenstein(w, n) for w in (2, 4, 6))
    assert e2m3(1, n) == e2
    assert e2m3(2, n) == e2 ** 2 * Fraction(5, 3) - e4 * Fraction(2, 3)
    assert e2m3(3, n) == (e2 ** 3 * Fraction(35, 9) - mul(e2, e4) * Fraction(14, 3)
                          + e6 * Fraction(16, 9))


def test_jacobi_moment_leading_coefficient():
    for m in range(1, 6):
        assert jacobi_moment(m, 5)[0] == Fraction(1, 8 ** m)


@pytest.mark.parametrize("k", [2, 3, 5, 6, 8, 9])
def test_eisenstein_congruent_to_one(k):
    p = 2 * k + 1
    if any(p % d == 0 for d in range(2, p)):
        pytest.skip("2k+1 not prime")
    e = eisenstein(2 * k, 40)
    assert is_p_integral(e, p).holds
    assert congruent_mod(e, QSeries.constant(1, 40), p).holds
