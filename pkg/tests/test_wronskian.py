import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from wronskforms.errors import ClassifierMismatch, IdentityFails, InsufficientOrder
from wronskforms.modforms import eisenstein
from wronskforms.qseries import QSeries, eta_power, first_difference, mul
from wronskforms.wronskian import (
    Family,
    _expand_basis,
    determinant,
    eta_exponent,
    f_form,
    leibniz_determinant,
    verify_eta_closed_form,
    wronskian,
    wronskian_matrix,
    wronskian_prime,
)
import wronskforms.wronskian as wmod

fracs = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def matrices(draw):
    m = draw(st.integers(2, 4))
    den = draw(st.sampled_from([1, 2, 4]))
    order = Fraction(draw(st.integers(6, 10)))
    rows = []
    for _ in range(m):
        row = []
        for _ in range(m):
            terms = {draw(st.integers(-2 * den, int(order * den) - 1)): draw(fracs)
                     for _ in range(draw(st.integers(0, 4)))}
            row.append(QSeries(den, terms, order))
        rows.append(row)
    return rows


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_elimination_matches_leibniz(mat):
    elim = determinant(mat)
    leib = leibniz_determinant(mat)
    # elimination may only know fewer terms, never different ones
    assert elim.order <= leib.order or elim.is_zero()
    assert first_difference(elim, leib, min(elim.order, leib.order)) is None


@pytest.mark.parametrize("family", [Family.affine(1), Family.affine(2), Family.affine(3),
                                    Family.virasoro(2, 5), Family.virasoro(3, 4),
                                    Family.virasoro(2, 7), Family.virasoro(3, 5)])
def test_wronskians_leibniz_vs_elimination(family):
    basis = _expand_basis(family, 15)
    for first in (0, 1):
        mat = wronskian_matrix(basis, first)
        assert first_difference(determinant(mat), leibniz_determinant(mat)) is None


def test_monomial_oracle():
    for a, b in [(Fraction(1, 3), Fraction(5, 2)), (Fraction(-1, 24), Fraction(23, 24)), (2, 7)]:
        basis = [QSeries.monomial(1, a, 20), QSeries.monomial(1, b, 20)]
        assert dict(wronskian(basis).items()) == {a + b: b - a}
        assert dict(wronskian_prime(basis).items()) == {a + b: a * b * (b - a)}


def test_vandermonde_oracle():
    exps = [Fraction(0), Fraction(1, 5), Fraction(3, 2), Fraction(7, 3)]
    basis = [QSeries.monomial(1, e, 10) for e in exps]
    expected = 1
    for x, y in combinations(exps, 2):
        expected *= y - x
    assert dict(wronskian(basis).items()) == {sum(exps): expected}


def _mix(basis, a):
    out = []
    for col in range(len(basis)):
        acc = QSeries.zero(basis[0].order, basis[0].lattice_den)
        for row, f in enumerate(basis):
            if a[row][col]:
                acc = acc + f.scale(a[row][col])
        out.append(acc)
    return out


def _int_det(a):
    return leibniz_determinant([[QSeries.constant(x) for x in row] for row in a])[0]


@pytest.mark.parametrize("family", [Family.affine(2), Family.affine(3), Family.virasoro(2, 5),
                                    Family.virasoro(3, 4)])
def test_basis_change_invariance(family):
    rng = random.Random(7)
    basis = _expand_basis(family, 20)
    w = wronskian(basis)
    wp = wronskian_prime(basis)
    f = mul(wp, w ** -1)
    done = 0
    while done < 10:
        a = [[rng.randint(-3, 3) for _ in basis] for _ in basis]
        d = _int_det(a)
        if not d:
            continue
        mixed = _mix(basis, a)
        w2 = wronskian(mixed)
        assert first_difference(w2, w.scale(d)) is None
        f2 = mul(wronskian_prime(mixed), w2 ** -1)
        assert first_difference(f2, f, min(f.order, f2.order)) is None
        done += 1


def test_zero_column_gives_zero_with_bound():
    z = QSeries.zero(5)
    one = QSeries.constant(1, 5)
    q = QSeries.monomial(1, 1, 5)
    det = determinant([[one, z], [q, z]])
    assert det.is_zero()
    assert det.order <= 5


# -- F = W'/W -----------------------------------------------------------------------


@pytest.mark.parametrize("family,weight", [(Family.affine(1), 4), (Family.affine(2), 6),
                                           (Family.virasoro(2, 5), 4), (Family.virasoro(3, 4), 6)])
def test_small_forms_are_eisenstein(family, weight):
    res = f_form(family, terms=30)
    assert res.f_weight == weight
    assert res.normalized_f == eisenstein(weight, 30)


@pytest.mark.parametrize("family", [Family.affine(6), Family.virasoro(2, 3), Family.virasoro(8, 3),
                                    Family.virasoro(2, 27)])
def test_vanishing_families(family):
    res = f_form(family, terms=25)
    assert res.vanishes and res.f.is_zero() and res.normalized_f is None
    assert res.f.order >= 25


def test_f_is_known_to_requested_order():
    res = f_form(Family.affine(5), terms=40)
    assert res.f.order == 40
    assert res.normalized_f.order == 40


def test_classifier_mismatch(monkeypatch):
    from wronskforms.characters import VanishingClassification

    fam = Family.affine(5)
    monkeypatch.setattr(Family, "classification",
                        lambda self: VanishingClassification(True, witness=0))
    with pytest.raises(ClassifierMismatch):
        f_form(fam, terms=10)


def test_insufficient_order(monkeypatch):
    # starve the expansion so the slack budget is exhausted
    real = wmod._expand_basis
    monkeypatch.setattr(wmod, "_expand_basis", lambda fam, rel: real(fam, 1))
    with pytest.raises(InsufficientOrder):
        f_form(Family.affine(3), terms=20)


def test_wronskian_order_request():
    basis = _expand_basis(Family.affine(2), 5)
    with pytest.raises(InsufficientOrder):
        wronskian(basis, order=50)


# -- eta closed form ------------------------------------------------------------------


def test_eta_exponents():
    assert [eta_exponent(Family.affine(k)) for k in (1, 2, 3)] == [4, 12, 24]
    assert eta_exponent(Family.virasoro(2, 5)) == 4
    assert eta_exponent(Family.virasoro(3, 4)) == 12
    assert eta_exponent(Family.virasoro(8, 3)) == 84


@pytest.mark.parametrize("k", [1, 4, 7])
def test_normalized_wronskian_is_eta_power(k):
    fam = Family.affine(k)
    assert verify_eta_closed_form(fam, 30)
    w = wronskian(_expand_basis(fam, 30)).normalized()
    r = eta_exponent(fam)
    assert first_difference(w, eta_power(r, w.order)) is None


def test_eta_closed_form_detects_mismatch(monkeypatch):
    monkeypatch.setattr(wmod, "eta_exponent", lambda fam: 48)
    with pytest.raises(IdentityFails):
        verify_eta_closed_form(Family.affine(3), 10)


def test_result_json():
    payload = f_form(Family.affine(1), terms=5).to_json()
    assert set(payload) == {"family", "spec", "weight", "vanishes", "W", "Wprime", "F_normalized"}
    assert payload["spec"] == {"k": 1}
    assert QSeries.from_json(payload["F_normalized"]) == eisenstein(4, 5)
