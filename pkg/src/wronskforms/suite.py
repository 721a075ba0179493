"""The acceptance battery behind ``wronskforms suite``.

Each criterion is a function returning a :class:`CriterionResult`. The
criteria are independent and may run on worker threads.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .characters import (
    classify_vanishing_affine,
    classify_vanishing_virasoro,
    verify_affine_identity,
    verify_jacobi_rearrangement,
    verify_virasoro_identity,
)
from .errors import WronskFormsError
from .modforms import JPolynomial, decompose, e2m3, eisenstein, weight_exponents
from .modp import (
    check_f_integrality,
    check_hasse_conjecture,
    check_jacobi_moment_congruence,
    check_theta_congruence,
)
from .qseries import QSeries, euler_product_power, first_difference, invert, mul
from .roots import check_zero_location
from .wronskian import (
    Family,
    _expand_basis,
    determinant,
    f_form,
    leibniz_determinant,
    verify_eta_closed_form,
    wronskian_matrix,
)

__all__ = ["CriterionResult", "REFERENCE_TABLE", "CRITERIA", "run_suite", "table_row"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    kind: str = "assertion"
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "kind": self.kind,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number} ({self.kind}): {self.title}"


# Published G polynomials (ascending coefficients) and zeros for levels 5..11.
# Level 9 prints denominator 10776887; its own zero 1281.987070 belongs to
# 1381580800/1077687, which is what the expansion produces.
REFERENCE_TABLE = {
    5: ((Fraction(-1302528, 1075), 1), ("1211.653954",)),
    7: ((Fraction(-787021824, 587489), 1), ("1339.636698",)),
    8: ((Fraction(-8696400, 20119), 1), ("432.2481237",)),
    9: ((Fraction(-1381580800, 10776887), 1), ("1281.987070",)),
    10: ((Fraction(-956352, 2021), 1), ("473.2073231",)),
    11: ((Fraction(1908473415598080, 13928908741), Fraction(-20462710947840, 13928908741), 1),
         ("100.0843760", "1368.997756")),
}
TABLE_CORRECTIONS = {9: (Fraction(-1381580800, 1077687), 1)}


def digits_agree(computed: str, printed: str) -> bool:
    """Equal up to one unit in the printed last place."""
    ulp = Decimal(1).scaleb(Decimal(printed).as_tuple().exponent)
    return abs(Decimal(computed) - Decimal(printed)) <= ulp


def table_row(k: int, terms: int = 60) -> dict:
    res = f_form(Family.affine(k), terms=terms)
    row = {"k": k, "weight": res.f_weight, "vanishes": res.vanishes}
    if res.vanishes:
        t, dl, eps = weight_exponents(res.f_weight)
        row.update(t=t, delta=dl, epsilon=eps, G=JPolynomial(()), zeros=[], all_in_0_1728=None)
        return row
    d = decompose(res.normalized_f, res.f_weight)
    rep = check_zero_location(d.g)
    row.update(t=d.t, delta=d.delta, epsilon=d.epsilon, G=d.g,
               zeros=[x for _, x in rep.roots], all_in_0_1728=rep.all_in_0_1728)
    return row


def _timed(fn):
    def run(*args, **kwargs) -> CriterionResult:
        start = time.perf_counter()
        try:
            out = fn(*args, **kwargs)
        except WronskFormsError as exc:
            number, title = fn.criterion
            out = CriterionResult(number, title, False, details={"error": repr(exc)})
        out.seconds = time.perf_counter() - start
        return out
    run.__name__ = fn.__name__
    return run


def _criterion(number: int, title: str):
    def wrap(fn):
        fn.criterion = (number, title)
        return _timed(fn)
    return wrap


AFFINE_ETA_LEVELS = range(1, 11)
VIRASORO_ETA_MODELS = [(2, 5), (3, 4), (2, 7), (3, 5), (8, 3)]


@_criterion(1, "Wronskians equal eta powers")
def criterion_1(terms: int = 50) -> CriterionResult:
    details = {}
    for k in AFFINE_ETA_LEVELS:
        details[f"affine k={k}"] = verify_eta_closed_form(Family.affine(k), terms)
    for p, pp in VIRASORO_ETA_MODELS:
        details[f"M({p},{pp})"] = verify_eta_closed_form(Family.virasoro(p, pp), terms)
    return CriterionResult(1, "Wronskians equal eta powers", all(details.values()), details=details)


@_criterion(2, "affine F vanishes exactly for k = 6, 16")
def criterion_2(terms: int = 30, kmax: int = 22) -> CriterionResult:
    details = {}
    ok = True
    for k in range(1, kmax + 1):
        res = f_form(Family.affine(k), terms=terms)
        cls = classify_vanishing_affine(k)
        details[k] = res.vanishes
        ok &= res.vanishes == cls.vanishes == (k in (6, 16))
    return CriterionResult(2, "affine F vanishes exactly for k = 6, 16", ok, details=details)


VIRASORO_VANISHING = {(2, 3): True, (8, 3): True, (2, 27): True,
                      (2, 5): False, (3, 4): False, (2, 7): False, (3, 5): False}


@_criterion(3, "Virasoro F vanishes exactly on the classified models")
def criterion_3(terms: int = 30) -> CriterionResult:
    details = {}
    ok = True
    for (p, pp), expected in VIRASORO_VANISHING.items():
        res = f_form(Family.virasoro(p, pp), terms=terms)
        cls = classify_vanishing_virasoro(p, pp)
        details[f"M({p},{pp})"] = res.vanishes
        ok &= res.vanishes == cls.vanishes == expected
    return CriterionResult(3, "Virasoro F vanishes exactly on the classified models", ok, details=details)


def _pentagonal_sum(count: int) -> list:
    out = [0] * count
    l = 0
    while (3 * l * l - l) // 2 < count:
        for e in {(3 * l * l - l) // 2, (3 * l * l + l) // 2}:
            if e < count:
                out[e] += (-1) ** l
        l += 1
    return out


def _jacobi_cube_sum(count: int) -> list:
    out = [0] * count
    n = 0
    while n * (n + 1) // 2 < count:
        out[n * (n + 1) // 2] += (-1) ** n * (2 * n + 1)
        n += 1
    return out


@_criterion(4, "almost linear dependences and classical eta identities")
def criterion_4(order: int = 60, count: int = 200) -> CriterionResult:
    details = {}
    for i in (2, 3):
        rep = verify_affine_identity(i, order)
        details[f"affine i={i}"] = rep.holds and rep.constant == i
    for pt, ppt in ((1, 1), (2, 1), (1, 3)):
        rep = verify_virasoro_identity(pt, ppt, order)
        details[f"virasoro ({pt},{ppt})"] = rep.holds and rep.constant == 1
    for i in range(2, 7):
        details[f"rearrangement i={i}"] = verify_jacobi_rearrangement(i, 50)
    details["pentagonal"] = euler_product_power(1, count) == _pentagonal_sum(count)
    details["jacobi cube"] = euler_product_power(3, count) == _jacobi_cube_sum(count)
    return CriterionResult(4, "almost linear dependences and classical eta identities",
                           all(details.values()), details=details)


LOW_LEVEL_FORMS = {1: ((4, 1),), 2: ((6, 1),), 3: ((4, 2),), 4: ((4, 1), (6, 1))}


def _eisenstein_product(factors, order) -> QSeries:
    out = QSeries.constant(1, order)
    for w, e in factors:
        out = mul(out, eisenstein(w, order) ** e)
    return out


@_criterion(5, "table of G(F, j) and its zeros")
def criterion_5(terms: int = 60, jobs: int = 1) -> CriterionResult:
    details = {}
    ok = True
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = dict(zip(range(1, 12), pool.map(lambda k: table_row(k, terms), range(1, 12))))
    for k, factors in LOW_LEVEL_FORMS.items():
        row = rows[k]
        res = f_form(Family.affine(k), terms=terms)
        same = first_difference(res.normalized_f, _eisenstein_product(factors, terms)) is None
        good = same and row["G"] == JPolynomial((1,)) and row["t"] == 0
        details[f"k={k}"] = good
        ok &= good
    details["k=6"] = rows[6]["vanishes"]
    ok &= rows[6]["vanishes"]
    for k, (coeffs, zeros) in REFERENCE_TABLE.items():
        row = rows[k]
        expected = JPolynomial(TABLE_CORRECTIONS.get(k, coeffs))
        g_ok = row["G"] == expected
        z_ok = len(row["zeros"]) == len(zeros) and all(map(digits_agree, row["zeros"], zeros))
        details[f"k={k}"] = {"G": str(row["G"]), "zeros": row["zeros"], "G_ok": g_ok, "zeros_ok": z_ok}
        if k in TABLE_CORRECTIONS:
            details[f"k={k}"]["printed_G_matches"] = row["G"] == JPolynomial(coeffs)
        ok &= g_ok and z_ok
    return CriterionResult(5, "table of G(F, j) and its zeros", ok, details=details)


CONGRUENCE_LEVELS = [1, 2, 4, 5, 7, 8, 10, 13, 14]


@_criterion(6, "congruences for p = 2k + 3")
def criterion_6(order: int = 40) -> CriterionResult:
    details = {}
    for k in CONGRUENCE_LEVELS:
        checks = (check_theta_congruence(k, order),
                  check_jacobi_moment_congruence(2 * k + 3, order),
                  check_f_integrality(k, order))
        details[k] = [c.holds for c in checks]
    ok = all(all(v) for v in details.values())
    return CriterionResult(6, "congruences for p = 2k + 3", ok, details=details)


@_criterion(7, "evidence: F = 1 mod p and zeros inside [0, 1728]")
def criterion_7(order: int = 40) -> CriterionResult:
    details = {}
    for k in (1, 2, 4, 5, 7, 8, 10):
        details[f"hasse k={k}"] = check_hasse_conjecture(k, order).holds
    for k in range(1, 12):
        if k == 6:
            continue
        row = table_row(k, 60)
        details[f"zeros k={k}"] = row["all_in_0_1728"]
    return CriterionResult(7, "evidence: F = 1 mod p and zeros inside [0, 1728]",
                           all(details.values()), kind="evidence", details=details)


def quasimodular_targets(order) -> dict:
    e2, e4, e6 = (eisenstein(w, order) for w in (2, 4, 6))
    return {
        1: e2,
        2: e2 ** 2 * Fraction(5, 3) - e4 * Fraction(2, 3),
        3: e2 ** 3 * Fraction(35, 9) - mul(e2, e4) * Fraction(14, 3) + e6 * Fraction(16, 9),
    }


@_criterion(8, "quasimodular E_{2m,3}")
def criterion_8(terms: int = 50) -> CriterionResult:
    details = {}
    for m, target in quasimodular_targets(terms).items():
        details[m] = first_difference(e2m3(m, terms), target) is None
    return CriterionResult(8, "quasimodular E_{2m,3}", all(details.values()), details=details)


SMALL_FAMILIES = [Family.affine(1), Family.affine(2), Family.affine(3),
                  Family.virasoro(2, 5), Family.virasoro(3, 4), Family.virasoro(2, 7),
                  Family.virasoro(3, 5)]


def _random_unimodular_free(rng: random.Random, m: int) -> list:
    while True:
        a = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
        det = leibniz_determinant([[QSeries.constant(x) for x in row] for row in a])
        if not det.is_zero():
            return a


def f_from_basis(basis) -> QSeries:
    w = determinant(wronskian_matrix(basis, 0))
    wp = determinant(wronskian_matrix(basis, 1))
    return mul(wp, invert(w))


@_criterion(9, "determinant, eta and basis-change oracles")
def criterion_9(terms: int = 12, samples: int = 10, seed: int = 20240601) -> CriterionResult:
    details = {}
    for fam in SMALL_FAMILIES:
        basis = _expand_basis(fam, terms)
        same = True
        for first in (0, 1):
            mat = wronskian_matrix(basis, first)
            same &= first_difference(determinant(mat), leibniz_determinant(mat)) is None
        details[f"leibniz {fam}"] = same
    eta_sum = _pentagonal_sum(500)
    details["eta product vs pentagonal, 500 terms"] = euler_product_power(1, 500) == eta_sum
    rng = random.Random(seed)
    for fam in SMALL_FAMILIES[:4]:
        basis = _expand_basis(fam, terms + 6)
        ref = f_from_basis(basis)
        ok = True
        for _ in range(samples):
            a = _random_unimodular_free(rng, len(basis))
            mixed = []
            for col in range(len(basis)):
                acc = None
                for row, f in enumerate(basis):
                    if a[row][col]:
                        term = f.scale(a[row][col])
                        acc = term if acc is None else acc + term
                mixed.append(acc if acc is not None else basis[0].scale(0))
            ok &= first_difference(f_from_basis(mixed), ref, min(terms, ref.order)) is None
        details[f"basis change {fam}"] = ok
    return CriterionResult(9, "determinant, eta and basis-change oracles",
                           all(details.values()), details=details)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def run_suite(jobs: int = 1, only=None) -> list:
    """Run the battery; ``only`` restricts to the given criterion numbers."""
    chosen = [c for n, c in enumerate(CRITERIA, 1) if only is None or n in only]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        return list(pool.map(lambda c: c(), chosen))
