"""p-adic valuations, congruences of q-series, and the level-k congruence checks.

Checks of proved statements return reports of kind ``"assertion"``;
conjectural ones (``F = 1 mod p``, the mod ``p^2`` probe) return ``"evidence"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .characters import (
    affine_exponent,
    affine_theta,
    classify_vanishing_affine,
)
from .errors import NotPIntegral, NotPrime
from .modforms import jacobi_moment
from .qseries import QSeries, as_fraction, align, ramanujan_derive
from .wronskian import Family, WronskianResult, f_form

__all__ = [
    "CongruenceReport",
    "p_valuation",
    "is_p_integral",
    "reduce_mod",
    "congruent_mod",
    "check_theta_congruence",
    "check_jacobi_moment_congruence",
    "check_f_integrality",
    "check_hasse_conjecture",
    "probe_w_congruence_mod_p2",
]

INF = math.inf


@dataclass
class CongruenceReport:
    p: int
    checked_order: Fraction
    holds: bool
    modulus_exp: int = 1
    first_failure: tuple | None = None
    valuation_summary: float | int = INF
    kind: str = "assertion"
    label: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.first_failure is None):
            raise ValueError("holds must be true exactly when there is no first_failure")

    def to_json(self) -> dict:
        ff = self.first_failure
        return {
            "p": self.p,
            "modulus_exp": self.modulus_exp,
            "order": str(self.checked_order),
            "holds": self.holds,
            "first_failure": None if ff is None else [str(x) for x in ff],
            "kind": self.kind,
        }


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not gmpy2.is_prime(p):
        raise NotPrime(f"{p} is not prime")


def p_valuation(x, p: int):
    """Exact ``v_p(x)`` of a rational; ``math.inf`` for zero."""
    _require_prime(p)
    x = as_fraction(x)
    if not x:
        return INF
    return _val_int(x.numerator, p) - _val_int(x.denominator, p)


def _val_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _min_valuation(series: QSeries, p: int):
    return min((p_valuation(c, p) for _, c in series.items()), default=INF)


def is_p_integral(a: QSeries, p: int, kind: str = "assertion") -> CongruenceReport:
    """Every stored coefficient has ``v_p >= 0``."""
    _require_prime(p)
    worst = INF
    failure = None
    for e, c in a.items():
        v = p_valuation(c, p)
        worst = min(worst, v)
        if v < 0 and failure is None:
            failure = (e, as_fraction(c), None)
    return CongruenceReport(p, a.order, failure is None, 1, failure, worst, kind, "p-integral")


def reduce_mod(x, p: int, e: int = 1) -> int:
    """Residue of a p-integral rational modulo ``p^e``."""
    x = as_fraction(x)
    mod = p ** e
    if x.denominator % p == 0:
        raise NotPIntegral(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def congruent_mod(a: QSeries, b: QSeries, p: int, e: int = 1, kind: str = "assertion",
                  label: str = "") -> CongruenceReport:
    """Coefficient-wise ``a = b (mod p^e)`` below the common order."""
    _require_prime(p)
    if e < 1:
        raise ValueError("modulus exponent must be positive")
    a, b = align(a, b)
    order = min(a.order, b.order)
    ta, tb = a.terms, b.terms
    worst = INF
    failure = None
    for n in sorted(set(ta) | set(tb)):
        ex = Fraction(n, a.lattice_den)
        if ex >= order:
            break
        x, y = as_fraction(ta.get(n, 0)), as_fraction(tb.get(n, 0))
        for c in (x, y):
            if c.denominator % p == 0:
                raise NotPIntegral(f"coefficient {c} at q^{ex} is not {p}-integral")
        worst = min(worst, p_valuation(x - y, p))
        if failure is None and reduce_mod(x, p, e) != reduce_mod(y, p, e):
            failure = (ex, x, y)
    return CongruenceReport(p, order, failure is None, e, failure, worst, kind, label)


def _prime_for_level(k: int) -> int:
    p = 2 * k + 3
    _require_prime(p)
    return p


def check_theta_congruence(k: int, order=40) -> CongruenceReport:
    """``theta_{k,i}^{(k+1)} = (4(k+2))^(-k-1) theta_{k,i} (mod 2k+3)`` for every ``i``."""
    p = _prime_for_level(k)
    scale = Fraction(1, (4 * (k + 2)) ** (k + 1))
    per_index = {}
    failure = None
    worst = INF
    for i in range(1, k + 2):
        theta = affine_theta(k, i, order)
        rep = congruent_mod(ramanujan_derive(theta, k + 1), theta.scale(scale), p)
        per_index[i] = rep.holds
        worst = min(worst, rep.valuation_summary)
        if failure is None and not rep.holds:
            failure = rep.first_failure
    return CongruenceReport(p, Fraction(order), failure is None, 1, failure, worst,
                            "assertion", f"theta congruence k={k}", {"per_index": per_index})


def check_jacobi_moment_congruence(p: int, order=40) -> CongruenceReport:
    """``m! [y^m] (eta(q e^y)/eta(q))^3 = 2^(-3m) (mod p)`` with ``p = 2m + 1``."""
    _require_prime(p)
    if p < 5:
        raise NotPrime(f"need an odd prime >= 5, got {p}")
    m = (p - 1) // 2
    lhs = jacobi_moment(m, order)
    rhs = QSeries.constant(Fraction(1, 2 ** (3 * m)), lhs.order)
    rep = congruent_mod(lhs, rhs, p, label=f"jacobi moment m={m}")
    rep.details["m"] = m
    return rep


@lru_cache(maxsize=64)
def _affine_f(k: int, order: int) -> WronskianResult:
    return f_form(Family.affine(k), terms=order)


def _leading_product_w(k: int) -> Fraction:
    prod = Fraction(1)
    for m in range(1, k + 2):
        for n in range(m + 1, k + 2):
            prod *= Fraction(m * m - n * n, 4 * (k + 2))
    return prod


def check_f_integrality(k: int, order=40) -> CongruenceReport:
    """p-integrality of the normalized form for ``p = 2k + 3``.

    Sub-checks: (a) the leading coefficient ``a0`` of ``W'/W`` equals
    ``prod_i (h_{k,i} - c_k/24)`` and ``v_p(a0) = 1``; (b) the Wronskian of the
    monic character basis starts with ``+-prod_{m<n} (m^2 - n^2)/(4(k+2))``, a
    p-unit; (c) the normalized ``F`` is p-integral.
    """
    p = _prime_for_level(k)
    order = int(order)
    if classify_vanishing_affine(k).vanishes:
        return CongruenceReport(p, Fraction(order), True, label=f"F integrality k={k}",
                                details={"vacuous": True})
    res = _affine_f(k, order)
    details = {}
    failure = None

    _, a0 = res.f.leading_term()
    a0 = as_fraction(a0)
    expected_a0 = Fraction(1)
    for i in range(1, k + 2):
        expected_a0 *= affine_exponent(k, i)
    details["a0"] = a0
    details["a0_product"] = expected_a0
    details["v_p(a0)"] = p_valuation(a0, p)
    if a0 != expected_a0:
        failure = failure or ("a0", a0, expected_a0)
    if details["v_p(a0)"] != 1:
        failure = failure or ("v_p(a0)", details["v_p(a0)"], 1)

    # columns of W carry the leading coefficients i of the characters
    _, w0 = res.w.leading_term()
    monic_w0 = as_fraction(w0) / math.factorial(k + 1)
    expected_w0 = _leading_product_w(k)
    details["w0_monic"] = monic_w0
    details["w0_product"] = expected_w0
    if abs(monic_w0) != abs(expected_w0):
        failure = failure or ("w0", monic_w0, expected_w0)
    if p_valuation(monic_w0, p) != 0:
        failure = failure or ("v_p(w0)", p_valuation(monic_w0, p), 0)

    integral = is_p_integral(res.normalized_f, p)
    details["normalized_f_integral"] = integral.holds
    if not integral.holds:
        failure = failure or integral.first_failure
    return CongruenceReport(p, res.normalized_f.order, failure is None, 1, failure,
                            integral.valuation_summary, "assertion", f"F integrality k={k}", details)


def check_hasse_conjecture(k: int, order=40) -> CongruenceReport:
    """Evidence for the normalized ``F = 1 (mod 2k+3)``."""
    p = _prime_for_level(k)
    res = _affine_f(k, int(order))
    f = res.normalized_f
    if f is None:
        return CongruenceReport(p, res.f.order, True, kind="evidence",
                                label=f"Hasse k={k}", details={"vacuous": True})
    one = QSeries.constant(1, f.order)
    return congruent_mod(f, one, p, kind="evidence", label=f"Hasse k={k}")


def probe_w_congruence_mod_p2(k: int, order=40):
    """Look for ``h`` with ``W' = h W (mod p^2)``; returns ``(h mod p^2, report)``.

    ``h`` is the ratio of the leading coefficients. Exploratory only.
    """
    p = _prime_for_level(k)
    res = _affine_f(k, int(order))
    if res.w_prime.is_zero():
        h = 0
        rep = congruent_mod(res.w_prime, res.w.scale(0), p, 2, kind="evidence",
                            label=f"W' = hW mod p^2, k={k}")
        return h, rep
    _, a = res.w_prime.leading_term()
    _, b = res.w.leading_term()
    h = reduce_mod(as_fraction(a) / as_fraction(b), p, 2)
    rep = congruent_mod(res.w_prime, res.w.scale(h), p, 2, kind="evidence",
                        label=f"W' = hW mod p^2, k={k}")
    rep.details["h"] = h
    return h, rep
