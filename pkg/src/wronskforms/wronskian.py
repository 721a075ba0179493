"""Wronskians of character bases and the modular forms ``F = W'/W``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm

from .characters import (
    affine_basis_specs,
    classify_vanishing_affine,
    classify_vanishing_virasoro,
    virasoro_basis_specs,
)
from .errors import ClassifierMismatch, IdentityFails, InsufficientOrder, InvalidSpec
from .qseries import QSeries, eta_power, first_difference, invert, mul, ramanujan_derive

__all__ = [
    "Family",
    "WronskianResult",
    "determinant",
    "leibniz_determinant",
    "wronskian_matrix",
    "wronskian",
    "wronskian_prime",
    "f_form",
    "eta_exponent",
    "verify_eta_closed_form",
]


@dataclass(frozen=True)
class Family:
    """A family of modules whose characters span a modular invariant space."""

    kind: str
    params: tuple

    @classmethod
    def affine(cls, k: int) -> "Family":
        affine_basis_specs(k)  # validates
        return cls("affine", (k,))

    @classmethod
    def virasoro(cls, p: int, pp: int) -> "Family":
        virasoro_basis_specs(p, pp)
        return cls("virasoro", (p, pp))

    def basis_specs(self) -> list:
        if self.kind == "affine":
            return affine_basis_specs(*self.params)
        if self.kind == "virasoro":
            return virasoro_basis_specs(*self.params)
        raise InvalidSpec(f"unknown family {self.kind!r}")

    def classification(self):
        if self.kind == "affine":
            return classify_vanishing_affine(*self.params)
        return classify_vanishing_virasoro(*self.params)

    @property
    def dimension(self) -> int:
        return len(self.basis_specs())

    @property
    def weight(self) -> int:
        """Weight ``2m`` of ``F`` for ``m`` basis characters."""
        return 2 * self.dimension

    def to_json(self) -> dict:
        if self.kind == "affine":
            return {"k": self.params[0]}
        return {"p": self.params[0], "pp": self.params[1]}

    def __str__(self) -> str:
        if self.kind == "affine":
            return f"L({self.params[0]}Lambda_0)"
        return f"M({self.params[0]},{self.params[1]})"


@dataclass
class WronskianResult:
    family: Family
    w: QSeries
    w_prime: QSeries
    f: QSeries
    f_weight: int
    vanishes: bool
    normalized_f: QSeries | None
    normalized_w: QSeries

    def to_json(self) -> dict:
        return {
            "family": self.family.kind,
            "spec": self.family.to_json(),
            "weight": self.f_weight,
            "vanishes": self.vanishes,
            "W": self.w.to_json(),
            "Wprime": self.w_prime.to_json(),
            "F_normalized": None if self.normalized_f is None else self.normalized_f.to_json(),
        }


def _aligned(matrix):
    den = lcm(*(e.lattice_den for row in matrix for e in row))
    return [[e.rescale(den) for e in row] for row in matrix], den


def determinant(matrix) -> QSeries:
    """Determinant of a square matrix of series by Gaussian elimination.

    Each column is pivoted on the entry of smallest leading exponent, so the
    multipliers have nonnegative valuation. The tracked orders of the
    entries carry through the elimination; when a column is zero to order
    the result is the zero series with a valuation bound as its order.
    """
    m = len(matrix)
    if m == 0 or any(len(row) != m for row in matrix):
        raise ValueError("determinant needs a nonempty square matrix")
    a, den = _aligned(matrix)
    sign = 1
    pivots = []
    for c in range(m):
        best = None
        for r in range(c, m):
            e = a[r][c]
            if e and (best is None or e.valuation < a[best][c].valuation):
                best = r
        if best is None:
            bound = sum(p.valuation for p in pivots)
            bound += min(a[r][c].order for r in range(c, m))
            bound += sum(min(a[r][s].valuation for r in range(c, m)) for s in range(c + 1, m))
            return QSeries.zero(bound, den)
        if best != c:
            a[c], a[best] = a[best], a[c]
            sign = -sign
        piv = a[c][c]
        inv = invert(piv)
        for r in range(c + 1, m):
            f = mul(a[r][c], inv)
            row, prow = a[r], a[c]
            for s in range(c + 1, m):
                row[s] = row[s] - mul(f, prow[s])
        pivots.append(piv)
    det = pivots[0]
    for p in pivots[1:]:
        det = mul(det, p)
    return det if sign == 1 else -det


def leibniz_determinant(matrix) -> QSeries:
    """Permutation-sum determinant; an independent check for small matrices."""
    m = len(matrix)
    total = None
    for perm in permutations(range(m)):
        inversions = sum(1 for x in range(m) for y in range(x + 1, m) if perm[x] > perm[y])
        term = matrix[0][perm[0]]
        for r in range(1, m):
            term = mul(term, matrix[r][perm[r]])
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def wronskian_matrix(basis, first_row: int = 0):
    """Rows ``first_row .. first_row+m-1`` of Ramanujan derivatives of the basis."""
    m = len(basis)
    return [[ramanujan_derive(f, j) for f in basis] for j in range(first_row, first_row + m)]


def _check_order(result: QSeries, order) -> QSeries:
    if order is not None and result.order < Fraction(order):
        raise InsufficientOrder(f"determinant known to q^{result.order}, {order} requested")
    return result


def wronskian(basis, order=None) -> QSeries:
    """``det (q d/dq)^j f_i`` for ``j = 0..m-1``."""
    if not basis:
        raise ValueError("empty basis")
    return _check_order(determinant(wronskian_matrix(basis, 0)), order)


def wronskian_prime(basis, order=None) -> QSeries:
    """Wronskian of the derivatives: rows ``j = 1..m``."""
    if not basis:
        raise ValueError("empty basis")
    return _check_order(determinant(wronskian_matrix(basis, 1)), order)


def _expand_basis(family: Family, rel_terms: int):
    return [spec.expand(spec.exponent + rel_terms) for spec in family.basis_specs()]


def f_form(family: Family, terms: int = 60, slack: int = 2) -> WronskianResult:
    """Compute ``W``, ``W'`` and ``F = W'/W`` with ``F`` known below ``q^terms``.

    The basis is expanded ``terms + slack`` integral powers past each leading
    exponent; the slack grows up to ``m(m+1)/2 + 10`` if the tracked order
    falls short, and :class:`InsufficientOrder` is raised after that.
    """
    m = family.dimension
    budget = m * (m + 1) // 2 + 10
    while True:
        basis = _expand_basis(family, terms + slack)
        w = wronskian(basis)
        w_prime = wronskian_prime(basis)
        f = mul(w_prime, invert(w))
        if f.order >= terms:
            break
        if slack >= budget:
            raise InsufficientOrder(f"F for {family} known only below q^{f.order}")
        slack = min(budget, 2 * slack + m)
    f = f.truncate(terms)
    numeric_zero = f.is_zero()
    cls = family.classification()
    if numeric_zero != cls.vanishes:
        raise ClassifierMismatch(
            f"{family}: expansion says F {'=' if numeric_zero else '!='} 0 to q^{f.order}, "
            f"classifier says vanishes={cls.vanishes}")
    normalized_f = None if numeric_zero else f.normalized()
    if normalized_f is not None:
        for e, _ in normalized_f.items():
            if e.denominator != 1 or e < 0:
                raise AssertionError(f"F for {family} has a non-holomorphic term q^{e}")
    return WronskianResult(
        family=family,
        w=w,
        w_prime=w_prime,
        f=f,
        f_weight=2 * m,
        vanishes=numeric_zero,
        normalized_f=normalized_f,
        normalized_w=w.normalized(),
    )


def eta_exponent(family: Family) -> int:
    """Power of eta equal to the normalized Wronskian of the family."""
    if family.kind == "affine":
        (k,) = family.params
        return 2 * k * (k + 1)
    p, pp = family.params
    return (p - 1) * (pp - 1) * (p * pp - p - pp - 1) // 2


def verify_eta_closed_form(family: Family, terms: int = 50) -> bool:
    """Compare the normalized ``W`` with ``eta^e`` coefficient by coefficient.

    At least ``terms`` integral powers past the leading exponent are compared.
    """
    basis = _expand_basis(family, terms + 1)
    w = wronskian(basis).normalized()
    r = eta_exponent(family)
    lead = w.valuation
    if lead != Fraction(r, 24):
        raise IdentityFails(f"{family}: W starts at q^{lead}, eta^{r} at q^{Fraction(r, 24)}",
                            (lead, None))
    if w.order < lead + terms:
        raise InsufficientOrder(f"{family}: W known only below q^{w.order}")
    eta = eta_power(r, w.order)
    diff = first_difference(w, eta)
    if diff is not None:
        raise IdentityFails(f"{family}: W differs from eta^{r} at q^{diff}", (diff, w[diff]))
    return True
