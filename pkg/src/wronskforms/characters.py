"""Irreducible characters of level-k affine sl2 modules and Virasoro minimal models.

Affine characters follow the homogeneous Weyl-Kac specialization
``ch_{k,i} = theta_{k,i} / eta^3`` with the theta numerator carrying leading
coefficient ``i`` (no renormalization). Virasoro characters are the
Rocha-Caridi sums divided by ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd, isqrt, lcm

from .errors import IdentityFails, InvalidSpec, NonCoprimeSpec, NotAVanishingCase
from .linalg import nullspace, rank
from .qseries import QSeries, divide_by_eta_power, euler_product_power

__all__ = [
    "AffineCharSpec",
    "VirasoroCharSpec",
    "VanishingClassification",
    "IdentityReport",
    "central_charge_affine",
    "conformal_weight_affine",
    "affine_exponent",
    "central_charge_virasoro",
    "conformal_weight_virasoro",
    "virasoro_exponent",
    "affine_theta",
    "affine_char",
    "virasoro_char",
    "affine_basis_specs",
    "virasoro_basis_specs",
    "classify_vanishing_affine",
    "classify_vanishing_virasoro",
    "integral_power_modules",
    "verify_affine_identity",
    "verify_virasoro_identity",
    "verify_jacobi_rearrangement",
    "solve_almost_linear_dependence",
    "character_rank",
    "AFFINE_IDENTITY_READING",
    "VIRASORO_SIGN_RULE",
]

# Readings settled by brute-force expansion; see tests/test_characters.py.
AFFINE_IDENTITY_READING = "i(2j+1)"
VIRASORO_SIGN_RULE = "pentagonal"


def _perfect_square_root(n: int):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _check_affine(k: int, i: int | None = None) -> None:
    if not isinstance(k, int) or k < 1:
        raise InvalidSpec(f"level must be a positive integer, got {k!r}")
    if i is not None and not (1 <= i <= k + 1):
        raise InvalidSpec(f"index must satisfy 1 <= i <= k+1 = {k + 1}, got {i}")


def _check_virasoro(p: int, pp: int, r: int | None = None, s: int | None = None) -> None:
    if p < 2 or pp < 2:
        raise InvalidSpec(f"need p, p' >= 2, got ({p}, {pp})")
    if gcd(p, pp) != 1:
        raise NonCoprimeSpec(f"p = {p} and p' = {pp} are not coprime")
    if r is not None and not (1 <= r <= p - 1):
        raise InvalidSpec(f"r must satisfy 1 <= r <= {p - 1}, got {r}")
    if s is not None and not (1 <= s <= pp - 1):
        raise InvalidSpec(f"s must satisfy 1 <= s <= {pp - 1}, got {s}")


@dataclass(frozen=True)
class AffineCharSpec:
    """The module L(k, i-1) of affine sl2 at level ``k``."""

    k: int
    i: int

    def __post_init__(self):
        _check_affine(self.k, self.i)

    @property
    def central_charge(self) -> Fraction:
        return central_charge_affine(self.k)

    @property
    def conformal_weight(self) -> Fraction:
        return conformal_weight_affine(self.k, self.i)

    @property
    def exponent(self) -> Fraction:
        return affine_exponent(self.k, self.i)

    def expand(self, order) -> QSeries:
        return affine_char(self.k, self.i, order)

    def to_json(self) -> dict:
        return {"k": self.k, "i": self.i}


@dataclass(frozen=True)
class VirasoroCharSpec:
    """Irreducible module (r, s) of the minimal model M(p, p')."""

    p: int
    pp: int
    r: int
    s: int

    def __post_init__(self):
        _check_virasoro(self.p, self.pp, self.r, self.s)

    def canonical(self) -> "VirasoroCharSpec":
        """Representative of ``{(r, s), (p-r, p'-s)}`` with ``p'r - ps > 0``."""
        if self.pp * self.r - self.p * self.s > 0:
            return self
        return VirasoroCharSpec(self.p, self.pp, self.p - self.r, self.pp - self.s)

    @property
    def central_charge(self) -> Fraction:
        return central_charge_virasoro(self.p, self.pp)

    @property
    def conformal_weight(self) -> Fraction:
        return conformal_weight_virasoro(self.p, self.pp, self.r, self.s)

    @property
    def exponent(self) -> Fraction:
        return virasoro_exponent(self.p, self.pp, self.r, self.s)

    def expand(self, order) -> QSeries:
        return virasoro_char(self.p, self.pp, self.r, self.s, order)

    def to_json(self) -> dict:
        return {"p": self.p, "pp": self.pp, "r": self.r, "s": self.s}


@dataclass(frozen=True)
class VanishingClassification:
    vanishes: bool
    witness: tuple | int | None = None
    # Virasoro only: whether p p' = 6 m^2 (necessary for vanishing)
    necessary_condition: bool | None = None

    def __post_init__(self):
        if self.vanishes != (self.witness is not None):
            raise ValueError("witness must be present exactly when the form vanishes")


@dataclass
class IdentityReport:
    """Outcome of an almost-linear-dependence check."""

    holds: bool
    constant: Fraction
    reading: str | None
    indices: list
    signs: list
    residual: QSeries
    readings_tried: dict = field(default_factory=dict)
    brute_force_coefficients: list | None = None

    def to_json(self) -> dict:
        coeffs = self.brute_force_coefficients
        return {
            "holds": self.holds,
            "constant": str(self.constant),
            "reading": self.reading,
            "indices": [list(x) if isinstance(x, tuple) else x for x in self.indices],
            "signs": self.signs,
            "residual": self.residual.to_json(),
            "readings_tried": self.readings_tried,
            "brute_force_coefficients": None if coeffs is None else [str(c) for c in coeffs],
        }


# -- central charges and conformal weights ------------------------------------


def central_charge_affine(k: int) -> Fraction:
    _check_affine(k)
    return Fraction(3 * k, k + 2)


def conformal_weight_affine(k: int, i: int) -> Fraction:
    _check_affine(k, i)
    return Fraction(i * i - 1, 4 * (k + 2))


def affine_exponent(k: int, i: int) -> Fraction:
    """Leading exponent ``h_{k,i} - c_k/24 = i^2/(4(k+2)) - 1/8``."""
    _check_affine(k, i)
    return Fraction(i * i, 4 * (k + 2)) - Fraction(1, 8)


def central_charge_virasoro(p: int, pp: int) -> Fraction:
    _check_virasoro(p, pp)
    return 1 - Fraction(6 * (p - pp) ** 2, p * pp)


def conformal_weight_virasoro(p: int, pp: int, r: int, s: int) -> Fraction:
    _check_virasoro(p, pp, r, s)
    return Fraction((pp * r - p * s) ** 2 - (p - pp) ** 2, 4 * p * pp)


def virasoro_exponent(p: int, pp: int, r: int, s: int) -> Fraction:
    _check_virasoro(p, pp, r, s)
    return Fraction((pp * r - p * s) ** 2, 4 * p * pp) - Fraction(1, 24)


# -- expansions ----------------------------------------------------------------


def _max_abs_below(bound: Fraction) -> int:
    """Largest integer ``B >= -1`` with ``B^2 < bound`` (``-1`` if none)."""
    if bound <= 0:
        return -1
    return isqrt(ceil(bound) - 1)


def _arithmetic_square_sum(residue: int, modulus: int, den: int, order: Fraction, weight):
    """``sum weight(n) q^(n^2/den)`` over ``n = residue (mod modulus)`` with exponent < order.

    Returns ``{n^2: coeff}`` keyed by the exponent numerator over ``den``.
    """
    bound = _max_abs_below(order * den)
    out = {}
    if bound < 0:
        return out
    lo = -((bound + residue) // modulus)
    hi = (bound - residue) // modulus
    for m in range(lo, hi + 1):
        n = residue + modulus * m
        c = weight(n)
        if c:
            out[n * n] = out.get(n * n, 0) + c
    return out


def _theta(k: int, i: int, order) -> QSeries:
    # any integer index: theta_{k,0} = 0 and theta_{k,2(k+2)-i} = -theta_{k,i}
    kk = k + 2
    order = Fraction(order)
    den = lcm(4 * kk, order.denominator)
    scale = den // (4 * kk)
    raw = _arithmetic_square_sum(i, 2 * kk, 4 * kk, order, lambda n: n)
    return QSeries(den, {e * scale: c for e, c in raw.items()}, order)


def affine_theta(k: int, i: int, order) -> QSeries:
    """Theta numerator ``sum_m (i + 2m(k+2)) q^((i+2m(k+2))^2 / 4(k+2))``."""
    _check_affine(k, i)
    return _theta(k, i, order)


def affine_char(k: int, i: int, order) -> QSeries:
    """``theta_{k,i} / eta^3`` to the given absolute order (leading coefficient ``i``)."""
    _check_affine(k, i)
    return _affine_char_any(k, i, Fraction(order))


def _affine_char_any(k: int, i: int, order: Fraction) -> QSeries:
    num = _theta(k, i, order + Fraction(1, 8))
    return divide_by_eta_power(num, 3, order)


def virasoro_char(p: int, pp: int, r: int, s: int, order) -> QSeries:
    """Minimal-model character ``ch^{r,s}_{p,p'}`` (leading coefficient 1)."""
    _check_virasoro(p, pp, r, s)
    order = Fraction(order)
    num_order = order + Fraction(1, 24)
    base = 4 * p * pp
    den = lcm(base, num_order.denominator, 24)
    scale = den // base
    plus = _arithmetic_square_sum(pp * r - p * s, 2 * p * pp, base, num_order, lambda n: 1)
    minus = _arithmetic_square_sum(pp * r + p * s, 2 * p * pp, base, num_order, lambda n: 1)
    terms = dict(plus)
    for e, c in minus.items():
        terms[e] = terms.get(e, 0) - c
    num = QSeries(den, {e * scale: c for e, c in terms.items()}, num_order)
    return divide_by_eta_power(num, 1, order)


def affine_basis_specs(k: int) -> list:
    _check_affine(k)
    return [AffineCharSpec(k, i) for i in range(1, k + 2)]


def virasoro_basis_specs(p: int, pp: int) -> list:
    """One representative per character, canonicalized to ``p'r - ps > 0``."""
    _check_virasoro(p, pp)
    return [VirasoroCharSpec(p, pp, r, s)
            for r in range(1, p) for s in range(1, pp) if pp * r - p * s > 0]


# -- vanishing classification ------------------------------------------------------


def classify_vanishing_affine(k: int) -> VanishingClassification:
    """``F`` vanishes iff ``k = 2 i^2 - 2``; the witness is ``i``."""
    _check_affine(k)
    if (k + 2) % 2:
        return VanishingClassification(False)
    i = _perfect_square_root((k + 2) // 2)
    return VanishingClassification(i is not None, i)


def _shape(a: int, b: int):
    # (pt, ppt) with a = 2 pt^2, b = 3 ppt^2, or None
    if a % 2 or b % 3:
        return None
    x, y = _perfect_square_root(a // 2), _perfect_square_root(b // 3)
    if x is None or y is None:
        return None
    return x, y


def classify_vanishing_virasoro(p: int, pp: int) -> VanishingClassification:
    """``F`` vanishes iff ``{p, p'} = {2 pt^2, 3 ppt^2}``; the witness is ``(pt, ppt)``."""
    _check_virasoro(p, pp)
    necessary = (p * pp) % 6 == 0 and _perfect_square_root(p * pp // 6) is not None
    witness = _shape(p, pp) or _shape(pp, p)
    return VanishingClassification(witness is not None, witness, necessary)


def integral_power_modules(family: str, *params, check_terms: int = 12) -> list:
    """Modules whose characters carry only nonnegative integral powers of q.

    ``integral_power_modules("affine", k)`` returns the indices ``i(2j+1)``,
    ``j = 0..i-1``, for ``k = 2i^2 - 2``.
    ``integral_power_modules("virasoro", p, pp)`` returns ``(r' pt, s' ppt)``
    with ``r'`` odd and ``s' = 1 (mod 3)`` for ``(p, p') = (2 pt^2, 3 ppt^2)``.
    """
    if family == "affine":
        (k,) = params
        cls = classify_vanishing_affine(k)
        if not cls.vanishes:
            raise NotAVanishingCase(f"level {k} is not of the form 2i^2 - 2")
        i = cls.witness
        out = [i * (2 * j + 1) for j in range(i)]
        expand = [lambda m=m: affine_char(k, m, check_terms) for m in out]
    elif family == "virasoro":
        p, pp = params
        _check_virasoro(p, pp)
        shape = _shape(p, pp)
        if shape is None:
            raise NotAVanishingCase(f"({p}, {pp}) is not of the form (2 pt^2, 3 ppt^2)")
        pt, ppt = shape
        out = [(rp * pt, sp * ppt)
               for rp in range(1, 2 * pt, 2)
               for sp in range(1, 3 * ppt, 3)]
        expand = [lambda r=r, s=s: virasoro_char(p, pp, r, s, check_terms) for r, s in out]
    else:
        raise InvalidSpec(f"unknown family {family!r}")
    for label, fn in zip(out, expand):
        ch = fn()
        for e, _ in ch.items():
            if e.denominator != 1 or e < 0:
                raise AssertionError(f"module {label} has a non-integral power q^{e}")
    return out


# -- linear relations ----------------------------------------------------------------


def _coefficient_rows(series: list, order: Fraction | None = None):
    den = lcm(*(s.lattice_den for s in series))
    common = min(s.order for s in series)
    if order is not None:
        common = min(common, Fraction(order))
    exps = sorted({e for s in series for e, _ in s.items() if e < common})
    return [[s[e] for s in series] for e in exps], den


def character_rank(series: list, order=None) -> int:
    """Rank over Q of the coefficient matrix below the common order."""
    rows, _ = _coefficient_rows(series, order)
    return rank(rows) if rows else 0


def solve_almost_linear_dependence(series: list, order=None):
    """Find ``(coeffs, constant)`` with ``sum coeffs[i] * series[i] = constant``.

    Pure linear algebra on the coefficient matrix (no knowledge of the
    expected identity). Returns ``None`` unless the solution space is a single
    line with nonzero constant. The vector is scaled so the constant is 1.
    """
    common = min(s.order for s in series)
    if order is not None:
        common = min(common, Fraction(order))
    one = QSeries.constant(1, common)
    rows, _ = _coefficient_rows(list(series) + [one], common)
    null = nullspace(rows, len(series) + 1)
    if len(null) != 1 or not null[0][-1]:
        return None
    v = null[0]
    c = -v[-1]
    return [x / c for x in v[:-1]], Fraction(1)


def _signed_sum(series, signs):
    total = None
    for ch, sg in zip(series, signs):
        term = ch if sg == 1 else -ch
        total = term if total is None else total + term
    return total


def _constant_residual(total: QSeries, constant) -> QSeries:
    return total - QSeries.constant(constant, total.order)


def verify_affine_identity(i: int, order=60) -> IdentityReport:
    """Check ``sum_{j<i} (-1)^j ch_{2i^2-2, m_j} = i``.

    Both index readings ``m_j = i(2j+1)`` and ``m_j = j(2i+1)`` are expanded
    (indices outside ``1..k+1`` use the theta formula verbatim); the first
    reading that holds is reported.
    """
    if not isinstance(i, int) or i < 2:
        raise InvalidSpec(f"need i >= 2 (level 2i^2-2 >= 6), got {i!r}")
    k = 2 * i * i - 2
    order = Fraction(order)
    readings = {
        "i(2j+1)": [i * (2 * j + 1) for j in range(i)],
        "j(2i+1)": [j * (2 * i + 1) for j in range(i)],
    }
    signs = [(-1) ** j for j in range(i)]
    tried = {}
    chosen = None
    for name, idx in readings.items():
        chars = [_affine_char_any(k, m, order) for m in idx]
        residual = _constant_residual(_signed_sum(chars, signs), i)
        tried[name] = residual.is_zero()
        if tried[name] and chosen is None:
            chosen = (name, idx, chars, residual)
        if name == AFFINE_IDENTITY_READING:
            fallback = (name, idx, chars, residual)
    name, idx, chars, residual = chosen or fallback
    solved = solve_almost_linear_dependence(chars) if chosen else None
    report = IdentityReport(
        holds=chosen is not None,
        constant=Fraction(i),
        reading=name if chosen else None,
        indices=idx,
        signs=signs,
        residual=residual,
        readings_tried=tried,
        brute_force_coefficients=None if solved is None else [x * i for x in solved[0]],
    )
    if not report.holds:
        e, c = residual.leading_term()
        raise IdentityFails(f"affine identity for i={i} fails at q^{e}", (e, c))
    return report


def _sign_rules(rp: int, sp: int, pt: int, ppt: int) -> dict:
    out = {}
    stmt = 3 * rp * pt - 2 * sp * ppt + 1
    out["statement"] = None if stmt % 2 else (-1) ** ((stmt // 2) % 2)
    proof = 3 * rp * ppt - 2 * sp * pt + 1
    out["proof"] = None if proof % 2 else (-1) ** ((proof // 2) % 2)
    # match the Euler term q^((6l+1)^2/24) carrying the leading exponent
    x = 3 * rp * ppt - 2 * sp * pt
    u = x if x % 6 == 1 else -x
    out["pentagonal"] = (-1) ** (((u - 1) // 6) % 2) if u % 6 == 1 else None
    return out


def verify_virasoro_identity(pt: int, ppt: int, order=60) -> IdentityReport:
    """Check the signed sum over ``M(2 pt^2, 3 ppt^2)`` integral characters equals 1.

    Three sign rules are tried: ``statement`` ``(3r'pt - 2s'ppt + 1)/2``,
    ``proof`` ``(3r'ppt - 2s'pt + 1)/2`` and ``pentagonal`` (the sign of the
    matching term in Euler's expansion of eta). A rule whose exponent is not
    an integer for some module is recorded as inapplicable (``None``).
    """
    p, pp = 2 * pt * pt, 3 * ppt * ppt
    if gcd(p, pp) != 1:
        raise NonCoprimeSpec(f"(2*{pt}^2, 3*{ppt}^2) = ({p}, {pp}) are not coprime")
    order = Fraction(order)
    labels = [(rp, sp) for rp in range(1, 2 * pt, 2) for sp in range(1, 3 * ppt, 3)]
    idx = [(rp * pt, sp * ppt) for rp, sp in labels]
    chars = [virasoro_char(p, pp, r, s, order) for r, s in idx]
    rules = [_sign_rules(rp, sp, pt, ppt) for rp, sp in labels]
    tried = {}
    chosen = None
    for name in ("statement", "proof", "pentagonal"):
        signs = [r[name] for r in rules]
        if any(sg is None for sg in signs):
            tried[name] = None
            continue
        residual = _constant_residual(_signed_sum(chars, signs), 1)
        tried[name] = residual.is_zero()
        if tried[name] and (chosen is None or name == VIRASORO_SIGN_RULE):
            chosen = (name, signs, residual)
        if name == VIRASORO_SIGN_RULE:
            fallback = (name, signs, residual)
    name, signs, residual = chosen or fallback
    solved = solve_almost_linear_dependence(chars)
    report = IdentityReport(
        holds=chosen is not None,
        constant=Fraction(1),
        reading=name if chosen else None,
        indices=idx,
        signs=signs,
        residual=residual,
        readings_tried=tried,
        brute_force_coefficients=None if solved is None else solved[0],
    )
    if not report.holds:
        e, c = residual.leading_term()
        raise IdentityFails(f"Virasoro identity for ({pt}, {ppt}) fails at q^{e}", (e, c))
    return report


def verify_jacobi_rearrangement(i: int, order=50) -> bool:
    """Compare the mod-2i split of Jacobi's identity with ``prod (1-q^n)^3``.

    ``order`` bounds the integral exponents compared. Raises
    :class:`IdentityFails` at the first mismatch.
    """
    if not isinstance(i, int) or i < 2:
        raise InvalidSpec(f"the rearrangement needs i >= 2, got {i!r}")
    count = int(ceil(Fraction(order)))
    rhs = {}

    def put(e, c):
        if e < count:
            rhs[e] = rhs.get(e, 0) + c

    for j in range(i):
        m = 0
        while (2 * m * i + j) * (2 * m * i + j + 1) // 2 < count:
            put((2 * m * i + j) * (2 * m * i + j + 1) // 2, (4 * m * i + 2 * j + 1) * (-1) ** j)
            m += 1
        m = 1
        while (2 * m * i - j) * (2 * m * i - j - 1) // 2 < count:
            put((2 * m * i - j) * (2 * m * i - j - 1) // 2, (4 * m * i - 2 * j - 1) * (-1) ** (j + 1))
            m += 1
    lhs = euler_product_power(3, count)
    for e in range(count):
        if lhs[e] != rhs.get(e, 0):
            raise IdentityFails(f"rearrangement for i={i} fails at q^{e}", (e, rhs.get(e, 0)))
    return True
