"""Level-one modular forms: Eisenstein series, Delta, j, and the
``f = Delta^t E4^delta E6^epsilon G(j)`` decomposition.

``E2`` is available from :func:`eisenstein` but is only quasimodular;
:func:`decompose` refuses weight 2 unless the input is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InsufficientOrder, NonzeroRemainder, WeightUnrepresentable
from .qseries import QSeries, as_fraction, divide_by_eta_power, eta_power, first_difference, invert, mul

__all__ = [
    "JPolynomial",
    "Decomposition",
    "bernoulli",
    "divisor_sigma",
    "eisenstein",
    "delta_form",
    "j_function",
    "weight_exponents",
    "decompose",
    "jacobi_moment",
    "e2m3",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    total = sum(comb(n + 1, k) * bernoulli(k) for k in range(n))
    return -total / (n + 1)


def divisor_sigma(power: int, count: int) -> list:
    """``[sigma_power(n) for n in range(count)]`` with ``sigma(0) = 0``."""
    sig = [0] * count
    for d in range(1, count):
        dp = d ** power
        for n in range(d, count, d):
            sig[n] += dp
    return sig


def eisenstein(weight: int, order) -> QSeries:
    """``E_w = 1 - (2w / B_w) sum sigma_{w-1}(n) q^n`` below ``q^order``.

    ``weight = 2`` gives the quasimodular ``E2``.
    """
    if weight < 2 or weight % 2:
        raise ValueError(f"Eisenstein weight must be even and >= 2, got {weight}")
    order = Fraction(order)
    count = -(-order.numerator // order.denominator)
    factor = -Fraction(2 * weight) / bernoulli(weight)
    sig = divisor_sigma(weight - 1, max(count, 1))
    terms = {0: 1}
    terms.update({n: factor * sig[n] for n in range(1, count)})
    return QSeries.from_exponents(terms, order)


def delta_form(order) -> QSeries:
    """``Delta = (E4^3 - E6^2) / 1728``, checked against ``eta^24``."""
    order = Fraction(order)
    e4, e6 = eisenstein(4, order), eisenstein(6, order)
    delta = (e4 ** 3 - e6 ** 2) / 1728
    if order > 1:
        diff = first_difference(delta, eta_power(24, order))
        if diff is not None:
            raise AssertionError(f"(E4^3 - E6^2)/1728 and eta^24 differ at q^{diff}")
    return delta


def j_function(order) -> QSeries:
    """``j = 1728 E4^3 / (E4^3 - E6^2) = q^-1 + 744 + ...`` below ``q^order``."""
    order = Fraction(order)
    inner = order + 2
    e4 = eisenstein(4, inner)
    delta = delta_form(inner)
    return mul(e4 ** 3, invert(delta)).truncate(order)


@dataclass(frozen=True)
class JPolynomial:
    """Polynomial in ``j`` with exact rational coefficients, ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        c = [as_fraction(x) for x in self.coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def of_series(self, j: QSeries) -> QSeries:
        acc = None
        for c in reversed(self.coeffs):
            acc = QSeries.constant(c, j.order) if acc is None else mul(acc, j) + c
        return acc if acc is not None else QSeries.zero(j.order)

    def derivative(self) -> "JPolynomial":
        return JPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("j" if k == 1 else f"j^{k}")
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}{'*' + mono if mono else ''}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"var": "j", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, payload: dict) -> "JPolynomial":
        return cls(tuple(Fraction(c) for c in payload["coeffs"]))


@dataclass(frozen=True)
class Decomposition:
    t: int
    delta: int
    epsilon: int
    g: JPolynomial

    def __post_init__(self):
        if not (0 <= self.delta <= 2 and 0 <= self.epsilon <= 1 and self.t >= 0):
            raise ValueError("need t >= 0, 0 <= delta <= 2, 0 <= epsilon <= 1")
        if self.g.degree > self.t:
            raise ValueError(f"deg G = {self.g.degree} exceeds t = {self.t}")

    @property
    def weight(self) -> int:
        return 12 * self.t + 4 * self.delta + 6 * self.epsilon

    def to_json(self) -> dict:
        return {"t": self.t, "delta": self.delta, "epsilon": self.epsilon, "G": self.g.to_json()}

    @classmethod
    def from_json(cls, payload: dict) -> "Decomposition":
        return cls(payload["t"], payload["delta"], payload["epsilon"], JPolynomial.from_json(payload["G"]))


def weight_exponents(weight: int):
    """The unique ``(t, delta, epsilon)`` with ``12t + 4 delta + 6 epsilon = weight``."""
    if weight >= 0 and weight % 2 == 0:
        for eps in (0, 1):
            for dl in (0, 1, 2):
                rest = weight - 4 * dl - 6 * eps
                if rest >= 0 and rest % 12 == 0:
                    return rest // 12, dl, eps
    raise WeightUnrepresentable(f"weight {weight} is not 12t + 4delta + 6epsilon")


def decompose(f: QSeries, weight: int) -> Decomposition:
    """Write ``f = Delta^t E4^delta E6^epsilon G(j)`` for a holomorphic form ``f``.

    ``G`` is extracted greedily: the most negative power ``q^-d`` of
    ``f / (Delta^t E4^delta E6^epsilon)`` is cancelled with a multiple of
    ``j^d`` until nothing is left below the tracked order.
    """
    for e, _ in f.items():
        if e < 0 or e.denominator != 1:
            raise NonzeroRemainder(f"f has a term q^{e}; not a level-one form expansion")
    if f.is_zero():
        try:
            t, dl, eps = weight_exponents(weight)
        except WeightUnrepresentable:
            t, dl, eps = 0, 0, 0
        return Decomposition(t, dl, eps, JPolynomial(()))
    t, dl, eps = weight_exponents(weight)
    order = f.order
    if order <= 2 * t:
        raise InsufficientOrder(f"f known below q^{order} cannot pin down G for t = {t}")
    base = QSeries.constant(1, order)
    if t:
        base = mul(base, delta_form(order) ** t)
    if dl:
        base = mul(base, eisenstein(4, order) ** dl)
    if eps:
        base = mul(base, eisenstein(6, order))
    h = mul(f, invert(base))
    if h.order <= 0:
        raise InsufficientOrder(f"f known below q^{order} cannot pin down G for t = {t}")
    j = j_function(h.order + t)
    powers = [QSeries.constant(1, h.order)]
    g = [Fraction(0)] * (t + 1)
    rem = h
    while not rem.is_zero():
        e, c = rem.leading_term()
        if e > 0:
            raise NonzeroRemainder(f"remainder starts at q^{e} after removing the polynomial part")
        d = -int(e)
        if d > t:
            raise NonzeroRemainder(f"pole of order {d} exceeds t = {t}")
        while len(powers) <= d:
            powers.append(mul(powers[-1], j))
        g[d] += as_fraction(c)
        rem = rem - powers[d].scale(c)
    return Decomposition(t, dl, eps, JPolynomial(tuple(g)))


def _jacobi_moment_numerator(m: int, order: Fraction) -> QSeries:
    terms = {}
    n = 0
    while Fraction((2 * n + 1) ** 2, 8) < order:
        odd = 2 * n + 1
        terms[odd * odd] = (-1) ** n * Fraction(odd ** (2 * m + 1), 8 ** m)
        n += 1
    return QSeries.from_exponents({Fraction(k, 8): v for k, v in terms.items()}, order)


def jacobi_moment(m: int, order) -> QSeries:
    """``m! [y^m] (eta(q e^y) / eta(q))^3`` below ``q^order``.

    Computed as ``sum (-1)^n (2n+1)^(2m+1) / 8^m q^((2n+1)^2/8)`` over ``eta^3``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    order = Fraction(order)
    num = _jacobi_moment_numerator(m, order + Fraction(1, 8))
    return divide_by_eta_power(num, 3, order)


def e2m3(m: int, order) -> QSeries:
    """:func:`jacobi_moment` scaled to leading coefficient 1."""
    return jacobi_moment(m, order).normalized()

