"""Truncated q-series with exact rational coefficients.

A :class:`QSeries` stores finitely many terms ``c * q**(n/N)`` on the lattice
``(1/N)Z`` together with an order ``O``: every coefficient at an exponent
below ``O`` is known (absent means zero), nothing is claimed at or above it.

Coefficients are held as :class:`gmpy2.mpq`; they compare equal to, and hash
like, :class:`fractions.Fraction`, so callers can use either.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, gcd, lcm
from numbers import Rational

from flint import fmpq_poly
from gmpy2 import mpq

from .errors import InversionOfZero, ZeroSeries

__all__ = [
    "as_fraction",
    "QSeries",
    "align",
    "add",
    "mul",
    "neg",
    "invert",
    "ramanujan_derive",
    "eta_power",
    "leading_term",
    "euler_product_power",
    "divide_by_eta_power",
    "first_difference",
]


def as_fraction(x) -> Fraction:
    """Exact ``Fraction`` with plain ``int`` parts (gmpy2 values included)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_frac = as_fraction


def _scalar(x):
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq()):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return mpq(Fraction(x))
    raise TypeError(f"expected an exact rational coefficient, got {type(x).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) or type(x) is type(mpq())


class QSeries:
    """Immutable truncated series ``sum c_n q^(n/N) + O(q^order)``."""

    __slots__ = ("_den", "_terms", "_prec", "_sorted")

    def __init__(self, lattice_den: int, terms, order):
        if not isinstance(lattice_den, int) or lattice_den < 1:
            raise ValueError("lattice_den must be a positive integer")
        order = _frac(order)
        if lattice_den % order.denominator:
            raise ValueError(f"order {order} is not on the lattice 1/{lattice_den}")
        prec = int(order * lattice_den)
        items = terms.items() if hasattr(terms, "items") else terms
        clean = {}
        for n, c in items:
            n = int(n)
            if n >= prec:
                continue
            c = _scalar(c)
            if c:
                clean[n] = clean.get(n, 0) + c
        self._den = lattice_den
        self._terms = {n: c for n, c in clean.items() if c}
        self._prec = prec
        self._sorted = None

    @classmethod
    def _raw(cls, den: int, terms: dict, prec: int) -> "QSeries":
        # trusted constructor: terms already reduced, nonzero, and below prec
        obj = object.__new__(cls)
        obj._den = den
        obj._terms = terms
        obj._prec = prec
        obj._sorted = None
        return obj

    @classmethod
    def from_exponents(cls, mapping, order) -> "QSeries":
        """Build from ``{exponent: coefficient}`` with rational exponents."""
        exps = {_frac(e): c for e, c in mapping.items()}
        order = _frac(order)
        den = lcm(order.denominator, *(e.denominator for e in exps)) if exps else order.denominator
        return cls(den, {int(e * den): c for e, c in exps.items()}, order)

    @classmethod
    def constant(cls, c, order=1) -> "QSeries":
        return cls.from_exponents({0: c}, order)

    @classmethod
    def monomial(cls, coeff, exponent, order) -> "QSeries":
        return cls.from_exponents({exponent: coeff}, order)

    @classmethod
    def zero(cls, order, lattice_den: int = 1) -> "QSeries":
        order = _frac(order)
        return cls(lcm(lattice_den, order.denominator), {}, order)

    # -- basic accessors -------------------------------------------------

    @property
    def lattice_den(self) -> int:
        return self._den

    @property
    def order(self) -> Fraction:
        return Fraction(self._prec, self._den)

    @property
    def terms(self) -> dict:
        """Copy of the ``{numerator: coefficient}`` map."""
        return dict(self._terms)

    def _items(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self._terms.items())
        return self._sorted

    def items(self):
        """Yield ``(exponent, coefficient)`` pairs in increasing exponent."""
        for n, c in self._items():
            yield Fraction(n, self._den), c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        """True when every coefficient below the order vanishes."""
        return not self._terms

    def __getitem__(self, exponent):
        e = _frac(exponent)
        if e >= self.order:
            raise IndexError(f"coefficient at q^{e} is beyond the order {self.order}")
        n = e * self._den
        if n.denominator != 1:
            return mpq(0)
        return self._terms.get(int(n), mpq(0))

    @property
    def valuation(self) -> Fraction:
        """Leading exponent, or the order for a series that is zero to order."""
        if not self._terms:
            return self.order
        return Fraction(self._items()[0][0], self._den)

    def _val_num(self) -> int:
        return self._items()[0][0] if self._terms else self._prec

    def leading_term(self):
        return leading_term(self)

    # -- lattice handling -------------------------------------------------

    def rescale(self, lattice_den: int) -> "QSeries":
        if lattice_den == self._den:
            return self
        if lattice_den % self._den:
            raise ValueError(f"cannot move lattice 1/{self._den} to 1/{lattice_den}")
        f = lattice_den // self._den
        return QSeries._raw(lattice_den, {n * f: c for n, c in self._terms.items()}, self._prec * f)

    def reduced(self) -> "QSeries":
        """Same series on the coarsest lattice that carries it."""
        g = gcd(self._den, self._prec, *self._terms)
        if g == 1:
            return self
        return QSeries._raw(self._den // g, {n // g: c for n, c in self._terms.items()}, self._prec // g)

    def truncate(self, order) -> "QSeries":
        order = min(_frac(order), self.order)
        den = lcm(self._den, order.denominator)
        s = self.rescale(den)
        prec = int(order * den)
        return QSeries._raw(den, {n: c for n, c in s._terms.items() if n < prec}, prec)

    def shift(self, exponent) -> "QSeries":
        """Multiply by ``q**exponent`` (exact, the order moves along)."""
        e = _frac(exponent)
        den = lcm(self._den, e.denominator)
        s = self.rescale(den)
        d = int(e * den)
        return QSeries._raw(den, {n + d: c for n, c in s._terms.items()}, s._prec + d)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return neg(self)

    def __pos__(self) -> "QSeries":
        return self

    def __add__(self, other):
        if _is_scalar(other):
            other = QSeries.constant(other, self.order if self.order > 0 else 1)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            other = QSeries.constant(other, self.order if self.order > 0 else 1)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other):
        return neg(self).__add__(other)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            other = _scalar(other)
            if not other:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(1 / other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return mul(self, invert(other))

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return invert(self).scale(other)
        return NotImplemented

    def __pow__(self, r: int) -> "QSeries":
        if not isinstance(r, int):
            return NotImplemented
        base = self if r >= 0 else invert(self)
        r = abs(r)
        result = None
        while r:
            if r & 1:
                result = base if result is None else mul(result, base)
            r >>= 1
            if r:
                base = mul(base, base)
        if result is None:
            return QSeries.constant(1, max(self.order - self.valuation, Fraction(1)))
        return result

    def scale(self, c) -> "QSeries":
        c = _scalar(c)
        if not c:
            return QSeries._raw(self._den, {}, self._prec)
        return QSeries._raw(self._den, {n: v * c for n, v in self._terms.items()}, self._prec)

    def derive(self, s: int = 1) -> "QSeries":
        return ramanujan_derive(self, s)

    def normalized(self) -> "QSeries":
        """Scale so that the leading coefficient is 1."""
        _, c = leading_term(self)
        return self.scale(1 / c)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        a, b = align(self, other)
        return a._terms == b._terms

    def __hash__(self):
        r = self.reduced()
        return hash((r._den, r._prec, frozenset(r._terms.items())))

    def agrees_with(self, other: "QSeries", order=None) -> bool:
        """Coefficient-wise equality below ``order`` (default: the common order)."""
        return first_difference(self, other, order) is None

    # -- presentation -------------------------------------------------------

    def __repr__(self) -> str:
        return f"QSeries(lattice_den={self._den}, order={self.order}, nterms={len(self._terms)})"

    def __str__(self) -> str:
        return self.format(8)

    def format(self, max_terms: int = 8) -> str:
        parts = []
        for k, (e, c) in enumerate(self.items()):
            if k == max_terms:
                parts.append("...")
                break
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            elif e.denominator == 1 and e > 0:
                mono = f"q^{e}"
            else:
                mono = f"q^({e})"
            coeff = as_fraction(c)
            if mono and abs(coeff) == 1:
                body = mono
            elif mono:
                body = f"{abs(coeff)}*{mono}"
            else:
                body = str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            parts.append(f"{sign} {body}" if parts else ("-" + body if coeff < 0 else body))
        o = self.order
        parts.append(f"+ O(q^{o})" if o.denominator == 1 else f"+ O(q^({o}))")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "lattice_den": self._den,
            "order": str(self.order),
            "terms": [[n, str(as_fraction(c))] for n, c in self._items()],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "QSeries":
        return cls(
            int(payload["lattice_den"]),
            [(int(n), Fraction(c)) for n, c in payload["terms"]],
            Fraction(payload["order"]),
        )


def first_difference(a: QSeries, b: QSeries, order=None):
    """Smallest exponent below the common order where ``a`` and ``b`` differ, or None."""
    a, b = align(a, b)
    prec = min(a._prec, b._prec)
    if order is not None:
        o = _frac(order)
        if o > Fraction(prec, a._den):
            raise ValueError(f"requested order {o} exceeds the known order {Fraction(prec, a._den)}")
        prec = min(prec, ceil(o * a._den))
    bad = [n for n in set(a._terms) | set(b._terms)
           if n < prec and a._terms.get(n, 0) != b._terms.get(n, 0)]
    if not bad:
        return None
    n = min(bad)
    return Fraction(n, a._den)


def align(a: QSeries, b: QSeries):
    """Put both series on the lattice ``lcm(a.N, b.N)``."""
    if a._den == b._den:
        return a, b
    den = lcm(a._den, b._den)
    return a.rescale(den), b.rescale(den)


def add(a: QSeries, b: QSeries) -> QSeries:
    a, b = align(a, b)
    prec = min(a._prec, b._prec)
    out = {n: c for n, c in a._terms.items() if n < prec}
    for n, c in b._terms.items():
        if n < prec:
            v = out.get(n, 0) + c
            if v:
                out[n] = v
            else:
                out.pop(n, None)
    return QSeries._raw(a._den, out, prec)


def neg(a: QSeries) -> QSeries:
    return QSeries._raw(a._den, {n: -c for n, c in a._terms.items()}, a._prec)


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Product; order is ``min(Oa + val(b), Ob + val(a))``.

    ``val`` is the leading exponent, or the order for a series that is zero
    to order, so two empty factors give ``Oa + Ob``.
    """
    a, b = align(a, b)
    prec = min(a._prec + b._val_num(), b._prec + a._val_num())
    if not a._terms or not b._terms:
        return QSeries._raw(a._den, {}, prec)
    at, bt = a._items(), b._items()
    if len(at) * len(bt) > _DENSE_THRESHOLD:
        return QSeries._raw(a._den, _mul_dense(at, bt, prec), prec)
    return QSeries._raw(a._den, _mul_sparse(at, bt, prec), prec)


# products with more coefficient pairs than this go through flint
_DENSE_THRESHOLD = 400


def _mul_sparse(at, bt, prec) -> dict:
    if len(at) > len(bt):
        at, bt = bt, at
    out = {}
    get = out.get
    for na, ca in at:
        cut = prec - na
        for nb, cb in bt:
            if nb >= cut:
                break
            n = na + nb
            out[n] = get(n, 0) + ca * cb
    return {n: c for n, c in out.items() if c}


def _to_fmpq_poly(items, n0: int, step: int, length: int):
    # integer numerators over a common denominator, on x = q^(step/N)
    den = lcm(*(int(c.denominator) for _, c in items))
    coeffs = [0] * min(length, (items[-1][0] - n0) // step + 1)
    for n, c in items:
        t = (n - n0) // step
        if t >= length:
            break
        coeffs[t] = int(c.numerator) * (den // int(c.denominator))
    return fmpq_poly(coeffs, den)


def _mul_dense(at, bt, prec) -> dict:
    na0, nb0 = at[0][0], bt[0][0]
    step = 0
    for n, _ in at:
        step = gcd(step, n - na0)
    for n, _ in bt:
        step = gcd(step, n - nb0)
    step = step or 1
    base = na0 + nb0
    length = -(-(prec - base) // step)
    if length <= 0:
        return {}
    prod = _to_fmpq_poly(at, na0, step, length) * _to_fmpq_poly(bt, nb0, step, length)
    den = int(prod.denom())
    out = {}
    for t, c in enumerate(prod.numer().coeffs()[:length]):
        if c:
            out[base + step * t] = mpq(int(c), den)
    return out


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; the order contracts to ``Oa - 2 * lead(a)``."""
    if not a._terms:
        raise InversionOfZero("cannot invert a series with no stored terms")
    items = a._items()
    n0, c0 = items[0]
    prec = a._prec - 2 * n0
    rel = [(n - n0, c) for n, c in items[1:]]
    step = 0
    for d, _ in rel:
        step = gcd(step, d)
    inv0 = 1 / c0
    if step == 0:
        # monomial: exact inverse
        return QSeries._raw(a._den, {-n0: inv0} if -n0 < prec else {}, prec)
    rel = [(d // step, c) for d, c in rel]
    count = -(-(prec + n0) // step)  # t with -n0 + step*t < prec
    b = [mpq(0)] * max(count, 0)
    if count > 0:
        b[0] = inv0
    for t in range(1, count):
        acc = mpq(0)
        for d, c in rel:
            if d > t:
                break
            bt = b[t - d]
            if bt:
                acc += c * bt
        b[t] = -acc * inv0
    return QSeries._raw(a._den, {-n0 + step * t: v for t, v in enumerate(b) if v}, prec)


def ramanujan_derive(a: QSeries, s: int = 1) -> QSeries:
    """Apply ``q d/dq`` ``s`` times: the coefficient at ``q^e`` gains a factor ``e^s``."""
    if s < 0:
        raise ValueError("derivative order must be nonnegative")
    if s == 0:
        return a
    den = a._den
    out = {}
    for n, c in a._terms.items():
        if n:
            out[n] = c * mpq(n, den) ** s
    return QSeries._raw(den, out, a._prec)


def leading_term(a: QSeries):
    """``(exponent, coefficient)`` of the lowest stored term."""
    if not a._terms:
        raise ZeroSeries(f"series is zero to order {a.order}")
    n, c = a._items()[0]
    return Fraction(n, a._den), c


def euler_product_power(r: int, count: int) -> list:
    """Integer coefficients of ``prod_{n>=1} (1 - q^n)^r`` up to ``q^(count-1)``."""
    if count <= 0:
        return []
    p = [0] * count
    p[0] = 1
    for n in range(1, count):
        for i in range(count - 1, n - 1, -1):
            p[i] -= p[i - n]
    if r == 1:
        return p
    # power of a series with unit constant term (J.C.P. Miller recurrence)
    g = [0] * count
    g[0] = 1
    for n in range(1, count):
        acc = 0
        for k in range(1, n + 1):
            fk = p[k]
            if fk:
                acc += ((r + 1) * k - n) * fk * g[n - k]
        q, rem = divmod(acc, n)
        assert rem == 0
        g[n] = q
    return g


def eta_power(r: int, order) -> QSeries:
    """``eta(q)**r = q^(r/24) prod (1 - q^n)^r`` expanded below ``order``."""
    order = _frac(order)
    if order <= Fraction(r, 24):
        raise ValueError(f"order must exceed the leading exponent {Fraction(r, 24)}")
    den = lcm(24, order.denominator)
    count = ceil(order - Fraction(r, 24))
    coeffs = euler_product_power(r, count) if r else [1] + [0] * (count - 1)
    shift = r * den // 24
    step = den
    return QSeries(den, {shift + step * n: c for n, c in enumerate(coeffs) if c}, order)


def divide_by_eta_power(num: QSeries, r: int, order) -> QSeries:
    """``num / eta**r`` delivered below ``order``.

    ``num`` must be known below ``order + r/24``.
    """
    order = _frac(order)
    if num.is_zero():
        return QSeries.zero(order, num.lattice_den)
    eta_order = order + Fraction(2 * r, 24) - num.valuation
    inv = invert(eta_power(r, max(eta_order, Fraction(r + 1, 24))))
    return mul(num, inv).truncate(order)
