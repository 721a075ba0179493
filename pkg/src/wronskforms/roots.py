"""Certified real roots of polynomials in ``j`` via Sturm sequences."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction

from .errors import NoSignChange, NotSquarefree, ZeroPolynomial
from .modforms import JPolynomial
from .qseries import as_fraction

__all__ = [
    "RootReport",
    "is_squarefree",
    "squarefree_part",
    "sturm_sequence",
    "count_roots",
    "root_bound",
    "isolate_real_roots",
    "refine_root",
    "check_zero_location",
]

J_INTERVAL = (Fraction(0), Fraction(1728))


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _coeffs(g) -> list:
    if isinstance(g, JPolynomial):
        return list(g.coeffs)
    return _trim([as_fraction(x) for x in g])


def _eval(c: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def _gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _divmod(a, b)[1]
    return [x / a[-1] for x in a] if a else a


def _derivative(c: list) -> list:
    return [k * x for k, x in enumerate(c)][1:]


def is_squarefree(g) -> bool:
    """True iff ``gcd(g, g')`` is constant."""
    c = _coeffs(g)
    if not c:
        raise ZeroPolynomial("the zero polynomial has no well-defined roots")
    if len(c) <= 2:
        return True
    return len(_gcd(c, _derivative(c))) == 1


def squarefree_part(g) -> JPolynomial:
    c = _coeffs(g)
    if not c:
        raise ZeroPolynomial("the zero polynomial has no squarefree part")
    if len(c) <= 2:
        return JPolynomial(tuple(c))
    return JPolynomial(tuple(_divmod(c, _gcd(c, _derivative(c)))[0]))


def sturm_sequence(g) -> list:
    c = _coeffs(g)
    seq = [c, _derivative(c)]
    while seq[-1]:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _variations(seq: list, x: Fraction) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_roots(g, lo, hi, seq=None) -> int:
    """Distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq or sturm_sequence(g)
    return _variations(seq, as_fraction(lo)) - _variations(seq, as_fraction(hi))


def root_bound(g) -> Fraction:
    """Cauchy bound ``1 + max |a_i / a_n|``: every root lies strictly inside."""
    c = _coeffs(g)
    if not c:
        raise ZeroPolynomial("no root bound for the zero polynomial")
    lead = c[-1]
    return 1 + max((abs(a / lead) for a in c[:-1]), default=Fraction(0))


def isolate_real_roots(g) -> list:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one real root."""
    c = _coeffs(g)
    if not c:
        raise ZeroPolynomial("the zero polynomial has no isolated roots")
    if not is_squarefree(c):
        raise NotSquarefree("isolation needs a squarefree polynomial")
    if len(c) == 1:
        return []
    seq = sturm_sequence(c)
    b = root_bound(c)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(c, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            # keep the open end off a neighbouring root so refinement sees a sign change
            while _eval(c, lo) == 0:
                mid = (lo + hi) / 2
                if count_roots(c, mid, hi, seq):
                    lo = mid
                else:
                    hi = mid
                    if _eval(c, mid) == 0:
                        break
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def _round_sig(x: Fraction, digits: int) -> Decimal:
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def _show(c: list, x: Fraction, digits: int) -> str:
    # exact decimal roots are printed without padding zeros
    d = _round_sig(x, digits)
    if _eval(c, Fraction(d)) == 0:
        d = d.normalize()
    return format(d, "f")


def refine_root(g, interval, digits: int = 10) -> str:
    """Root in ``interval`` correctly rounded to ``digits`` significant digits."""
    c = _coeffs(g)
    lo, hi = (as_fraction(x) for x in interval)
    if _eval(c, hi) == 0:
        return _show(c, hi, digits)
    flo, fhi = _eval(c, lo), _eval(c, hi)
    if flo == 0 or (flo > 0) == (fhi > 0):
        raise NoSignChange(f"no sign change of the polynomial on ({lo}, {hi}]")
    while True:
        a, b = _round_sig(lo, digits), _round_sig(hi, digits)
        if a == b:
            return _show(c, hi, digits)
        mid = (lo + hi) / 2
        fm = _eval(c, mid)
        if fm == 0:
            return _show(c, mid, digits)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        # a root sitting exactly on a rounding tie never lets the endpoints agree
        if hi - lo < Fraction(1, 10 ** (digits + 40)):
            tie = (Fraction(a) + Fraction(b)) / 2
            if lo < tie <= hi and _eval(c, tie) == 0:
                return _show(c, tie, digits)


@dataclass
class RootReport:
    polynomial: JPolynomial
    is_squarefree: bool
    roots: list
    all_real: bool
    all_in_0_1728: bool
    kind: str = "evidence"

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "is_squarefree": self.is_squarefree,
            "roots": [{"interval": [str(lo), str(hi)], "approx": approx}
                      for (lo, hi), approx in self.roots],
            "all_real": self.all_real,
            "all_in_0_1728": self.all_in_0_1728,
            "kind": self.kind,
        }


def check_zero_location(g, digits: int = 10) -> RootReport:
    """Are the zeros simple, real, and inside ``[0, 1728]``?"""
    poly = g if isinstance(g, JPolynomial) else JPolynomial(tuple(g))
    if poly.is_zero():
        raise ZeroPolynomial("zero location is undefined for the zero polynomial")
    if poly.degree == 0:
        return RootReport(poly, True, [], True, True)
    sf = is_squarefree(poly)
    core = poly if sf else squarefree_part(poly)
    intervals = isolate_real_roots(core)
    roots = [(iv, refine_root(core, iv, digits)) for iv in intervals]
    seq = sturm_sequence(core)
    lo, hi = J_INTERVAL
    inside = count_roots(core, lo, hi, seq) + (1 if _eval(list(core.coeffs), lo) == 0 else 0)
    all_real = sf and len(intervals) == poly.degree
    return RootReport(poly, sf, roots, all_real, all_real and inside == poly.degree)
