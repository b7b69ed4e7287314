"""The valued field K = union of Q(t^(1/N)), with valuation nu = -ord_t.

Elements are ``s^shift * num(s) / den(s)`` with ``s = t^(1/N)``, ``num(0)`` and
``den(0)`` nonzero, ``den(0) = 1``, ``gcd(num, den) = 1`` and ``N`` minimal. That
normal form is unique, so equality is structural.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .semiring import NEG_INF

Coeffs = tuple[Fraction, ...]  # ascending powers of s


def _trim(p: Sequence[Fraction]) -> Coeffs:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: Coeffs, c: Fraction) -> Coeffs:
    return _trim([x * c for x in a])


def _pshift(a: Coeffs, k: int) -> Coeffs:
    return (Fraction(0),) * k + a if a else ()


def _pdivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            if y:
                a[i + d] -= c * y
        a = list(_trim(a))
    return _trim(q), tuple(a)


def _pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    # monic remainders keep the rational coefficients small
    while b:
        r = _pdivmod(a, b)[1]
        a, b = b, _pscale(r, 1 / r[-1]) if r else r
    return _pscale(a, 1 / a[-1]) if a else a


def _spread(a: Coeffs, m: int) -> Coeffs:
    """Substitute ``s -> s^m``."""
    if m == 1 or not a:
        return a
    out = [Fraction(0)] * ((len(a) - 1) * m + 1)
    for i, x in enumerate(a):
        out[i * m] = x
    return tuple(out)


def _low_order(a: Coeffs) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    raise ZeroDivisionError("zero polynomial has no order")


@dataclass(frozen=True)
class PuiseuxScalar:
    N: int
    shift: int
    num: Coeffs
    den: Coeffs

    @classmethod
    def make(cls, num: Sequence, den: Sequence = (1,), N: int = 1, shift: int = 0) -> "PuiseuxScalar":
        num = _trim([Fraction(x) for x in num])
        den = _trim([Fraction(x) for x in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ZERO
        k1, k2 = _low_order(num), _low_order(den)
        num, den, shift = num[k1:], den[k2:], shift + k1 - k2
        g = _pgcd(num, den) if len(num) > 1 and len(den) > 1 else ()
        if len(g) > 1:
            num, den = _pdivmod(num, g)[0], _pdivmod(den, g)[0]
        c = den[0]
        num, den = _pscale(num, 1 / c), _pscale(den, 1 / c)
        # minimal ramification
        exps = [i for i, x in enumerate(num) if x] + [i for i, x in enumerate(den) if x] + [shift, N]
        d = reduce(math.gcd, exps)
        if d > 1:
            num = tuple(num[i] for i in range(0, len(num), d))
            den = tuple(den[i] for i in range(0, len(den), d))
            N, shift = N // d, shift // d
        return cls(N, shift, num, den)

    @classmethod
    def rational(cls, q) -> "PuiseuxScalar":
        return cls.make([Fraction(q)])

    @classmethod
    def monomial(cls, c, order: Fraction) -> "PuiseuxScalar":
        """``c * t^order``."""
        order = Fraction(order)
        return cls.make([Fraction(c)], N=order.denominator, shift=order.numerator)

    @classmethod
    def parse(cls, text: str) -> "PuiseuxScalar":
        return parse_scalar(text)

    def is_zero(self) -> bool:
        return not self.num

    def _lift(self, N: int) -> tuple[int, Coeffs, Coeffs]:
        m = N // self.N
        return self.shift * m, _spread(self.num, m), _spread(self.den, m)

    def __add__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        N = math.lcm(self.N, other.N)
        k1, a, b = self._lift(N)
        k2, c, d = other._lift(N)
        k = min(k1, k2)
        num = _padd(_pmul(_pshift(a, k1 - k), d), _pmul(_pshift(c, k2 - k), b))
        return PuiseuxScalar.make(num, _pmul(b, d), N, k)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxScalar":
        return PuiseuxScalar(self.N, self.shift, _pscale(self.num, Fraction(-1)), self.den) if self.num else self

    def __sub__(self, other) -> "PuiseuxScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "PuiseuxScalar":
        return _coerce(other) - self

    def __mul__(self, other) -> "PuiseuxScalar":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        N = math.lcm(self.N, other.N)
        k1, a, b = self._lift(N)
        k2, c, d = other._lift(N)
        return PuiseuxScalar.make(_pmul(a, c), _pmul(b, d), N, k1 + k2)

    __rmul__ = __mul__

    def inverse(self) -> "PuiseuxScalar":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return PuiseuxScalar.make(self.den, self.num, self.N, -self.shift)

    def __truediv__(self, other) -> "PuiseuxScalar":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "PuiseuxScalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "PuiseuxScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def order(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero has infinite order")
        return Fraction(self.shift, self.N)

    def leading_coefficient(self) -> Fraction:
        """Rational coefficient of the lowest power of ``t``."""
        return self.num[0] / self.den[0] if self.num else Fraction(0)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"PuiseuxScalar({format_scalar(self)!r})"


def _coerce(x) -> PuiseuxScalar:
    if isinstance(x, PuiseuxScalar):
        return x
    return PuiseuxScalar.rational(x)


ZERO = PuiseuxScalar(1, 0, (), (Fraction(1),))
ONE = PuiseuxScalar(1, 0, (Fraction(1),), (Fraction(1),))
T = PuiseuxScalar(1, 1, (Fraction(1),), (Fraction(1),))


def valuation(x: PuiseuxScalar):
    """``nu(x) = -ord_t(x)``; ``nu(0) = -inf``. ``O_K`` is ``{nu <= 0}``."""
    x = _coerce(x)
    return NEG_INF if x.is_zero() else -x.order()


def in_valuation_ring(x: PuiseuxScalar) -> bool:
    return valuation(x) <= 0


def is_ok_unit(x: PuiseuxScalar) -> bool:
    return not _coerce(x).is_zero() and valuation(x) == 0


# ---------------------------------------------------------------------------
# strings


def _tpow(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "t"
    return f"t^{e}" if e.denominator == 1 else f"t^({e})"


def _poly_str(p: Coeffs, N: int) -> str:
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = _tpow(Fraction(i, N))
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    s = "+".join(parts).replace("+-", "-")
    return s or "0"


def format_scalar(x: PuiseuxScalar) -> str:
    if x.is_zero():
        return "0"
    head = _tpow(Fraction(x.shift, x.N))
    num = _poly_str(x.num, x.N)
    body = num if len([c for c in x.num if c]) == 1 else f"({num})"
    if head:
        body = head if body == "1" else "-" + head if body == "-1" else f"{body}*{head}"
    if x.den != (Fraction(1),):
        body = f"{body}/({_poly_str(x.den, x.N)})"
    return body


def parse_scalar(text: str) -> PuiseuxScalar:
    """Parse a rational expression in ``t`` with rational exponents, e.g. ``"t^(1/2) + 3/(1-t)"``."""
    import sympy

    t = sympy.Symbol("t")
    s = sympy.Symbol("s", positive=True)
    expr = sympy.sympify(str(text).replace("^", "**"), locals={"t": t})
    if expr.free_symbols - {t}:
        raise ValueError(f"unexpected symbols in scalar {text!r}")
    for p in expr.atoms(sympy.Pow):
        if p.base == t and not p.exp.is_Rational:
            raise ValueError(f"irrational exponent in {text!r}")
    dens = [sympy.Rational(p.exp).q for p in expr.atoms(sympy.Pow) if p.base == t]
    N = reduce(math.lcm, dens, 1)
    sub = sympy.together(sympy.expand(expr.subs(t, s ** N)))
    num, den = sympy.fraction(sub)
    pn, pd = sympy.Poly(num, s), sympy.Poly(den, s)
    # Poly coefficients are descending; ours ascend
    a = [Fraction(int(c.p), int(c.q)) for c in reversed(pn.all_coeffs())]
    b = [Fraction(int(c.p), int(c.q)) for c in reversed(pd.all_coeffs())]
    return PuiseuxScalar.make(a, b, N)


def random_scalar(rng: random.Random, zero_prob: float = 0.05, max_N: int = 3) -> PuiseuxScalar:
    if rng.random() < zero_prob:
        return ZERO
    N = rng.randint(1, max_N)
    num = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    if not any(num):
        num[0] = Fraction(1)
    den = [Fraction(1)] + [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(0, 2))]
    return PuiseuxScalar.make(num, den, N, rng.randint(-4, 4))
