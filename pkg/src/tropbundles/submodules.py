"""Finitely generated O_K-submodules of K-algebras with monomial bases.

Canonical form is a reduced echelon basis over the valuation ring: columns are
normal-form monomials in descending degree-lex order; each pivot coefficient is
normalized to a pure power ``t^o``; entries above later pivots are truncated
below ``t^o`` (the residue system of ``K`` modulo ``t^o O_K``). Two submodules
are equal exactly when their canonical rows agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import InvariantError
from .puiseux import ONE, ZERO, PuiseuxScalar, format_scalar, parse_scalar, random_scalar, valuation

Exponent = tuple[int, ...]
Elem = tuple[tuple[Exponent, PuiseuxScalar], ...]


class UnsupportedAlgebra(ValueError):
    pass


def _deglex(e: Exponent):
    return (sum(e), e)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def pure_power(x: PuiseuxScalar) -> PuiseuxScalar:
    """``t^ord(x)``: the representative of ``x`` modulo ``O_K^x``."""
    return PuiseuxScalar.monomial(1, x.order())


def truncate_below(x: PuiseuxScalar, order: Fraction) -> PuiseuxScalar:
    """Terms of the expansion of ``x`` with ``t``-order strictly below ``order``."""
    if x.is_zero() or x.order() >= order:
        return ZERO
    n_terms = -(-(order * x.N - x.shift).numerator // (order * x.N - x.shift).denominator)
    series = []
    for i in range(n_terms):
        c = x.num[i] if i < len(x.num) else Fraction(0)
        for j in range(1, min(i, len(x.den) - 1) + 1):
            c -= x.den[j] * series[i - j]
        series.append(c)
    return PuiseuxScalar.make(series, (1,), x.N, x.shift)


@dataclass(frozen=True)
class NormalFormAlgebra:
    """``K[x_1..x_n]`` (optionally Laurent) modulo monomial rewrite rules ``lhs -> rhs``."""

    name: str
    variables: tuple[str, ...]
    laurent: tuple[bool, ...]
    rules: tuple[tuple[Exponent, Exponent], ...] = ()
    points: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def zero(self) -> Elem:
        return ()

    @property
    def one(self) -> Elem:
        return (((0,) * self.nvars, ONE),)

    def monomial_normal(self, e: Exponent) -> Exponent:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                if all(a >= b for a, b in zip(e, lhs)):
                    e = _add(_sub(e, lhs), rhs)
                    changed = True
        return e

    def elem(self, d: Mapping[Exponent, PuiseuxScalar] | Sequence) -> Elem:
        items = d.items() if isinstance(d, Mapping) else d
        out: dict[Exponent, PuiseuxScalar] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError("exponent length mismatch")
            if any(x < 0 and not lau for x, lau in zip(e, self.laurent)):
                raise ValueError(f"negative exponent in a polynomial variable: {e}")
            n = self.monomial_normal(e)
            out[n] = out.get(n, ZERO) + (c if isinstance(c, PuiseuxScalar) else PuiseuxScalar.rational(c))
        return tuple(sorted(((e, c) for e, c in out.items() if not c.is_zero()), key=lambda t: _deglex(t[0]),
                            reverse=True))

    def monomial(self, e: Exponent, c=ONE) -> Elem:
        return self.elem({tuple(e): c})

    def constant(self, c) -> Elem:
        return self.monomial((0,) * self.nvars, c if isinstance(c, PuiseuxScalar) else PuiseuxScalar.rational(c))

    def add(self, a: Elem, b: Elem) -> Elem:
        return self.elem(list(a) + list(b))

    def neg(self, a: Elem) -> Elem:
        return tuple((e, -c) for e, c in a)

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def mul(self, a: Elem, b: Elem) -> Elem:
        return self.elem([(_add(e1, e2), c1 * c2) for e1, c1 in a for e2, c2 in b])

    def scale(self, a: Elem, c: PuiseuxScalar) -> Elem:
        return self.elem([(e, c * x) for e, x in a])

    def power(self, a: Elem, k: int) -> Elem:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_unit(self, a: Elem) -> bool:
        """Units are single terms whose exponent lives in the Laurent directions."""
        if len(a) != 1:
            return False
        e = a[0][0]
        if self.rules:
            return all(x == 0 for x in e)
        return all(x == 0 or lau for x, lau in zip(e, self.laurent))

    def inverse(self, a: Elem) -> Elem:
        if not self.is_unit(a):
            raise ValueError("not a unit")
        e, c = a[0]
        return self.monomial(tuple(-x for x in e), c.inverse())

    def evaluate(self, a: Elem, point: Sequence[Fraction]) -> PuiseuxScalar:
        out = ZERO
        for e, c in a:
            v = Fraction(1)
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            out = out + c * v
        return out

    def parse(self, text: str) -> Elem:
        import sympy

        syms = {v: sympy.Symbol(v) for v in self.variables}
        t = sympy.Symbol("t")
        expr = sympy.expand(sympy.sympify(str(text).replace("^", "**"), locals={**syms, "t": t}))
        terms = []
        for term in sympy.Add.make_args(expr):
            coeff, mono = term.as_independent(*syms.values(), as_Add=False)
            powers = mono.as_powers_dict() if mono != 1 else {}
            e = tuple(int(powers.get(syms[v], 0)) for v in self.variables)
            terms.append((e, parse_scalar(str(coeff))))
        return self.elem(terms)

    def format(self, a: Elem) -> str:
        if not a:
            return "0"
        parts = []
        for e, c in a:
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if any(ch in cs for ch in "+-/") else f"{cs}*{mono}")
        return " + ".join(parts)


def preset_normal_algebra(name: str) -> NormalFormAlgebra:
    one = Fraction(1)
    if name == "K":
        return NormalFormAlgebra("K", (), (), (), ((),))
    if name == "K[x]":
        return NormalFormAlgebra(name, ("x",), (False,), (), ((one,), (Fraction(2),), (Fraction(3),)))
    if name in ("K[x^±]", "K[x^+-]"):
        return NormalFormAlgebra("K[x^±]", ("x",), (True,), (), ((one,), (Fraction(2),), (Fraction(3),)))
    if name in ("K[x^±,y^±]", "K[x^+-,y^+-]"):
        return NormalFormAlgebra("K[x^±,y^±]", ("x", "y"), (True, True), (), ((one, one), (Fraction(2), Fraction(3))))
    if name in ("K[x,y]", "K[N^2]"):
        return NormalFormAlgebra("K[x,y]", ("x", "y"), (False, False), (), ((one, one), (Fraction(2), Fraction(3))))
    if name in ("K[x,y]/(x^2-y^3)", "cusp"):
        return NormalFormAlgebra("K[x,y]/(x^2-y^3)", ("x", "y"), (False, False), (((0, 3), (2, 0)),),
                                 ((one, one), (Fraction(8), Fraction(4))))
    raise UnsupportedAlgebra(f"unsupported algebra {name!r}")


NORMAL_ALGEBRA_PRESETS = ("K", "K[x]", "K[x^±]", "K[x^±,y^±]", "K[x,y]", "K[x,y]/(x^2-y^3)")


# ---------------------------------------------------------------------------
# submodules


def canonical_rows(alg: NormalFormAlgebra, gens: Sequence[Elem]) -> tuple[Elem, ...]:
    rest = [dict(g) for g in gens if g]
    rows: list[dict] = []
    while rest:
        col = max((e for g in rest for e in g), key=_deglex)
        cands = [i for i, g in enumerate(rest) if col in g]
        best = max(cands, key=lambda i: (valuation(rest[i][col]), -i))
        piv = rest.pop(best)
        c = piv[col]
        piv = dict(alg.scale(tuple(piv.items()), pure_power(c) / c))
        pc = piv[col]
        new = []
        for g in rest:
            if col in g:
                g = dict(alg.sub(tuple(g.items()), alg.scale(tuple(piv.items()), g[col] / pc)))
            if g:
                new.append(g)
        rest = new
        rows.append(piv)
    pivots = [max(r, key=_deglex) for r in rows]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            a = rows[i].get(pivots[j])
            if a is None:
                continue
            pc = rows[j][pivots[j]]
            keep = truncate_below(a, pc.order())
            lam = (a - keep) / pc
            rows[i] = dict(alg.sub(tuple(rows[i].items()), alg.scale(tuple(rows[j].items()), lam)))
    return tuple(alg.elem(r) for r in rows)


@dataclass(frozen=True)
class OKSubmodule:
    algebra: NormalFormAlgebra
    generators: tuple[Elem, ...]
    canonical: tuple[Elem, ...] = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "canonical", canonical_rows(self.algebra, self.generators))

    @classmethod
    def of(cls, alg: NormalFormAlgebra, gens: Sequence) -> "OKSubmodule":
        return cls(alg, tuple(alg.parse(g) if isinstance(g, str) else g for g in gens))

    @classmethod
    def zero(cls, alg: NormalFormAlgebra) -> "OKSubmodule":
        return cls(alg, ())

    @classmethod
    def unit(cls, alg: NormalFormAlgebra) -> "OKSubmodule":
        return cls(alg, (alg.one,))

    @property
    def window(self) -> tuple[Exponent, ...]:
        return tuple(sorted({e for r in self.canonical for e, _ in r}, key=_deglex, reverse=True))

    def key(self):
        return (self.algebra.name, self.canonical)

    def __eq__(self, other):
        return isinstance(other, OKSubmodule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def contains(self, x: Elem) -> bool:
        alg = self.algebra
        for row in self.canonical:
            col, pc = row[0]
            a = dict(x).get(col)
            if a is None:
                continue
            if valuation(a) > valuation(pc):
                return False
            x = alg.sub(x, alg.scale(row, a / pc))
        return not x

    def contains_module(self, other: "OKSubmodule") -> bool:
        return all(self.contains(g) for g in other.generators)

    def _check(self, other: "OKSubmodule"):
        if other.algebra != self.algebra:
            raise ValueError("submodules live in different algebras")

    def __add__(self, other: "OKSubmodule") -> "OKSubmodule":
        self._check(other)
        return OKSubmodule(self.algebra, self.canonical + other.canonical)

    def __mul__(self, other: "OKSubmodule") -> "OKSubmodule":
        self._check(other)
        alg = self.algebra
        return OKSubmodule(alg, tuple(alg.mul(a, b) for a in self.canonical for b in other.canonical))

    def __pow__(self, k: int) -> "OKSubmodule":
        out = OKSubmodule.unit(self.algebra)
        for _ in range(k):
            out = out * self
        return out

    def is_monomial(self) -> bool:
        return all(len(r) == 1 for r in self.canonical)

    def describe(self) -> str:
        return "<" + ", ".join(self.algebra.format(r) for r in self.canonical) + ">"

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name, "generators": [self.algebra.format(r) for r in self.canonical],
                "window": [list(e) for e in self.window]}


def submodule_sum(a: OKSubmodule, b: OKSubmodule) -> OKSubmodule:
    return a + b


def submodule_product(a: OKSubmodule, b: OKSubmodule) -> OKSubmodule:
    return a * b


def random_elem(alg: NormalFormAlgebra, rng: random.Random, max_terms: int = 3, max_deg: int = 3,
                simple: bool = True) -> Elem:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(-max_deg if lau else 0, max_deg) for lau in alg.laurent)
        if simple:
            c = PuiseuxScalar.monomial(rng.choice((1, -1, 2, Fraction(1, 2), 3)), Fraction(rng.randint(-3, 3)))
        else:
            c = random_scalar(rng, zero_prob=0.0, max_N=2)
        terms.append((e, c))
    return alg.elem(terms)


def random_submodule(alg: NormalFormAlgebra, rng: random.Random, max_gens: int = 3, **kw) -> OKSubmodule:
    return OKSubmodule(alg, tuple(random_elem(alg, rng, **kw) for _ in range(rng.randint(0, max_gens))))


# ---------------------------------------------------------------------------
# localization at a monomial


def localized_algebra(alg: NormalFormAlgebra, f: Elem) -> NormalFormAlgebra:
    """``A_f`` for a monomial ``f`` in a polynomial algebra: its variables become Laurent."""
    if len(f) != 1 or alg.rules:
        raise UnsupportedAlgebra("localization is supported at monomials of polynomial algebras")
    e, _ = f[0]
    laurent = tuple(lau or k > 0 for lau, k in zip(alg.laurent, e))
    name = alg.name if laurent == alg.laurent else "K[" + ",".join(
        v + ("^±" if lau else "") for v, lau in zip(alg.variables, laurent)) + "]"
    return NormalFormAlgebra(name, alg.variables, laurent, (), alg.points)


def psi(alg: NormalFormAlgebra, f: Elem, n: OKSubmodule, k: int) -> OKSubmodule:
    """``N / <f>^k  |->  <1/f>^k * N`` in ``A_f``."""
    loc = localized_algebra(alg, f)
    inv_f = loc.inverse(loc.elem(f))
    return OKSubmodule(loc, tuple(loc.elem(g) for g in n.canonical)) * OKSubmodule(loc, (loc.power(inv_f, k),))


@dataclass
class LocalizationReport:
    samples: int = 0
    homomorphism_ok: bool = True
    injectivity_ok: bool = True
    surjectivity_ok: bool = True
    equal_pairs: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.homomorphism_ok and self.injectivity_ok and self.surjectivity_ok

    def to_json(self) -> dict:
        return {"samples": self.samples, "homomorphism": self.homomorphism_ok, "injective": self.injectivity_ok,
                "surjective_on_principal": self.surjectivity_ok, "equal_pairs": self.equal_pairs,
                "witnesses": self.witnesses[:5]}


def fraction_equal_witness(alg, f, n1, k1, n2, k2, search: int = 4) -> int | None:
    """Smallest ``n`` with ``f^(n+k2) N1 = f^(n+k1) N2``, searched up to ``search``."""
    F = OKSubmodule(alg, (f,))
    for n in range(search + 1):
        if (F ** (n + k2)) * n1 == (F ** (n + k1)) * n2:
            return n
    return None


def localization_iso_check(alg: NormalFormAlgebra, f: Elem, samples: int = 200, seed: int = 0,
                           search: int = 4) -> LocalizationReport:
    rng = random.Random(seed)
    rep = LocalizationReport()
    loc = localized_algebra(alg, f)
    F = OKSubmodule(alg, (f,))
    for _ in range(samples):
        rep.samples += 1
        n1, n2 = random_submodule(alg, rng), random_submodule(alg, rng)
        k1, k2 = rng.randint(0, 2), rng.randint(0, 2)
        p1, p2 = psi(alg, f, n1, k1), psi(alg, f, n2, k2)
        # sum and product of fractions: (N1 f^k2 + N2 f^k1) / f^(k1+k2), (N1 N2) / f^(k1+k2)
        s = psi(alg, f, n1 * F ** k2 + n2 * F ** k1, k1 + k2)
        m = psi(alg, f, n1 * n2, k1 + k2)
        if s != p1 + p2 or m != p1 * p2:
            rep.homomorphism_ok = False
        # an equal pair by construction: N1 / f^k1 = f^j N1 / f^(k1+j)
        j = rng.randint(0, 2)
        n3 = n1 * F ** j
        if psi(alg, f, n3, k1 + j) != p1:
            rep.homomorphism_ok = False
        w = fraction_equal_witness(alg, f, n1, k1, n3, k1 + j, search)
        if w is None:
            rep.injectivity_ok = False
        else:
            rep.equal_pairs += 1
            if len(rep.witnesses) < 5:
                rep.witnesses.append({"N": n1.describe(), "N'": n3.describe(), "n": w})
        # random pair: psi-equal must come with a witness, and a witness forces psi-equal
        w2 = fraction_equal_witness(alg, f, n1, k1, n2, k2, search)
        if (p1 == p2) != (w2 is not None):
            rep.injectivity_ok = False
        # surjectivity on a principal module of A_f
        g = random_elem(loc, rng)
        shift = max(0, *(-e[i] for e, _ in g for i in range(loc.nvars))) if g else 0
        fk = alg.power(f, shift)
        pre = OKSubmodule(alg, (alg.elem(loc.mul(loc.elem(fk), g)),))
        if psi(alg, f, pre, shift) != OKSubmodule(loc, (g,)):
            rep.surjectivity_ok = False
    return rep


# ---------------------------------------------------------------------------
# basic opens: radical membership on both sides


def _univariate(alg: NormalFormAlgebra):
    if alg.nvars != 1 or alg.rules:
        raise UnsupportedAlgebra("basic-open comparison is decided for univariate algebras")


def _strip_monomial(alg, a: Elem) -> Elem:
    """Divide out the lowest power of ``x`` (a unit in the Laurent case)."""
    if not a or not alg.laurent[0]:
        return a
    low = a[-1][0][0]
    return alg.elem([((e[0] - low,), c) for e, c in a])


def _upoly(alg, a: Elem) -> list[PuiseuxScalar]:
    a = _strip_monomial(alg, a)
    if not a:
        return []
    out = [ZERO] * (a[0][0][0] + 1)
    for e, c in a:
        out[e[0]] = c
    return out


def _ptrim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pmod(a, b):
    a = _ptrim(a)
    b = _ptrim(b)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        for i, y in enumerate(b):
            a[i + d] = a[i + d] - c * y
        a = _ptrim(a)
    return a


def _pdiv(a, b):
    a, b = _ptrim(a), _ptrim(b)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] = a[i + d] - c * y
        a = _ptrim(a)
    return _ptrim(q), a


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b)
    return a


def radical_contains(alg: NormalFormAlgebra, f: Elem, g: Elem) -> bool:
    """``f`` in the radical of ``(g)``: the squarefree part of ``g`` divides ``f``."""
    _univariate(alg)
    if not f:
        return True
    if not g:
        return False
    pg, pf = _upoly(alg, g), _upoly(alg, f)
    deriv = [c * i for i, c in enumerate(pg)][1:]
    sqfree = _pdiv(pg, _pgcd(pg, deriv))[0] if deriv and _ptrim(deriv) else pg
    return not _pmod(pf, sqfree)


def saturated_ideal_contains(alg: NormalFormAlgebra, g: Elem, n: OKSubmodule) -> bool:
    """``n`` lies in the saturated ideal of the submodule semiring generated by ``<g>``.

    That ideal is ``{N : N = <g> * Q}``; ``Q`` is found by dividing the canonical
    generators of ``n`` by ``g`` and the product is checked in canonical form.
    """
    if not n.canonical:
        return True
    if not g:
        return False
    lg = g[-1][0][0] if alg.laurent[0] else 0
    quots = []
    for r in n.canonical:
        q, rem = _pdiv(_upoly(alg, r), _upoly(alg, g))
        if rem:
            return False
        lr = r[-1][0][0] if alg.laurent[0] else 0
        quots.append(alg.elem([((i + lr - lg,), c) for i, c in enumerate(q) if not c.is_zero()]))
    return OKSubmodule(alg, (g,)) * OKSubmodule(alg, tuple(quots)) == n


@dataclass(frozen=True)
class BasicOpen:
    element: Elem

    def submodule(self, alg: NormalFormAlgebra) -> OKSubmodule:
        return OKSubmodule(alg, (self.element,))


def basic_open_correspondence(alg: NormalFormAlgebra, f: Elem, g: Elem) -> dict:
    """Compare ``D(f) <= D(g)`` in Spec A with ``D(<f>) <= D(<g>)`` in the saturated spectrum."""
    _univariate(alg)
    classical = radical_contains(alg, f, g)
    bound = max(len(_upoly(alg, g)) - 1, 1)
    F = OKSubmodule(alg, (f,))
    tropical = any(saturated_ideal_contains(alg, g, F ** n) for n in range(1, bound + 1))
    return {"classical": classical, "semiring": tropical, "agree": classical == tropical}


def random_factored(alg: NormalFormAlgebra, rng: random.Random, roots=(0, 1, -1, 2), max_factors: int = 3) -> Elem:
    out = alg.constant(PuiseuxScalar.monomial(rng.choice((1, -2, 3)), rng.randint(-2, 2)))
    for _ in range(rng.randint(0, max_factors)):
        r = rng.choice(roots)
        out = alg.mul(out, alg.elem([((1,), ONE), ((0,), PuiseuxScalar.rational(-r))]))
    return out


# ---------------------------------------------------------------------------
# invertible submodules and the Picard transport


def principal_unit_generator(n: OKSubmodule, n_inv: OKSubmodule) -> Elem:
    alg = n.algebra
    if n * n_inv != OKSubmodule.unit(alg):
        raise ValueError("n * n_inv is not <1>")
    if not n.canonical:
        raise ValueError("no nonzero element")
    f = n.canonical[0]
    for point in alg.points:
        fp = alg.evaluate(f, point)
        if not fp.is_zero():
            break
    else:
        raise ValueError("no evaluation point avoids the chosen element")
    coeffs = []
    for g in n.canonical:
        c = alg.evaluate(g, point) / fp
        if alg.scale(f, c) != g:
            raise InvariantError("generator is not a K-multiple of the chosen element")
        coeffs.append(c)
    c1 = max(coeffs, key=valuation)
    u = alg.scale(f, c1)
    # normalize to a pure t-power coefficient
    lead = u[0][1]
    u = alg.scale(u, pure_power(lead) / lead)
    if not alg.is_unit(u) or OKSubmodule(alg, (u,)) != n:
        raise InvariantError("principal generator failed verification")
    return u


def invertible_monomial_sample(alg: NormalFormAlgebra, rng: random.Random) -> tuple[OKSubmodule, OKSubmodule]:
    """A random invertible monomial submodule and its inverse, padded with redundant generators."""
    e = tuple(rng.randint(-3, 3) if lau else 0 for lau in alg.laurent)
    c = PuiseuxScalar.monomial(rng.choice((1, -1, 2, Fraction(1, 3))), Fraction(rng.randint(-4, 4), rng.choice((1, 2))))
    u = alg.monomial(e, c)
    extra = [alg.scale(u, PuiseuxScalar.monomial(1, rng.randint(0, 3))) for _ in range(rng.randint(0, 2))]
    return OKSubmodule(alg, (u, *extra)), OKSubmodule(alg, (alg.inverse(u),))


@dataclass(frozen=True)
class UnitCocycle:
    """Unit-valued cocycle on a cover of Spec A by basic opens of units (all overlaps equal A)."""

    algebra: NormalFormAlgebra
    size: int
    values: dict  # (i, j) -> Elem, i != j

    def __getitem__(self, key) -> Elem:
        i, j = key
        return self.algebra.one if i == j else self.values[(i, j)]

    def validate(self) -> bool:
        alg = self.algebra
        for (i, j), v in self.values.items():
            if not alg.is_unit(v) or alg.mul(v, self[(j, i)]) != alg.one:
                return False
        for i in range(self.size):
            for j in range(self.size):
                for k in range(self.size):
                    if alg.mul(self[(i, j)], self[(j, k)]) != self[(i, k)]:
                        return False
        return True

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name, "size": self.size,
                "values": {f"{i},{j}": self.algebra.format(v) for (i, j), v in sorted(self.values.items())}}


def coboundary_cocycle(alg: NormalFormAlgebra, units: Sequence[Elem]) -> UnitCocycle:
    n = len(units)
    return UnitCocycle(alg, n, {(i, j): alg.mul(units[i], alg.inverse(units[j]))
                                for i in range(n) for j in range(n) if i != j})


def random_unit(alg: NormalFormAlgebra, rng: random.Random) -> Elem:
    e = tuple(rng.randint(-3, 3) if lau else 0 for lau in alg.laurent)
    c = PuiseuxScalar.make([rng.choice((1, 2, -1, Fraction(1, 2)))] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 2))],
                           (1,), rng.choice((1, 2)), rng.randint(-3, 3))
    return alg.monomial(e, c)


def transport_forward(c: UnitCocycle) -> dict:
    """``theta |-> <theta>``."""
    return {k: OKSubmodule(c.algebra, (v,)) for k, v in c.values.items()}


def transport_backward(alg: NormalFormAlgebra, size: int, subs: Mapping) -> UnitCocycle:
    values = {}
    for (i, j), n in subs.items():
        values[(i, j)] = principal_unit_generator(n, subs[(j, i)])
    out = UnitCocycle(alg, size, values)
    if not out.validate():
        raise InvariantError("backward transport did not produce a cocycle")
    return out


def unit_cocycle_equivalence(c: UnitCocycle, d: UnitCocycle) -> list[Elem] | None:
    """Units ``a_i`` with ``d_ij = a_i c_ij a_j^-1``, read off from chart 0."""
    alg = c.algebra
    # d_0j = c_0j a_j^-1 with a_0 = 1
    a = [alg.one] + [alg.mul(alg.inverse(d[(0, j)]), c[(0, j)]) for j in range(1, c.size)]
    for i in range(c.size):
        for j in range(c.size):
            if alg.mul(alg.mul(a[i], c[(i, j)]), alg.inverse(a[j])) != d[(i, j)]:
                return None
    return a


def picard_transport(c: UnitCocycle) -> dict:
    """Forward, backward, and the class comparison of the roundtrip."""
    if not c.validate():
        raise ValueError("not a unit cocycle")
    fwd = transport_forward(c)
    back = transport_backward(c.algebra, c.size, fwd)
    gauge = unit_cocycle_equivalence(c, back)
    constants = gauge is not None and all(len(u) == 1 and all(x == 0 for x in u[0][0]) and valuation(u[0][1]) == 0
                                          for u in gauge)
    return {"forward": fwd, "backward": back, "same_class": gauge is not None, "gauge": gauge,
            "gauge_in_OK_units": constants}


def forward_kernel_element(alg: NormalFormAlgebra, u: Elem) -> bool:
    """``<u> = <1>``; holds exactly for constants of valuation 0."""
    return OKSubmodule(alg, (u,)) == OKSubmodule.unit(alg)


# ---------------------------------------------------------------------------
# lifting tropical line bundles


def monomial_submodule(alg: NormalFormAlgebra, q: Fraction, m: Sequence[int]) -> OKSubmodule:
    """The invertible monomial submodule matching the tropical unit ``q (*) x^m``: ``<t^(-q) x^m>``."""
    return OKSubmodule(alg, (alg.monomial(tuple(m), PuiseuxScalar.monomial(1, -Fraction(q))),))


@dataclass(frozen=True)
class LiftResult:
    cocycle: UnitCocycle
    saturated: bool
    hypothesis_holds: bool

    def to_json(self) -> dict:
        return {"saturated": self.saturated, "cover_hypothesis_holds": self.hypothesis_holds,
                "cocycle": self.cocycle.to_json()}


def restrict_to_saturated(alg: NormalFormAlgebra, subs: Mapping) -> tuple[dict, bool]:
    """Restriction along the saturated locus, chartwise.

    Invertible values pass through unchanged; the cover hypothesis is that every
    value stays invertible on each chart, which is checked rather than assumed.
    """
    ok = all(n * subs[(j, i)] == OKSubmodule.unit(alg) for (i, j), n in subs.items())
    return {k: OKSubmodule(alg, n.canonical) for k, n in subs.items()}, ok


def lift_line_bundle(alg: NormalFormAlgebra, size: int, values: Mapping, saturated: bool = True) -> LiftResult:
    """``values[(i, j)] = (q, m)``: tropical units on the overlaps of a cover with ``size`` charts."""
    from .cech import Unit

    subs = {}
    for (i, j), v in values.items():
        q, m = (v.q, v.m) if isinstance(v, Unit) else v
        if len(m) != alg.nvars or not all(alg.laurent):
            raise UnsupportedAlgebra("lifting needs a Laurent algebra matching the unit rank")
        subs[(i, j)] = monomial_submodule(alg, q, m)
        if (j, i) not in values:
            subs[(j, i)] = monomial_submodule(alg, -Fraction(q), [-x for x in m])
    for (i, j), n in subs.items():
        if n * subs[(j, i)] != OKSubmodule.unit(alg):
            raise ValueError(f"transition value on {i},{j} is not invertible")
    hyp = True
    if not saturated:
        subs, hyp = restrict_to_saturated(alg, subs)
    return LiftResult(transport_backward(alg, size, subs), saturated, hyp)
