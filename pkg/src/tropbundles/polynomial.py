"""Polynomial semirings over Boolean/tropical coefficients, congruence presentations,
bend congruences, and equality modulo a congruence.

Equality is decided exactly when every generating pair identifies two terms
(``c1 m1 = c2 m2``) with coefficients in a semifield: the term rules are
completed by Knuth-Bendix on exponent vectors and both sides are compared in
normal form. Other presentations fall back to a bounded upward closure plus a
search for a separating evaluation point.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .semiring import BOOLEAN, FiniteTable, Semiring, SemiringError, TropicalQ

Exponent = tuple[int, ...]


def _deglex_key(e: Exponent):
    return (sum(e), e)


@dataclass(frozen=True)
class Poly:
    """Finitely supported polynomial; ``terms`` sorted by descending degree-lex order."""

    terms: tuple[tuple[Exponent, Any], ...]
    nvars: int

    @classmethod
    def from_dict(cls, d: Mapping[Exponent, Any], nvars: int, zero) -> "Poly":
        items = [(tuple(e), c) for e, c in d.items() if c != zero]
        for e, _ in items:
            if len(e) != nvars:
                raise SemiringError(f"exponent {e} has wrong length for {nvars} variables")
        items.sort(key=lambda t: _deglex_key(t[0]), reverse=True)
        return cls(tuple(items), nvars)

    def as_dict(self) -> dict[Exponent, Any]:
        return dict(self.terms)

    @property
    def support(self) -> list[Exponent]:
        return [e for e, _ in self.terms]

    def coeff(self, e: Exponent, zero):
        for ee, c in self.terms:
            if ee == e:
                return c
        return zero

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)


class PolynomialSemiring(Semiring):
    """``base[x_1, ..., x_n]``; exponents may be negative for Laurent variables."""

    def __init__(self, base: Semiring, variables: Sequence[str], laurent: Sequence[bool] | None = None):
        self.base = base
        self.variables = tuple(variables)
        self.laurent = tuple(laurent) if laurent is not None else (False,) * len(self.variables)
        self.name = f"{base.name}[{','.join(self.variables)}]"
        self.idempotent = base.idempotent
        self.zero = Poly((), self.nvars)
        self.one = Poly((((0,) * self.nvars, base.one),), self.nvars)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolynomialSemiring) and self.base == other.base
                and self.variables == other.variables and self.laurent == other.laurent)

    def __hash__(self):
        return hash((self.base, self.variables, self.laurent))

    def __repr__(self):
        return f"PolynomialSemiring({self.name})"

    # construction ----------------------------------------------------------

    def poly(self, d: Mapping[Exponent, Any]) -> Poly:
        B = self.base
        out: dict[Exponent, Any] = {}
        for e, c in d.items():
            e = tuple(int(x) for x in e)
            for i, x in enumerate(e):
                if x < 0 and not self.laurent[i]:
                    raise SemiringError(f"negative exponent on {self.variables[i]}")
            c = B.parse(c)
            out[e] = B.add(out.get(e, B.zero), c)
        return Poly.from_dict(out, self.nvars, B.zero)

    def term(self, exponent: Sequence[int], coeff=None) -> Poly:
        return self.poly({tuple(exponent): self.base.one if coeff is None else coeff})

    def var(self, name: str) -> Poly:
        e = [0] * self.nvars
        e[self.variables.index(name)] = 1
        return self.term(e)

    def constant(self, c) -> Poly:
        return self.term((0,) * self.nvars, c)

    def from_json(self, data: Sequence[Mapping]) -> Poly:
        return self.poly({tuple(t["exponent"]): t["coeff"] for t in data})

    def to_json(self, p: Poly) -> list[dict]:
        return [{"coeff": self.base.label(c) if not isinstance(c, Fraction) else str(c),
                 "exponent": list(e)} for e, c in p.terms]

    def check(self, p: Poly) -> None:
        if not isinstance(p, Poly) or p.nvars != self.nvars:
            raise SemiringError("variable mismatch")

    # semiring operations ---------------------------------------------------

    def add(self, a: Poly, b: Poly) -> Poly:
        B = self.base
        out = dict(a.terms)
        for e, c in b.terms:
            out[e] = B.add(out.get(e, B.zero), c)
        return Poly.from_dict(out, self.nvars, B.zero)

    def mul(self, a: Poly, b: Poly) -> Poly:
        B = self.base
        out: dict[Exponent, Any] = {}
        for e1, c1 in a.terms:
            for e2, c2 in b.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = B.add(out.get(e, B.zero), B.mul(c1, c2))
        return Poly.from_dict(out, self.nvars, B.zero)

    def scale(self, p: Poly, coeff, shift: Exponent) -> Poly:
        B = self.base
        return Poly.from_dict({tuple(x + y for x, y in zip(e, shift)): B.mul(coeff, c) for e, c in p.terms},
                              self.nvars, B.zero)

    def leq(self, a: Poly, b: Poly) -> bool:
        return self.add(a, b) == b

    def is_unit(self, a: Poly) -> bool:
        if len(a) != 1:
            return False
        e, c = a.terms[0]
        return self.base.is_unit(c) and all(x == 0 or lau for x, lau in zip(e, self.laurent))

    def inverse(self, a: Poly) -> Poly:
        if not self.is_unit(a):
            raise SemiringError("not a unit")
        e, c = a.terms[0]
        return self.term(tuple(-x for x in e), self.base.inverse(c))

    def is_zero_sum_free(self) -> bool:
        return self.base.is_zero_sum_free()

    def has_trivial_idempotent_pairs(self) -> bool:
        # base without zero divisors and a cancellative monoid: no zero divisors at all
        if isinstance(self.base, TropicalQ) or self.base == BOOLEAN:
            return True
        raise SemiringError("idempotent pairs undecided for this base")

    def evaluate(self, p: Poly, point: Sequence) -> Any:
        """Evaluate at a point of the base (tropically: max of c + <e, point>)."""
        B = self.base
        out = B.zero
        for e, c in p.terms:
            v = c
            for x, k in zip(point, e):
                if k < 0:
                    v = B.mul(v, B.power(B.inverse(x), -k))
                else:
                    v = B.mul(v, B.power(x, k))
            out = B.add(out, v)
        return out

    def label(self, p: Poly) -> str:
        if not p.terms:
            return "0" if not isinstance(self.base, TropicalQ) else "-inf"
        parts = []
        for e, c in p.terms:
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(self.variables, e) if k)
            cl = self.base.label(c)
            if c == self.base.one and mono:
                parts.append(mono)
            elif mono:
                parts.append(f"({cl})*{mono}")
            else:
                parts.append(f"({cl})" if isinstance(self.base, TropicalQ) else cl)
        joiner = " (+) " if isinstance(self.base, TropicalQ) else " + "
        return joiner.join(parts)


@dataclass(frozen=True)
class CongruencePresentation:
    pairs: tuple[tuple[Poly, Poly], ...]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass
class QuotientSemiring(Semiring):
    base: PolynomialSemiring
    congruence: CongruencePresentation
    closure_bound: int = 6
    name: str = "quotient"
    _rules: Any = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.zero = self.base.zero
        self.one = self.base.one
        self.idempotent = self.base.idempotent

    def add(self, a, b):
        return self.base.add(a, b)

    def mul(self, a, b):
        return self.base.mul(a, b)

    @property
    def term_rules(self) -> "TermRewriting | None":
        if self._rules is None:
            self._rules = TermRewriting.from_congruence(self.base, self.congruence) or False
        return self._rules or None

    def normal_form(self, p: Poly) -> Poly | None:
        rules = self.term_rules
        return rules.normalize(p) if rules is not None else None

    def eq(self, a, b) -> "Verdict":
        return eq_mod_congruence(self, a, b)


class Verdict(str, enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown-at-bound"


def bend_congruence(gens: Iterable[Poly]) -> CongruencePresentation:
    """Pairs ``(f, f with its i-th term removed)`` for every generator ``f``."""
    pairs = []
    for f in gens:
        for i in range(len(f.terms)):
            pairs.append((f, Poly(f.terms[:i] + f.terms[i + 1:], f.nvars)))
    return CongruencePresentation(tuple(pairs))


# ---------------------------------------------------------------------------
# exact path: term identifications completed to a confluent rewriting system


class NotFree(Exception):
    """A completion step identified ``m`` with ``c * m`` for ``c != 1``."""


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class TermRewriting:
    """Rules ``m -> c * m'`` with ``m' < m`` in degree-lex order; ``c`` a coefficient shift.

    For a Boolean base the shift is always the unit; for the tropical base it is a
    rational number added to the coefficient.
    """

    ring: PolynomialSemiring
    rules: list[tuple[Exponent, Any, Exponent]]

    @classmethod
    def from_congruence(cls, ring: PolynomialSemiring, cong: CongruencePresentation,
                        max_rules: int = 200) -> "TermRewriting | None":
        idents = _term_identifications(ring, cong)
        if idents is None or any(any(x < 0 for x in e) for (e1, _, e2) in idents for e in (e1, e2)):
            return None
        sys = cls(ring, [])
        try:
            for m1, c, m2 in idents:
                sys._add_identity(m1, c, m2)
            sys._complete(max_rules)
        except (NotFree, OverflowError):
            return None
        return sys

    def _unit(self):
        return self.ring.base.one

    def _mul(self, a, b):
        return self.ring.base.mul(a, b)

    def _inv(self, a):
        return self.ring.base.inverse(a)

    def reduce_monomial(self, m: Exponent) -> tuple[Any, Exponent]:
        coeff = self._unit()
        changed = True
        while changed:
            changed = False
            for lhs, c, rhs in self.rules:
                if _divides(lhs, m):
                    m = _add(_sub(m, lhs), rhs)
                    coeff = self._mul(coeff, c)
                    changed = True
                    break
        return coeff, m

    def _add_identity(self, m1, c, m2):
        """Record ``m1 = c * m2``."""
        c1, n1 = self.reduce_monomial(m1)
        c2, n2 = self.reduce_monomial(m2)
        # c1 n1 = c c2 n2
        shift = self._mul(self._mul(c, c2), self._inv(c1))
        if n1 == n2:
            if shift != self._unit():
                raise NotFree
            return False
        if _deglex_key(n1) < _deglex_key(n2):
            n1, n2, shift = n2, n1, self._inv(shift)
        self.rules.append((n1, shift, n2))
        return True

    def _complete(self, max_rules):
        i = 0
        while True:
            added = False
            rules = list(self.rules)
            for (l1, c1, r1), (l2, c2, r2) in itertools.combinations(rules, 2):
                lcm = tuple(max(x, y) for x, y in zip(l1, l2))
                a = _add(_sub(lcm, l1), r1)
                b = _add(_sub(lcm, l2), r2)
                # c1 a = lcm = c2 b  ->  a = (c2 / c1) b
                if self._add_identity(a, self._mul(c2, self._inv(c1)), b):
                    added = True
                if len(self.rules) > max_rules:
                    raise OverflowError
            self._interreduce()
            i += 1
            if not added:
                return

    def _interreduce(self):
        changed = True
        while changed:
            changed = False
            for idx, (l, c, r) in enumerate(self.rules):
                others = self.rules[:idx] + self.rules[idx + 1:]
                if any(_divides(l2, l) for l2, _, _ in others):
                    self.rules = others
                    sub = TermRewriting(self.ring, others)
                    ca, na = sub.reduce_monomial(l)
                    cb, nb = sub.reduce_monomial(r)
                    shift = self._mul(self._mul(c, cb), self._inv(ca))
                    if na != nb:
                        if _deglex_key(na) < _deglex_key(nb):
                            na, nb, shift = nb, na, self._inv(shift)
                        self.rules.append((na, shift, nb))
                    elif shift != self._unit():
                        raise NotFree
                    changed = True
                    break
        self.rules.sort(key=lambda r: _deglex_key(r[0]))

    def normalize(self, p: Poly) -> Poly:
        B = self.ring.base
        out: dict[Exponent, Any] = {}
        for e, c in p.terms:
            s, n = self.reduce_monomial(e)
            out[n] = B.add(out.get(n, B.zero), B.mul(c, s))
        return Poly.from_dict(out, p.nvars, B.zero)


def _term_identifications(ring: PolynomialSemiring, cong: CongruencePresentation):
    """Read the presentation as identities ``m1 = c * m2``; ``None`` if some pair is not of that shape."""
    B = ring.base
    if not B.idempotent or not (isinstance(B, TropicalQ) or B == BOOLEAN):
        return None
    out = []
    pairs = list(cong)
    bend_groups: dict[Poly, list[Poly]] = {}
    for f, g in pairs:
        if len(f) == 1 and len(g) == 1:
            (e1, c1), (e2, c2) = f.terms[0], g.terms[0]
            out.append((e1, B.mul(c2, B.inverse(c1)), e2))
        elif len(f) == 2 and len(g) == 1 and g.terms[0] in f.terms:
            bend_groups.setdefault(f, []).append(g)
        elif len(g) == 2 and len(f) == 1 and f.terms[0] in g.terms:
            bend_groups.setdefault(g, []).append(f)
        else:
            return None
    for f, gs in bend_groups.items():
        if len(set(gs)) != 2:
            return None
        (e1, c1), (e2, c2) = f.terms
        out.append((e1, B.mul(c2, B.inverse(c1)), e2))
    return out


# ---------------------------------------------------------------------------
# bounded path


def _upward_closure(ring: PolynomialSemiring, p: Poly, rels, bound: int, deg_cap: int) -> tuple[Poly, bool]:
    """Apply ``a -> a + s r`` whenever ``s l <= a``; returns the result and whether it stabilized."""
    B = ring.base
    for _ in range(bound):
        new = p
        for l, r in rels:
            if not l.terms:
                continue
            e0 = l.terms[0][0]
            for ea, _ in p.terms:
                shift = _sub(ea, e0)
                if any(x < 0 and not lau for x, lau in zip(shift, ring.laurent)):
                    continue
                # largest coefficient s with s * l <= p at this shift
                s = None
                for el, cl in l.terms:
                    ca = p.coeff(_add(el, shift), B.zero)
                    if ca == B.zero:
                        s = None
                        break
                    if isinstance(B, TropicalQ):
                        v = ca - cl
                        s = v if s is None or v < s else s
                    else:
                        s = B.one
                if s is None:
                    continue
                cand = ring.scale(r, s, shift)
                if cand.degree() <= deg_cap:
                    new = ring.add(new, cand)
        if new == p:
            return p, True
        p = new
    return p, False


def _separating_point(ring: PolynomialSemiring, a: Poly, b: Poly, pairs, radius: int = 3):
    B = ring.base
    if isinstance(B, TropicalQ):
        values = [Fraction(v) for v in range(-radius, radius + 1)]
    elif B == BOOLEAN:
        values = [0, 1]
    else:
        return None
    if any(ring.laurent):
        values = [v for v in values if B.is_unit(v)]
    for pt in itertools.product(values, repeat=ring.nvars):
        if ring.evaluate(a, pt) == ring.evaluate(b, pt):
            continue
        if all(ring.evaluate(f, pt) == ring.evaluate(g, pt) for f, g in pairs):
            return pt
    return None


def eq_mod_congruence(q: QuotientSemiring, a: Poly, b: Poly, bound: int | None = None) -> Verdict:
    ring = q.base
    ring.check(a)
    ring.check(b)
    if a == b:
        return Verdict.EQUAL
    rules = q.term_rules
    if rules is not None:
        return Verdict.EQUAL if rules.normalize(a) == rules.normalize(b) else Verdict.DISTINCT
    bound = q.closure_bound if bound is None else bound
    rels = [(f, g) for f, g in q.congruence] + [(g, f) for f, g in q.congruence]
    cap = max(a.degree(), b.degree(), *(max(f.degree(), g.degree()) for f, g in q.congruence)) + bound
    ca, _ = _upward_closure(ring, a, rels, bound, cap)
    cb, _ = _upward_closure(ring, b, rels, bound, cap)
    if ca == cb:
        return Verdict.EQUAL
    if _separating_point(ring, a, b, list(q.congruence)) is not None:
        return Verdict.DISTINCT
    return Verdict.UNKNOWN


def quotient(ring: PolynomialSemiring, pairs: Iterable[tuple[Poly, Poly]], closure_bound: int = 6,
             name: str = "quotient") -> QuotientSemiring:
    return QuotientSemiring(ring, CongruencePresentation(tuple(pairs)), closure_bound, name)


def finite_quotient_table(q: QuotientSemiring, max_degree: int = 8) -> FiniteTable:
    """Materialize a finite quotient over the Boolean semiring as a table.

    Requires the exact path; the element set is the set of normal forms, found by
    closing {0, 1, variables} under the operations.
    """
    if q.base.base != BOOLEAN or q.term_rules is None:
        raise SemiringError("only Boolean quotients with a complete rewriting system")
    ring = q.base
    gens = [ring.zero, ring.one] + [ring.var(v) for v in ring.variables]
    elems = {q.normal_form(g) for g in gens}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for z in (q.normal_form(ring.add(x, y)), q.normal_form(ring.mul(x, y))):
                if z.degree() > max_degree:
                    raise SemiringError("quotient does not appear finite")
                if z not in elems:
                    elems.add(z)
                    frontier.append(z)
    order = sorted(elems, key=lambda p: (len(p), [(_deglex_key(e)) for e in p.support]))
    return FiniteTable.from_function(order, lambda x, y: q.normal_form(ring.add(x, y)),
                                     lambda x, y: q.normal_form(ring.mul(x, y)),
                                     q.normal_form(ring.zero), q.normal_form(ring.one),
                                     name=q.name, label=ring.label)
