"""Labelled K-algebras, their tropicalization, and monomial valuations.

A labelled algebra is ``K[M] / (relations)`` with ``M`` a commutative monoid given
by generators and monoid relations ``m1 = m2``. Tropicalization sends each
relation ``sum k_i m_i`` to ``max(nu(k_i) + m_i)`` and takes the bend congruence,
together with the monoid relations as term identifications.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .polynomial import (
    CongruencePresentation,
    Poly,
    PolynomialSemiring,
    QuotientSemiring,
    TermRewriting,
    Verdict,
    bend_congruence,
    eq_mod_congruence,
)
from .puiseux import ONE, ZERO, PuiseuxScalar, parse_scalar, valuation
from .semiring import NEG_INF, TROPICAL, SemiringError

Exponent = tuple[int, ...]
KRelation = tuple[tuple[PuiseuxScalar, Exponent], ...]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _deglex(e):
    return (sum(e), e)


@dataclass
class LabelledAlgebra:
    variables: tuple[str, ...]
    monoid_relations: tuple[tuple[Exponent, Exponent], ...] = ()
    relations: tuple[KRelation, ...] = ()
    laurent: tuple[bool, ...] | None = None
    name: str = "A"
    _monoid_rules: Any = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        if self.laurent is None:
            self.laurent = (False,) * len(self.variables)
        self.laurent = tuple(self.laurent)
        self.monoid_relations = tuple((tuple(a), tuple(b)) for a, b in self.monoid_relations)
        self.relations = tuple(tuple((c if isinstance(c, PuiseuxScalar) else parse_scalar(str(c)), tuple(e))
                                     for c, e in rel) for rel in self.relations)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def trop_ring(self) -> PolynomialSemiring:
        return PolynomialSemiring(TROPICAL, self.variables, self.laurent)

    @classmethod
    def from_json(cls, data: Mapping) -> "LabelledAlgebra":
        mon = data["monoid"]
        variables = mon["variables"]
        rels = [[(parse_scalar(str(term["coeff"])), tuple(term["monomial"])) for term in rel]
                for rel in data.get("relations", [])]
        return cls(tuple(variables), tuple((tuple(a), tuple(b)) for a, b in mon.get("relations", [])),
                   tuple(tuple(r) for r in rels), tuple(mon.get("laurent", [False] * len(variables))),
                   data.get("name", "A"))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "monoid": {"variables": list(self.variables), "laurent": list(self.laurent),
                       "relations": [[list(a), list(b)] for a, b in self.monoid_relations]},
            "relations": [[{"coeff": str(c), "monomial": list(e)} for c, e in rel] for rel in self.relations],
        }

    # monoid normal forms --------------------------------------------------

    @property
    def monoid_rules(self) -> TermRewriting:
        if self._monoid_rules is None:
            ring = self.trop_ring
            pairs = tuple((ring.term(a, Fraction(0)), ring.term(b, Fraction(0))) for a, b in self.monoid_relations)
            rules = TermRewriting.from_congruence(ring, CongruencePresentation(pairs))
            if rules is None:
                raise SemiringError("monoid relations do not complete to a rewriting system")
            self._monoid_rules = rules
        return self._monoid_rules

    def monoid_normal(self, e: Exponent) -> Exponent:
        return self.monoid_rules.reduce_monomial(tuple(e))[1]

    def normalize_relation(self, rel: Sequence[tuple[PuiseuxScalar, Exponent]]) -> KRelation:
        out: dict[Exponent, PuiseuxScalar] = {}
        for c, e in rel:
            n = self.monoid_normal(e)
            out[n] = out.get(n, ZERO) + c
        return tuple(sorted(((c, e) for e, c in out.items() if not c.is_zero()), key=lambda t: _deglex(t[1]),
                            reverse=True))

    def words(self, bound: int) -> list[Exponent]:
        """Distinct monoid elements reached by words of length <= ``bound``."""
        out = set()
        for total in range(bound + 1):
            for e in _exponents(self.nvars, total):
                out.add(self.monoid_normal(e))
        return sorted(out, key=_deglex)

    def injectivity_spot_check(self, bound: int = 4) -> tuple[bool, tuple | None]:
        """Do distinct monoid elements of length <= ``bound`` stay distinct (and nonzero) in A?

        Works in the K-span of relation multiples whose support stays in the window,
        so a pass is a bounded check, not a proof.
        """
        if not self.relations:
            return True, None
        window = self.words(bound)
        idx = {e: i for i, e in enumerate(window)}
        rows = []
        for rel in self.relations:
            for m in self.words(bound):
                shifted = self.normalize_relation([(c, _add(e, m)) for c, e in rel])
                if shifted and all(e in idx for _, e in shifted):
                    row = [ZERO] * len(window)
                    for c, e in shifted:
                        row[idx[e]] = c
                    rows.append(row)
        basis = _row_echelon(rows)
        for i, a in enumerate(window):
            unit = [ZERO] * len(window)
            unit[i] = ONE
            if _in_span(basis, unit):
                return False, (a,)
            for b in window[i + 1:]:
                diff = [ZERO] * len(window)
                diff[i], diff[idx[b]] = ONE, -ONE
                if _in_span(basis, diff):
                    return False, (a, b)
        return True, None


def _exponents(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _exponents(n - 1, total - first):
            yield (first,) + rest


def _row_echelon(rows):
    basis = []  # (pivot, row) with row[pivot] == 1
    for row in rows:
        row = _reduce(basis, list(row))
        piv = next((j for j, x in enumerate(row) if not x.is_zero()), None)
        if piv is None:
            continue
        inv = row[piv].inverse()
        row = [x * inv for x in row]
        basis = [(p, [x - r[piv] * y for x, y in zip(r, row)]) if not r[piv].is_zero() else (p, r)
                 for p, r in basis]
        basis.append((piv, row))
    return basis


def _reduce(basis, row):
    for p, r in basis:
        if not row[p].is_zero():
            c = row[p]
            row = [x - c * y for x, y in zip(row, r)]
    return row


def _in_span(basis, row) -> bool:
    return all(x.is_zero() for x in _reduce(basis, list(row)))


# ---------------------------------------------------------------------------
# tropicalization


def tropicalize_relation(ring: PolynomialSemiring, rel: KRelation) -> Poly:
    return ring.poly({e: valuation(c) for c, e in rel})


@dataclass(frozen=True)
class TropPresentation:
    algebra: LabelledAlgebra
    quotient: QuotientSemiring

    @property
    def ring(self) -> PolynomialSemiring:
        return self.quotient.base

    @property
    def pairs(self):
        return self.quotient.congruence.pairs

    def describe(self) -> str:
        ring = self.ring
        return "<" + ", ".join(f"{ring.label(a)} = {ring.label(b)}" for a, b in self.pairs) + ">"

    def normal_form(self, p: Poly) -> Poly | None:
        return self.quotient.normal_form(p)

    def eq(self, a: Poly, b: Poly) -> Verdict:
        return eq_mod_congruence(self.quotient, a, b)


def trop_algebra(a: LabelledAlgebra, closure_bound: int = 6) -> TropPresentation:
    ring = a.trop_ring
    pairs = [(ring.term(x, Fraction(0)), ring.term(y, Fraction(0))) for x, y in a.monoid_relations]
    trop = [tropicalize_relation(ring, a.normalize_relation(rel)) for rel in a.relations]
    pairs += list(bend_congruence(trop))
    return TropPresentation(a, QuotientSemiring(ring, CongruencePresentation(tuple(pairs)), closure_bound,
                                                f"Trop({a.name})"))


# ---------------------------------------------------------------------------
# monomial valuations


@dataclass(frozen=True)
class MonomialValuationWitness:
    assignment: tuple[Fraction, ...]  # w(x_i)
    target: Any = TROPICAL

    def value(self, e: Exponent):
        return sum((Fraction(k) * w for k, w in zip(e, self.assignment)), Fraction(0))

    def term_value(self, c: PuiseuxScalar, e: Exponent):
        v = valuation(c)
        return NEG_INF if v == NEG_INF else v + self.value(e)


class ValuationStatus(str, enum.Enum):
    VALID = "valid"
    VIOLATED = "violated"
    VALID_AT_BOUND = "valid-at-bound"


@dataclass(frozen=True)
class ValuationVerdict:
    status: ValuationStatus
    witness: dict | None = None
    relations_checked: int = 0

    def to_json(self) -> dict:
        return {"status": self.status.value, "witness": self.witness, "relations_checked": self.relations_checked}


def dominated_terms(w: MonomialValuationWitness, rel: KRelation) -> int | None:
    """Index of a term violating ``w(k_i m_i) <= max_{j != i} w(k_j m_j)``, or ``None``."""
    vals = [w.term_value(c, e) for c, e in rel]
    for i, v in enumerate(vals):
        others = [x for j, x in enumerate(vals) if j != i]
        if v == NEG_INF:
            continue
        if not others or v > max(others):
            return i
    return None


def sum_condition(w: MonomialValuationWitness, y: tuple[PuiseuxScalar, Exponent],
                  parts: Sequence[tuple[PuiseuxScalar, Exponent]]) -> bool:
    """``w(y) <= w(x_1) (+) ... (+) w(x_n)`` for ``y = x_1 + ... + x_n``."""
    vals = [w.term_value(c, e) for c, e in parts]
    return w.term_value(*y) <= (max(vals) if vals else NEG_INF)


def derived_relations(a: LabelledAlgebra, bound: int) -> list[KRelation]:
    """Monomial multiples of the relations and pairwise eliminations of a shared leading term."""
    base = [a.normalize_relation(r) for r in a.relations]
    out = []
    for rel in base:
        for m in a.words(bound):
            shifted = a.normalize_relation([(c, _add(e, m)) for c, e in rel])
            if shifted and max(sum(e) for _, e in shifted) <= bound + max(sum(e) for _, e in rel):
                out.append(shifted)
    elim = []
    for r1, r2 in itertools.combinations(out, 2):
        lead = r1[0][1]
        c2 = dict((e, c) for c, e in r2).get(lead)
        if c2 is None:
            continue
        combo = a.normalize_relation(list(r1) + [(-c * r1[0][0] / c2, e) for c, e in r2])
        if combo:
            elim.append(combo)
    return out + elim


def check_monomial_valuation(a: LabelledAlgebra, w: MonomialValuationWitness,
                             closure_bound: int = 6) -> ValuationVerdict:
    if w.target is not TROPICAL:
        raise SemiringError("target must be the tropical rationals")
    if len(w.assignment) != a.nvars:
        raise ValueError("assignment must give one value per generator")
    for x, y in a.monoid_relations:
        if w.value(x) != w.value(y):
            return ValuationVerdict(ValuationStatus.VIOLATED,
                                    {"monoid_relation": [list(x), list(y)],
                                     "values": [str(w.value(x)), str(w.value(y))]}, 0)
    declared = [a.normalize_relation(r) for r in a.relations]
    if not declared:
        return ValuationVerdict(ValuationStatus.VALID, None, 0)
    rels = declared if len(declared) == 1 else declared + derived_relations(a, closure_bound)
    for n, rel in enumerate(rels, 1):
        i = dominated_terms(w, rel)
        if i is not None:
            vals = [w.term_value(c, e) for c, e in rel]
            return ValuationVerdict(ValuationStatus.VIOLATED, {
                "relation": _relation_str(a, rel), "term": i, "value": str(vals[i]),
                "others_max": str(max((v for j, v in enumerate(vals) if j != i), default=NEG_INF))}, n)
    # For a principal ideal, initial forms multiply: if the generator's maximum is
    # attained twice, so is every multiple's. Several generators need the bounded search.
    status = ValuationStatus.VALID if len(declared) == 1 else ValuationStatus.VALID_AT_BOUND
    return ValuationVerdict(status, None, len(rels))


def _relation_str(a: LabelledAlgebra, rel: KRelation) -> str:
    from .monoid import monomial_name

    parts = []
    for c, e in rel:
        m = monomial_name(e) if len(e) else "1"
        if len(a.variables) and list(a.variables) != ["x", "y", "z"][: len(a.variables)]:
            m = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(a.variables, e) if k) or "1"
        parts.append(f"({c})*{m}")
    return " + ".join(parts) + " = 0"


def universal_valuation(trop: TropPresentation, coeff: PuiseuxScalar, e: Exponent) -> Poly:
    """``nu(k) (*) [m]`` in Trop(A), in normal form when one is available."""
    if coeff.is_zero():
        raise ValueError("zero is not a monomial")
    ring = trop.ring
    p = ring.term(tuple(e), valuation(coeff))
    nf = trop.normal_form(p)
    return nf if nf is not None else p


def induced_homomorphism(trop: TropPresentation, w: MonomialValuationWitness, p: Poly):
    """Evaluate a tropical polynomial at the point ``w`` (the map Trop(A) -> T it induces)."""
    return trop.ring.evaluate(p, list(w.assignment))


def factorization_check(trop: TropPresentation, w: MonomialValuationWitness,
                        samples: Sequence[tuple[PuiseuxScalar, Exponent]]) -> bool:
    """``f(w_univ(k m)) == w(k m)`` on every sample."""
    return all(induced_homomorphism(trop, w, universal_valuation(trop, c, e)) == w.term_value(c, e)
               for c, e in samples)


# ---------------------------------------------------------------------------
# fractional ideals of O_K in K


@dataclass(frozen=True)
class FractionalIdeal:
    """Finitely generated O_K-submodule of K; principal on its max-valuation generator."""

    generators: tuple[PuiseuxScalar, ...]

    @property
    def value(self):
        return fractional_ideal_value(self.generators)

    def principal_generator(self) -> PuiseuxScalar:
        nz = [g for g in self.generators if not g.is_zero()]
        if not nz:
            return ZERO
        return max(nz, key=valuation)

    def contains(self, x: PuiseuxScalar) -> bool:
        g = self.principal_generator()
        if x.is_zero():
            return True
        if g.is_zero():
            return False
        return valuation(x / g) <= 0

    def __add__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return FractionalIdeal(self.generators + other.generators)

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return FractionalIdeal(tuple(a * b for a in self.generators for b in other.generators))

    def equals(self, other: "FractionalIdeal") -> bool:
        """Double inclusion on generators."""
        return all(other.contains(g) for g in self.generators) and all(self.contains(g) for g in other.generators)


def fractional_ideal_value(gens: Sequence[PuiseuxScalar]):
    return max((valuation(g) for g in gens), default=NEG_INF)


# ---------------------------------------------------------------------------
# presets


def preset_algebra(name: str) -> LabelledAlgebra:
    t = PuiseuxScalar.monomial(1, 1)
    if name == "cusp":
        # M' = <x, y | x^2 = y^3>, no further relations
        return LabelledAlgebra(("x", "y"), (((2, 0), (0, 3)),), (), name="K[x,y]/(x^2-y^3)")
    if name == "cusp-free":
        return LabelledAlgebra(("x", "y"), (), (((ONE, (2, 0)), (-ONE, (0, 3))),), name="K[x,y]/(x^2-y^3)")
    if name == "x2-tx":
        return LabelledAlgebra(("x",), (), (((ONE, (2,)), (-t, (1,))),), name="K[x]/(x^2-tx)")
    if name == "free":
        return LabelledAlgebra(("x", "y"), (), (), name="K[x,y]")
    raise ValueError(f"unknown algebra preset {name!r}")


ALGEBRA_PRESETS = ("cusp", "cusp-free", "x2-tx", "free")


def random_generator_list(rng: random.Random, size: int | None = None) -> list[PuiseuxScalar]:
    from .puiseux import random_scalar

    return [random_scalar(rng) for _ in range(size if size is not None else rng.randint(1, 4))]
