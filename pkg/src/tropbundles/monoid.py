"""Monoids with zero from fans: dual cones, Hilbert bases, charts, units, covers.

A chart monoid ``S_sigma = sigma^dual ∩ Z^d`` is stored with its lattice embedding.
After a unimodular change of coordinates the dual cone splits as a pointed cone
times the lattice ``sigma^perp``; the pointed part gets a Hilbert basis, the lattice
part a basis of invertible generators.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import intlinalg as il
from .linalg import BudgetExceeded
from .polynomial import CongruencePresentation, PolynomialSemiring, QuotientSemiring, TermRewriting, quotient
from .semiring import BOOLEAN, Semiring, SemiringError, TropicalQ

Vector = tuple[int, ...]
VAR_NAMES = ("x", "y", "z", "w")


def monomial_name(v: Sequence[int]) -> str:
    parts = []
    for name, k in zip(VAR_NAMES, v):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def _primitive(v: Sequence) -> Vector:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    iv = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in iv:
        g = gcd(g, abs(x))
    return tuple(x // g for x in iv) if g else tuple(iv)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    rank: int
    cones: tuple[tuple[Vector, ...], ...]
    name: str = "fan"

    def __post_init__(self):
        for cone in self.cones:
            for r in cone:
                if len(r) != self.rank:
                    raise ValueError(f"ray {r} has wrong dimension")
            if cone and il.rational_rank([list(r) for r in cone]) != len(cone):
                raise ValueError(f"cone {cone} is not simplicial (only simplicial cones are supported)")

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls(int(data["rank"]), tuple(tuple(tuple(int(x) for x in r) for r in c) for c in data["cones"]),
                   data.get("name", "fan"))

    def to_json(self) -> dict:
        return {"rank": self.rank, "cones": [[list(r) for r in c] for c in self.cones]}

    def faces(self, index: int) -> list[tuple[Vector, ...]]:
        cone = self.cones[index]
        return [c for k in range(len(cone) + 1) for c in itertools.combinations(cone, k)]

    def intersection(self, indices: Sequence[int]) -> tuple[Vector, ...]:
        common = set(self.cones[indices[0]])
        for i in indices[1:]:
            common &= set(self.cones[i])
        return tuple(r for r in self.cones[indices[0]] if r in common)


def preset_fan(name: str) -> Fan:
    e = lambda *v: tuple(v)  # noqa: E731
    if name == "point":
        return Fan(0, ((),), name)
    if name == "P1":
        return Fan(1, ((e(1),), (e(-1),)), name)
    if name == "P2":
        return Fan(2, ((e(1, 0), e(0, 1)), (e(0, 1), e(-1, -1)), (e(-1, -1), e(1, 0))), name)
    if name == "P1xP1":
        return Fan(2, ((e(1, 0), e(0, 1)), (e(0, 1), e(-1, 0)), (e(-1, 0), e(0, -1)), (e(0, -1), e(1, 0))), name)
    m = re.fullmatch(r"A(\d+)|An", name)
    if m:
        n = int(m.group(1)) if m.group(1) else 2
        return Fan(n, (tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),), f"A{n}")
    m = re.fullmatch(r"F(?:a)?\((-?\d+)\)|F(\d+)", name)
    if m:
        a = int(m.group(1) or m.group(2))
        rays = (e(1, 0), e(0, 1), e(-1, a), e(0, -1))
        return Fan(2, tuple((rays[i], rays[(i + 1) % 4]) for i in range(4)), f"F{a}")
    raise ValueError(f"unknown preset {name!r}")


PRESETS = ("point", "P1", "P2", "P1xP1", "An", "A1", "A2", "A3", "Fa(a)")


# ---------------------------------------------------------------------------
# monoid presentations


@dataclass(frozen=True)
class MonoidPresentation:
    """Commutative monoid with an adjoined zero.

    ``relations`` are pairs of exponent vectors over the generators. ``embedding``
    (when present) sends generator ``i`` to a lattice vector, and the monoid is the
    image; ``invertible`` marks generators whose inverse is also a generator
    direction (Laurent variables).
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[Vector, Vector], ...] = ()
    embedding: tuple[Vector, ...] | None = None
    invertible: tuple[bool, ...] | None = None
    ambient_rank: int = 0
    unit_basis: tuple[Vector, ...] | None = None
    pointed: tuple[Vector, ...] = ()
    change: tuple[tuple[int, ...], ...] | None = None  # ambient -> split coordinates
    inequalities: tuple[Vector, ...] = ()  # the pointed cone in split coordinates

    has_zero = True

    @property
    def laurent(self) -> tuple[bool, ...]:
        return self.invertible if self.invertible is not None else (False,) * len(self.generators)

    @classmethod
    def free(cls, names: Sequence[str]) -> "MonoidPresentation":
        n = len(names)
        basis = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(tuple(names), (), basis, (False,) * n, n, (), basis, basis, basis)

    def is_toric(self) -> bool:
        return self.embedding is not None

    def vector(self, word: Sequence[int]) -> Vector:
        if self.embedding is None:
            raise SemiringError("presentation has no lattice embedding")
        out = [0] * self.ambient_rank
        for k, v in zip(word, self.embedding):
            for i in range(self.ambient_rank):
                out[i] += k * v[i]
        return tuple(out)

    def contains(self, m: Sequence[int]) -> bool:
        """Membership of an ambient lattice vector (toric charts only)."""
        return self.express(m) is not None

    def express(self, m: Sequence[int]) -> Vector | None:
        """Exponent vector over the generators representing ``m``, or ``None``."""
        if self.embedding is None:
            raise SemiringError("presentation has no lattice embedding")
        y = il.matvec(self.change, list(m))
        r = len(self.pointed[0]) if self.pointed else self.ambient_rank - len(self.unit_basis or ())
        yp, yl = tuple(y[:r]), y[r:]
        if any(_dot(a, yp) < 0 for a in self.inequalities):
            return None
        coeffs = _decompose(yp, self.pointed, self.inequalities)
        if coeffs is None:
            return None
        word = list(coeffs) + list(yl)
        if self.vector(word) != tuple(m):
            raise AssertionError("decomposition does not reproduce the vector")
        return tuple(word)

    def units(self) -> "LatticeGroup":
        return units(self)


@lru_cache(maxsize=4096)
def _decompose_cached(y: Vector, basis: tuple[Vector, ...], ineq: tuple[Vector, ...]) -> Vector | None:
    # every cone point minus a suitable Hilbert basis element stays in the cone;
    # a functional positive on the basis guarantees termination
    if not any(y):
        return (0,) * len(basis)
    w = _functional(basis)
    for i, h in enumerate(basis):
        rest = tuple(a - b for a, b in zip(y, h))
        if _dot(w, rest) < 0 or any(_dot(a, rest) < 0 for a in ineq):
            continue
        sub = _decompose_cached(rest, basis, ineq)
        if sub is not None:
            return tuple(c + (j == i) for j, c in enumerate(sub))
    return None


@lru_cache(maxsize=256)
def _functional(basis: tuple[Vector, ...]) -> Vector:
    r = len(basis[0])
    for cand in itertools.product(range(-3, 6), repeat=r):
        if all(_dot(cand, h) > 0 for h in basis):
            return cand
    raise SemiringError("no positive functional found for the pointed cone")


def _decompose(y: Vector, basis: tuple[Vector, ...], ineq: tuple[Vector, ...]) -> Vector | None:
    if not basis:
        return () if not any(y) else None
    return _decompose_cached(tuple(y), tuple(basis), tuple(ineq))


@dataclass(frozen=True)
class LatticeGroup:
    """Free abelian group given by a basis of ambient vectors."""

    basis: tuple[Vector, ...]
    ambient_rank: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, m: Sequence[int]) -> list[int] | None:
        if not self.basis:
            return [] if not any(m) else None
        a = [[self.basis[j][i] for j in range(self.rank)] for i in range(self.ambient_rank)]
        return il.solve_integer(a, list(m), self.rank)

    def __contains__(self, m) -> bool:
        return self.coordinates(m) is not None


def _pointed_rays(ineq: Sequence[Vector], r: int) -> list[Vector]:
    """Extremal rays of ``{y in Q^r : a . y >= 0 for a in ineq}`` (pointed, full-dimensional)."""
    rays = set()
    for rows in itertools.combinations(ineq, r - 1):
        ns = il.rational_nullspace([list(a) for a in rows], r) if rows else il.rational_nullspace([], r)
        if len(ns) != 1:
            continue
        v = ns[0]
        for s in (1, -1):
            cand = [s * x for x in v]
            if all(_dot(a, cand) >= 0 for a in ineq):
                rays.add(_primitive(cand))
    return sorted(rays)


def hilbert_basis(ineq: Sequence[Vector], r: int, max_points: int = 200000) -> list[Vector]:
    """Hilbert basis of the integer points of a pointed full-dimensional rational cone."""
    if r == 0:
        return []
    rays = _pointed_rays(ineq, r)
    if not rays:
        raise SemiringError("cone is not pointed")
    box = [sum(abs(u[k]) for u in rays) for k in range(r)]
    count = 1
    for b in box:
        count *= 2 * b + 1
    if count > max_points:
        raise BudgetExceeded("Hilbert basis box too large")
    pts = [p for p in itertools.product(*(range(-b, b + 1) for b in box))
           if any(p) and all(_dot(a, p) >= 0 for a in ineq)]
    out = []
    for h in pts:
        reducible = False
        for a in pts:
            if a == h:
                continue
            d = tuple(x - y for x, y in zip(h, a))
            if any(d) and all(_dot(c, d) >= 0 for c in ineq):
                reducible = True
                break
        if not reducible:
            out.append(h)
    return sorted(out, key=lambda v: (sum(abs(x) for x in v), v))


def dual_monoid(fan: Fan, cone: int | Sequence[Vector]) -> MonoidPresentation:
    """``S_sigma`` for a cone of the fan (an index or an explicit face)."""
    rays = fan.cones[cone] if isinstance(cone, int) else tuple(cone)
    d = fan.rank
    if d > 3:
        raise SemiringError("lattice rank exceeds the Hilbert basis bound (3)")
    if not rays:
        right = il.identity(d)
        change = il.identity(d)
        r = 0
        ineq: list[Vector] = []
    else:
        snf = il.smith_normal_form([list(v) for v in rays])
        r = snf.rank
        right, change = snf.right, snf.right_inv  # m = right . y
        # pairing <m, ray> = ray . right . y; only the first r coordinates of y matter
        rr = il.matmul([list(v) for v in rays], right)
        ineq = [tuple(row[:r]) for row in rr]
    pointed = hilbert_basis(ineq, r)
    lattice_basis = [tuple(right[i][j] for i in range(d)) for j in range(r, d)]
    pointed_amb = [tuple(sum(right[i][k] * h[k] for k in range(r)) for i in range(d)) for h in pointed]
    order = sorted(range(len(pointed)), key=lambda i: (sum(map(abs, pointed_amb[i])), [-x for x in pointed_amb[i]]))
    pointed = [pointed[i] for i in order]
    pointed_amb = [pointed_amb[i] for i in order]
    gens = pointed_amb + lattice_basis
    # binomial relations among the pointed generators
    rels = []
    if pointed:
        a = [[h[k] for h in pointed] for k in range(r)]
        for v in il.integer_kernel(a, len(pointed)):
            plus = tuple(max(x, 0) for x in v) + (0,) * len(lattice_basis)
            minus = tuple(max(-x, 0) for x in v) + (0,) * len(lattice_basis)
            rels.append((plus, minus))
    return MonoidPresentation(
        generators=tuple(monomial_name(v) for v in gens),
        relations=tuple(rels),
        embedding=tuple(gens),
        invertible=(False,) * len(pointed) + (True,) * len(lattice_basis),
        ambient_rank=d,
        unit_basis=tuple(lattice_basis),
        pointed=tuple(pointed),
        change=tuple(map(tuple, change)),
        inequalities=tuple(ineq),
    )


def lattice_monoid(rank: int, invertible_dims: Sequence[int] = ()) -> MonoidPresentation:
    """``N^a x Z^b``: coordinates listed in ``invertible_dims`` are groups."""
    cone = [tuple(int(i == j) for j in range(rank)) for i in range(rank) if i not in invertible_dims]
    return dual_monoid(Fan(rank, (tuple(cone),)), 0)


def units(m: MonoidPresentation, degree_bound: int = 6) -> LatticeGroup:
    if m.embedding is not None:
        return LatticeGroup(tuple(m.unit_basis or ()), m.ambient_rank)
    if not cancellative(m, degree_bound):
        raise SemiringError("units are only computed for cancellative monoids")
    if not m.relations:
        return LatticeGroup((), len(m.generators))
    rw = _rewriting(m)
    # a generator is a unit iff some word w of bounded degree has g w -> 1
    n = len(m.generators)
    unit_gens = []
    for i in range(n):
        for w in _words(n, degree_bound):
            word = tuple(w[j] + (j == i) for j in range(n))
            if rw.reduce_monomial(word)[1] == (0,) * n:
                unit_gens.append(tuple(int(j == i) for j in range(n)))
                break
    return LatticeGroup(tuple(unit_gens), n)


def _words(n, bound):
    for deg in range(bound + 1):
        for w in itertools.product(range(deg + 1), repeat=n):
            if sum(w) == deg:
                yield w


def _rewriting(m: MonoidPresentation) -> TermRewriting:
    ring = PolynomialSemiring(BOOLEAN, m.generators)
    pairs = [(ring.term(a), ring.term(b)) for a, b in m.relations]
    rw = TermRewriting.from_congruence(ring, CongruencePresentation(tuple(pairs)))
    if rw is None:
        raise BudgetExceeded("rewriting system did not complete within budget")
    return rw


def cancellative(m: MonoidPresentation, degree_bound: int = 6) -> bool:
    """Cancellativity: exact via the lattice embedding, otherwise a bounded witness search.

    Raises ``BudgetExceeded`` when the relations do not complete to a confluent system.
    """
    if m.embedding is not None:
        for a, b in m.relations:
            if m.vector(a) != m.vector(b):
                raise SemiringError("embedding does not respect the relations")
        return True
    if not m.relations:
        return True
    rw = _rewriting(m)
    n = len(m.generators)
    normal = sorted({rw.reduce_monomial(w)[1] for w in _words(n, degree_bound)})
    for a, b in itertools.combinations(normal, 2):
        for i in range(n):
            c = tuple(int(j == i) for j in range(n))
            ac = rw.reduce_monomial(tuple(x + y for x, y in zip(a, c)))[1]
            bc = rw.reduce_monomial(tuple(x + y for x, y in zip(b, c)))[1]
            if ac == bc:
                return False
    return True


def cancellation_witness(m: MonoidPresentation, degree_bound: int = 6):
    """``(a, b, c)`` with ``a c = b c`` and ``a != b``, or ``None``."""
    rw = _rewriting(m)
    n = len(m.generators)
    normal = sorted({rw.reduce_monomial(w)[1] for w in _words(n, degree_bound)})
    for a, b in itertools.combinations(normal, 2):
        for i in range(n):
            c = tuple(int(j == i) for j in range(n))
            if rw.reduce_monomial(tuple(x + y for x, y in zip(a, c)))[1] == \
                    rw.reduce_monomial(tuple(x + y for x, y in zip(b, c)))[1]:
                return a, b, c
    return None


# ---------------------------------------------------------------------------
# schemes


@dataclass
class MonoidScheme:
    charts: list[MonoidPresentation]
    overlaps: dict[tuple[int, ...], MonoidPresentation]
    fan: Fan | None = None
    name: str = "scheme"
    connected: dict[tuple[int, ...], bool] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.charts)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(k for k in self.overlaps if len(k) == 2)

    def triples(self) -> list[tuple[int, int, int]]:
        return sorted(k for k in self.overlaps if len(k) == 3)

    def overlap(self, *idx: int) -> MonoidPresentation:
        key = tuple(sorted(set(idx)))
        if len(key) == 1:
            return self.charts[key[0]]
        return self.overlaps[key]

    def nerve_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for a, b in self.pairs():
                for u, v in ((a, b), (b, a)):
                    if u == i and v not in seen:
                        seen.add(v)
                        stack.append(v)
        return len(seen) == self.size

    @property
    def irreducible(self) -> bool:
        """Every pair of charts overlaps and every overlap is connected."""
        return (all((i, j) in self.overlaps for i, j in itertools.combinations(range(self.size), 2))
                and all(self.connected.get(k, True) for k in self.overlaps))


def toric_scheme(fan: Fan | str) -> MonoidScheme:
    if isinstance(fan, str):
        fan = preset_fan(fan)
    charts = [dual_monoid(fan, i) for i in range(len(fan.cones))]
    overlaps = {}
    for k in (2, 3):
        for idx in itertools.combinations(range(len(fan.cones)), k):
            # toric overlaps always contain the torus: nonempty and irreducible
            overlaps[idx] = dual_monoid(fan, fan.intersection(idx))
    return MonoidScheme(charts, overlaps, fan, fan.name, {k: True for k in overlaps})


def localization_map(src: MonoidPresentation, dst: MonoidPresentation) -> list[Vector]:
    """Images of ``src``'s generators written in ``dst``'s generators."""
    out = []
    for v in src.embedding:
        w = dst.express(v)
        if w is None:
            raise SemiringError(f"{monomial_name(v)} is not in the target monoid")
        out.append(w)
    return out


def check_cover_condition(x: MonoidScheme, degree_bound: int = 6) -> bool:
    """Every chart and every finite intersection has a cancellative coordinate monoid."""
    return all(cancellative(m, degree_bound) for m in list(x.charts) + list(x.overlaps.values()))


# ---------------------------------------------------------------------------
# base change and unit groups


def chart_semiring(m: MonoidPresentation, k: Semiring) -> QuotientSemiring:
    ring = PolynomialSemiring(k, m.generators, m.laurent)
    pairs = [(ring.term(a), ring.term(b)) for a, b in m.relations]
    names = [g + "^±" if lau else g for g, lau in zip(m.generators, m.laurent)]
    return quotient(ring, pairs, name=f"{k.name}[{','.join(names)}]")


@dataclass
class BaseChange:
    scheme: MonoidScheme
    base: Semiring
    charts: list[QuotientSemiring]
    overlaps: dict[tuple[int, ...], QuotientSemiring]
    maps: dict[tuple[int, tuple[int, ...]], list[Vector]]


def base_change(x: MonoidScheme, k: Semiring) -> BaseChange:
    if not (isinstance(k, TropicalQ) or k == BOOLEAN):
        raise SemiringError("base change is implemented over the Boolean and rational tropical semifields")
    charts = [chart_semiring(m, k) for m in x.charts]
    overlaps = {key: chart_semiring(m, k) for key, m in x.overlaps.items()}
    maps = {}
    for key, m in x.overlaps.items():
        for i in key:
            if x.charts[i].embedding is not None:
                maps[(i, key)] = localization_map(x.charts[i], m)
    return BaseChange(x, k, charts, overlaps, maps)


@dataclass(frozen=True)
class UnitGroup:
    """``K^x x M^x``: a divisible part ``Q^divisible_rank`` and a lattice part."""

    divisible_rank: int
    lattice: LatticeGroup

    def describe(self) -> str:
        parts = (["Q"] * self.divisible_rank) + (["Z"] * self.lattice.rank)
        return " x ".join(parts) or "1"


def units_of_monoid_semiring(k: Semiring, m: MonoidPresentation) -> UnitGroup:
    if not (isinstance(k, TropicalQ) or k == BOOLEAN):
        raise SemiringError("base must be the Boolean or rational tropical semifield")
    if not cancellative(m):
        raise SemiringError("monoid is not cancellative")
    return UnitGroup(1 if isinstance(k, TropicalQ) else 0, units(m))


def chart_qualifies(k: Semiring, m: MonoidPresentation) -> bool:
    """``k[M]`` is zero-sum free with only trivial idempotent pairs.

    Idempotent ``k`` makes ``k[M]`` idempotent hence zero-sum free; a semifield
    ``k`` and a cancellative ``M`` rule out zero divisors, so idempotent pairs are
    trivial.
    """
    return k.idempotent and k.has_trivial_idempotent_pairs() and cancellative(m)
