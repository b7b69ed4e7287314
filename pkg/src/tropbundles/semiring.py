"""Commutative semirings: the Boolean and rational tropical semifields, finite
semirings given by Cayley tables, and structural predicates on finite ones
(zero-sum freeness, idempotent pairs, nilradical, prime spectrum).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Sequence

NEG_INF = float("-inf")


class SemiringError(ValueError):
    pass


class Semiring:
    """Interface shared by every semiring implementation.

    Elements are plain hashable Python values; the semiring object supplies the
    operations.
    """

    name = "semiring"
    zero: Any = None
    one: Any = None
    idempotent = False
    finite = False

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sum(self, xs: Iterable):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def prod(self, xs: Iterable):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, a, k: int):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def is_zero_sum_free(self) -> bool:
        raise NotImplementedError

    def has_trivial_idempotent_pairs(self) -> bool:
        raise NotImplementedError

    def label(self, a) -> str:
        return str(a)

    def parse(self, value):
        return value


class TropicalQ(Semiring):
    """Max-plus semifield on Q ∪ {-inf}; finite elements are ``Fraction``."""

    name = "tropicalQ"
    zero = NEG_INF
    one = Fraction(0)
    idempotent = True

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        if a == NEG_INF or b == NEG_INF:
            return NEG_INF
        return a + b

    def power(self, a, k):
        if k == 0:
            return self.one
        return NEG_INF if a == NEG_INF else a * k

    def is_unit(self, a) -> bool:
        return a != NEG_INF

    def inverse(self, a):
        if a == NEG_INF:
            raise SemiringError("-inf is not invertible")
        return -a

    def is_zero_sum_free(self) -> bool:
        return True

    def has_trivial_idempotent_pairs(self) -> bool:
        # a semifield has no zero divisors
        return True

    def leq(self, a, b) -> bool:
        return a <= b

    def label(self, a) -> str:
        return "-inf" if a == NEG_INF else str(a)

    def parse(self, value):
        if isinstance(value, str) and value.strip().lower() in ("-inf", "-infinity", "neg_inf"):
            return NEG_INF
        if value is None:
            return NEG_INF
        if isinstance(value, float) and value == NEG_INF:
            return NEG_INF
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, TropicalQ)

    def __hash__(self):
        return hash("tropicalQ")

    def __repr__(self):
        return "TropicalQ()"


TROPICAL = TropicalQ()


def tfrac(x) -> Any:
    """Coerce to a tropical element (``Fraction`` or ``NEG_INF``)."""
    return TROPICAL.parse(x)


@dataclass(frozen=True, eq=False)
class FiniteTable(Semiring):
    """A finite commutative semiring on ``range(n)`` given by Cayley tables."""

    labels: tuple[str, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    name: str = "finite"
    finite = True

    def __post_init__(self):
        n = len(self.labels)
        for tab in (self.add_table, self.mul_table):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise SemiringError("tables must be n x n")
            if any(not 0 <= v < n for row in tab for v in row):
                raise SemiringError("table entry out of range")

    # construction -------------------------------------------------------

    @classmethod
    def from_tables(cls, add, mul, zero=0, one=1, labels=None, name="finite", validate=True):
        n = len(add)
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        t = cls(labels, tuple(map(tuple, add)), tuple(map(tuple, mul)), zero, one, name)
        if validate:
            t.validate()
        return t

    @classmethod
    def from_json(cls, data: dict) -> "FiniteTable":
        elements = [str(e) for e in data["elements"]]
        return cls.from_tables(data["add"], data["mul"], data["zero"], data["one"], elements,
                               name=data.get("name", "finite"))

    def to_json(self) -> dict:
        return {
            "elements": list(self.labels),
            "add": [list(r) for r in self.add_table],
            "mul": [list(r) for r in self.mul_table],
            "zero": self.zero,
            "one": self.one,
        }

    @classmethod
    def boolean(cls) -> "FiniteTable":
        return cls.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 1]], labels=("0", "1"), name="boolean")

    @classmethod
    def from_function(cls, elements: Sequence, add, mul, zero, one, name="finite", label=str):
        idx = {e: i for i, e in enumerate(elements)}
        addt = [[idx[add(a, b)] for b in elements] for a in elements]
        mult = [[idx[mul(a, b)] for b in elements] for a in elements]
        return cls.from_tables(addt, mult, idx[zero], idx[one], [label(e) for e in elements], name)

    # semiring interface ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    @cached_property
    def idempotent(self) -> bool:  # type: ignore[override]
        return all(self.add_table[a][a] == a for a in self.elements)

    def label(self, a) -> str:
        return self.labels[a]

    def parse(self, value):
        if isinstance(value, int) and 0 <= value < self.size:
            return value
        return self.labels.index(str(value))

    def element(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if any(self.mul(a, b) == self.one for b in self.elements))

    def is_unit(self, a) -> bool:
        return a in self.units

    def inverse(self, a):
        for b in self.elements:
            if self.mul(a, b) == self.one:
                return b
        raise SemiringError(f"{self.label(a)} is not a unit")

    def is_zero_sum_free(self) -> bool:
        return is_zero_sum_free(self)

    def has_trivial_idempotent_pairs(self) -> bool:
        return all(p.trivial for p in idempotent_pairs(self))

    def leq(self, a, b) -> bool:
        return self.add(a, b) == b

    def validate(self) -> None:
        """Exhaustive axiom check; raises ``SemiringError`` on the first failure."""
        E = self.elements
        A, M = self.add_table, self.mul_table
        z, o = self.zero, self.one
        for a in E:
            if A[a][z] != a:
                raise SemiringError(f"zero is not additive identity at {a}")
            if M[a][o] != a:
                raise SemiringError(f"one is not multiplicative identity at {a}")
            if M[a][z] != z:
                raise SemiringError(f"zero is not absorbing at {a}")
            for b in E:
                if A[a][b] != A[b][a] or M[a][b] != M[b][a]:
                    raise SemiringError(f"not commutative at ({a},{b})")
                for c in E:
                    if A[A[a][b]][c] != A[a][A[b][c]]:
                        raise SemiringError(f"addition not associative at {(a, b, c)}")
                    if M[M[a][b]][c] != M[a][M[b][c]]:
                        raise SemiringError(f"multiplication not associative at {(a, b, c)}")
                    if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                        raise SemiringError(f"not distributive at {(a, b, c)}")

    def __eq__(self, other):
        return (isinstance(other, FiniteTable) and self.add_table == other.add_table
                and self.mul_table == other.mul_table and self.zero == other.zero and self.one == other.one)

    def __hash__(self):
        return hash((self.add_table, self.mul_table, self.zero, self.one))

    def __repr__(self):
        return f"FiniteTable({self.name}, n={self.size})"


BOOLEAN = FiniteTable.boolean()


def product_table(r: FiniteTable, s: FiniteTable) -> FiniteTable:
    pairs = list(itertools.product(r.elements, s.elements))
    return FiniteTable.from_function(
        pairs,
        lambda a, b: (r.add(a[0], b[0]), s.add(a[1], b[1])),
        lambda a, b: (r.mul(a[0], b[0]), s.mul(a[1], b[1])),
        (r.zero, s.zero), (r.one, s.one),
        name=f"{r.name}x{s.name}",
        label=lambda p: f"({r.label(p[0])},{s.label(p[1])})",
    )


def chain_semiring(n: int) -> FiniteTable:
    """``{0, 1, ..., n-1}`` with saturating addition and multiplication."""
    cap = n - 1
    return FiniteTable.from_function(list(range(n)), lambda a, b: min(a + b, cap),
                                     lambda a, b: min(a * b, cap), 0, 1, name=f"N<={cap}")


def dual_numbers_boolean() -> FiniteTable:
    """B[eps]/<eps^2 = 0, 1 + eps = 1> on {0, eps, 1}."""
    # 0 -> 0, 1 -> eps, 2 -> 1
    add = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    mul = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    return FiniteTable.from_tables(add, mul, zero=0, one=2, labels=("0", "e", "1"), name="B[e]")


def z_mod_2() -> FiniteTable:
    return FiniteTable.from_tables([[0, 1], [1, 0]], [[0, 0], [0, 1]], labels=("0", "1"), name="Z/2")


def boolean_idempotent_x() -> FiniteTable:
    """B[x]/<x^2 = x> on {0, 1, x, 1+x}."""
    elems = [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]  # subsets of {1, x}

    def mul(a, b):
        return frozenset(min(i + j, 1) for i in a for j in b)

    return FiniteTable.from_function(
        elems, lambda a, b: a | b, mul, frozenset(), frozenset({0}), name="B[x]/<x2=x>",
        label=lambda s: "+".join(("1", "x")[i] for i in sorted(s)) or "0",
    )


# ---------------------------------------------------------------------------
# congruences and quotients of finite semirings


def congruence_closure(r: FiniteTable, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Smallest congruence containing ``pairs``; returns a class representative per element."""
    parent = list(r.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a == b:
            return False
        if a < b:
            parent[b] = a
        else:
            parent[a] = b
        return True

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for a in r.elements:
            for b in r.elements:
                if a < b and find(a) == find(b):
                    for c in r.elements:
                        if union(r.add(a, c), r.add(b, c)):
                            changed = True
                        if union(r.mul(a, c), r.mul(b, c)):
                            changed = True
    return [find(x) for x in r.elements]


def quotient_table(r: FiniteTable, classes: Sequence[int], name: str | None = None) -> tuple[FiniteTable, list[int]]:
    """Quotient semiring by a congruence given as representatives; also returns the projection."""
    reps = sorted(set(classes))
    idx = {c: i for i, c in enumerate(reps)}
    proj = [idx[c] for c in classes]
    add = [[proj[r.add(a, b)] for b in reps] for a in reps]
    mul = [[proj[r.mul(a, b)] for b in reps] for a in reps]
    labels = [r.label(a) for a in reps]
    q = FiniteTable.from_tables(add, mul, proj[r.zero], proj[r.one], labels, name or f"{r.name}/~")
    return q, proj


def bourne_congruence(r: FiniteTable, ideal: Iterable[int]) -> list[int]:
    """``x ~ y`` iff ``x + i = y + j`` for some ``i, j`` in the ideal."""
    ideal = list(ideal)
    pairs = [(x, y) for x in r.elements for y in r.elements
             if any(r.add(x, i) == r.add(y, j) for i in ideal for j in ideal)]
    return congruence_closure(r, pairs)


def localization_table(r: FiniteTable, mult_set: Iterable[int]) -> tuple[FiniteTable, list[int]]:
    """``S^-1 R`` by exhaustive cross-multiplication on fractions; returns it with ``a -> a/1``."""
    S = sorted(set(mult_set))
    for s in S:
        for t in S:
            if r.mul(s, t) not in S:
                raise SemiringError("not a multiplicative subset")
    if r.one not in S:
        raise SemiringError("multiplicative subset must contain 1")
    fracs = [(a, s) for a in r.elements for s in S]

    def same(f, g):
        (a, s), (b, t) = f, g
        return any(r.mul(u, r.mul(a, t)) == r.mul(u, r.mul(b, s)) for u in S)

    reps: list[tuple[int, int]] = []
    cls: dict[tuple[int, int], int] = {}
    for f in fracs:
        for i, g in enumerate(reps):
            if same(f, g):
                cls[f] = i
                break
        else:
            cls[f] = len(reps)
            reps.append(f)

    def add(i, j):
        (a, s), (b, t) = reps[i], reps[j]
        return cls[(r.add(r.mul(a, t), r.mul(b, s)), r.mul(s, t))]

    def mul(i, j):
        (a, s), (b, t) = reps[i], reps[j]
        return cls[(r.mul(a, b), r.mul(s, t))]

    n = len(reps)
    labels = [r.label(a) if s == r.one else f"{r.label(a)}/{r.label(s)}" for a, s in reps]
    table = FiniteTable.from_tables([[add(i, j) for j in range(n)] for i in range(n)],
                                    [[mul(i, j) for j in range(n)] for i in range(n)],
                                    cls[(r.zero, r.one)], cls[(r.one, r.one)], labels, f"{r.name}_S")
    return table, [cls[(a, r.one)] for a in r.elements]


def multiplicative_closure(r: FiniteTable, gens: Iterable[int]) -> frozenset[int]:
    out = {r.one}
    frontier = list(out)
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = r.mul(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


# ---------------------------------------------------------------------------
# structural predicates


def is_zero_sum_free(r: Semiring) -> bool:
    if isinstance(r, FiniteTable):
        return all(r.add(a, b) != r.zero or (a == r.zero and b == r.zero) for a in r.elements for b in r.elements)
    return r.is_zero_sum_free()


@dataclass(frozen=True)
class IdempotentPair:
    e: Any
    f: Any
    trivial: bool = True


def is_idempotent_pair(r: FiniteTable, e: int, f: int) -> bool:
    return r.mul(e, f) == r.zero and r.add(e, f) == r.one


def idempotent_pairs(r: FiniteTable) -> list[IdempotentPair]:
    triv = {r.zero, r.one}
    return [IdempotentPair(e, f, e in triv and f in triv)
            for e in r.elements for f in r.elements if is_idempotent_pair(r, e, f)]


@dataclass(frozen=True)
class SemiringIdeal:
    semiring: FiniteTable
    elements: frozenset[int]
    prime: bool = False
    saturated: bool = False

    def __contains__(self, x):
        return x in self.elements

    def labels(self) -> list[str]:
        return [self.semiring.label(a) for a in sorted(self.elements)]


def is_ideal(r: FiniteTable, subset: Iterable[int]) -> bool:
    s = set(subset)
    if r.zero not in s:
        return False
    return all(r.add(a, b) in s for a in s for b in s) and all(r.mul(a, x) in s for a in s for x in r.elements)


def is_saturated(r: FiniteTable, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(y in s for x in s for y in r.elements if r.add(x, y) in s)


def is_prime(r: FiniteTable, subset: Iterable[int]) -> bool:
    s = set(subset)
    if r.one in s or not is_ideal(r, s):
        return False
    return all(a in s or b in s for a in r.elements for b in r.elements if r.mul(a, b) in s)


def make_ideal(r: FiniteTable, subset: Iterable[int]) -> SemiringIdeal:
    s = frozenset(subset)
    return SemiringIdeal(r, s, is_prime(r, s), is_saturated(r, s))


def nilradical(r: FiniteTable) -> SemiringIdeal:
    n = r.size
    nil = frozenset(a for a in r.elements if any(r.power(a, k) == r.zero for k in range(1, n + 1)))
    ideal = make_ideal(r, nil)
    if not ideal.saturated or not is_ideal(r, nil):
        raise SemiringError("nilradical failed the saturated-ideal check")
    return ideal


def lift_idempotent_pair(r: FiniteTable, pair: IdempotentPair | tuple[int, int]) -> IdempotentPair:
    """Lift a pair that is idempotent modulo the nilradical to a genuine idempotent pair.

    Tries ``(u e^k, u f^k)`` over ``k <= |r|`` and units ``u`` first, then every
    idempotent pair of the table.
    """
    e, f = (pair.e, pair.f) if isinstance(pair, IdempotentPair) else pair
    nil = nilradical(r)
    classes = bourne_congruence(r, nil.elements)
    if classes[r.mul(e, f)] != classes[r.zero] or classes[r.add(e, f)] != classes[r.one]:
        raise SemiringError("input is not an idempotent pair modulo the nilradical")
    triv = {r.zero, r.one}
    for k in range(1, r.size + 2):
        ek, fk = r.power(e, k), r.power(f, k)
        if r.mul(ek, fk) != r.zero:
            continue
        s = r.add(ek, fk)
        for u in r.units:
            if r.mul(u, s) == r.one:
                le, lf = r.mul(u, ek), r.mul(u, fk)
                if classes[le] == classes[e] and classes[lf] == classes[f] and is_idempotent_pair(r, le, lf):
                    return IdempotentPair(le, lf, le in triv and lf in triv)
    # powers need not reach the lift (e.g. 2 ~ 1 with 2^k = 2); the table is finite, so search it
    for p in idempotent_pairs(r):
        if classes[p.e] == classes[e] and classes[p.f] == classes[f]:
            return p
    raise SemiringError("no idempotent pair of the semiring lifts the input")


@dataclass(frozen=True)
class SpectrumReport:
    primes: list[SemiringIdeal]
    connected: bool
    irreducible: bool
    saturated_primes: list[SemiringIdeal] = field(default_factory=list)


def spec_primes(r: FiniteTable) -> SpectrumReport:
    others = [a for a in r.elements if a != r.zero]
    primes = []
    for k in range(len(others) + 1):
        for combo in itertools.combinations(others, k):
            s = frozenset((r.zero,) + combo)
            if is_prime(r, s):
                primes.append(make_ideal(r, s))
    pts = range(len(primes))
    # closed sets: intersections of V(a) = {p : a in p}
    basic = [frozenset(i for i in pts if a in primes[i].elements) for a in r.elements]
    closed = {frozenset(pts)}
    for v in basic:
        closed |= {c & v for c in closed}
    full = frozenset(pts)
    connected = bool(primes) and not any(c and c != full and (full - c) in closed for c in closed)
    # finite space: irreducible iff a unique minimal prime (a generic point)
    minimal = [p for p in primes if not any(q.elements < p.elements for q in primes)]
    irreducible = len(minimal) == 1
    return SpectrumReport(primes, connected, irreducible, [p for p in primes if p.saturated])


def has_zero_divisors(r: FiniteTable) -> bool:
    return any(r.mul(a, b) == r.zero for a in r.elements for b in r.elements if a != r.zero and b != r.zero)


# ---------------------------------------------------------------------------
# corpus of small semirings


def enumerate_semiring_tables(size: int) -> list[FiniteTable]:
    """All commutative semirings on ``range(size)`` with 0 = 0 and 1 = 1, up to isomorphism."""
    if size < 2:
        return []
    n = size
    free_add = [(a, b) for a in range(1, n) for b in range(a, n)]
    free_mul = [(a, b) for a in range(2, n) for b in range(a, n)]

    def build(entries, free, base):
        t = [row[:] for row in base]
        for (a, b), v in zip(free, entries):
            t[a][b] = t[b][a] = v
        return t

    add_base = [[b if a == 0 else (a if b == 0 else 0) for b in range(n)] for a in range(n)]
    mul_base = [[0 if 0 in (a, b) else (b if a == 1 else (a if b == 1 else 0)) for b in range(n)] for a in range(n)]

    def assoc(t):
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    adds = [t for t in (build(e, free_add, add_base) for e in itertools.product(range(n), repeat=len(free_add)))
            if assoc(t)]
    muls = [t for t in (build(e, free_mul, mul_base) for e in itertools.product(range(n), repeat=len(free_mul)))
            if assoc(t)]
    seen = set()
    out = []
    perms = [(0, 1) + p for p in itertools.permutations(range(2, n))]
    for A in adds:
        for M in muls:
            if all(M[a][A[b][c]] == A[M[a][b]][M[a][c]] for a in range(n) for b in range(n) for c in range(n)):
                key = min(_relabel(A, p) + _relabel(M, p) for p in perms)
                if key in seen:
                    continue
                seen.add(key)
                out.append(FiniteTable.from_tables(A, M, 0, 1, name=f"S{n}_{len(out)}", validate=False))
    return out


def _relabel(table, p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(tuple(p[table[inv[a]][inv[b]]] for b in range(len(p))) for a in range(len(p)))
