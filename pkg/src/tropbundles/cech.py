"""Čech 1-cocycles with values in torus units, GL_n and S_n on toric covers.

A unit on an overlap ``U_ij`` of a toric scheme base-changed to the rational
tropical semifield is a pair ``(q, m)``: a tropical scalar ``q`` in Q and a
character ``m`` of the torus that is invertible on the overlap, i.e. ``m`` lies in
``sigma_ij^perp``. Over the Boolean semifield or at the monoid level ``q`` is 0.

Cocycles are stored on ordered pairs and satisfy ``theta_ij theta_jk = theta_ik``;
``phi`` acts by ``theta_ij -> phi_i theta_ij phi_j^-1``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intlinalg as il
from .linalg import (GLnFactorization, InvariantError, gln_compose, gln_identity, gln_inverse,
                     perm_compose, perm_identity, perm_inverse)
from .monoid import (LatticeGroup, MonoidScheme, check_cover_condition, chart_qualifies, monomial_name,
                     toric_scheme)
from .semiring import BOOLEAN, TROPICAL, Semiring, SemiringError

BASES = ("monoid", "boolean", "tropicalQ")


@dataclass(frozen=True, order=True)
class Unit:
    q: Fraction
    m: tuple[int, ...]

    def __mul__(self, other: "Unit") -> "Unit":
        return Unit(self.q + other.q, tuple(a + b for a, b in zip(self.m, other.m)))

    def inv(self) -> "Unit":
        return Unit(-self.q, tuple(-a for a in self.m))

    def label(self) -> str:
        mono = monomial_name(self.m)
        if self.q == 0:
            return mono
        return f"({self.q})*{mono}" if mono != "1" else f"({self.q})"

    def to_json(self) -> list:
        return [str(self.q), list(self.m)]


class UnitOps(Semiring):
    """Multiplicative group of units, in the shape ``gln_compose`` expects."""

    def __init__(self, rank: int):
        self.one = Unit(Fraction(0), (0,) * rank)

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        return a.inv()


@dataclass
class CechCover:
    """A toric cover with its unit-group data; ``base`` is one of ``BASES``."""

    scheme: MonoidScheme
    base: str = "tropicalQ"

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"base must be one of {BASES}")
        self.rank = self.scheme.fan.rank if self.scheme.fan is not None else self.scheme.charts[0].ambient_rank
        self.ops = UnitOps(self.rank)

    @classmethod
    def preset(cls, name: str, base: str = "tropicalQ") -> "CechCover":
        return cls(toric_scheme(name), base)

    @property
    def divisible(self) -> bool:
        return self.base == "tropicalQ"

    @property
    def size(self) -> int:
        return self.scheme.size

    def pairs(self) -> list[tuple[int, int]]:
        return self.scheme.pairs()

    def ordered_pairs(self) -> list[tuple[int, int]]:
        return sorted([(i, j) for i, j in self.pairs()] + [(j, i) for i, j in self.pairs()])

    def triples(self) -> list[tuple[int, int, int]]:
        return self.scheme.triples()

    def lattice(self, *idx: int) -> LatticeGroup:
        return self.scheme.overlap(*idx).units()

    def contains(self, key: Sequence[int], u: Unit) -> bool:
        if not self.divisible and u.q != 0:
            return False
        return u.m in self.lattice(*key)

    def unit(self, q=0, m=None) -> Unit:
        return Unit(Fraction(q), tuple(m) if m is not None else (0,) * self.rank)

    def same_shape(self, other: "CechCover") -> bool:
        return self.scheme.fan == other.scheme.fan and self.size == other.size

    def semiring(self) -> Semiring:
        return {"boolean": BOOLEAN, "tropicalQ": TROPICAL}.get(self.base, BOOLEAN)

    def qualifies(self) -> bool:
        k = self.semiring()
        return all(chart_qualifies(k, m) for m in self.scheme.charts)


@dataclass(frozen=True)
class CechCocycle:
    cover: CechCover
    rank: int
    values: dict  # (i, j) -> GLnFactorization over Unit

    @classmethod
    def from_upper(cls, cover: CechCover, rank: int, upper: dict) -> "CechCocycle":
        """Fill ``theta_ji = theta_ij^-1`` from values given on ``i < j``."""
        values = {}
        for (i, j), f in upper.items():
            if i > j:
                i, j, f = j, i, gln_inverse(f, cover.ops)
            values[(i, j)] = f
            values[(j, i)] = gln_inverse(f, cover.ops)
        return cls(cover, rank, values)

    @classmethod
    def line(cls, cover: CechCover, upper: dict) -> "CechCocycle":
        return cls.from_upper(cover, 1, {k: GLnFactorization((u,), (0,)) for k, u in upper.items()})

    @classmethod
    def trivial(cls, cover: CechCover, rank: int) -> "CechCocycle":
        return cls.from_upper(cover, rank, {p: gln_identity(rank, cover.ops) for p in cover.pairs()})

    def __getitem__(self, key) -> GLnFactorization:
        i, j = key
        if i == j:
            return gln_identity(self.rank, self.cover.ops)
        return self.values[(i, j)]

    def unit(self, i, j) -> Unit:
        """The value of a line cocycle."""
        return self[i, j].diag[0]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "values": {f"{i},{j}": {"perm": list(f.perm), "diag": [u.to_json() for u in f.diag]}
                       for (i, j), f in sorted(self.values.items()) if i < j},
        }

    @classmethod
    def from_json(cls, cover: CechCover, data: dict) -> "CechCocycle":
        upper = {}
        for key, v in data["values"].items():
            i, j = (int(x) for x in key.split(","))
            diag = tuple(Unit(Fraction(q), tuple(m)) for q, m in v["diag"])
            upper[(i, j)] = GLnFactorization(diag, tuple(v["perm"]))
        return cls.from_upper(cover, int(data["rank"]), upper)


@dataclass(frozen=True)
class PermCocycle:
    cover: CechCover
    rank: int
    values: dict  # (i, j) -> permutation tuple

    def __getitem__(self, key):
        i, j = key
        return perm_identity(self.rank) if i == j else self.values[(i, j)]


def _check_cover(c, c2) -> None:
    if not c.cover.same_shape(c2.cover):
        raise ValueError("cover mismatch")


def validate_cocycle(c: CechCocycle | PermCocycle) -> bool:
    cover = c.cover
    nerve = set(cover.ordered_pairs())
    for key in c.values:
        if key not in nerve:
            raise ValueError(f"value on {key}, which is not an overlap of the cover")
    if set(c.values) != nerve:
        return False
    if isinstance(c, PermCocycle):
        mul, one = perm_compose, perm_identity(c.rank)
        for (i, j), s in c.values.items():
            if mul(s, c[j, i]) != one:
                return False
        for i, j, k in cover.triples():
            for a, b, d in itertools.permutations((i, j, k)):
                if mul(c[a, b], c[b, d]) != c[a, d]:
                    return False
        return True
    ops = cover.ops
    for (i, j), f in c.values.items():
        if f.n != c.rank or not all(cover.contains((i, j), u) for u in f.diag):
            return False
        if gln_compose(f, c[j, i], ops) != gln_identity(c.rank, ops):
            return False
    for i, j, k in cover.triples():
        for a, b, d in itertools.permutations((i, j, k)):
            if gln_compose(c[a, b], c[b, d], ops) != c[a, d]:
                return False
    return True


def conjugate(c: CechCocycle, phi: dict) -> CechCocycle:
    """``phi_i theta_ij phi_j^-1``."""
    ops = c.cover.ops
    values = {(i, j): gln_compose(gln_compose(phi[i], f, ops), gln_inverse(phi[j], ops), ops)
              for (i, j), f in c.values.items()}
    return CechCocycle(c.cover, c.rank, values)


def direct_sum(a: CechCocycle, b: CechCocycle) -> CechCocycle:
    _check_cover(a, b)
    n = a.rank
    values = {}
    for key in a.values:
        f, g = a.values[key], b.values[key]
        values[key] = GLnFactorization(f.diag + g.diag, f.perm + tuple(n + p for p in g.perm))
    return CechCocycle(a.cover, a.rank + b.rank, values)


def tensor_lines(a: CechCocycle, b: CechCocycle) -> CechCocycle:
    _check_cover(a, b)
    if a.rank != 1 or b.rank != 1:
        raise ValueError("tensor_lines takes rank-1 cocycles")
    return CechCocycle(a.cover, 1, {k: GLnFactorization((a.values[k].diag[0] * b.values[k].diag[0],), (0,))
                                    for k in a.values})


def dual_line(a: CechCocycle) -> CechCocycle:
    return CechCocycle(a.cover, 1, {k: GLnFactorization((f.diag[0].inv(),), (0,)) for k, f in a.values.items()})


def perm_part(c: CechCocycle) -> PermCocycle:
    if not c.cover.qualifies():
        raise SemiringError("chart semirings are not zero-sum free with trivial idempotent pairs")
    return PermCocycle(c.cover, c.rank, {k: f.perm for k, f in c.values.items()})


# ---------------------------------------------------------------------------
# solving phi_i[a] - phi_j[b] = target in the unit groups


def _solve_unit_system(cover: CechCover, slots: Sequence[tuple[int, int]],
                       equations: Sequence[tuple[tuple[int, int], tuple[int, int], Unit]]):
    """Find ``X[slot]`` in the chart unit groups with ``X[s] - X[t] = target`` (additively).

    Slots are ``(chart, index)``. Returns a dict or ``None``.
    """
    idx = {s: k for k, s in enumerate(slots)}
    # divisible part over Q
    qsol = [Fraction(0)] * len(slots)
    if cover.divisible:
        rows = []
        rhs = []
        for s, t, u in equations:
            row = [0] * len(slots)
            row[idx[s]] += 1
            row[idx[t]] -= 1
            rows.append(row)
            rhs.append(u.q)
        qsol = il.solve_rational(rows, rhs, len(slots)) if rows else qsol
        if qsol is None:
            return None
    elif any(u.q != 0 for _, _, u in equations):
        return None
    # lattice part over Z: X[s] = B_chart z_s
    offsets, bases = {}, {}
    total = 0
    for s in slots:
        B = cover.lattice(s[0]).basis
        offsets[s] = total
        bases[s] = B
        total += len(B)
    d = cover.rank
    rows, rhs = [], []
    for s, t, u in equations:
        for coord in range(d):
            row = [0] * total
            for b_i, b in enumerate(bases[s]):
                row[offsets[s] + b_i] += b[coord]
            for b_i, b in enumerate(bases[t]):
                row[offsets[t] + b_i] -= b[coord]
            rows.append(row)
            rhs.append(u.m[coord])
    if total == 0:
        if any(rhs):
            return None
        zsol = []
    else:
        zsol = il.solve_integer(rows, rhs, total) if rows else [0] * total
        if zsol is None:
            return None
    out = {}
    for s in slots:
        m = [0] * d
        for b_i, b in enumerate(bases[s]):
            for coord in range(d):
                m[coord] += zsol[offsets[s] + b_i] * b[coord]
        out[s] = Unit(Fraction(qsol[idx[s]]), tuple(m))
    return out


@dataclass(frozen=True)
class Equivalence:
    phi: dict

    def __bool__(self):
        return True


DISTINCT = "distinct"
UNKNOWN = "unknown-at-bound"


def _components(cover: CechCover) -> list[list[int]]:
    parent = list(range(cover.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, j in cover.pairs():
        parent[find(j)] = find(i)
    comps: dict[int, list[int]] = {}
    for v in range(cover.size):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def spanning_tree(cover: CechCover) -> list[tuple[int, int]]:
    """Lexicographically least spanning forest of the nerve (Kruskal on sorted edges)."""
    parent = list(range(cover.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    tree = []
    for i, j in sorted(cover.pairs()):
        a, b = find(i), find(j)
        if a != b:
            parent[b] = a
            tree.append((i, j))
    return tree


def _tree_order(cover: CechCover, tree, root) -> list[tuple[int, int]]:
    """Edges ``(parent, child)`` in BFS order from ``root``."""
    adj: dict[int, list[int]] = {}
    for i, j in tree:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    order, seen, queue = [], {root}, [root]
    while queue:
        v = queue.pop(0)
        for w in sorted(adj.get(v, [])):
            if w not in seen:
                seen.add(w)
                order.append((v, w))
                queue.append(w)
    return order


def cocycle_equivalent(c: CechCocycle, c2: CechCocycle, search_budget: int = 10 ** 5):
    """A 0-cochain ``phi`` with ``c2 = phi c phi^-1``, or ``DISTINCT`` / ``UNKNOWN``."""
    _check_cover(c, c2)
    if c.rank != c2.rank:
        return DISTINCT
    cover, n = c.cover, c.rank
    comps = _components(cover)
    tree = spanning_tree(cover)
    if math.factorial(n) ** len(comps) > search_budget:
        return UNKNOWN
    orders = [_tree_order(cover, tree, comp[0]) for comp in comps]
    for roots in itertools.product(itertools.permutations(range(n)), repeat=len(comps)):
        pi = {}
        for comp, root_perm, order in zip(comps, roots, orders):
            pi[comp[0]] = tuple(root_perm)
            for i, j in order:
                # pi_j = c2_ij^-1 pi_i c_ij
                pi[j] = perm_compose(perm_compose(perm_inverse(c2[i, j].perm), pi[i]), c[i, j].perm)
        if any(perm_compose(perm_compose(pi[i], c[i, j].perm), perm_inverse(pi[j])) != c2[i, j].perm
               for i, j in cover.pairs()):
            continue
        phi_perm = {i: GLnFactorization((cover.ops.one,) * n, pi[i]) for i in range(cover.size)}
        mid = conjugate(c, phi_perm)
        diag = _diagonal_gauge(mid, c2)
        if diag is None:
            continue
        phi = {i: gln_compose(diag[i], phi_perm[i], cover.ops) for i in range(cover.size)}
        if conjugate(c, phi).values != c2.values:
            raise InvariantError("equivalence witness failed verification")
        return Equivalence(phi)
    return DISTINCT


def _diagonal_gauge(c: CechCocycle, c2: CechCocycle) -> dict | None:
    """Diagonal ``D`` with ``c2 = D c D^-1`` when both have the same permutation parts."""
    cover, n = c.cover, c.rank
    slots = [(i, r) for i in range(cover.size) for r in range(n)]
    eqs = []
    for i, j in cover.pairs():
        f, g = c[i, j], c2[i, j]
        sinv = perm_inverse(f.perm)
        for r in range(n):
            # g.diag[r] = D_i[r] f.diag[r] D_j[sigma^-1 r]^-1
            eqs.append(((i, r), (j, sinv[r]), g.diag[r] * f.diag[r].inv()))
    sol = _solve_unit_system(cover, slots, eqs)
    if sol is None:
        return None
    return {i: GLnFactorization(tuple(sol[(i, r)] for r in range(n)), perm_identity(n))
            for i in range(cover.size)}


def decompose_into_lines(c: CechCocycle) -> list[CechCocycle]:
    """Conjugate to diagonal form along the least spanning tree and read off the lines."""
    cover, n = c.cover, c.rank
    if not cover.scheme.nerve_connected():
        raise SemiringError("nerve is disconnected")
    if not cover.scheme.irreducible:
        raise SemiringError("scheme is not irreducible (some overlap empty or disconnected)")
    p = perm_part(c)
    tree = spanning_tree(cover)
    pi = {0: perm_identity(n)}
    for i, j in _tree_order(cover, tree, 0):
        # want pi_i s_ij pi_j^-1 = id
        pi[j] = perm_compose(pi[i], p[i, j])
    for i, j in cover.pairs():
        if perm_compose(perm_compose(pi[i], p[i, j]), perm_inverse(pi[j])) != perm_identity(n):
            raise SemiringError("permutation part is not a coboundary; the input is not on an irreducible scheme")
    phi = {i: GLnFactorization((cover.ops.one,) * n, pi[i]) for i in range(cover.size)}
    d = conjugate(c, phi)
    return [CechCocycle(cover, 1, {k: GLnFactorization((f.diag[r],), (0,)) for k, f in d.values.items()})
            for r in range(n)]


# ---------------------------------------------------------------------------
# Picard group


@dataclass
class PicardGroup:
    cover: CechCover
    free_rank: int
    torsion: tuple[int, ...]
    divisible_rank: int
    generators: list[CechCocycle]
    _kernel: list = field(repr=False, default_factory=list)
    _right: list = field(repr=False, default_factory=list)
    _rank_b: int = 0
    _signs: list = field(repr=False, default_factory=list)
    _zlayout: list = field(repr=False, default_factory=list)
    _invariants: tuple = ()

    def describe(self) -> str:
        parts = ["Q"] * self.divisible_rank
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def generator_labels(self) -> list[str]:
        out = []
        for g in self.generators:
            out.append(", ".join(f"theta_{i}{j} = {g.unit(i, j).label()}" for i, j in self.cover.pairs()))
        return out

    def class_of(self, c: CechCocycle) -> tuple[int, ...]:
        """Coordinates of a line cocycle: free part, then torsion residues.

        The divisible part is ignored (it is always zero on covers with a complete
        nerve); lattice data outside the overlap lattices raises ``ValueError``.
        """
        if c.rank != 1:
            raise ValueError("class_of takes a line cocycle")
        z = _z_coords(self.cover, self._zlayout, {k: c.unit(*k).m for k in self.cover.pairs()})
        if not self._kernel:
            return ()
        K = self._kernel  # basis vectors of Z^1 in z coordinates
        a = [[K[j][i] for j in range(len(K))] for i in range(len(z))]
        x = il.solve_integer(a, z, len(K))
        if x is None:
            raise ValueError("not a cocycle")
        u = [sum(x[k] * self._right[k][j] for k in range(len(x))) for j in range(len(x))]
        rb = self._rank_b
        free = [s * v for s, v in zip(self._signs, u[rb:])]
        tors = [u[i] % t for i, t in self._tors_index()]
        return tuple(free + tors)

    def _tors_index(self):
        return [(i, t) for i, t in enumerate(self._invariants) if t > 1]

    def element(self, coords: Sequence[int]) -> CechCocycle:
        """Line cocycle with the given free coordinates (torsion part zero)."""
        out = CechCocycle.trivial(self.cover, 1)
        for k, g in zip(coords, self.generators):
            for _ in range(abs(k)):
                out = tensor_lines(out, g if k > 0 else dual_line(g))
        return out


def _z_layout(cover: CechCover):
    layout = []
    for key in cover.pairs():
        layout.append((key, cover.lattice(*key).basis))
    return layout


def _z_coords(cover, layout, values: dict) -> list[int]:
    z = []
    for key, basis in layout:
        m = values[key]
        if not basis:
            if any(m):
                raise ValueError(f"value on {key} is not a unit of the overlap")
            continue
        a = [[b[i] for b in basis] for i in range(cover.rank)]
        sol = il.solve_integer(a, list(m), len(basis))
        if sol is None:
            raise ValueError(f"value on {key} is not a unit of the overlap")
        z.extend(sol)
    return z


def picard_group(x: CechCover | MonoidScheme | str, base: str = "tropicalQ") -> PicardGroup:
    cover = x if isinstance(x, CechCover) else (CechCover.preset(x, base) if isinstance(x, str)
                                                else CechCover(x, base))
    if cover.base != "monoid" and not cover.qualifies():
        raise SemiringError("unit group computation failed: chart semirings do not qualify")
    layout = _z_layout(cover)
    offsets = {}
    total = 0
    for key, basis in layout:
        offsets[key] = total
        total += len(basis)
    d = cover.rank
    # cocycle condition on triples: z_ij + z_jk - z_ik = 0 (in ambient coordinates)
    rows = []
    for i, j, k in cover.triples():
        for coord in range(d):
            row = [0] * total
            for key, sign in (((i, j), 1), ((j, k), 1), ((i, k), -1)):
                for b_i, b in enumerate(dict(layout)[key]):
                    row[offsets[key] + b_i] += sign * b[coord]
            rows.append(row)
    kernel = il.integer_kernel(rows, total) if rows else il.identity(total)
    kernel = [list(v) for v in kernel]
    # coboundaries of the chart lattices, in kernel coordinates
    bgens = []
    for i in range(cover.size):
        for b in cover.lattice(i).basis:
            vals = {}
            for key in cover.pairs():
                s = 1 if key[0] == i else (-1 if key[1] == i else 0)
                vals[key] = tuple(s * x for x in b)
            z = _z_coords(cover, layout, vals)
            a = [[kernel[j][r] for j in range(len(kernel))] for r in range(total)]
            w = il.solve_integer(a, z, len(kernel))
            if w is None:
                raise InvariantError("coboundary is not a cocycle")
            bgens.append(w)
    nk = len(kernel)
    if bgens:
        snf = il.smith_normal_form(bgens)
        right, right_inv, rank_b = snf.right, snf.right_inv, snf.rank
        invariants = tuple(snf.invariants)
    else:
        right = right_inv = il.identity(nk)
        rank_b, invariants = 0, ()
    torsion = tuple(t for t in invariants if t > 1)
    free_rank = nk - rank_b
    gens, signs = [], []
    for row in right_inv[rank_b:]:
        z = [sum(row[k] * kernel[k][r] for k in range(nk)) for r in range(total)]
        vals = _from_z(cover, layout, offsets, z)
        flat = [x for key in cover.pairs() for x in vals[key]]
        sign = 1
        first = next((x for x in flat if x), 0)
        if first < 0:
            sign = -1
            vals = {k: tuple(-x for x in v) for k, v in vals.items()}
        signs.append(sign)
        gens.append(CechCocycle.line(cover, {k: Unit(Fraction(0), v) for k, v in vals.items()}))
    # divisible part: dim Z^1_Q - rank B^1_Q
    div = 0
    if cover.divisible:
        npairs = len(cover.pairs())
        qrows = []
        pidx = {p: a for a, p in enumerate(cover.pairs())}
        for i, j, k in cover.triples():
            row = [0] * npairs
            row[pidx[(i, j)]] += 1
            row[pidx[(j, k)]] += 1
            row[pidx[(i, k)]] -= 1
            qrows.append(row)
        zdim = npairs - (il.rational_rank(qrows) if qrows else 0)
        brows = [[(1 if p[0] == i else -1 if p[1] == i else 0) for p in cover.pairs()] for i in range(cover.size)]
        bdim = il.rational_rank(brows) if brows and npairs else 0
        div = zdim - bdim
    return PicardGroup(cover, free_rank, torsion, div, gens, kernel, right, rank_b, signs, layout, invariants)


def _from_z(cover, layout, offsets, z) -> dict:
    out = {}
    for key, basis in layout:
        m = [0] * cover.rank
        for b_i, b in enumerate(basis):
            for coord in range(cover.rank):
                m[coord] += z[offsets[key] + b_i] * b[coord]
        out[key] = tuple(m)
    return out


# ---------------------------------------------------------------------------
# vector bundles


@dataclass
class VectClassification:
    pic: PicardGroup
    n: int

    def class_of(self, c: CechCocycle) -> tuple[tuple[int, ...], ...]:
        if c.rank != self.n:
            raise ValueError("rank mismatch")
        return tuple(sorted(self.pic.class_of(line) for line in decompose_into_lines(c)))

    def count_in_box(self, bound: int) -> int:
        """Number of classes whose Pic coordinates all lie in ``[-bound, bound]``."""
        size = (2 * bound + 1) ** self.pic.free_rank
        for t in self.pic.torsion:
            size *= t
        return math.comb(size + self.n - 1, self.n)

    def representatives_in_box(self, bound: int) -> list[tuple[tuple[int, ...], ...]]:
        pts = list(itertools.product(range(-bound, bound + 1), repeat=self.pic.free_rank))
        return [tuple(m) for m in itertools.combinations_with_replacement(pts, self.n)]

    def representative(self, orbit: Sequence[Sequence[int]]) -> CechCocycle:
        out = None
        for coords in orbit:
            line = self.pic.element(coords)
            out = line if out is None else direct_sum(out, line)
        return out if out is not None else CechCocycle(self.pic.cover, 0, {k: GLnFactorization((), ())
                                                                          for k in self.pic.cover.ordered_pairs()})

    def describe(self) -> str:
        if self.n == 1:
            return f"Pic = {self.pic.describe()}"
        if self.pic.free_rank == 0 and not self.pic.torsion:
            return "single class (trivial bundle)"
        return f"unordered {self.n}-tuples of elements of {self.pic.describe()}"


def classify_vect_n(x, n: int, base: str = "tropicalQ") -> VectClassification:
    return VectClassification(picard_group(x, base), n)


# ---------------------------------------------------------------------------
# scalar extension


def base_change_cocycle(c: CechCocycle, base: str = "tropicalQ") -> CechCocycle:
    """Forward: reinterpret monoid-level transition data over ``base``."""
    if not check_cover_condition(c.cover.scheme):
        raise SemiringError("cover condition fails")
    cover = CechCover(c.cover.scheme, base)
    return CechCocycle(cover, c.rank, dict(c.values))


def restrict_to_monoid(c: CechCocycle) -> CechCocycle:
    """Backward: gauge away the tropical scalars by a coboundary, then keep the monoid part."""
    cover = c.cover
    if not check_cover_condition(cover.scheme):
        raise SemiringError("cover condition fails")
    n = c.rank
    slots = [(i, r) for i in range(cover.size) for r in range(n)]
    eqs = []
    zero = (0,) * cover.rank
    for i, j in cover.pairs():
        f = c[i, j]
        sinv = perm_inverse(f.perm)
        for r in range(n):
            # D_i[r] q_ij[r] D_j[sigma^-1 r]^-1 has zero scalar part
            eqs.append(((i, r), (j, sinv[r]), Unit(-f.diag[r].q, zero)))
    rows, rhs, idx = [], [], {s: k for k, s in enumerate(slots)}
    for s, t, u in eqs:
        row = [0] * len(slots)
        row[idx[s]] += 1
        row[idx[t]] -= 1
        rows.append(row)
        rhs.append(u.q)
    q = il.solve_rational(rows, rhs, len(slots)) if rows else [Fraction(0)] * len(slots)
    if q is None:
        raise SemiringError("scalar part is not a coboundary")
    phi = {i: GLnFactorization(tuple(Unit(Fraction(q[idx[(i, r)]]), zero) for r in range(n)), perm_identity(n))
           for i in range(cover.size)}
    gauged = conjugate(c, phi)
    mono = CechCover(cover.scheme, "monoid")
    out = CechCocycle(mono, n, {k: GLnFactorization(tuple(Unit(Fraction(0), u.m) for u in f.diag), f.perm)
                                for k, f in gauged.values.items()})
    if any(u.q != 0 for f in gauged.values.values() for u in f.diag):
        raise InvariantError("scalar gauge left a nonzero scalar")
    return out


# ---------------------------------------------------------------------------
# random data for property checks


def random_chart_unit(cover: CechCover, i: int, rng: random.Random, spread: int = 3) -> Unit:
    q = Fraction(rng.randint(-4 * spread, 4 * spread), rng.choice((1, 2, 3))) if cover.divisible else Fraction(0)
    m = [0] * cover.rank
    for b in cover.lattice(i).basis:
        k = rng.randint(-spread, spread)
        m = [x + k * y for x, y in zip(m, b)]
    return Unit(q, tuple(m))


def random_cochain(cover: CechCover, n: int, rng: random.Random) -> dict:
    out = {}
    for i in range(cover.size):
        perm = list(range(n))
        rng.shuffle(perm)
        out[i] = GLnFactorization(tuple(random_chart_unit(cover, i, rng) for _ in range(n)), tuple(perm))
    return out


def random_cocycle(cover: CechCover, n: int, rng: random.Random, spread: int = 3) -> CechCocycle:
    """A random rank-n cocycle: a sum of random line bundles conjugated by a random cochain."""
    pic = picard_group(cover)
    out = None
    for _ in range(n):
        coords = [rng.randint(-spread, spread) for _ in range(pic.free_rank)]
        line = pic.element(coords)
        out = line if out is None else direct_sum(out, line)
    return conjugate(out, random_cochain(cover, n, rng))
