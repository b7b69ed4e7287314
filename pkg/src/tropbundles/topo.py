"""Topological bundles on finite simplicial complexes (dimension <= 2).

The cover is the open-star cover, one open per vertex. Continuous real functions
on an overlap are modelled as piecewise-linear functions on the closed star,
given by rational values at the grid points of the level-``L`` edgewise
subdivision (barycentric coordinates with denominator ``2**L``). A rank-n cocycle
is a permutation plus n PL functions per ordered edge; the functions play the
role of the diagonal entries in the real (multiplicative = additive) group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import intlinalg as il
from .linalg import InvariantError, perm_compose, perm_identity, perm_inverse

Point = tuple[tuple[int, Fraction], ...]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class FiniteComplex:
    vertices: tuple[str, ...]
    simplices: tuple[tuple[int, ...], ...]  # maximal simplices, sorted vertex tuples
    name: str = "complex"

    @classmethod
    def build(cls, vertices: Sequence, simplices: Iterable[Sequence[int]], name: str = "complex") -> "FiniteComplex":
        simp = {tuple(sorted(s)) for s in simplices}
        for s in simp:
            if len(s) > 3:
                raise ValueError("only simplices of dimension <= 2 are supported")
        simp |= {(v,) for v in range(len(vertices))}
        maximal = sorted(s for s in simp if not any(set(s) < set(t) for t in simp))
        return cls(tuple(str(v) for v in vertices), tuple(maximal), name)

    @classmethod
    def from_json(cls, data: dict) -> "FiniteComplex":
        verts = [str(v) for v in data["vertices"]]
        idx = {v: i for i, v in enumerate(verts)}
        simp = [[idx[str(v)] if str(v) in idx else int(v) for v in s] for s in data["simplices"]]
        return cls.build(verts, simp, data.get("name", "complex"))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def faces(self) -> set[tuple[int, ...]]:
        out = set()
        for s in self.simplices:
            for k in range(1, len(s) + 1):
                out |= set(itertools.combinations(s, k))
        return out

    def edges(self) -> list[tuple[int, int]]:
        return sorted(f for f in self.faces() if len(f) == 2)

    def ordered_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges() + [(b, a) for a, b in self.edges()])

    def triangles(self) -> list[tuple[int, int, int]]:
        return sorted(f for f in self.faces() if len(f) == 3)

    def connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for a, b in self.edges():
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(seen) == self.size

    def closed_star(self, face: Sequence[int]) -> list[tuple[int, ...]]:
        """Maximal simplices containing ``face``."""
        return [s for s in self.simplices if set(face) <= set(s)]

    def grid(self, face: Sequence[int], level: int) -> list[Point]:
        """Grid points of the closed star of ``face``."""
        denom = 2 ** level
        pts = set()
        for s in self.closed_star(face):
            for comp in _compositions(denom, len(s)):
                pts.add(tuple((v, Fraction(k, denom)) for v, k in zip(s, comp) if k))
        return sorted(pts)

    def euler_characteristic(self) -> int:
        f = self.faces()
        return sum((-1) ** (len(s) - 1) for s in f)


def preset_complex(name: str) -> FiniteComplex:
    if name == "circle":
        return FiniteComplex.build(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)], name)
    if name == "theta":
        # two poles joined by three subdivided arcs
        return FiniteComplex.build(range(5), [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)], name)
    if name == "wedge":
        return FiniteComplex.build(range(5), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], name)
    if name == "tree":
        return FiniteComplex.build(range(5), [(0, 1), (1, 2), (2, 3), (1, 4)], name)
    if name == "simplex":
        return FiniteComplex.build(range(3), [(0, 1, 2)], name)
    raise ValueError(f"unknown complex preset {name!r}")


COMPLEX_PRESETS = ("circle", "theta", "wedge", "tree", "simplex")


# ---------------------------------------------------------------------------
# PL functions


def _split_midpoint(p: Point, level: int) -> tuple[Point, Point] | None:
    """Write a level ``level+1`` point as the midpoint of two level ``level`` points."""
    denom = 2 ** (level + 1)
    nums = {v: int(w * denom) for v, w in p}
    odd = sorted(v for v, k in nums.items() if k % 2)
    if not odd:
        return None
    a, b = dict(nums), dict(nums)
    for i, v in enumerate(odd):
        s = 1 if i % 2 == 0 else -1
        a[v] += s
        b[v] -= s

    def point(d):
        return tuple((v, Fraction(k, denom)) for v, k in sorted(d.items()) if k)

    return point(a), point(b)


@dataclass(frozen=True)
class PLFunction:
    face: tuple[int, ...]
    level: int
    values: tuple[tuple[Point, Fraction], ...]

    @classmethod
    def from_callable(cls, cx: FiniteComplex, face, level: int, fn: Callable[[Point], Fraction]) -> "PLFunction":
        face = tuple(sorted(face))
        return cls(face, level, tuple((p, Fraction(fn(p))) for p in cx.grid(face, level)))

    @classmethod
    def constant(cls, cx: FiniteComplex, face, level: int, c) -> "PLFunction":
        return cls.from_callable(cx, face, level, lambda p: Fraction(c))

    @property
    def table(self) -> dict[Point, Fraction]:
        return dict(self.values)

    def __call__(self, p: Point) -> Fraction:
        return self.table[p]

    def refine(self, cx: FiniteComplex) -> "PLFunction":
        t = self.table
        out = []
        for p in cx.grid(self.face, self.level + 1):
            split = _split_midpoint(p, self.level)
            if split is None:
                out.append((p, t[p]))  # even numerators: already a coarse point
            else:
                a, b = split
                out.append((p, (t[a] + t[b]) / 2))
        return PLFunction(self.face, self.level + 1, tuple(out))

    def at_level(self, cx: FiniteComplex, level: int) -> "PLFunction":
        f = self
        if level < f.level:
            raise ValueError("cannot coarsen a PL function")
        while f.level < level:
            f = f.refine(cx)
        return f

    def restrict(self, cx: FiniteComplex, face: Sequence[int]) -> "PLFunction":
        face = tuple(sorted(face))
        if not set(self.face) <= set(face):
            raise ValueError("restriction must go to a smaller closed star")
        t = self.table
        return PLFunction(face, self.level, tuple((p, t[p]) for p in cx.grid(face, self.level)))

    def neg(self) -> "PLFunction":
        return PLFunction(self.face, self.level, tuple((p, -v) for p, v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.values)


def _common(cx, f: PLFunction, g: PLFunction, max_refine: int = 2):
    if f.face != g.face:
        raise ValueError("functions live on different overlaps")
    level = max(f.level, g.level)
    if level - min(f.level, g.level) > max_refine:
        raise ValueError(f"subdivision levels {f.level} and {g.level} differ by more than {max_refine}")
    return f.at_level(cx, level), g.at_level(cx, level)


def pl_add(cx: FiniteComplex, f: PLFunction, g: PLFunction) -> PLFunction:
    f, g = _common(cx, f, g)
    gt = g.table
    return PLFunction(f.face, f.level, tuple((p, v + gt[p]) for p, v in f.values))


def pl_max(cx: FiniteComplex, f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise max; refines once if the max is not PL on the current grid."""
    f, g = _common(cx, f, g)
    for extra in range(2):
        ff, gg = f.at_level(cx, f.level + extra), g.at_level(cx, g.level + extra)
        gt = gg.table
        h = PLFunction(ff.face, ff.level, tuple((p, max(v, gt[p])) for p, v in ff.values))
        fine_f, fine_g = ff.refine(cx), gg.refine(cx)
        fg = fine_g.table
        if h.refine(cx).values == tuple((p, max(v, fg[p])) for p, v in fine_f.values):
            return h
    raise ValueError("max is not piecewise linear on one further subdivision")


def pl_equal(cx: FiniteComplex, f: PLFunction, g: PLFunction) -> bool:
    f, g = _common(cx, f, g, max_refine=64)
    return f.values == g.values


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True)
class TopCocycle:
    complex: FiniteComplex
    rank: int
    values: dict  # (v, w) -> (perm, tuple of PLFunction)

    def perm(self, v, w) -> tuple[int, ...]:
        return perm_identity(self.rank) if v == w else self.values[(v, w)][0]

    def funcs(self, v, w) -> tuple[PLFunction, ...]:
        return self.values[(v, w)][1]

    @property
    def level(self) -> int:
        return max((f.level for _, fs in self.values.values() for f in fs), default=0)

    @classmethod
    def from_upper(cls, cx: FiniteComplex, rank: int, upper: dict) -> "TopCocycle":
        """Values on ``v < w``; ``theta_wv = theta_vw^-1`` is filled in."""
        values = {}
        for (v, w), (perm, funcs) in upper.items():
            perm = tuple(perm)
            values[(v, w)] = (perm, tuple(funcs))
            # (D P)^-1 = D' P^-1 with D'[r] = -D[perm[r]]
            values[(w, v)] = (perm_inverse(perm), tuple(funcs[perm[r]].neg() for r in range(rank)))
        return cls(cx, rank, values)

    def to_json(self) -> dict:
        return {"rank": self.rank, "values": {
            f"{v},{w}": {"perm": list(p), "level": fs[0].level if fs else 0,
                         "pl": [[str(val) for _, val in f.values] for f in fs]}
            for (v, w), (p, fs) in sorted(self.values.items()) if v < w}}

    @classmethod
    def from_json(cls, cx: FiniteComplex, data: dict) -> "TopCocycle":
        n = int(data["rank"])
        upper = {}
        for key, val in data["values"].items():
            v, w = (int(x) for x in key.split(","))
            level = int(val.get("level", 0))
            grid = cx.grid((min(v, w), max(v, w)), level)
            pl = val.get("pl") or [["0"] * len(grid) for _ in range(n)]
            funcs = tuple(PLFunction((min(v, w), max(v, w)), level,
                                     tuple((p, Fraction(x)) for p, x in zip(grid, col))) for col in pl)
            upper[(v, w)] = (tuple(val["perm"]), funcs)
        return cls.from_upper(cx, n, upper)


def _compose(cx, a, b, face):
    """``(P, f) (Q, g)`` restricted to ``face``: perm ``P o Q``, functions ``f[r] + g[P^-1 r]``."""
    p, f = a
    q, g = b
    pinv = perm_inverse(p)
    funcs = tuple(pl_add(cx, f[r].restrict(cx, face), g[pinv[r]].restrict(cx, face)) for r in range(len(p)))
    return perm_compose(p, q), funcs


def validate_top_cocycle(c: TopCocycle) -> bool:
    cx, n = c.complex, c.rank
    if set(c.values) != set(cx.ordered_edges()):
        return False
    for (v, w), (p, fs) in c.values.items():
        if len(p) != n or len(fs) != n or sorted(p) != list(range(n)):
            return False
        if any(f.face != tuple(sorted((v, w))) for f in fs):
            return False
        back = _compose(cx, c.values[(v, w)], c.values[(w, v)], (min(v, w), max(v, w)))
        if back[0] != perm_identity(n) or not all(f.is_zero() for f in back[1]):
            return False
    for tri in cx.triangles():
        for a, b, d in itertools.permutations(tri):
            lhs = _compose(cx, c.values[(a, b)], c.values[(b, d)], tri)
            p, fs = c.values[(a, d)]
            if lhs[0] != p or not all(pl_equal(cx, x, y.restrict(cx, tri)) for x, y in zip(lhs[1], fs)):
                return False
    return True


def perm_cocycle_valid(cx: FiniteComplex, perms: dict, n: int) -> bool:
    for (v, w), p in perms.items():
        if perm_compose(p, perms[(w, v)]) != perm_identity(n):
            return False
    for tri in cx.triangles():
        for a, b, d in itertools.permutations(tri):
            if perm_compose(perms[(a, b)], perms[(b, d)]) != perms[(a, d)]:
                return False
    return True


@dataclass(frozen=True)
class Covering:
    sheets: int
    components: tuple[frozenset, ...]  # sets of (vertex, sheet)

    @property
    def count(self) -> int:
        return len(self.components)


def covering_from_perm(c: TopCocycle | dict, cx: FiniteComplex | None = None, n: int | None = None) -> Covering:
    """The n-sheeted covering glued by the permutations: sheet k over w meets sheet perm_vw(k) over v."""
    if isinstance(c, TopCocycle):
        if not validate_top_cocycle(c):
            raise ValueError("invalid cocycle")
        cx, n, perms = c.complex, c.rank, {k: v[0] for k, v in c.values.items()}
    else:
        perms = c
        if not perm_cocycle_valid(cx, perms, n):
            raise ValueError("invalid cocycle")
    parent = {(v, k): (v, k) for v in range(cx.size) for k in range(n)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for (v, w), p in sorted(perms.items()):
        for k in range(n):
            a, b = find((w, k)), find((v, p[k]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict = {}
    for x in parent:
        comps.setdefault(find(x), set()).add(x)
    return Covering(n, tuple(sorted((frozenset(s) for s in comps.values()), key=lambda s: min(s))))


def split_section(cx: FiniteComplex, perms: dict, n: int, level: int = 0) -> TopCocycle:
    """Rank-n cocycle with the given permutation data and zero PL parts."""
    if not perm_cocycle_valid(cx, perms, n):
        raise ValueError("not a permutation cocycle")
    upper = {}
    for v, w in cx.edges():
        upper[(v, w)] = (perms[(v, w)], tuple(PLFunction.constant(cx, (v, w), level, 0) for _ in range(n)))
    return TopCocycle.from_upper(cx, n, upper)


def perm_extract(c: TopCocycle) -> dict:
    return {k: v[0] for k, v in c.values.items()}


def perms_from_upper(cx: FiniteComplex, upper: dict, n: int) -> dict:
    out = {}
    for v, w in cx.edges():
        p = tuple(upper.get((v, w), perm_identity(n)))
        out[(v, w)] = p
        out[(w, v)] = perm_inverse(p)
    return out


# ---------------------------------------------------------------------------
# gauge transformations and the linear solve


@dataclass(frozen=True)
class TopCochain:
    perms: dict  # v -> perm
    funcs: dict  # v -> tuple of PLFunction on the closed star of v


def conjugate_top(c: TopCocycle, phi: TopCochain) -> TopCocycle:
    """``phi_v theta_vw phi_w^-1``."""
    cx, n = c.complex, c.rank
    out = {}
    for (v, w), val in c.values.items():
        face = (min(v, w), max(v, w))
        pv = (phi.perms[v], tuple(f.restrict(cx, face) for f in phi.funcs[v]))
        pw = phi.perms[w]
        gw = tuple(f.restrict(cx, face) for f in phi.funcs[w])
        pw_inv = (perm_inverse(pw), tuple(gw[pw[r]].neg() for r in range(n)))
        out[(v, w)] = _compose(cx, _compose(cx, pv, val, face), pw_inv, face)
    return TopCocycle(cx, n, out)


def perm_gauge(cx: FiniteComplex, n: int, perms: dict) -> TopCochain:
    zero = {v: tuple(PLFunction.constant(cx, (v,), 0, 0) for _ in range(n)) for v in range(cx.size)}
    return TopCochain(perms, zero)


def _solve_pl_system(c: TopCocycle, target: TopCocycle | None, level: int):
    """Solve for ``X[v][r]`` on closed stars with ``X_v[r] - X_w[perm_vw^-1 r] = b_vw[r] - a_vw[r]``.

    ``target`` defaults to the identity cocycle and must share the permutation
    part of ``c``. Returns per-vertex function tuples or ``None``.
    """
    cx, n = c.complex, c.rank
    slots = {}
    for v in range(cx.size):
        for r in range(n):
            for p in cx.grid((v,), level):
                slots[(v, r, p)] = len(slots)
    rows, rhs = [], []
    for (v, w), (perm, fs) in sorted(c.values.items()):
        face = (min(v, w), max(v, w))
        pinv = perm_inverse(perm)
        tfs = target.funcs(v, w) if target is not None else None
        for r in range(n):
            a = fs[r].at_level(cx, level).table
            b = tfs[r].at_level(cx, level).table if tfs is not None else None
            for p in cx.grid(face, level):
                row = {}
                # (X_v a X_w^-1)[r] = X_v[r] + a[r] - X_w[perm^-1 r]  == b[r]
                row[slots[(v, r, p)]] = row.get(slots[(v, r, p)], 0) + 1
                k = slots[(w, pinv[r], p)]
                row[k] = row.get(k, 0) - 1
                rows.append(row)
                rhs.append((b[p] if b is not None else 0) - a[p])
    dense = [[row.get(k, 0) for k in range(len(slots))] for row in rows]
    sol = il.solve_rational(dense, rhs, len(slots))
    if sol is None:
        return None
    funcs = {}
    for v in range(cx.size):
        funcs[v] = tuple(PLFunction((v,), level, tuple((p, sol[slots[(v, r, p)]]) for p in cx.grid((v,), level)))
                         for r in range(n))
    return funcs


def solve_r_coboundary(c: TopCocycle, max_refine: int = 2):
    """For identity permutations: ``phi`` with ``a_vw = phi_v - phi_w``, or ``"inconsistent"``.

    The returned cochain trivializes ``c`` after negation (``-phi`` conjugates ``c``
    to the identity).
    """
    if any(p != perm_identity(c.rank) for p, _ in c.values.values()):
        raise ValueError("permutation part is not trivial")
    levels = [f.level for _, fs in c.values.values() for f in fs]
    if levels and max(levels) - min(levels) > max_refine:
        raise ValueError("subdivision levels differ by more than the refinement allowance")
    funcs = _solve_pl_system(c, None, c.level)
    if funcs is None:
        return "inconsistent"
    phi = {v: tuple(f.neg() for f in fs) for v, fs in funcs.items()}
    # check: a_vw = phi_v - phi_w on every overlap
    cx = c.complex
    for (v, w), (_, fs) in c.values.items():
        face = (min(v, w), max(v, w))
        for r in range(c.rank):
            diff = pl_add(cx, phi[v][r].restrict(cx, face), phi[w][r].restrict(cx, face).neg())
            if not pl_equal(cx, diff, fs[r]):
                raise InvariantError("coboundary solution failed verification")
    return phi


@dataclass(frozen=True)
class TrivialityReport:
    trivial: bool
    covering: Covering
    cochain: TopCochain | None = None


def _spanning_perm_gauge(cx: FiniteComplex, perms: dict, n: int, root_perm=None) -> dict:
    """``pi`` with ``pi_v s_vw pi_w^-1 = id`` along the least spanning tree from vertex 0."""
    parent = list(range(cx.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    tree = []
    for v, w in cx.edges():
        a, b = find(v), find(w)
        if a != b:
            parent[b] = a
            tree.append((v, w))
    pi = {0: tuple(root_perm) if root_perm is not None else perm_identity(n)}
    frontier = [0]
    while frontier:
        v = frontier.pop(0)
        for a, b in tree:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in pi:
                    pi[y] = perm_compose(pi[x], perms[(x, y)])
                    frontier.append(y)
    return pi


def is_trivial_bundle(c: TopCocycle) -> TrivialityReport:
    cx, n = c.complex, c.rank
    if not cx.connected():
        raise ValueError("complex is not connected")
    cov = covering_from_perm(c)
    if cov.count != n:
        return TrivialityReport(False, cov, None)
    pi = _spanning_perm_gauge(cx, perm_extract(c), n)
    gauged = conjugate_top(c, perm_gauge(cx, n, pi))
    if any(p != perm_identity(n) for p, _ in gauged.values.values()):
        raise InvariantError("trivial covering but permutation part is not a coboundary")
    phi = solve_r_coboundary(gauged)
    if phi == "inconsistent":
        raise InvariantError("PL part failed to solve on a valid cocycle")
    # psi = (-phi) o pi conjugates c to the identity
    psi_funcs = {v: tuple(f.neg() for f in phi[v]) for v in range(cx.size)}
    cochain = _compose_cochains(cx, n, TopCochain({v: perm_identity(n) for v in range(cx.size)}, psi_funcs),
                                perm_gauge(cx, n, pi))
    triv = conjugate_top(c, cochain)
    if any(p != perm_identity(n) or not all(f.is_zero() for f in fs) for p, fs in triv.values.values()):
        raise InvariantError("trivializing cochain failed verification")
    return TrivialityReport(True, cov, cochain)


def _compose_cochains(cx, n, a: TopCochain, b: TopCochain) -> TopCochain:
    perms, funcs = {}, {}
    for v in range(cx.size):
        pa, fa = a.perms[v], a.funcs[v]
        pb, fb = b.perms[v], b.funcs[v]
        level = max([f.level for f in fa] + [f.level for f in fb])
        pinv = perm_inverse(pa)
        funcs[v] = tuple(pl_add(cx, fa[r].at_level(cx, level), fb[pinv[r]].at_level(cx, level)) for r in range(n))
        perms[v] = perm_compose(pa, pb)
    return TopCochain(perms, funcs)


def perm_cocycles_equivalent(cx: FiniteComplex, p: dict, q: dict, n: int) -> dict | None:
    """``pi`` with ``q_vw = pi_v p_vw pi_w^-1`` (connected complex), or ``None``."""
    for root in itertools.permutations(range(n)):
        pi = {0: root}
        frontier = [0]
        while frontier:
            v = frontier.pop(0)
            for a, b in cx.ordered_edges():
                if a == v and b not in pi:
                    # pi_b = q_ab^-1 pi_a p_ab
                    pi[b] = perm_compose(perm_compose(perm_inverse(q[(a, b)]), pi[a]), p[(a, b)])
                    frontier.append(b)
        if all(perm_compose(perm_compose(pi[a], p[(a, b)]), perm_inverse(pi[b])) == q[(a, b)]
               for a, b in cx.ordered_edges()):
            return pi
    return None


def top_cocycles_equivalent(c: TopCocycle, d: TopCocycle) -> TopCochain | None:
    """A cochain conjugating ``c`` to ``d``, or ``None``: permutations first, then the PL solve."""
    cx, n = c.complex, c.rank
    if d.rank != n:
        return None
    pi = perm_cocycles_equivalent(cx, perm_extract(c), perm_extract(d), n)
    if pi is None:
        return None
    gauged = conjugate_top(c, perm_gauge(cx, n, pi))
    level = max(c.level, d.level)
    funcs = _solve_pl_system(gauged, d, level)
    if funcs is None:
        return None
    cochain = _compose_cochains(cx, n, TopCochain({v: perm_identity(n) for v in range(cx.size)}, funcs),
                                perm_gauge(cx, n, pi))
    out = conjugate_top(c, cochain)
    for key in d.values:
        if out.values[key][0] != d.values[key][0] or not all(
                pl_equal(cx, x, y) for x, y in zip(out.values[key][1], d.values[key][1])):
            raise InvariantError("equivalence cochain failed verification")
    return cochain


# ---------------------------------------------------------------------------
# random data


def random_pl(cx: FiniteComplex, face, level: int, rng: random.Random) -> PLFunction:
    return PLFunction.from_callable(cx, face, level, lambda p: Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))))


def random_top_cocycle(cx: FiniteComplex, n: int, rng: random.Random, level: int = 1,
                       perms: dict | None = None) -> TopCocycle:
    """Random cocycle: random permutation data (graphs) or a coboundary twist of ``perms``.

    On complexes with triangles a random assignment is rarely a cocycle, so the
    PL and permutation data there come from conjugating ``split_section(perms)``
    by a random cochain.
    """
    if perms is None:
        if cx.triangles():
            perms = perms_from_upper(cx, {}, n)
        else:
            perms = perms_from_upper(cx, {e: tuple(rng.sample(range(n), n)) for e in cx.edges()}, n)
    base = split_section(cx, perms, n, level)
    if not cx.triangles():
        upper = {(v, w): (base.values[(v, w)][0], tuple(random_pl(cx, (v, w), level, rng) for _ in range(n)))
                 for v, w in cx.edges()}
        return TopCocycle.from_upper(cx, n, upper)
    phi = TopCochain({v: tuple(rng.sample(range(n), n)) for v in range(cx.size)},
                     {v: tuple(random_pl(cx, (v,), level, rng) for _ in range(n)) for v in range(cx.size)})
    return conjugate_top(base, phi)


def all_perm_classes(cx: FiniteComplex, n: int) -> list[dict]:
    """Permutation cocycles supported off the least spanning tree: one per class and more."""
    parent = list(range(cx.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    off_tree = []
    for v, w in cx.edges():
        a, b = find(v), find(w)
        if a != b:
            parent[b] = a
        else:
            off_tree.append((v, w))
    out = []
    for choice in itertools.product(itertools.permutations(range(n)), repeat=len(off_tree)):
        perms = perms_from_upper(cx, dict(zip(off_tree, choice)), n)
        if perm_cocycle_valid(cx, perms, n):
            out.append(perms)
    return out
