"""Matrices and finite semimodules over semirings.

Over a zero-sum free semiring with only trivial idempotent pairs every invertible
matrix is a permutation matrix times an invertible diagonal one; ``GLnFactorization``
stores that pair and multiplies in the semidirect product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .semiring import BOOLEAN, FiniteTable, Semiring, SemiringError


class BudgetExceeded(RuntimeError):
    pass


class InvariantError(AssertionError):
    pass


@dataclass(frozen=True)
class SemiringMatrix:
    semiring: Semiring
    entries: tuple[tuple[Any, ...], ...]

    @classmethod
    def of(cls, semiring: Semiring, rows: Iterable[Iterable]) -> "SemiringMatrix":
        return cls(semiring, tuple(tuple(semiring.parse(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, semiring: Semiring, n: int) -> "SemiringMatrix":
        return cls(semiring, tuple(tuple(semiring.one if i == j else semiring.zero for j in range(n))
                                   for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "SemiringMatrix") -> "SemiringMatrix":
        R = self.semiring
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return SemiringMatrix(R, tuple(
            tuple(R.sum(R.mul(self.entries[i][k], other.entries[k][j]) for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)))

    def is_identity(self) -> bool:
        return self == SemiringMatrix.identity(self.semiring, self.rows)

    def labels(self) -> list[list[str]]:
        return [[self.semiring.label(x) for x in row] for row in self.entries]


def _qualifies_structurally(R: Semiring) -> bool:
    try:
        return R.is_zero_sum_free() and R.has_trivial_idempotent_pairs()
    except (SemiringError, NotImplementedError):
        return False


def _structural_inverse(a: SemiringMatrix) -> SemiringMatrix | None:
    R = a.semiring
    n = a.rows
    out = [[R.zero] * n for _ in range(n)]
    rows_used = set()
    for j in range(n):
        nz = [i for i in range(n) if a.entries[i][j] != R.zero]
        if len(nz) != 1 or not R.is_unit(a.entries[nz[0]][j]) or nz[0] in rows_used:
            return None
        rows_used.add(nz[0])
        out[j][nz[0]] = R.inverse(a.entries[nz[0]][j])
    return SemiringMatrix(R, tuple(map(tuple, out)))


def _brute_inverse(a: SemiringMatrix, budget: int) -> SemiringMatrix | None:
    """Exhaustive search, column by column: column ``j`` of ``b`` must solve ``a b_j = e_j``."""
    R = a.semiring
    if not isinstance(R, FiniteTable):
        raise SemiringError("brute-force inversion needs a finite semiring")
    n = a.rows
    if R.size ** (n * n) > budget:
        raise BudgetExceeded(f"{R.size}^{n * n} candidate inverses exceeds budget {budget}")
    columns = []
    for j in range(n):
        target = tuple(R.one if i == j else R.zero for i in range(n))
        cands = [c for c in itertools.product(R.elements, repeat=n)
                 if tuple(R.sum(R.mul(a.entries[i][k], c[k]) for k in range(n)) for i in range(n)) == target]
        if not cands:
            return None
        columns.append(cands)
    ident = SemiringMatrix.identity(R, n)
    for cols in itertools.product(*columns):
        b = SemiringMatrix(R, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
        if b @ a == ident:
            return b
    return None


def invert(a: SemiringMatrix, method: str = "auto", budget: int = 2 ** 25) -> SemiringMatrix | None:
    """Two-sided inverse of ``a``, or ``None`` if it is not invertible.

    ``method`` is ``"structural"``, ``"brute"`` or ``"auto"`` (structural when the
    semiring is zero-sum free with trivial idempotent pairs, brute force otherwise).
    """
    if a.rows != a.cols:
        raise ValueError("non-square matrix")
    R = a.semiring
    if method == "auto":
        if _qualifies_structurally(R):
            method = "structural"
        elif isinstance(R, FiniteTable):
            method = "brute"
        else:
            raise SemiringError(f"{R.name} qualifies for neither inversion path")
    if method == "structural":
        if not _qualifies_structurally(R):
            raise SemiringError(f"{R.name} is not zero-sum free with trivial idempotent pairs")
        inv = _structural_inverse(a)
        if inv is not None and not ((a @ inv).is_identity() and (inv @ a).is_identity()):
            raise InvariantError("structural inverse failed the product check")
        return inv
    return _brute_inverse(a, budget)


# ---------------------------------------------------------------------------
# GL_n as (units)^n semidirect S_n


def perm_compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """``(s o t)(i) = s[t[i]]``."""
    return tuple(s[t[i]] for i in range(len(t)))


def perm_inverse(s: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(s)
    for i, x in enumerate(s):
        out[x] = i
    return tuple(out)


def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


@dataclass(frozen=True)
class GLnFactorization:
    """``A = diag(d) * P_perm``: column ``i`` has its only nonzero entry ``d[perm[i]]`` in row ``perm[i]``."""

    diag: tuple
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)


def gln_recompose(f: GLnFactorization, semiring: Semiring) -> SemiringMatrix:
    n = f.n
    rows = [[semiring.zero] * n for _ in range(n)]
    for i, r in enumerate(f.perm):
        rows[r][i] = f.diag[r]
    return SemiringMatrix(semiring, tuple(map(tuple, rows)))


def gln_decompose(a: SemiringMatrix) -> GLnFactorization:
    R = a.semiring
    if not _qualifies_structurally(R):
        raise SemiringError(f"{R.name} is not zero-sum free with trivial idempotent pairs")
    if _structural_inverse(a) is None:
        raise SemiringError("matrix is not invertible")
    n = a.rows
    perm = tuple(next(i for i in range(n) if a.entries[i][j] != R.zero) for j in range(n))
    diag = [None] * n
    for j, r in enumerate(perm):
        diag[r] = a.entries[r][j]
    return GLnFactorization(tuple(diag), perm)


def gln_compose(f: GLnFactorization, g: GLnFactorization, semiring: Semiring) -> GLnFactorization:
    """Product in the semidirect product; matches matrix multiplication after recomposition."""
    if f.n != g.n:
        raise ValueError("size mismatch")
    sinv = perm_inverse(f.perm)
    diag = tuple(semiring.mul(f.diag[r], g.diag[sinv[r]]) for r in range(f.n))
    return GLnFactorization(diag, perm_compose(f.perm, g.perm))


def gln_inverse(f: GLnFactorization, semiring: Semiring) -> GLnFactorization:
    # (D P)^-1 = P^-1 D^-1 = (P^-1 D^-1 P) P^-1
    sinv = perm_inverse(f.perm)
    diag = tuple(semiring.inverse(f.diag[f.perm[r]]) for r in range(f.n))
    return GLnFactorization(diag, sinv)


def gln_identity(n: int, semiring: Semiring) -> GLnFactorization:
    return GLnFactorization((semiring.one,) * n, perm_identity(n))


# ---------------------------------------------------------------------------
# finite semimodules


@dataclass(frozen=True)
class FiniteSemimodule:
    semiring: FiniteTable
    labels: tuple[str, ...]
    add_table: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]  # action[r][x] = r . x
    zero: int = 0

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def add(self, x, y):
        return self.add_table[x][y]

    def act(self, r, x):
        return self.action[r][x]

    def combination(self, coeffs: Sequence[int], vectors: Sequence[int]) -> int:
        out = self.zero
        for c, v in zip(coeffs, vectors):
            out = self.add(out, self.act(c, v))
        return out

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def leq(self, x, y) -> bool:
        return self.add(x, y) == y

    def validate(self) -> None:
        R, E = self.semiring, self.elements
        A, S = self.add_table, self.action
        for x in E:
            if A[x][self.zero] != x:
                raise SemiringError("zero is not neutral")
            if S[R.zero][x] != self.zero or S[R.one][x] != x:
                raise SemiringError("scalar 0 or 1 acts wrongly")
            for y in E:
                if A[x][y] != A[y][x]:
                    raise SemiringError("addition not commutative")
                for z in E:
                    if A[A[x][y]][z] != A[x][A[y][z]]:
                        raise SemiringError("addition not associative")
                for r in R.elements:
                    if S[r][A[x][y]] != A[S[r][x]][S[r][y]]:
                        raise SemiringError("action does not distribute over module addition")
            for r in R.elements:
                if S[r][self.zero] != self.zero:
                    raise SemiringError("r . 0 != 0")
                for s in R.elements:
                    if S[R.add(r, s)][x] != A[S[r][x]][S[s][x]]:
                        raise SemiringError("action does not distribute over scalar addition")
                    if S[R.mul(r, s)][x] != S[r][S[s][x]]:
                        raise SemiringError("action not associative")

    def __repr__(self):
        return f"FiniteSemimodule(|M|={self.size})"


def free_module(R: FiniteTable, n: int) -> FiniteSemimodule:
    vecs = list(itertools.product(R.elements, repeat=n))
    idx = {v: i for i, v in enumerate(vecs)}
    add = [[idx[tuple(R.add(a, b) for a, b in zip(u, v))] for v in vecs] for u in vecs]
    act = [[idx[tuple(R.mul(r, a) for a in u)] for u in vecs] for r in R.elements]
    labels = ["(" + ",".join(R.label(a) for a in v) + ")" for v in vecs]
    m = FiniteSemimodule(R, tuple(labels), tuple(map(tuple, add)), tuple(map(tuple, act)), idx[(R.zero,) * n])
    return m


def standard_basis(m: FiniteSemimodule, n: int) -> list[int]:
    R = m.semiring
    out = []
    for i in range(n):
        lab = "(" + ",".join(R.label(R.one if j == i else R.zero) for j in range(n)) + ")"
        out.append(m.element(lab))
    return out


def module_congruence(m: FiniteSemimodule, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(m.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a == b:
            return False
        parent[max(a, b)] = min(a, b)
        return True

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for a in m.elements:
            for b in m.elements:
                if a < b and find(a) == find(b):
                    for c in m.elements:
                        changed |= union(m.add(a, c), m.add(b, c))
                    for r in m.semiring.elements:
                        changed |= union(m.act(r, a), m.act(r, b))
    return [find(x) for x in m.elements]


def quotient_module(m: FiniteSemimodule, pairs: Iterable[tuple[int, int]]) -> tuple[FiniteSemimodule, list[int]]:
    """Quotient by the congruence generated by ``pairs``, with the projection map."""
    classes = module_congruence(m, pairs)
    reps = sorted(set(classes))
    idx = {c: i for i, c in enumerate(reps)}
    proj = [idx[c] for c in classes]
    add = [[proj[m.add(a, b)] for b in reps] for a in reps]
    act = [[proj[m.act(r, a)] for a in reps] for r in m.semiring.elements]
    q = FiniteSemimodule(m.semiring, tuple(m.labels[a] for a in reps), tuple(map(tuple, add)),
                         tuple(map(tuple, act)), proj[m.zero])
    return q, proj


def projective_example() -> tuple[FiniteSemimodule, list[int]]:
    """``F / <a + b = b>`` with ``F`` free on ``a, b`` over the Boolean semiring; returns it and ``[a, b]``."""
    F = free_module(BOOLEAN, 2)
    a, b = standard_basis(F, 2)
    P, proj = quotient_module(F, [(F.add(a, b), b)])
    return P, [proj[a], proj[b]]


def is_linearly_independent(m: FiniteSemimodule, vectors: Sequence[int]) -> bool:
    for v in vectors:
        if v not in m.elements:
            raise ValueError(f"{v} is not an element of the module")
    seen = set()
    for coeffs in itertools.product(m.semiring.elements, repeat=len(vectors)):
        x = m.combination(coeffs, vectors)
        if x in seen:
            return False
        seen.add(x)
    return True


def span(m: FiniteSemimodule, vectors: Sequence[int]) -> set[int]:
    return {m.combination(c, vectors) for c in itertools.product(m.semiring.elements, repeat=len(vectors))}


@dataclass(frozen=True)
class BasisResult:
    free: bool
    basis: tuple[int, ...] | None
    certificate: str


def find_basis(m: FiniteSemimodule) -> BasisResult:
    R = m.semiring
    if R == BOOLEAN:
        nonzero = [x for x in m.elements if x != m.zero]
        atoms = [x for x in nonzero if not any(y != x and m.leq(y, x) for y in nonzero)]
        if len(span(m, atoms)) == m.size and is_linearly_independent(m, atoms):
            return BasisResult(True, tuple(atoms), "atoms generate and are independent")
        missing = sorted(set(m.elements) - span(m, atoms))
        # a Boolean basis must consist of the atoms, so these elements rule out freeness
        return BasisResult(False, None, f"atoms {[m.labels[a] for a in atoms]} do not generate "
                                        f"{[m.labels[x] for x in missing]}" if missing else
                           f"atoms {[m.labels[a] for a in atoms]} are dependent")
    for k in range(m.size + 1):
        for subset in itertools.combinations([x for x in m.elements if x != m.zero], k):
            if R.size ** k != m.size:
                continue
            if len(span(m, subset)) == m.size and is_linearly_independent(m, subset):
                return BasisResult(True, subset, "exhaustive subset search")
    return BasisResult(False, None, "no generating independent subset (exhaustive)")


def module_homs(src: FiniteSemimodule, dst: FiniteSemimodule, budget: int = 10 ** 7) -> Iterable[tuple[int, ...]]:
    """All homomorphisms ``src -> dst`` as value tuples, via images of a generating set."""
    gens = _generating_set(src)
    if dst.size ** len(gens) > budget:
        raise BudgetExceeded("homomorphism search exceeds budget")
    reps = _representations(src, gens)
    for images in itertools.product(dst.elements, repeat=len(gens)):
        f = tuple(dst.combination(reps[x], images) for x in src.elements)
        if is_hom(src, dst, f):
            yield f


def is_hom(src: FiniteSemimodule, dst: FiniteSemimodule, f: Sequence[int]) -> bool:
    if f[src.zero] != dst.zero:
        return False
    for x in src.elements:
        for y in src.elements:
            if f[src.add(x, y)] != dst.add(f[x], f[y]):
                return False
        for r in src.semiring.elements:
            if f[src.act(r, x)] != dst.act(r, f[x]):
                return False
    return True


def _generating_set(m: FiniteSemimodule) -> list[int]:
    gens: list[int] = []
    covered = {m.zero}
    for x in sorted(m.elements, key=lambda x: (len(span(m, [x])), x)):
        if x not in covered:
            gens.append(x)
            covered = span(m, gens)
    return gens


def _representations(m: FiniteSemimodule, gens: Sequence[int]) -> dict[int, tuple[int, ...]]:
    reps: dict[int, tuple[int, ...]] = {}
    for coeffs in itertools.product(m.semiring.elements, repeat=len(gens)):
        reps.setdefault(m.combination(coeffs, gens), coeffs)
    return reps


@dataclass(frozen=True)
class LiftInstance:
    """A surjection ``f: N -> M`` and a map ``g: P -> M``."""

    N: FiniteSemimodule
    M: FiniteSemimodule
    f: tuple[int, ...]
    g: tuple[int, ...]


@dataclass(frozen=True)
class ProjectivityReport:
    instances: int
    lifted: int
    unique: int

    @property
    def all_lift(self) -> bool:
        return self.lifted == self.instances


def check_projectivity_witness(p: FiniteSemimodule, instances: Sequence[LiftInstance],
                               budget: int = 10 ** 7) -> ProjectivityReport:
    """Search a lift ``h: P -> N`` with ``f o h = g`` for each instance.

    Existence decides the verdict; uniqueness of the lift is counted separately.
    """
    lifted = unique = 0
    for inst in instances:
        if set(inst.f) != set(inst.M.elements):
            raise ValueError("f is not surjective")
        lifts = [h for h in module_homs(p, inst.N, budget)
                 if all(inst.f[h[x]] == inst.g[x] for x in p.elements)]
        if lifts:
            lifted += 1
            unique += len(lifts) == 1
    return ProjectivityReport(len(instances), lifted, unique)


def boolean_module_corpus(max_size: int = 8) -> list[tuple[FiniteSemimodule, FiniteSemimodule, tuple[int, ...]]]:
    """Surjections ``N -> M`` of Boolean modules with ``|N| <= max_size``.

    ``N`` runs over free modules and their quotients by one relation; ``M`` over
    quotients of ``N`` by one further relation.
    """
    out = []
    seen = set()
    bases = [free_module(BOOLEAN, k) for k in (1, 2, 3) if 2 ** k <= max_size]
    sources = []
    for F in bases:
        sources.append(F)
        for x, y in itertools.combinations(F.elements, 2):
            Q, _ = quotient_module(F, [(x, y)])
            key = (Q.add_table, Q.action)
            if key not in seen:
                seen.add(key)
                sources.append(Q)
    for N in sources:
        out.append((N, N, tuple(N.elements)))
        for x, y in itertools.combinations(N.elements, 2):
            M, proj = quotient_module(N, [(x, y)])
            out.append((N, M, tuple(proj)))
    return out


@dataclass(frozen=True)
class SummandSplit:
    kept: tuple[int, ...]
    dropped: tuple[int, ...]


def summand_basis_split(m: FiniteSemimodule, basis: Sequence[int],
                        e: Sequence[int], f: Sequence[int]) -> SummandSplit:
    """Split a basis along an idempotent pair of endomorphisms ``(e, f)``."""
    for h in (e, f):
        if not is_hom(m, m, h):
            raise ValueError("not an endomorphism")
    for x in m.elements:
        if e[f[x]] != m.zero or f[e[x]] != m.zero or m.add(e[x], f[x]) != x:
            raise ValueError("pair fails ef = fe = 0, e + f = id")
    R = m.semiring
    kept, dropped = [], []
    for s in basis:
        if e[s] == m.zero:
            dropped.append(s)
        elif any(e[s] == m.act(u, s) for u in R.units):
            kept.append(s)
        else:
            raise InvariantError(f"projection is not diagonal on basis element {m.labels[s]}")
        if f[s] not in (m.zero,) and not any(f[s] == m.act(u, s) for u in R.units):
            raise InvariantError(f"complement projection is not diagonal on {m.labels[s]}")
    image = {e[x] for x in m.elements}
    if span(m, kept) != image or not is_linearly_independent(m, kept):
        raise InvariantError("kept basis elements do not form a basis of the image")
    return SummandSplit(tuple(kept), tuple(dropped))


def endomorphism_pairs(m: FiniteSemimodule) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(e, f)`` with ``ef = fe = 0`` and ``e + f = id``."""
    ends = list(module_homs(m, m))
    out = []
    for e in ends:
        for f in ends:
            if all(e[f[x]] == m.zero and f[e[x]] == m.zero and m.add(e[x], f[x]) == x for x in m.elements):
                out.append((e, f))
    return out


def dup_witness(r: FiniteTable, m: int, n: int, budget: int = 10 ** 7) -> bool:
    """True iff ``r^m`` and ``r^n`` are not isomorphic (searched exhaustively)."""
    if m == n:
        return False
    if r.size ** m != r.size ** n:
        return True
    A, B = free_module(r, m), free_module(r, n)
    if B.size ** m > budget:
        raise BudgetExceeded("isomorphism search exceeds budget")
    for f in module_homs(A, B, budget):
        if len(set(f)) == B.size:
            return False
    return True


def all_matrices(R: FiniteTable, n: int) -> Iterable[SemiringMatrix]:
    for flat in itertools.product(R.elements, repeat=n * n):
        yield SemiringMatrix(R, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def is_generalized_permutation(a: SemiringMatrix) -> bool:
    return _structural_inverse(a) is not None


def random_gln(R: Semiring, n: int, rng, unit: Callable[[], Any]) -> SemiringMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return gln_recompose(GLnFactorization(tuple(unit() for _ in range(n)), tuple(perm)), R)
