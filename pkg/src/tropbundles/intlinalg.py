"""Exact integer and rational linear algebra on plain nested lists.

Matrices are ``list[list[int]]`` (or ``Fraction``) in row-major order. Nothing here
uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right == diag`` with unimodular ``left`` and ``right``."""

    diag: Matrix
    left: Matrix
    right: Matrix
    left_inv: Matrix
    right_inv: Matrix

    @property
    def invariants(self) -> list[int]:
        out = []
        for i in range(min(len(self.diag), len(self.diag[0]) if self.diag else 0)):
            if self.diag[i][i] != 0:
                out.append(self.diag[i][i])
        return out

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms; ``ncols`` is needed only for zero-row input."""
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    d = [list(map(int, row)) for row in a]
    left, left_inv = identity(m), identity(m)
    right, right_inv = identity(n), identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]
        for row in left_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]
        right_inv[i], right_inv[j] = right_inv[j], right_inv[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q == 0:
            return
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]
        for row in left_inv:
            row[src] -= q * row[dst]

    def add_col(src, dst, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in d:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]
        right_inv[src] = [x - q * y for x, y in zip(right_inv[src], right_inv[dst])]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        left[i] = [-x for x in left[i]]
        for row in left_inv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t] != 0:
                        done = False
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j] != 0:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if d[i][j] % d[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (t, t)
            for i in range(t, m):
                if d[i][t] != 0 and abs(d[i][t]) < abs(d[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if d[t][j] != 0 and abs(d[t][j]) < abs(d[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithForm(d, left, right, left_inv, right_inv)


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A lattice basis of ``{x in Z^ncols : A x = 0}``."""
    if not a:
        return identity(ncols)
    snf = smith_normal_form(a)
    r = snf.rank
    return [[snf.right[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> list[int] | None:
    """One integer solution of ``A x = b`` or ``None``."""
    if not a:
        return [0] * ncols if not any(b) else None
    snf = smith_normal_form(a)
    ub = matvec(snf.left, b)
    r = snf.rank
    y = [0] * ncols
    for i in range(len(ub)):
        if i < r:
            q, rem = divmod(ub[i], snf.diag[i][i])
            if rem:
                return None
            y[i] = q
        elif ub[i] != 0:
            return None
    return matvec(snf.right, y)


def image_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """A lattice basis of the subgroup of Z^dim spanned by ``vectors`` (Hermite style)."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(dim):
                    r[k] -= q * piv[k]
            nz = [r for r in nz if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r[col] == 0 and any(r)]
        col += 1
    return basis


# -- rational ---------------------------------------------------------------


def _frac_rows(a):
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    rows = _frac_rows(a)
    n = len(rows[0]) if rows else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rational_rank(a: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(a, ncols)[1]) if a else 0


def solve_rational(a: Sequence[Sequence], b: Sequence, ncols: int) -> list[Fraction] | None:
    """One rational solution of ``A x = b`` (free variables set to 0) or ``None``."""
    if not a:
        return [Fraction(0)] * ncols if not any(b) else None
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def rational_nullspace(a: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    if not a:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(a, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis
