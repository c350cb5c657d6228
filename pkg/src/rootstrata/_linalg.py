"""Small exact linear algebra over ``Fraction``.

Matrices are tuples of row tuples.  Everything here is rank <= 9, so plain
Gauss-Jordan is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def to_fraction_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def inverse(m: Sequence[Sequence[int | Fraction]]) -> Matrix:
    """Exact inverse; raises ``ZeroDivisionError`` on a singular matrix."""
    n = len(m)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def rank(vectors: Sequence[Sequence[int | Fraction]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_rank(points: Sequence[Sequence[int | Fraction]]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    p = tab[row][col]
    tab[row] = [x / p for x in tab[row]]
    for r, line in enumerate(tab):
        if r != row and line[col] != 0:
            f = line[col]
            tab[r] = [x - f * y for x, y in zip(line, tab[row])]
    basis[row] = col


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> None:
    # Bland's rule: lowest eligible column enters, lowest basis index leaves.
    m = len(basis)
    while True:
        obj = tab[m]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return
        best = None
        for r in range(m):
            a = tab[r][col]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            raise Unbounded("objective is unbounded below")
        _pivot(tab, basis, best[1], col)


def simplex_min(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Minimise ``c.x`` subject to ``a_eq x = b_eq`` and ``x >= 0``, exactly.

    Two-phase tableau simplex.  Raises :class:`Infeasible` or
    :class:`Unbounded`.
    """
    n = len(c)
    rows = []
    for row, rhs in zip(a_eq, b_eq):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append((row, rhs))
    m = len(rows)
    # phase 1 on artificials n..n+m-1
    tab = [row + [Fraction(int(r == k)) for k in range(m)] + [rhs]
           for r, (row, rhs) in enumerate(rows)]
    basis = list(range(n, n + m))
    obj = [Fraction(0)] * (n + m + 1)
    for line in tab:
        for j in range(n):
            obj[j] -= line[j]
        obj[-1] -= line[-1]
    tab.append(obj)
    _run(tab, basis, n)
    if tab[m][-1] != 0:
        raise Infeasible("constraints have no nonnegative solution")
    # push leftover artificials out; rows that cannot pivot are redundant
    for r in range(m - 1, -1, -1):
        if basis[r] >= n:
            col = next((j for j in range(n) if tab[r][j] != 0), None)
            if col is None:
                del tab[r]
                del basis[r]
            else:
                _pivot(tab, basis, r, col)
    m = len(basis)
    tab = [line[:n] + [line[-1]] for line in tab[:m]]
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for r, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [x - f * y for x, y in zip(obj, tab[r])]
    tab.append(obj)
    _run(tab, basis, n)
    x = [Fraction(0)] * n
    for r, b in enumerate(basis):
        x[b] = tab[r][-1]
    return -tab[m][-1], x
