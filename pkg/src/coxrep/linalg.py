"""Exact linear algebra over a real cyclotomic field context.

Matrices are lists (or tuples) of rows of FieldElement.  Characteristic
polynomials, determinants and inverses go through Faddeev-LeVerrier, which
only ever divides by small integers and by the determinant; rank and
nullspace use fraction-free elimination so no field inversions are needed
to decide dimensions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

from .cyclotomic import FieldContext, FieldElement

Matrix = Sequence[Sequence[FieldElement]]


def identity(ctx: FieldContext, n: int) -> list[list[FieldElement]]:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def mat_freeze(m: Matrix) -> tuple[tuple[FieldElement, ...], ...]:
    return tuple(tuple(row) for row in m)


def mat_mul(ctx: FieldContext, a: Matrix, b: Matrix) -> list[list[FieldElement]]:
    n, k, p = len(a), len(b), len(b[0])
    out = [[ctx.zero] * p for _ in range(n)]
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            v = row[t]
            if v.is_zero():
                continue
            brow = b[t]
            for j in range(p):
                w = brow[j]
                if not w.is_zero():
                    acc[j] = acc[j] + v * w
    return out


def mat_vec(ctx: FieldContext, a: Matrix, x: Sequence[FieldElement]) -> list[FieldElement]:
    out = []
    for row in a:
        acc = ctx.zero
        for v, xi in zip(row, x):
            if not (v.is_zero() or xi.is_zero()):
                acc = acc + v * xi
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix) -> list[list[FieldElement]]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> list[list[FieldElement]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s) -> list[list[FieldElement]]:
    return [[x * s for x in row] for row in a]


def transpose(a: Matrix) -> list[list[FieldElement]]:
    return [list(col) for col in zip(*a)]


def mat_map(f: Callable[[FieldElement], FieldElement], a: Matrix) -> list[list[FieldElement]]:
    return [[f(x) for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)) \
        and len(a) == len(b) and all(len(ra) == len(rb) for ra, rb in zip(a, b))


def is_identity(ctx: FieldContext, a: Matrix) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != (ctx.one if i == j else ctx.zero):
                return False
    return True


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def trace(ctx: FieldContext, a: Matrix) -> FieldElement:
    acc = ctx.zero
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def charpoly(ctx: FieldContext, a: Matrix) -> list[FieldElement]:
    """Characteristic polynomial det(XI - A) by Faddeev-LeVerrier.

    Returns coefficients lowest degree first, length n+1, monic.  Only
    divides by the integers 1..n, so everything stays exact.
    """
    n = len(a)
    coeffs_desc = [ctx.one]          # X^n coefficient
    mk = [list(row) for row in a]
    for k in range(1, n + 1):
        ck = trace(ctx, mk) * Fraction(-1, k)
        coeffs_desc.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] = mk[i][i] + ck
            mk = mat_mul(ctx, a, mk)
    return list(reversed(coeffs_desc))


def determinant(ctx: FieldContext, a: Matrix) -> FieldElement:
    n = len(a)
    if n == 0:
        return ctx.one
    c0 = charpoly(ctx, a)[0]
    return c0 if n % 2 == 0 else -c0


def inverse(ctx: FieldContext, a: Matrix) -> list[list[FieldElement]]:
    """Inverse via Cayley-Hamilton; a single field inversion (of det)."""
    n = len(a)
    poly = charpoly(ctx, a)  # [c_0, ..., c_{n-1}, 1]
    if poly[0].is_zero():
        raise ZeroDivisionError("matrix is singular")
    acc = identity(ctx, n)   # Horner: A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I
    for k in range(n - 1, 0, -1):
        acc = mat_mul(ctx, a, acc)
        for i in range(n):
            acc[i][i] = acc[i][i] + poly[k]
    scale = -poly[0].invert()
    return mat_scale(acc, scale)


def _row_primitive(row: list[FieldElement]) -> list[FieldElement]:
    """Scale a row by a rational so integer contents stay small."""
    den_lcm = 1
    content = 0
    for x in row:
        if not x.is_zero():
            den_lcm = den_lcm * x.den // math.gcd(den_lcm, x.den)
            for v in x.num:
                content = math.gcd(content, v)
                if content == 1 and den_lcm == 1:
                    break
    if content in (0, 1) and den_lcm == 1:
        return row
    factor = Fraction(den_lcm, content if content else 1)
    return [x * factor for x in row]


def _pivot_cost(x: FieldElement) -> tuple[int, int]:
    return (x.effective_degree, sum(1 for v in x.num if v))


def eliminate(ctx: FieldContext, rows: list[list[FieldElement]]
              ) -> tuple[list[list[FieldElement]], list[int]]:
    """Fraction-free forward elimination (no field inversions).

    Returns the echelon rows and pivot column indices.  Pivot rows are
    chosen to prefer low-degree (ideally rational) pivots.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, m):
            x = rows[i][col]
            if not x.is_zero():
                cost = _pivot_cost(x)
                if best is None or cost < best[0]:
                    best = (cost, i)
                    if cost[0] == 0:
                        break
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, m):
            x = rows[i][col]
            if x.is_zero():
                continue
            rows[i] = _row_primitive(
                [pivot * a - x * b for a, b in zip(rows[i], rows[r])])
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows[:r] + rows[r:], pivots


def rank(ctx: FieldContext, a: Matrix) -> int:
    if not a:
        return 0
    _, pivots = eliminate(ctx, [list(r) for r in a])
    return len(pivots)


def nullspace(ctx: FieldContext, a: Matrix) -> list[list[FieldElement]]:
    """Exact basis of the right nullspace {x : a.x = 0}."""
    if not a:
        return []
    ncols = len(a[0])
    rows, pivots = eliminate(ctx, [list(r) for r in a])
    rows = rows[:len(pivots)]
    # normalize pivot rows (one inversion per pivot) then back-eliminate
    for k in range(len(pivots) - 1, -1, -1):
        inv = rows[k][pivots[k]].invert()
        rows[k] = [x * inv for x in rows[k]]
        for i in range(k):
            f = rows[i][pivots[k]]
            if not f.is_zero():
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
    free_cols = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fc in free_cols:
        vec = [ctx.zero] * ncols
        vec[fc] = ctx.one
        for k, pc in enumerate(pivots):
            vec[pc] = -rows[k][fc]
        basis.append(vec)
    return basis


def nullity(ctx: FieldContext, a: Matrix) -> int:
    if not a:
        return 0
    return len(a[0]) - rank(ctx, a)


def intertwiner_space(ctx: FieldContext, gens_a: Sequence[Matrix],
                      gens_b: Sequence[Matrix]) -> list[list[list[FieldElement]]]:
    """Basis of {g : A_s g = g B_s for all s}, as n x n matrices.

    Solves the n^2-unknown linear system exactly; a nonzero invertible
    solution conjugates the B generators into the A generators.
    """
    n = len(gens_a[0])
    rows = []
    for ma, mb in zip(gens_a, gens_b):
        for i in range(n):
            for j in range(n):
                row = [ctx.zero] * (n * n)
                for k in range(n):
                    if not ma[i][k].is_zero():
                        row[k * n + j] = row[k * n + j] + ma[i][k]
                    if not mb[k][j].is_zero():
                        row[i * n + k] = row[i * n + k] - mb[k][j]
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if not rows:
        return [identity(ctx, n)]
    basis = nullspace(ctx, rows)
    return [[vec[i * n:(i + 1) * n] for i in range(n)] for vec in basis]
