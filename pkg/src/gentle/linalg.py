"""Exact linear algebra over the rationals.

Matrices are immutable tuples of tuples of Fraction.  Everything here is
dense and small: the complexes this package produces have a handful of
positions per degree, so cubic elimination with exact arithmetic is fine.
Ranks are computed by fraction-free (Bareiss) elimination on integer
matrices whenever the input clears denominators cheaply.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(m: int, n: int) -> Matrix:
    row = (ZERO,) * n
    return tuple(row for _ in range(m))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    """Entrywise equality, padding width mismatches with zeros.

    Products through a zero space legitimately lose their column count; any
    entry beyond a collapsed width is exactly zero, so padding is sound.
    """
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        n = max(len(ra), len(rb))
        for j in range(n):
            xa = ra[j] if j < len(ra) else ZERO
            xb = rb[j] if j < len(rb) else ZERO
            if xa != xb:
                return False
    return True


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    m = len(a)
    n = len(b[0]) if b else 0
    k = len(b)
    if a and len(a[0]) != k:
        raise ValueError(f"shape mismatch: {shape(a)} * {shape(b)}")
    rows = []
    for i in range(m):
        arow = a[i]
        out = [ZERO] * n
        for t in range(k):
            x = arow[t]
            if x == 0:
                continue
            brow = b[t]
            for j in range(n):
                y = brow[j]
                if y != 0:
                    out[j] += x * y
        rows.append(tuple(out))
    return tuple(rows)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    out = [ZERO] * len(a)
    for j, x in enumerate(v):
        if x:
            for i, row in enumerate(a):
                y = row[j]
                if y:
                    out[i] += x * y
    return tuple(out)


def rref(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in a]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _int_rows(a: Matrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank)."""
    out = []
    for row in a:
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                # lcm accumulation
                g = _gcd(den, d)
                den = den // g * d
        out.append([int(x * den) for x in row] if den != 1 else [x.numerator for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rank(a: Matrix) -> int:
    """Rank via fraction-free elimination (row scaling does not change it)."""
    rows = _int_rows(a)
    m = len(rows)
    n = len(rows[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        xr = rows[r]
        for i in range(r + 1, m):
            xi = rows[i]
            f = xi[c]
            for j in range(c, n):
                xi[j] = (pv * xi[j] - f * xr[j]) // prev
        prev = pv
        r += 1
        if r == m:
            break
    return r


def nullspace(a: Matrix, n_cols: int | None = None) -> tuple[list[Vector], list[int]]:
    """Basis of the right kernel of ``a``.

    Returns (basis, free_columns).  Basis vector k has entry 1 at
    free_columns[k] and 0 at the other free columns, so coordinates of any
    kernel vector can be read off at the free columns.
    """
    if n_cols is None:
        n_cols = len(a[0]) if a else 0
    if not a:
        return [tuple(ONE if j == i else ZERO for j in range(n_cols)) for i in range(n_cols)], list(range(n_cols))
    rows, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * n_cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis, free


def solve(a: Matrix, b: Vector) -> Vector | None:
    """One solution of a x = b, or None if inconsistent."""
    m = len(a)
    n = len(a[0]) if a else 0
    aug = tuple(tuple(a[i]) + (b[i],) for i in range(m))
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return tuple(x)
