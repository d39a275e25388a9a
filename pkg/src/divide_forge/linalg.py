"""Exact integer matrix routines.

Everything here works over the integers with plain ``int`` arithmetic:
Hermite and Smith normal forms (with unimodular transforms), integer
kernels, integer linear solving, and cokernel invariants.  Matrices are
lists of rows.  Sizes in this package are small (a few hundred rows at
most), so the classic cubic algorithms are plenty.
"""

from __future__ import annotations

Matrix = list[list[int]]
Vector = list[int]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def copy(mat: Matrix) -> Matrix:
    return [row[:] for row in mat]


def shape(mat: Matrix) -> tuple[int, int]:
    return (len(mat), len(mat[0]) if mat else 0)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ma, na = shape(a)
    mb, nb = shape(b)
    if na != mb:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    out = zeros(ma, nb)
    for i in range(ma):
        arow = a[i]
        orow = out[i]
        for k in range(na):
            aik = arow[k]
            if aik:
                brow = b[k]
                for j in range(nb):
                    orow[j] += aik * brow[j]
    return out


def mat_vec(a: Matrix, x: Vector) -> Vector:
    m, n = shape(a)
    if n != len(x):
        raise ValueError("shape mismatch")
    return [sum(a[i][k] * x[k] for k in range(n)) for i in range(m)]


def transpose(mat: Matrix) -> Matrix:
    m, n = shape(mat)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def row_hnf(mat: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u @ mat == h``, ``u`` unimodular, and ``h``
    in row echelon form: pivots positive, strictly right of the pivots
    above them, entries above each pivot reduced to ``0 <= e < pivot``,
    zero rows last.
    """
    h = copy(mat)
    m, n = shape(h)
    u = identity(m)
    row = 0
    for col in range(n):
        # Make every entry below `row` in this column zero, accumulating
        # the gcd at `row` via Euclidean row operations.
        pivot_row = None
        for i in range(row, m):
            if h[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            h[row], h[pivot_row] = h[pivot_row], h[row]
            u[row], u[pivot_row] = u[pivot_row], u[row]
        for i in range(row + 1, m):
            while h[i][col] != 0:
                q = h[row][col] // h[i][col]
                if q:
                    for j in range(n):
                        h[row][j] -= q * h[i][j]
                    for j in range(m):
                        u[row][j] -= q * u[i][j]
                if h[row][col] == 0:
                    h[row], h[i] = h[i], h[row]
                    u[row], u[i] = u[i], u[row]
                    break
                h[row], h[i] = h[i], h[row]
                u[row], u[i] = u[i], u[row]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for i in range(row):
            q = h[i][col] // p
            if q:
                for j in range(n):
                    h[i][j] -= q * h[row][j]
                for j in range(m):
                    u[i][j] -= q * u[row][j]
        row += 1
        if row == m:
            break
    return h, u


def kernel_basis(mat: Matrix) -> list[Vector]:
    """Basis of the integer kernel ``{x : mat @ x == 0}``.

    The returned vectors span the kernel saturatedly (they extend to a
    basis of Z^n), because they are rows of a unimodular matrix.
    """
    h, u = row_hnf(transpose(mat))
    out = []
    for i, hrow in enumerate(h):
        if all(x == 0 for x in hrow):
            out.append(u[i][:])
    return out


def solve(mat: Matrix, rhs: Vector) -> Vector | None:
    """One integer solution of ``mat @ x == rhs``, or None."""
    m, n = shape(mat)
    if len(rhs) != m:
        raise ValueError("shape mismatch")
    # Column-echelonize: mat @ u^T has echelon rows when read transposed.
    h, u = row_hnf(transpose(mat))  # h = u @ mat^T, so mat = h^T @ inv(u)^T
    # Solve h^T z = rhs by forward substitution over h's pivot rows.
    z = [0] * n
    resid = rhs[:]
    for i, hrow in enumerate(h):
        pivot_col = next((j for j, x in enumerate(hrow) if x != 0), None)
        if pivot_col is None:
            break
        val = resid[pivot_col]
        if val % hrow[pivot_col]:
            return None
        q = val // hrow[pivot_col]
        z[i] = q
        if q:
            for j in range(m):
                resid[j] -= q * hrow[j]
    if any(resid):
        return None
    # x = u^T @ z
    return [sum(u[i][k] * z[i] for i in range(n)) for k in range(n)]


def unimodular_inverse(u: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n, n2 = shape(u)
    if n != n2:
        raise ValueError("not square")
    h, w = row_hnf(u)
    if any(h[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return w


def snf(mat: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns ``(d, u, v)`` with ``u @ mat @ v == d``.

    ``d`` is diagonal with nonnegative entries satisfying d[i] | d[i+1];
    ``u`` and ``v`` are unimodular.
    """
    d = copy(mat)
    m, n = shape(d)
    u = identity(m)
    v = identity(n)

    def row_op(i: int, j: int, q: int) -> None:  # row_i -= q * row_j
        for k in range(n):
            d[i][k] -= q * d[j][k]
        for k in range(m):
            u[i][k] -= q * u[j][k]

    def col_op(i: int, j: int, q: int) -> None:  # col_i -= q * col_j
        for k in range(m):
            d[k][i] -= q * d[k][j]
        for k in range(n):
            v[k][i] -= q * v[k][j]

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for k in range(m):
            d[k][i], d[k][j] = d[k][j], d[k][i]
        for k in range(n):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while True:
        # Locate the smallest-magnitude nonzero entry in the trailing block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # Clear row and column t; restarted whenever a remainder survives.
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # Enforce divisibility of the remaining block by d[t][t].
        p = d[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offender row to row t, redo
            continue
        t += 1
        if t == min(m, n):
            break
    for i in range(min(m, n)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return d, u, v


def invariant_factors(mat: Matrix) -> list[int]:
    """Nonzero diagonal of the Smith form (the divisibility chain)."""
    if not mat or not mat[0]:
        return []
    d, _, _ = snf(mat)
    return [d[i][i] for i in range(min(shape(d))) if d[i][i] != 0]


def cokernel(mat: Matrix) -> tuple[list[int], int]:
    """Invariants of ``Z^m / column-span(mat)`` for an m x n matrix.

    Returns ``(torsion, free_rank)`` where torsion lists the invariant
    factors > 1 in divisibility order.
    """
    m, n = shape(mat)
    if m == 0:
        return [], 0
    if n == 0:
        return [], m
    factors = invariant_factors(mat)
    torsion = [f for f in factors if f > 1]
    return torsion, m - len(factors)
