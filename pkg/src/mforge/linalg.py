"""Exact dense linear algebra over any of the scalar fields.

Matrices are lists of rows of Scalars.  Everything here is plain Gaussian
elimination; sizes stay at desk scale (<= 16) so no pivoting strategy or
sparsity is needed.
"""

from __future__ import annotations


def zeros(field, rows, cols):
    return [[field.zero() for _ in range(cols)] for _ in range(rows)]


def identity(field, n):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one()
    return m


def mat_vec(m, v):
    field = m[0][0].field
    out = []
    for row in m:
        acc = field.zero()
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def rref(matrix):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [row[:] for row in matrix]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if not m[i][c].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inv()
        m[r] = [a * inv for a in m[r]]
        for i in range(n_rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def rank(matrix):
    return len(rref(matrix)[0])


def kernel_basis(matrix, field, n_cols=None):
    """Basis of the right kernel {x : M x = 0}."""
    if not matrix:
        assert n_cols is not None
        return [[field.one() if i == j else field.zero() for j in range(n_cols)]
                for i in range(n_cols)]
    n_cols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero()] * n_cols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """One solution of M x = b, or None if inconsistent."""
    field = rhs[0].field if rhs else matrix[0][0].field
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    n_cols = len(matrix[0])
    for row in red:
        if all(a.is_zero() for a in row[:n_cols]) and not row[n_cols].is_zero():
            return None
    x = [field.zero()] * n_cols
    for r, pc in enumerate(pivots):
        if pc == n_cols:
            return None
        x[pc] = red[r][n_cols]
    return x


def invert(matrix):
    """Inverse of a square matrix, or None if singular."""
    n = len(matrix)
    field = matrix[0][0].field
    aug = [row[:] + ident_row for row, ident_row in zip(matrix, identity(field, n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def in_span(basis_rref, vec):
    """Membership test against rows already in RREF (with their pivots)."""
    rows, pivots = basis_rref
    v = vec[:]
    for row, pc in zip(rows, pivots):
        if not v[pc].is_zero():
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return all(a.is_zero() for a in v)
