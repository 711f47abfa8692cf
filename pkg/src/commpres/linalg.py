"""Dense exact linear algebra over a Field.

Matrices are lists of row lists of scalars.  Everything is plain Gaussian
elimination; the dimensions in this package are tiny, so exactness beats
cleverness.
"""

from __future__ import annotations

from .fields import Field


def zeros_matrix(field: Field, rows: int, cols: int):
    z = field.zero
    return [[z for _ in range(cols)] for _ in range(rows)]


def identity_matrix(field: Field, n: int):
    m = zeros_matrix(field, n, n)
    one = field.one
    for i in range(n):
        m[i][i] = one
    return m


def copy_matrix(a):
    return [row[:] for row in a]


def mat_mul(field: Field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros_matrix(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            s = ai[k]
            if not s:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + s * bk[j]
    return out


def mat_vec(field: Field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for s, x in zip(row, v):
            if s and x:
                acc = acc + s * x
        out.append(acc)
    return out


def rref(field: Field, a):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    m = copy_matrix(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field: Field, a) -> int:
    if not a:
        return 0
    _, pivots = rref(field, a)
    return len(pivots)


def kernel_basis(field: Field, a):
    """Basis of the right null space of a (solutions of a @ v = 0)."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(field, a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def solve(field: Field, a, b):
    """One solution of a @ x = b, or None if the system is inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    r, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def inverse(field: Field, a):
    """Inverse matrix, or None if a is singular."""
    n = len(a)
    aug = [a[i][:] + identity_matrix(field, n)[i] for i in range(n)]
    r, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def vectors_equal(u, v) -> bool:
    return len(u) == len(v) and all(x == y for x, y in zip(u, v))


def is_zero_vector(v) -> bool:
    return not any(v)
