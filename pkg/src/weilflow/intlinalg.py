"""Exact linear algebra over the integers.

Frobenius matrices stay small (2g <= 16, exterior powers up to C(2g, g) rows)
but entries of matrix powers grow without bound, so everything here runs on
Python big ints: no modulus, no floats, no overflow. All functions treat
matrices as lists of row lists and never mutate their arguments.
"""

from __future__ import annotations

from .errors import ComputationError

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    bt = [[b[t][j] for t in range(k)] for j in range(m)]
    return [[sum(row[t] * col[t] for t in range(k)) for col in bt] for row in a]


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = [list(row) for row in a]
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def det_bareiss(a: Matrix) -> int:
    """Determinant by fraction-free Gaussian elimination.

    Every division below is exact (Bareiss), so the result is the true
    integer determinant no matter how large the entries get.
    """
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(a: Matrix) -> list[int]:
    """Characteristic polynomial det(T*I - A), ascending coefficients, monic.

    Faddeev-LeVerrier over the integers. The per-step division by k is exact
    (the coefficients are integers); this is asserted rather than assumed.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = sum(am[i][i] for i in range(n))
        if tr % k:
            raise ComputationError(
                "Faddeev-LeVerrier trace %d not divisible by step %d" % (tr, k)
            )
        c = -(tr // k)
        coeffs[n - k] = c
        if k < n:
            for i in range(n):
                am[i][i] += c
            m = am
    return coeffs


def smith_normal_form(a: Matrix) -> list[int]:
    """Diagonal of the Smith normal form: d_1 | d_2 | ... , all >= 0.

    Classic elementary-operation reduction with minimal-|pivot| selection.
    The divisibility chain holds because a pivot is only accepted once it
    divides every entry of the remaining block.
    """
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank_bound = min(rows, cols)
    diag: list[int] = []
    top = 0
    while top < rank_bound:
        piv = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = m[i][j]
                if v != 0 and (piv is None or abs(v) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        m[top], m[i0] = m[i0], m[top]
        for row in m:
            row[top], row[j0] = row[j0], row[top]
        p = m[top][top]
        dirty = False
        for i in range(top + 1, rows):
            if m[i][top]:
                q = m[i][top] // p
                for j in range(top, cols):
                    m[i][j] -= q * m[top][j]
                dirty = dirty or m[i][top] != 0
        for j in range(top + 1, cols):
            if m[top][j]:
                q = m[top][j] // p
                for i in range(top, rows):
                    m[i][j] -= q * m[i][top]
                dirty = dirty or m[top][j] != 0
        if dirty:
            continue
        offender = None
        for i in range(top + 1, rows):
            if any(m[i][j] % p for j in range(top + 1, cols)):
                offender = i
                break
        if offender is not None:
            for j in range(top, cols):
                m[top][j] += m[offender][j]
            continue
        diag.append(abs(p))
        top += 1
    while len(diag) < rank_bound:
        diag.append(0)
    return diag
