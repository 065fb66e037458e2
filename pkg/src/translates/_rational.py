"""Small exact linear algebra over ``fractions.Fraction``.

Gram matrices in this package are tiny (at most a few hundred rows) and
their entries are exact rationals, so plain Gaussian elimination is fast
enough and keeps every distance certificate bit-exact.
"""

from fractions import Fraction


def _copy(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def ldl_pivots(matrix):
    """Symmetric elimination with diagonal pivoting.

    Returns the list of pivots in elimination order. A symmetric matrix is
    positive semidefinite iff every pivot is >= 0 and a zero pivot leaves a
    zero remaining row/column.
    """
    a = _copy(matrix)
    n = len(a)
    active = list(range(n))
    pivots = []
    while active:
        best = max(active, key=lambda i: a[i][i])
        d = a[best][best]
        pivots.append(d)
        active.remove(best)
        if d == 0:
            if any(a[best][j] != 0 for j in active):
                pivots.append(Fraction(-1))
                return pivots
            continue
        if d < 0:
            return pivots
        row = a[best]
        for i in active:
            f = row[i] / d
            if f == 0:
                continue
            ai = a[i]
            for j in active:
                if row[j] != 0:
                    ai[j] -= f * row[j]
    return pivots


def is_psd(matrix):
    return all(p >= 0 for p in ldl_pivots(matrix))


def solve_least_squares(gram, rhs):
    """Solve ``gram @ x = rhs`` for symmetric PSD ``gram``.

    Dependent columns are dropped (their coefficient is 0), which gives a
    valid minimiser of the associated quadratic whenever ``rhs`` lies in the
    range of ``gram`` -- always the case for normal equations.

    Returns ``(x, independent)`` where ``independent`` lists kept indices.
    """
    n = len(gram)
    a = _copy(gram)
    b = [Fraction(v) for v in rhs]
    # forward elimination, pivot on the diagonal in natural order
    pivot_cols = []
    for k in range(n):
        d = a[k][k]
        if d == 0:
            continue
        pivot_cols.append(k)
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f == 0:
                continue
            ai = a[i]
            for j in range(k, n):
                if rowk[j] != 0:
                    ai[j] -= f * rowk[j]
            b[i] -= f * b[k]
    x = [Fraction(0)] * n
    for k in reversed(pivot_cols):
        s = b[k]
        rowk = a[k]
        for j in pivot_cols:
            if j > k and rowk[j] != 0:
                s -= rowk[j] * x[j]
        x[k] = s / rowk[k]
    return x, pivot_cols


def inverse(matrix):
    """Exact inverse by Gauss-Jordan; raises ``ZeroDivisionError`` on a
    singular matrix with the offending column index in the message."""
    n = len(matrix)
    a = _copy(matrix)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError(f"singular matrix (column {col})")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [v / d for v in a[col]]
        inv[col] = [v / d for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def dependent_subset(gram):
    """Indices ``j`` whose column is spanned by the kept columns before it.

    ``gram`` must be symmetric PSD (a Gram matrix)."""
    kept, dependent = [], []
    for j in range(len(gram)):
        trial = kept + [j]
        sub = [[gram[r][c] for c in trial] for r in trial]
        if any(p == 0 for p in ldl_pivots(sub)):
            dependent.append(j)
        else:
            kept.append(j)
    return dependent
