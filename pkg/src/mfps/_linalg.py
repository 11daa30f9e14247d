"""Exact Gaussian elimination over Fractions."""

from fractions import Fraction

from .errors import ArgumentError


def _square(m):
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ArgumentError("matrix is not square")
    return rows


def det(m):
    a = _square(m)
    n = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            factor = a[r][col] / p
            if factor:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] -= factor * prow[c]
    return sign * result


def solve(m, rhs):
    """Solve ``m @ X = rhs`` for a nonsingular square ``m``.

    ``rhs`` is a list of right-hand-side columns; returns the solution
    columns in the same layout.  Raises ``ZeroDivisionError`` on singular input.
    """
    a = _square(m)
    n = len(a)
    cols = [[Fraction(x) for x in col] for col in rhs]
    k = len(cols)
    aug = [a[r] + [cols[j][r] for j in range(k)] for r in range(n)]
    width = n + k
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        prow = aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                row = aug[r]
                for c in range(col, width):
                    row[c] -= factor * prow[c]
    return [[aug[r][n + j] for r in range(n)] for j in range(k)]


def inverse(m):
    n = len(m)
    eye = [[Fraction(int(r == c)) for r in range(n)] for c in range(n)]
    cols = solve(m, eye)
    return [[cols[c][r] for c in range(n)] for r in range(n)]
