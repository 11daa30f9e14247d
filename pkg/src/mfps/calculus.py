"""Formal partial derivatives and Jacobians."""

from dataclasses import dataclass

from . import _linalg
from .errors import ArgumentError, DimensionError
from .series import TruncatedSeries, retruncate
from .multiindex import unit_index


def partial_derivative(f, j):
    """D_j f for 1-based ``j``.

    An N-jet only determines the (N-1)-jet of its derivative, so the result
    has order ``f.order - 1``.
    """
    if not 1 <= j <= f.n:
        raise ArgumentError(f"variable index {j} out of range 1..{f.n}")
    i = j - 1
    table = {}
    for alpha, c in f.coeffs.items():
        e = alpha[i]
        if e == 0:
            continue
        lowered = alpha[:i] + (e - 1,) + alpha[i + 1:]
        table[lowered] = e * c
    return TruncatedSeries(f.n, max(f.order - 1, -1), table)


def higher_derivative(f, j, m):
    if m < 0:
        raise ArgumentError("derivative order must be nonnegative")
    if not 1 <= j <= f.n:
        raise ArgumentError(f"variable index {j} out of range 1..{f.n}")
    for _ in range(m):
        f = partial_derivative(f, j)
    return f


@dataclass(frozen=True)
class JacobianMatrix:
    """entries[i][j] = D_{j+1}(g_{i+1})."""

    n: int
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def order(self):
        return self.entries[0][0].order

    def rows(self):
        return [list(r) for r in self.entries]


def _components(G):
    comps = list(getattr(G, "components", G))
    if not comps:
        raise DimensionError("empty series vector")
    n = comps[0].n
    if len(comps) != n or any(g.n != n for g in comps):
        raise DimensionError(f"need {n} components in {n} variables")
    return comps


def jacobian(G):
    comps = _components(G)
    n = len(comps)
    return JacobianMatrix(
        n, tuple(tuple(partial_derivative(g, j) for j in range(1, n + 1)) for g in comps)
    )


def jacobian_at_origin(G):
    """Matrix of linear coefficients: entry (i, j) is the x_j coefficient of g_i."""
    comps = _components(G)
    n = len(comps)
    return [[g[unit_index(n, j)] for j in range(n)] for g in comps]


def det(m):
    """Exact determinant by rational elimination."""
    return _linalg.det(m)


def matrix_product(a, b):
    """Product of two square matrices of series (orders must agree)."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def retruncate_matrix(m, order):
    return [[retruncate(x, order) for x in row] for row in m]
