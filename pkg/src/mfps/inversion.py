"""Compositional inverses of series vectors."""

from fractions import Fraction

from . import _linalg
from .calculus import det, jacobian_at_origin
from .composition import SeriesVector, _as_vector, _check_square, compose_vector
from .errors import ArgumentError, InversionError
from .multiindex import enumerate_degree, unit_index
from .series import TruncatedSeries, block, is_unit, mul, one, retruncate


def is_invertible(G):
    """Nonunit components and an exactly nonzero Jacobian determinant at the origin."""
    G = _as_vector(G)
    _check_square(G)
    if any(is_unit(g) for g in G):
        return False
    return det(jacobian_at_origin(G)) != 0


def _require_invertible(G):
    units = [i + 1 for i, g in enumerate(G) if is_unit(g)]
    if units:
        raise InversionError(
            f"components {units} are units; compose_inverse needs a nonunit vector "
            "(use invert_affine for affine unit vectors)",
            "unit",
        )
    if det(jacobian_at_origin(G)) == 0:
        raise InversionError("the Jacobian at the origin is singular", "singular")


def _linear_forms(L, n, order):
    """The series l_i = sum_j L[i][j] x_j."""
    return [
        TruncatedSeries(n, order, {unit_index(n, j): L[i][j] for j in range(n)})
        for i in range(n)
    ]


def _degree_matrix(forms, n, j):
    """M[gamma][alpha] = coefficient of X^gamma in l^alpha, over |alpha| = |gamma| = j."""
    idx = enumerate_degree(n, j)
    cache = {}

    def power(alpha):
        hit = cache.get(alpha)
        if hit is None:
            hit = one(n, j)
            for form, e in zip(forms, alpha):
                for _ in range(e):
                    hit = mul(hit, form)
            cache[alpha] = hit
        return hit

    cols = [power(alpha) for alpha in idx]
    return idx, [[col[gamma] for col in cols] for gamma in idx]


def compose_inverse(G, order=None):
    """H with H o G = G o H = I up to ``order`` (default: G's order).

    The constant terms of H vanish, its linear part is the inverse of
    J_G(0), and each higher degree is solved from a linear system whose matrix
    depends only on the linear part of G and whose right-hand side collects
    the contributions of the lower degrees of H.
    """
    G = _as_vector(G)
    _check_square(G)
    _require_invertible(G)
    n = G.n
    N = G.order if order is None else order
    if N > G.order or N < 0:
        raise ArgumentError(f"order must be in 0..{G.order}")
    G = G.retruncate(N)
    L = jacobian_at_origin(G)
    Linv = _linalg.inverse(L)
    tables = [{unit_index(n, j): Linv[i][j] for j in range(n) if Linv[i][j]} for i in range(n)]
    forms = _linear_forms(L, n, N)
    for j in range(2, N + 1):
        Gj = G.retruncate(j)
        H = SeriesVector(TruncatedSeries(n, j, t) for t in tables)
        lower = compose_vector(H, Gj)
        idx, M = _degree_matrix([retruncate(f, j) for f in forms], n, j)
        rhs = [[-block(h, j)[gamma] for gamma in idx] for h in lower]
        solutions = _linalg.solve(M, rhs)
        for i, sol in enumerate(solutions):
            for alpha, value in zip(idx, sol):
                if value:
                    tables[i][alpha] = value
    return SeriesVector(TruncatedSeries(n, N, t) for t in tables)


def invert_affine(G):
    """Inverse of an affine vector G(X) = c + L X, namely L^-1 (X - c)."""
    G = _as_vector(G)
    _check_square(G)
    for i, g in enumerate(G, start=1):
        if g.degree() > 1:
            raise ArgumentError(f"component {i} has degree {g.degree()}; invert_affine needs affine input")
    n, N = G.n, G.order
    L = jacobian_at_origin(G)
    if det(L) == 0:
        raise InversionError("the linear part is singular", "singular")
    Linv = _linalg.inverse(L)
    c = G.constant_terms()
    out = []
    for i in range(n):
        table = {unit_index(n, k): Linv[i][k] for k in range(n)}
        table[(0,) * n] = -sum((Linv[i][k] * c[k] for k in range(n)), Fraction(0))
        out.append(TruncatedSeries(n, N, table))
    return SeriesVector(out)


def invert(G, order=None):
    """Route to :func:`compose_inverse` or :func:`invert_affine`.

    Non-affine vectors with unit components have no supported inverse.
    """
    G = _as_vector(G)
    _check_square(G)
    if not any(is_unit(g) for g in G):
        return compose_inverse(G, order)
    if all(g.degree() <= 1 for g in G):
        H = invert_affine(G)
        return H if order is None else H.retruncate(order)
    raise InversionError(
        "inverses of non-affine vectors with unit components are not supported; "
        "how to extend the group structure to arbitrary unit series is an open problem",
        "nonaffine-unit",
    )
