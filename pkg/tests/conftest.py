import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import strategies as st

from mfps import SeriesVector, TruncatedSeries, eval_expression, parse_expression
from mfps.multiindex import enumerate_up_to


def ser(text, n=2, order=4):
    return eval_expression(parse_expression(text, n), order)


def random_rational(rng, numer_max=9, den_max=4):
    return Fraction(rng.randint(-numer_max, numer_max), rng.randint(1, den_max))


def random_series(rng, n, order, *, density=0.6, nonunit=False, max_degree=None,
                  min_degree=0, numer_max=9, den_max=4):
    top = order if max_degree is None else min(order, max_degree)
    table = {}
    for alpha in enumerate_up_to(n, top):
        d = sum(alpha)
        if d < min_degree or (nonunit and d == 0):
            continue
        if rng.random() < density:
            table[alpha] = random_rational(rng, numer_max, den_max)
    return TruncatedSeries(n, order, table)


def random_nonunit_vector(rng, n, order, **kw):
    """Nonunit components, none of them constant (each has a nonzero linear part)."""
    comps = []
    for i in range(n):
        g = random_series(rng, n, order, nonunit=True, **kw)
        while g.valuation() != 1:
            g = random_series(rng, n, order, nonunit=True, **kw)
        comps.append(g)
    return SeriesVector(comps)


@st.composite
def series_strategy(draw, n=None, order=None, nonunit=False):
    n = draw(st.integers(1, 3)) if n is None else n
    order = draw(st.integers(0, 6)) if order is None else order
    seed = draw(st.integers(0, 2**32 - 1))
    return random_series(random.Random(seed), n, order, nonunit=nonunit)


# independent sympy route -----------------------------------------------------

def symbols(n):
    return sympy.symbols(f"x1:{n + 1}")


def to_sympy(f):
    xs = symbols(f.n)
    expr = sympy.Integer(0)
    for alpha, c in f.coeffs.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, alpha):
            term *= x**e
        expr += term
    return expr


def from_sympy(expr, n, order):
    xs = symbols(n)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    table = {}
    for monom, c in poly.terms():
        if sum(monom) <= order:
            table[tuple(monom)] = Fraction(int(c.p), int(c.q))
    return TruncatedSeries(n, order, table)


def brute_mul(f, g):
    """Cauchy product straight from the definition: all index pairs."""
    out = {}
    for a, x in f.coeffs.items():
        for b, y in g.coeffs.items():
            c = tuple(i + j for i, j in zip(a, b))
            if sum(c) <= f.order:
                out[c] = out.get(c, 0) + x * y
    return TruncatedSeries(f.n, f.order, out)


@pytest.fixture
def rng():
    return random.Random(20241016)


def brute_force_inverse(G, order):
    """Inverse by undetermined coefficients, solved as one linear system.

    Unknowns are every coefficient b^i_alpha with |alpha| <= order; the
    equations say (sum_alpha b^i_alpha G^alpha)_gamma = [gamma == e_i].
    Polynomials and the solve both go through sympy over QQ.  Returns ``None``
    when the system has no unique solution.
    """
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.rings import ring

    n = G.n
    R, *_ = ring(",".join(f"x{i}" for i in range(1, n + 1)), QQ)

    def trunc(p):
        return R({m: c for m, c in p.items() if sum(m) <= order})

    comps = [R({a: QQ(c.numerator, c.denominator) for a, c in g.coeffs.items()}) for g in G]
    idx = enumerate_up_to(n, order)
    powers = {}
    for alpha in idx:
        p = R.one
        for g, e in zip(comps, alpha):
            for _ in range(e):
                p = trunc(p * g)
        powers[alpha] = p
    A = DomainMatrix(
        [[powers[alpha].get(gamma, QQ(0)) for alpha in idx] for gamma in idx],
        (len(idx), len(idx)),
        QQ,
    )
    if A.rank() < len(idx):
        return None
    out = []
    for i in range(n):
        e_i = tuple(int(j == i) for j in range(n))
        rhs = DomainMatrix([[QQ(int(gamma == e_i))] for gamma in idx], (len(idx), 1), QQ)
        sol = A.lu_solve(rhs).to_Matrix()
        table = {alpha: Fraction(int(v.p), int(v.q)) for alpha, v in zip(idx, sol) if v}
        out.append(TruncatedSeries(n, order, table))
    return SeriesVector(out)


def random_invertible_vector(rng, n, order, numer_max=9):
    while True:
        G = random_nonunit_vector(rng, n, order, numer_max=numer_max, den_max=1)
        from mfps import det, jacobian_at_origin

        if det(jacobian_at_origin(G)) != 0:
            return G


def random_singular_vector(rng, n, order, numer_max=9):
    """Nonunit vector whose linear part has rank n - 1."""
    G = random_nonunit_vector(rng, n, order, numer_max=numer_max, den_max=1)
    comps = list(G)
    lin = TruncatedSeries(n, order, {a: c for a, c in comps[0].coeffs.items() if sum(a) == 1})
    c = Fraction(rng.randint(1, numer_max))
    higher = TruncatedSeries(n, order, {a: v for a, v in comps[-1].coeffs.items() if sum(a) >= 2})
    comps[-1] = lin * c + higher
    return SeriesVector(comps)
