"""Multi-indices in N_0^n and their combinatorics.

A multi-index is represented as a plain tuple of nonnegative ints.  Monomials
are always iterated "dense by degree": by total degree first, then
lexicographically inside each degree.
"""

from functools import lru_cache
from math import comb

from .errors import ArgumentError, DimensionError

MultiIndex = tuple


def check_index(alpha, n=None):
    alpha = tuple(int(a) for a in alpha)
    if n is not None and len(alpha) != n:
        raise DimensionError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
    if any(a < 0 for a in alpha):
        raise ArgumentError(f"multi-index {alpha} has a negative entry")
    return alpha


def degree(alpha):
    return sum(alpha)


def zero_index(n):
    return (0,) * n


def unit_index(n, i):
    """The standard index e_i (0-based ``i``)."""
    e = [0] * n
    e[i] = 1
    return tuple(e)


def lex_compare(alpha, beta):
    """Return -1, 0 or 1 as ``alpha`` is lexicographically less, equal or greater."""
    if len(alpha) != len(beta):
        raise DimensionError(f"cannot compare {alpha} and {beta}: lengths differ")
    for a, b in zip(alpha, beta):
        if a != b:
            return -1 if a < b else 1
    return 0


def graded_key(alpha):
    """Sort key for dense-by-degree order."""
    return (sum(alpha), tuple(alpha))


def multiindex_count(n, k):
    """Number of multi-indices of total degree ``k`` in ``n`` variables."""
    if n < 1 or k < 0:
        raise ArgumentError("multiindex_count needs n >= 1 and k >= 0")
    return comb(n + k - 1, n - 1)


@lru_cache(maxsize=None)
def _enumerate(n, k):
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k + 1):
        for rest in _enumerate(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_degree(n, k):
    """All multi-indices of total degree ``k``, in increasing lex order."""
    if n < 1 or k < 0:
        raise ArgumentError("enumerate_degree needs n >= 1 and k >= 0")
    return list(_enumerate(n, k))


def enumerate_up_to(n, order):
    """All multi-indices with total degree <= ``order`` in graded order."""
    out = []
    for k in range(order + 1):
        out.extend(_enumerate(n, k))
    return out


def dominates(alpha, beta):
    """True iff alpha >= beta componentwise."""
    return all(a >= b for a, b in zip(alpha, beta))
