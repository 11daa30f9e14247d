"""Exact truncated multivariate power series over the rationals.

A :class:`TruncatedSeries` is the N-jet of a formal power series in ``n``
variables: every coefficient of total degree <= ``order`` is known exactly and
everything above is discarded.  Values are immutable and kept in canonical
form (no zero coefficients, graded-lex key order), so equality is table
equality.
"""

from fractions import Fraction
from math import factorial, lcm
from numbers import Rational
from types import MappingProxyType

from . import _kernels
from .errors import ArgumentError, DimensionError
from .multiindex import check_index, graded_key, zero_index

__all__ = [
    "TruncatedSeries",
    "make_series",
    "zero",
    "one",
    "constant",
    "variable",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "pow",
    "block",
    "retruncate",
    "is_unit",
    "pow_block_coefficient",
    "partition_solutions",
]


def as_rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ArgumentError(f"{value!r} is not an exact rational")


class TruncatedSeries:
    __slots__ = ("_n", "_order", "_coeffs", "_packed", "_hash")

    def __init__(self, n, order, coeffs=None, *, _canonical=False):
        if n < 1:
            raise ArgumentError("a series needs at least one variable")
        if order < -1:
            raise ArgumentError(f"order must be >= -1, got {order}")
        self._n = n
        self._order = order
        if _canonical:
            table = coeffs
        else:
            table = {}
            for alpha, c in (coeffs or {}).items():
                alpha = check_index(alpha, n)
                if sum(alpha) > order:
                    continue
                c = as_rational(c)
                table[alpha] = table.get(alpha, 0) + c
            table = {a: table[a] for a in sorted(table, key=graded_key) if table[a]}
        self._coeffs = MappingProxyType(table)
        self._packed = None
        self._hash = None

    @property
    def n(self):
        return self._n

    @property
    def order(self):
        return self._order

    @property
    def coeffs(self):
        return self._coeffs

    def __getitem__(self, alpha):
        return self._coeffs.get(tuple(alpha), Fraction(0))

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self._n == other._n
            and self._order == other._order
            and dict(self._coeffs) == dict(other._coeffs)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._order, tuple(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        from .io import format_series

        return f"TruncatedSeries(n={self._n}, order={self._order}, {format_series(self)!r})"

    @property
    def constant_term(self):
        return self[zero_index(self._n)]

    def degree(self):
        """Largest total degree with a nonzero coefficient (-1 for zero)."""
        return max((sum(a) for a in self._coeffs), default=-1)

    def valuation(self):
        """Smallest total degree with a nonzero coefficient (None for zero)."""
        return min((sum(a) for a in self._coeffs), default=None)

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self))

    def __rsub__(self, other):
        return sub(_coerce(other, self), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        try:
            return scale(self, as_rational(other))
        except ArgumentError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, m):
        return pow(self, m)


def _coerce(value, like):
    if isinstance(value, TruncatedSeries):
        return value
    return constant(like.n, like.order, value)


def make_series(n, order, terms=()):
    """Build a canonical series from ``(multi_index, coefficient)`` pairs.

    Duplicate indices are summed; terms above ``order`` are dropped.
    """
    if order < 0:
        raise ArgumentError(f"order must be >= 0, got {order}")
    table = {}
    for alpha, c in terms:
        alpha = check_index(alpha, n)
        table[alpha] = table.get(alpha, 0) + as_rational(c)
    return TruncatedSeries(n, order, table)


def zero(n, order):
    return TruncatedSeries(n, order, {}, _canonical=True)


def constant(n, order, c):
    c = as_rational(c)
    if order < 0 or c == 0:
        return zero(n, order)
    return TruncatedSeries(n, order, {zero_index(n): c}, _canonical=True)


def one(n, order):
    return constant(n, order, 1)


def variable(n, order, i):
    """The series x_i (``i`` is 1-based)."""
    if not 1 <= i <= n:
        raise ArgumentError(f"variable index {i} out of range 1..{n}")
    e = [0] * n
    e[i - 1] = 1
    return TruncatedSeries(n, order, {tuple(e): Fraction(1)})


def _check_same_ring(f, g):
    if f.n != g.n:
        raise DimensionError(f"series live in {f.n} and {g.n} variables")
    if f.order != g.order:
        raise ArgumentError(
            f"truncation orders differ ({f.order} vs {g.order}); retruncate explicitly"
        )


def _from_table(n, order, table):
    table = {a: table[a] for a in sorted(table, key=graded_key) if table[a]}
    return TruncatedSeries(n, order, table, _canonical=True)


def add(f, g):
    _check_same_ring(f, g)
    table = dict(f.coeffs)
    for a, c in g.coeffs.items():
        table[a] = table.get(a, 0) + c
    return _from_table(f.n, f.order, table)


def neg(f):
    return TruncatedSeries(f.n, f.order, {a: -c for a, c in f.coeffs.items()}, _canonical=True)


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    c = as_rational(c)
    if c == 0:
        return zero(f.n, f.order)
    return TruncatedSeries(f.n, f.order, {a: c * v for a, v in f.coeffs.items()}, _canonical=True)


def _pack(f):
    """Packed, integer-scaled form used by the product kernel (cached)."""
    if f._packed is None:
        radix = f.order + 1
        den = lcm(*(c.denominator for c in f.coeffs.values())) if f.coeffs else 1
        codes, degs, nums = [], [], []
        for alpha, c in f.coeffs.items():
            code = 0
            for e in reversed(alpha):
                code = code * radix + e
            codes.append(code)
            degs.append(sum(alpha))
            nums.append(c.numerator * (den // c.denominator))
        f._packed = (codes, degs, nums, den)
    return f._packed


def _unpack_code(code, n, radix):
    alpha = []
    for _ in range(n):
        code, e = divmod(code, radix)
        alpha.append(e)
    return tuple(alpha)


def mul(f, g):
    """Cauchy product, truncated at the common order."""
    _check_same_ring(f, g)
    if not f or not g:
        return zero(f.n, f.order)
    fc, fd, fn, fden = _pack(f)
    gc, gd, gn, gden = _pack(g)
    raw = _kernels.cauchy_product(fc, fd, fn, gc, gd, gn, f.order)
    den = fden * gden
    radix = f.order + 1
    table = {_unpack_code(c, f.n, radix): Fraction(v, den) for c, v in raw.items()}
    return _from_table(f.n, f.order, table)


def pow(f, m):
    """``f**m`` by repeated squaring; ``f**0`` is 1."""
    if int(m) != m or m < 0:
        raise ArgumentError(f"exponent must be a nonnegative integer, got {m!r}")
    m = int(m)
    result = one(f.n, f.order)
    base = f
    while m:
        if m & 1:
            result = mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


def block(f, k):
    """Homogeneous part of total degree ``k``."""
    if k < 0 or k > f.order:
        raise ArgumentError(f"block {k} outside 0..{f.order}")
    return TruncatedSeries(
        f.n, f.order, {a: c for a, c in f.coeffs.items() if sum(a) == k}, _canonical=True
    )


def retruncate(f, order):
    """Drop every coefficient above ``order`` (which may not exceed f.order)."""
    if order > f.order:
        raise ArgumentError(f"cannot raise truncation order {f.order} to {order}")
    if order < -1:
        raise ArgumentError(f"order must be >= -1, got {order}")
    return TruncatedSeries(
        f.n, order, {a: c for a, c in f.coeffs.items() if sum(a) <= order}, _canonical=True
    )


def is_unit(f):
    return f.constant_term != 0


def partition_solutions(m, k):
    """Nonnegative ``(v_0, ..., v_k)`` with sum v_i = m and sum i*v_i = k.

    Solutions with more weight on the high-degree parts come first.
    """
    if m < 0 or k < 0:
        raise ArgumentError("partition_solutions needs m >= 0 and k >= 0")
    out = []

    def rec(i, remaining_weight, remaining_count, tail):
        if i == 0:
            if remaining_weight == 0:
                out.append((remaining_count,) + tail)
            return
        for v in range(min(remaining_weight // i, remaining_count), -1, -1):
            rec(i - 1, remaining_weight - i * v, remaining_count - v, (v,) + tail)

    if k == 0:
        return [(m,)]
    rec(k, k, m, ())
    return out


def _multinomial(m, parts):
    out = factorial(m)
    for v in parts:
        out //= factorial(v)
    return out


def pow_block_coefficient(f, m, alpha):
    """Coefficient of ``f**m`` at ``alpha`` from block powers only.

    Sums m!/(v_0!...v_k!) * (f[0]^v_0 ... f[k]^v_k)_alpha over the solutions of
    v_0+...+v_k = m, v_1+2v_2+...+kv_k = k where k = |alpha|.
    """
    alpha = check_index(alpha, f.n)
    k = sum(alpha)
    if k > f.order:
        raise ArgumentError(f"|alpha| = {k} exceeds order {f.order}")
    if m < 0:
        raise ArgumentError("m must be nonnegative")
    blocks = [block(f, i) for i in range(k + 1)]
    total = Fraction(0)
    for v in partition_solutions(m, k):
        prod = one(f.n, f.order)
        for b, e in zip(blocks, v):
            if e:
                prod = mul(prod, pow(b, e))
        total += _multinomial(m, v) * prod[alpha]
    return total
