"""Closed-form coefficient rules for outer series with possibly infinite support."""

from fractions import Fraction
from math import factorial

from .errors import ArgumentError
from .multiindex import check_index, enumerate_up_to


class CoefficientOracle:
    """A deterministic rule ``alpha -> a_alpha`` in ``n`` variables.

    ``support`` is the maximal total degree of a nonzero coefficient when the
    support is finite, and ``None`` otherwise.
    """

    __slots__ = ("n", "rule", "support", "name", "_float_tables")

    def __init__(self, n, rule, support=None, name="oracle"):
        if n < 1:
            raise ArgumentError("an oracle needs at least one variable")
        self.n = n
        self.rule = rule
        self.support = support
        self.name = name
        self._float_tables = {}

    def __repr__(self):
        return f"CoefficientOracle({self.name}, n={self.n}, support={self.support})"

    def __call__(self, alpha):
        alpha = check_index(alpha, self.n)
        if self.support is not None and sum(alpha) > self.support:
            return Fraction(0)
        return Fraction(self.rule(alpha))

    @property
    def is_finite(self):
        return self.support is not None

    def float_table(self, max_degree):
        """``(exps, degs, coefs)`` for every alpha with |alpha| <= max_degree, graded."""
        table = self._float_tables.get(max_degree)
        if table is None:
            exps = enumerate_up_to(self.n, max_degree)
            degs = [sum(a) for a in exps]
            coefs = [float(self(a)) for a in exps]
            table = (exps, degs, coefs)
            self._float_tables[max_degree] = table
        return table


def geom2(c=1):
    """a_alpha = c**alpha_1 when alpha_1 == alpha_2, else 0 (1/(1 - c x1 x2))."""
    c = Fraction(c)

    def rule(alpha):
        return c ** alpha[0] if alpha[0] == alpha[1] else 0

    return CoefficientOracle(2, rule, None, f"geom2({c})")


def geom1(r, axis=1, n=2):
    """a_alpha = r**alpha_axis on the axis of x_axis (1-based), 0 elsewhere."""
    r = Fraction(r)
    if not 1 <= axis <= n:
        raise ArgumentError(f"axis {axis} out of range 1..{n}")
    i = axis - 1

    def rule(alpha):
        if any(a for j, a in enumerate(alpha) if j != i):
            return 0
        return r ** alpha[i]

    return CoefficientOracle(n, rule, None, f"geom1({r},{axis})")


def expprod(n=2):
    """a_alpha = 1 / prod(alpha_i!), the expansion of exp(x1 + ... + xn)."""

    def rule(alpha):
        den = 1
        for a in alpha:
            den *= factorial(a)
        return Fraction(1, den)

    return CoefficientOracle(n, rule, None, "expprod")


def poly(series):
    """Finite-support oracle reading its coefficients from a series."""
    table = dict(series.coeffs)

    def rule(alpha):
        return table.get(alpha, 0)

    return CoefficientOracle(series.n, rule, max(series.degree(), 0), "poly")


def parse_oracle(text, n=None):
    """Parse ``NAME[:params]`` as used on the command line.

    ``geom2:c``, ``geom1:r,axis``, ``expprod`` and ``poly:PATH``.
    """
    name, _, params = text.partition(":")
    args = [p.strip() for p in params.split(",")] if params else []
    try:
        if name == "geom2":
            if n not in (None, 2):
                raise ArgumentError("geom2 is a two-variable oracle")
            return geom2(Fraction(args[0]) if args else 1)
        if name == "geom1":
            if not args:
                raise ArgumentError("geom1 needs r[,axis]")
            axis = int(args[1]) if len(args) > 1 else 1
            return geom1(Fraction(args[0]), axis, n or 2)
        if name == "expprod":
            return expprod(n or 2)
        if name == "poly":
            from .io import read_series

            if not params:
                raise ArgumentError("poly needs a series file path")
            s = read_series(params)
            if n is not None and s.n != n:
                raise ArgumentError(f"poly file has n={s.n}, expected {n}")
            return poly(s)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ArgumentError):
            raise
        raise ArgumentError(f"bad oracle parameters in {text!r}: {exc}") from exc
    raise ArgumentError(f"unknown oracle {name!r} (known: geom2, geom1, expprod, poly)")
