"""Composition of multivariate series.

Two routes exist.  :func:`compose` is exact and covers nonunit inner vectors
(each output coefficient receives finitely many contributions) and polynomial
outer series.  :func:`compose_unit` handles an outer series given by a
:class:`~mfps.oracles.CoefficientOracle` with unit inner components: writing
``g_i = b_i + h_i`` with ``h_i`` nonunit,

    f o G = sum_s c_s H^s,   c_s = sum_{alpha >= s} prod C(alpha_i, s_i) a_alpha prod b_i^(alpha_i - s_i)

and every ``c_s`` is a numerically summed series whose convergence is decided
(or not) by :func:`check_composability`.
"""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import _kernels
from .calculus import partial_derivative
from .errors import (
    ArgumentError,
    CompositionDivergedError,
    CompositionError,
    CompositionUndecidedError,
    DimensionError,
    PreconditionError,
    TrivialCompositionWarning,
)
from .multiindex import check_index, dominates, enumerate_up_to, graded_key, zero_index
from .series import (
    TruncatedSeries,
    block,
    constant,
    is_unit,
    mul,
    one,
    partition_solutions,
    pow,
    retruncate,
    scale,
    variable,
    zero,
)

CONVERGED = "converged"
DIVERGED = "diverged"
INCONCLUSIVE = "inconclusive"


class SeriesVector:
    """Ordered tuple of series sharing ``n`` and ``order``."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise DimensionError("a series vector needs at least one component")
        n, order = comps[0].n, comps[0].order
        for g in comps:
            if g.n != n:
                raise DimensionError("components live in different numbers of variables")
            if g.order != order:
                raise ArgumentError("components have different truncation orders")
        self.components = comps

    @property
    def n(self):
        return self.components[0].n

    @property
    def order(self):
        return self.components[0].order

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if not isinstance(other, SeriesVector):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"SeriesVector({list(self.components)!r})"

    def constant_terms(self):
        return tuple(g.constant_term for g in self.components)

    def retruncate(self, order):
        return SeriesVector(retruncate(g, order) for g in self.components)


def identity(n, order):
    """I = (x_1, ..., x_n)."""
    return SeriesVector(variable(n, order, i) for i in range(1, n + 1))


def _as_vector(G):
    return G if isinstance(G, SeriesVector) else SeriesVector(G)


def _check_square(G):
    if len(G) != G.n:
        raise DimensionError(f"inner vector has {len(G)} components but lives in {G.n} variables")


def monomial_power(G, alpha):
    """G^alpha = g_1^alpha_1 ... g_n^alpha_n."""
    G = _as_vector(G)
    alpha = check_index(alpha, len(G))
    result = one(G.n, G.order)
    for g, e in zip(G, alpha):
        if e:
            result = mul(result, pow(g, e))
    return result


class _PowerCache:
    """G^alpha for many alpha, each built from a cached neighbour by one product."""

    def __init__(self, G):
        self.G = G
        self.cache = {zero_index(len(G)): one(G.n, G.order)}

    def __call__(self, alpha):
        hit = self.cache.get(alpha)
        if hit is not None:
            return hit
        i = max(j for j, e in enumerate(alpha) if e)
        lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
        value = mul(self(lower), self.G[i])
        self.cache[alpha] = value
        return value


def _is_theta(G):
    # at order 0 every nonunit vector (the identity included) truncates to zero
    return G.order >= 1 and all(not g for g in G)


def compose(f, G, *, polynomial=False):
    """f o G, exactly.

    With a nonunit ``G`` the result has order ``min(f.order, G.order)``.
    Unit components are only accepted when ``polynomial=True``, i.e. when the
    caller guarantees ``f`` is exactly the polynomial it stores (not the jet
    of a longer series); the result then has ``G``'s order.
    """
    G = _as_vector(G)
    _check_square(G)
    if f.n != len(G):
        raise DimensionError(f"outer series has {f.n} variables, inner vector {len(G)} components")
    units = [i + 1 for i, g in enumerate(G) if is_unit(g)]
    if units and not polynomial:
        raise CompositionError(
            f"inner components {units} are units; the sum defining f o G is infinite. "
            "Use compose_unit with a coefficient oracle, or pass polynomial=True "
            "if f is a polynomial."
        )
    out_order = G.order if polynomial else min(f.order, G.order)
    if _is_theta(G):
        warnings.warn(
            "composition with the all-zero vector is defined as the constant 1",
            TrivialCompositionWarning,
            stacklevel=2,
        )
        return one(G.n, out_order)
    inner = G if out_order == G.order else G.retruncate(out_order)
    powers = _PowerCache(inner)
    table = {}
    for alpha, a in f.coeffs.items():
        if not units and sum(alpha) > out_order:
            break
        for gamma, c in powers(alpha).coeffs.items():
            table[gamma] = table.get(gamma, 0) + a * c
    return TruncatedSeries(G.n, out_order, table)


def compose_vector(F, G, *, polynomial=False):
    """(f_1 o G, ..., f_m o G)."""
    return SeriesVector(compose(f, G, polynomial=polynomial) for f in _as_vector(F))


def admits_addition_check(G, order=None):
    """Whether the family (G^alpha) is summable up to total degree ``order``.

    Every nonunit g_i has valuation >= 1, hence (G^alpha)_gamma = 0 once
    |alpha| > |gamma| and only finitely many alpha reach each gamma.  A unit
    component makes g_i^k contribute to the constant term for every k.
    """
    G = _as_vector(G)
    return not any(is_unit(g) for g in G)


def chain_rule_rhs(f, G, j):
    """sum_i (D_i f o G) * D_j g_i, at order min(f.order, G.order) - 1."""
    G = _as_vector(G)
    _check_square(G)
    if not admits_addition_check(G):
        raise PreconditionError(
            "the family G^alpha does not admit addition (some component is a unit)"
        )
    if not 1 <= j <= G.n:
        raise ArgumentError(f"variable index {j} out of range 1..{G.n}")
    target = min(f.order, G.order) - 1
    total = zero(G.n, target)
    for i, g in enumerate(G, start=1):
        outer = retruncate(compose(partial_derivative(f, i), G), target)
        total = total + mul(outer, retruncate(partial_derivative(g, j), target))
    return total


@dataclass(frozen=True)
class SummationBudget:
    """Knobs of the numerical convergence decision."""

    max_degree: int = 200
    tol: float = 1e-9
    bound: float = 1e12
    window: int = 8

    def __post_init__(self):
        if self.max_degree < 0:
            raise ArgumentError("max_degree must be nonnegative")
        if not self.tol > 0:
            raise ArgumentError("tol must be positive")
        if not self.bound > 0:
            raise ArgumentError("bound must be positive")
        if self.window < 2:
            raise ArgumentError("window must be at least 2")


@dataclass(frozen=True)
class ConvergenceReport:
    beta: tuple
    status: str
    value: float = None
    terms_used: int = 0
    partial_sum_trace: tuple = ()
    witness: str = None
    exact: Fraction = field(default=None, compare=False)

    def to_dict(self):
        doc = {
            "status": self.status,
            "value": self.value,
            "terms_used": self.terms_used,
            "beta": list(self.beta),
            "partial_sum_trace": list(self.partial_sum_trace),
        }
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.exact is not None:
            doc["exact"] = str(self.exact)
        return doc


def _exact_condition_sum(f, b_theta, beta):
    """Finite-support case: exact per-degree sums."""
    b = [Fraction(x) for x in b_theta]
    low = sum(beta)
    shells = {}
    used = 0
    for alpha in enumerate_up_to(f.n, f.support):
        d = sum(alpha)
        if d < low or not dominates(alpha, beta):
            continue
        a = f(alpha)
        if not a:
            continue
        term = a
        for ai, bi, bt in zip(alpha, beta, b):
            term *= comb(ai, bi) * bt ** (ai - bi)
        used += 1
        shells[d] = shells.get(d, 0) + term
    return shells, used


def check_composability(f, b_theta, beta, budget=None):
    """Decide convergence of the binomial-weighted series at ``beta``.

    Partial sums S_m collect every alpha >= beta with |alpha| <= m.  The
    verdict is ``converged`` when the last ``window`` partial sums agree to
    ``tol`` (relative to max(1, |S|)), ``diverged`` when some |S_m| exceeds
    ``bound`` or the degree shells stop decaying, and ``inconclusive`` otherwise.
    Finite-support oracles are summed exactly.
    """
    budget = budget or SummationBudget()
    beta = check_index(beta, f.n)
    if len(b_theta) != f.n:
        raise DimensionError(f"b_theta has {len(b_theta)} entries, oracle has {f.n} variables")
    low = sum(beta)
    W = budget.window

    if f.is_finite:
        shells, used = _exact_condition_sum(f, b_theta, beta)
        running = Fraction(0)
        trace = []
        for m in range(low, max(f.support, low) + 1):
            running += shells.get(m, 0)
            trace.append(float(running))
        return ConvergenceReport(
            beta, CONVERGED, float(running), used, tuple(trace[-W:]), exact=running
        )

    M = budget.max_degree
    if low > M:
        return ConvergenceReport(beta, INCONCLUSIVE, None, 0, (), f"|beta| = {low} exceeds max_degree {M}")
    exps, degs, coefs = f.float_table(M)
    bt = [float(x) for x in b_theta]
    shells, used = _kernels.condition_shell_sums(exps, degs, coefs, bt, list(beta), M)

    sums = []
    running = 0.0
    for m in range(low, M + 1):
        running += shells[m]
        sums.append(running)
        if not math.isfinite(running) or abs(running) > budget.bound:
            return ConvergenceReport(
                beta, DIVERGED, None, used, tuple(sums[-W:]),
                f"|S_{m}| = {abs(running):.6g} exceeds bound {budget.bound:.6g}",
            )
    trace = tuple(sums[-W:])
    if len(sums) < W:
        return ConvergenceReport(beta, INCONCLUSIVE, None, used, trace, "fewer partial sums than the window")
    scale_ = max(1.0, abs(sums[-1]))
    if max(trace) - min(trace) <= budget.tol * scale_:
        return ConvergenceReport(beta, CONVERGED, sums[-1], used, trace)

    mid = (low + M) // 2
    if mid >= M - W + 1:
        # the two windows would overlap; a transient peak could look like growth
        return ConvergenceReport(beta, INCONCLUSIVE, None, used, trace, "partial sums not yet stable")
    late = max(abs(shells[m]) for m in range(M - W + 1, M + 1))
    early_lo = max(low, mid - W + 1)
    early = max(abs(shells[m]) for m in range(early_lo, mid + 1))
    if late > 0 and late >= early:
        return ConvergenceReport(
            beta, DIVERGED, None, used, trace,
            f"terms do not decay: max|shell| over degrees {M - W + 1}..{M} is {late:.6g}, "
            f"over {early_lo}..{mid} it was {early:.6g}",
        )
    return ConvergenceReport(beta, INCONCLUSIVE, None, used, trace, "partial sums not yet stable")


@dataclass(frozen=True)
class UnitComposition:
    """Result of :func:`compose_unit`.

    ``coeffs`` maps multi-indices to Fractions when ``exact`` and to floats
    otherwise; ``reports`` maps each beta that was needed to its report.
    """

    n: int
    order: int
    coeffs: dict
    exact: bool
    reports: dict

    @property
    def series(self):
        if not self.exact:
            raise ArgumentError("approximate composition has no exact series")
        return TruncatedSeries(self.n, self.order, self.coeffs)

    def __getitem__(self, alpha):
        return self.coeffs.get(tuple(alpha), Fraction(0) if self.exact else 0.0)

    def block(self, k):
        return {a: c for a, c in self.coeffs.items() if sum(a) == k}


def _raise_on_failures(reports):
    bad = [r for r in reports if r.status == DIVERGED]
    if bad:
        raise CompositionDivergedError(
            f"f o G does not exist: the series at beta={bad[0].beta} diverges ({bad[0].witness})",
            reports,
        )
    unsure = [r for r in reports if r.status == INCONCLUSIVE]
    if unsure:
        raise CompositionUndecidedError(
            f"undecided: the series at beta={unsure[0].beta} is inconclusive "
            f"within the budget ({unsure[0].witness})",
            reports,
        )


def compose_unit(f, G, order=None, budget=None):
    """f o G for an oracle ``f`` and an inner vector with unit components."""
    G = _as_vector(G)
    _check_square(G)
    if f.n != len(G):
        raise DimensionError(f"oracle has {f.n} variables, inner vector {len(G)} components")
    N = G.order if order is None else order
    if N > G.order:
        raise ArgumentError(f"order {N} exceeds the inner vector's order {G.order}")
    G = G.retruncate(N) if N != G.order else G
    if _is_theta(G):
        warnings.warn(
            "composition with the all-zero vector is defined as the constant 1",
            TrivialCompositionWarning,
            stacklevel=2,
        )
        return UnitComposition(G.n, N, {zero_index(G.n): Fraction(1)}, True, {})

    b = G.constant_terms()
    H = SeriesVector(g - constant(G.n, N, bi) for g, bi in zip(G, b))
    powers = _PowerCache(H)
    needed = []
    for s in enumerate_up_to(G.n, N):
        P = powers(s)
        if P:
            needed.append((s, P))
    reports = {s: check_composability(f, b, s, budget) for s, _ in needed}
    _raise_on_failures(reports.values())

    table = {}
    if f.is_finite:
        for s, P in needed:
            c = reports[s].exact
            for gamma, v in P.coeffs.items():
                table[gamma] = table.get(gamma, 0) + c * v
        table = {a: table[a] for a in sorted(table, key=graded_key) if table[a]}
        return UnitComposition(G.n, N, table, True, reports)
    for s, P in needed:
        c = reports[s].value
        for gamma, v in P.coeffs.items():
            table[gamma] = table.get(gamma, 0.0) + c * float(v)
    table = {a: table[a] for a in sorted(table, key=graded_key) if table[a]}
    return UnitComposition(G.n, N, table, False, reports)


def enumerate_partition_solutions(m, k):
    """All (v_0, ..., v_k) with sum v_i = m and sum i*v_i = k."""
    return partition_solutions(m, k)


def d_term(g, k, s):
    """sum over (v_1..v_k) with sum v_i = s, sum i*v_i = k of prod g[i]^v_i / v_i!.

    Independent of the exponent once it is >= k, so the solutions are taken
    with exponent k.
    """
    if not 1 <= s <= k <= g.order:
        raise ArgumentError(f"d_term needs 1 <= s <= k <= order, got s={s}, k={k}, order={g.order}")
    blocks = [block(g, i) for i in range(k + 1)]
    total = zero(g.n, g.order)
    for v in partition_solutions(k, k):
        if sum(v[1:]) != s:
            continue
        term = one(g.n, g.order)
        den = 1
        for i in range(1, k + 1):
            if v[i]:
                term = mul(term, pow(blocks[i], v[i]))
                den *= factorial(v[i])
        total = total + scale(term, Fraction(1, den))
    return total


def _d_or_unit(g, k, s):
    if s == 0:
        return one(g.n, g.order) if k == 0 else zero(g.n, g.order)
    return d_term(g, k, s)


def unit_coefficient_by_blocks(f, g1, g2, k1, k2, budget=None):
    """Contribution sum_alpha a_alpha (g1^alpha_1)[k1] (g2^alpha_2)[k2] of f o (g1, g2).

    Assembled as sum_{s1<=k1, s2<=k2} s1! s2! c_(s1,s2) d_{k1,s1}(g1) d_{k2,s2}(g2)
    from block products alone.  Two variables only.  Returns a
    :class:`UnitComposition` holding the homogeneous degree k1+k2 part.
    """
    if f.n != 2 or g1.n != 2 or g2.n != 2:
        raise DimensionError("unit_coefficient_by_blocks is defined for two variables")
    if g1.order != g2.order:
        raise ArgumentError("g1 and g2 must share a truncation order")
    if k1 < 0 or k2 < 0 or k1 + k2 > g1.order:
        raise ArgumentError(f"need 0 <= k1, k2 and k1 + k2 <= {g1.order}")
    b = (g1.constant_term, g2.constant_term)
    reports = {}
    exact = f.is_finite
    table = {}
    for s1 in range(k1 + 1):
        d1 = _d_or_unit(g1, k1, s1)
        if not d1:
            continue
        for s2 in range(k2 + 1):
            d2 = _d_or_unit(g2, k2, s2)
            if not d2:
                continue
            prod = mul(d1, d2)
            if not prod:
                continue
            rep = check_composability(f, b, (s1, s2), budget)
            reports[(s1, s2)] = rep
            if rep.status != CONVERGED:
                continue
            weight = factorial(s1) * factorial(s2)
            c = rep.exact if exact else rep.value
            for gamma, v in prod.coeffs.items():
                if exact:
                    table[gamma] = table.get(gamma, 0) + weight * c * v
                else:
                    table[gamma] = table.get(gamma, 0.0) + weight * c * float(v)
    _raise_on_failures(reports.values())
    table = {a: table[a] for a in sorted(table, key=graded_key) if table[a]}
    return UnitComposition(2, g1.order, table, exact, reports)
