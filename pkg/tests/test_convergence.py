import random
from fractions import Fraction
from math import comb, e, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfps import (
    ArgumentError,
    CoefficientOracle,
    CompositionDivergedError,
    CompositionUndecidedError,
    SeriesVector,
    SummationBudget,
    block,
    check_composability,
    compose,
    compose_unit,
    d_term,
    enumerate_partition_solutions,
    expprod,
    geom1,
    geom2,
    identity,
    mul,
    poly,
    pow,
    unit_coefficient_by_blocks,
)
from mfps.multiindex import enumerate_up_to

from conftest import random_series, ser


def brute_condition_sum(oracle, b, beta, max_degree, restrict):
    """Partial sum over |beta| <= |alpha| <= max_degree, in exact arithmetic."""
    b = [Fraction(x) for x in b]
    total = Fraction(0)
    for alpha in enumerate_up_to(oracle.n, max_degree):
        if sum(alpha) < sum(beta):
            continue
        if restrict and any(a < s for a, s in zip(alpha, beta)):
            continue
        weight = 1
        for a, s in zip(alpha, beta):
            weight *= comb(a, s)  # zero whenever a < s
        if weight == 0:
            continue
        term = weight * oracle(alpha)
        for a, s, bt in zip(alpha, beta, b):
            term *= bt ** (a - s)
        total += term
    return total


class TestCheckComposability:
    def test_geom2_diverges_at_unit_unit(self):
        r = check_composability(geom2(1), (1.0, 1.0), (0, 0))
        assert r.status == "diverged"
        assert r.value is None and r.witness
        # S_m = number of k with 2k <= m
        assert r.partial_sum_trace[-1] == pytest.approx(101)

    def test_geom2_converges_with_one_unit(self):
        r = check_composability(geom2(1), (1.0, 0.0), (1, 1))
        assert r.status == "converged"
        assert r.value == pytest.approx(1.0, abs=1e-9)

    def test_divergence_by_bound(self):
        r = check_composability(geom1(3, 1), (1.0, 0.0), (0, 0))
        assert r.status == "diverged" and "bound" in r.witness

    def test_finite_support_is_exact(self):
        f = poly(ser("2 + x1*x2 - 1/3*x1^3", 2, 3))
        r = check_composability(f, (0.5, 3.0), (1, 0))
        # alpha=(1,1): 1*1*3 ; alpha=(3,0): 3*(-1/3)*0.25
        assert r.status == "converged"
        assert r.exact == Fraction(3) - Fraction(1, 4)
        assert r.value == 2.75

    def test_expprod_converges_to_brute_force(self):
        f = expprod(2)
        r = check_composability(f, (1.0, 1.0), (0, 0))
        direct = float(sum(Fraction(1, factorial(i) * factorial(j))
                           for i in range(201) for j in range(201 - i)))
        assert r.status == "converged"
        assert r.value == pytest.approx(direct, rel=1e-9)
        assert direct == pytest.approx(e**2, rel=1e-12)

    def test_inconclusive(self):
        # sum 1/(k+1): diverges, but too slowly for the budget to prove it
        f = CoefficientOracle(1, lambda a: Fraction(1, a[0] + 1))
        r = check_composability(f, (1.0,), (0,), SummationBudget(max_degree=50))
        assert r.status == "inconclusive"

    def test_beta_beyond_budget(self):
        r = check_composability(geom2(1), (1.0, 1.0), (30, 30), SummationBudget(max_degree=40))
        assert r.status == "inconclusive"

    def test_report_json(self):
        doc = check_composability(geom2(1), (1.0, 0.0), (0, 0)).to_dict()
        assert doc["status"] == "converged" and doc["beta"] == [0, 0]
        assert set(doc) >= {"status", "value", "terms_used", "beta"}

    def test_budget_validation(self):
        with pytest.raises(ArgumentError):
            SummationBudget(window=1)
        with pytest.raises(ArgumentError):
            SummationBudget(tol=0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3), st.integers(0, 3))
def test_binomial_vanishing_equivalence(seed, s1, s2):
    rng = random.Random(seed)
    table = {a: Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for a in enumerate_up_to(2, 12)}
    f = CoefficientOracle(2, lambda a: table.get(a, 0), support=12)
    b = (Fraction(rng.randint(-4, 4), 4), Fraction(rng.randint(-4, 4), 4))
    beta = (s1, s2)
    restricted = brute_condition_sum(f, b, beta, 12, restrict=True)
    unrestricted = brute_condition_sum(f, b, beta, 12, restrict=False)
    assert restricted == unrestricted
    assert check_composability(f, b, beta).exact == restricted


def test_kernel_matches_exact_partial_sums():
    # an infinite-support oracle cut at the budget equals the exact truncated sum
    f = geom1(Fraction(1, 3), 1)
    budget = SummationBudget(max_degree=60)
    r = check_composability(f, (0.5, 2.0), (2, 0), budget)
    exact = brute_condition_sum(f, (0.5, 2.0), (2, 0), 60, restrict=True)
    assert r.value == pytest.approx(float(exact), rel=1e-12)


class TestComposeUnit:
    def test_finite_support_matches_compose(self, rng):
        for _ in range(15):
            n, N = rng.choice([1, 2, 3]), rng.randint(1, 4)
            p = random_series(rng, n, N, max_degree=3)
            G = SeriesVector(random_series(rng, n, N) for _ in range(n))
            res = compose_unit(poly(p), G)
            assert res.exact
            assert res.series == compose(p, G, polynomial=True)

    def test_geom2_trio(self):
        f = geom2(1)
        g1, g2 = ser("1-x1", 2, 5), ser("1-x2", 2, 5)
        x1, x2 = ser("x1", 2, 5), ser("x2", 2, 5)
        assert compose_unit(f, SeriesVector([g1, x2])).reports
        assert compose_unit(f, SeriesVector([x1, g2])).reports
        with pytest.raises(CompositionDivergedError) as info:
            compose_unit(f, SeriesVector([g1, g2]))
        assert any(r.status == "diverged" for r in info.value.reports)

    def test_geom2_values(self):
        # f o (1 - x1, x2) = 1 / (1 - x2 + x1 x2); compare with the exact series
        N = 5
        res = compose_unit(geom2(1), SeriesVector([ser("1-x1", 2, N), ser("x2", 2, N)]))
        u = ser("x2 - x1*x2", 2, N)
        expected = sum((pow(u, k) for k in range(1, N + 1)), ser("1", 2, N))
        for alpha in enumerate_up_to(2, N):
            assert res[alpha] == pytest.approx(float(expected[alpha]), abs=1e-9)

    def test_geometric_constant_term(self):
        r, b1 = Fraction(1, 2), Fraction(3, 2)
        G = SeriesVector([ser("3/2 + x1 + x1*x2", 2, 3), ser("x2 - x1^2", 2, 3)])
        res = compose_unit(geom1(r, 1), G)
        assert res[(0, 0)] == pytest.approx(float(1 / (1 - r * b1)), rel=1e-9)

    def test_undecided(self):
        # beta=0 converges and beta=1 diverges, both too slowly to settle within 50 terms
        f = CoefficientOracle(1, lambda a: Fraction(1, (a[0] + 1) ** 2))
        G = SeriesVector([ser("1 + x1", 1, 1)])
        with pytest.raises(CompositionUndecidedError):
            compose_unit(f, G, budget=SummationBudget(max_degree=50))

    def test_zero_vector(self):
        theta = SeriesVector([ser("0"), ser("0")])
        with pytest.warns(UserWarning):
            res = compose_unit(geom2(1), theta)
        assert res.exact and res.coeffs == {(0, 0): 1}


class TestProofMachinery:
    def test_partition_examples(self):
        assert set(enumerate_partition_solutions(2, 2)) == {(0, 2, 0), (1, 0, 1)}
        assert enumerate_partition_solutions(4, 0) == [(4,)]
        assert enumerate_partition_solutions(1, 3) == [(0, 0, 0, 1)]

    def test_d_single_block(self, rng):
        g = random_series(rng, 2, 5)
        for k in range(1, 6):
            assert d_term(g, k, 1) == block(g, k)

    def test_d_two_two(self, rng):
        g = random_series(rng, 2, 4)
        assert d_term(g, 2, 2) == Fraction(1, 2) * mul(block(g, 1), block(g, 1))

    def test_d_least_block(self, rng):
        for l in (1, 2):
            g = random_series(rng, 2, 6, min_degree=l)
            for m in range(1, 6 // l + 1):
                assert d_term(g, m * l, m) == Fraction(1, factorial(m)) * pow(block(g, l), m)

    def test_d_arguments(self):
        with pytest.raises(ArgumentError):
            d_term(ser("x1"), 2, 3)

    def test_blocks_reduce_to_constant_term(self):
        G = SeriesVector([ser("1/2 + x1", 2, 3), ser("1/3 - x2", 2, 3)])
        w = unit_coefficient_by_blocks(expprod(2), G[0], G[1], 0, 0)
        assert w[(0, 0)] == pytest.approx(e ** (1 / 2 + 1 / 3), rel=1e-9)

    def test_blocks_finite_support_is_exact(self, rng):
        for _ in range(5):
            p = random_series(rng, 2, 4, max_degree=3)
            G = SeriesVector(random_series(rng, 2, 4) for _ in range(2))
            full = compose(p, G, polynomial=True)
            for k in range(5):
                total = {}
                for k1 in range(k + 1):
                    w = unit_coefficient_by_blocks(poly(p), G[0], G[1], k1, k - k1)
                    assert w.exact
                    for a, c in w.coeffs.items():
                        total[a] = total.get(a, 0) + c
                assert {a: c for a, c in total.items() if c} == dict(block(full, k).coeffs)

    def test_blocks_agree_with_compose_unit(self):
        N = 5
        g1, g2 = ser("1-x1", 2, N), ser("x2", 2, N)
        f = geom2(1)
        res = compose_unit(f, SeriesVector([g1, g2]))
        for k in range(N + 1):
            total = {}
            for k1 in range(k + 1):
                w = unit_coefficient_by_blocks(f, g1, g2, k1, k - k1)
                for a, c in w.coeffs.items():
                    total[a] = total.get(a, 0.0) + c
            for a in enumerate_up_to(2, N):
                if sum(a) == k:
                    assert total.get(a, 0.0) == pytest.approx(res[a], abs=1e-8)


def test_short_budget_peak_is_not_called_divergent():
    # exp(6) has shells 6^k/k! peaking at k = 6; ten degrees cannot separate the windows
    from mfps import SummationBudget, check_composability, expprod

    report = check_composability(expprod(2), (3, 3), (0, 0), SummationBudget(max_degree=10))
    assert report.status == "inconclusive"
    report = check_composability(expprod(2), (3, 3), (0, 0))
    assert report.status == "converged"
