"""The compiled and pure-Python kernels must agree."""

import random
from math import comb

import pytest

from mfps import _kernels
from mfps.multiindex import enumerate_up_to
from mfps.series import _pack

from conftest import random_series

BACKENDS = _kernels.available_backends()


def test_backend_selection():
    assert _kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_cauchy_product_backends_agree(name):
    rng = random.Random(7)
    impl, ref = BACKENDS[name], BACKENDS["python"]
    for _ in range(30):
        n, N = rng.randint(1, 3), rng.randint(0, 8)
        numer = rng.choice([9, 10**6, 10**25])
        f = random_series(rng, n, N, numer_max=numer)
        g = random_series(rng, n, N, numer_max=numer)
        fc, fd, fn, _ = _pack(f)
        gc, gd, gn, _ = _pack(g)
        assert impl.cauchy_product(fc, fd, fn, gc, gd, gn, N) == ref.cauchy_product(
            fc, fd, fn, gc, gd, gn, N
        )


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_condition_shells_match_exact_sum(name):
    rng = random.Random(11)
    impl = BACKENDS[name]
    n, M = 2, 30
    exps = enumerate_up_to(n, M)
    degs = [sum(a) for a in exps]
    coefs = [rng.choice([0.0, 1.0, -0.5, 0.25]) for _ in exps]
    b = [0.5, -0.25]
    for beta in [(0, 0), (1, 2), (3, 0)]:
        shells, used = impl.condition_shell_sums(exps, degs, coefs, b, list(beta), M)
        for m in range(M + 1):
            exact = sum(
                c * comb(a[0], beta[0]) * comb(a[1], beta[1])
                * b[0] ** (a[0] - beta[0]) * b[1] ** (a[1] - beta[1])
                for a, c in zip(exps, coefs)
                if sum(a) == m and a[0] >= beta[0] and a[1] >= beta[1]
            )
            assert shells[m] == pytest.approx(exact, rel=1e-12, abs=1e-15)
        assert used == sum(
            1 for a, c in zip(exps, coefs) if c and a[0] >= beta[0] and a[1] >= beta[1]
        )
