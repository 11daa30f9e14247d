"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit
from fractions import Fraction

from mfps import expprod, make_series
from mfps._kernels import available_backends
from mfps.multiindex import enumerate_up_to
from mfps.series import _pack


def dense_series(rng, n, order, den_max=1):
    terms = [(a, Fraction(rng.randint(-9, 9), rng.randint(1, den_max))) for a in enumerate_up_to(n, order)]
    return make_series(n, order, terms)


def product_case(name, f, g):
    cf, df, nf, _ = _pack(f)
    cg, dg, ng, _ = _pack(g)
    return name, (cf, df, nf, cg, dg, ng, f.order), "cauchy_product"


def cases():
    rng = random.Random(0)
    out = []
    for n, order in ((2, 20), (3, 10), (4, 6)):
        f, g = dense_series(rng, n, order), dense_series(rng, n, order)
        out.append(product_case(f"mul n={n} N={order}", f, g))
    f, g = dense_series(rng, 3, 8, den_max=10**12), dense_series(rng, 3, 8, den_max=10**12)
    out.append(product_case("mul n=3 N=8 big rationals", f, g))
    for M in (60, 120):
        exps, degs, coefs = expprod(2).float_table(M)
        out.append((f"shells n=2 M={M}", (exps, degs, coefs, [0.5, 0.25], [1, 2], M), "condition_shell_sums"))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    names = sorted(backends)
    print(f"{'case':32}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) == 2 else ""))
    for label, params, fn in cases():
        best = {}
        for b in names:
            kernel = getattr(backends[b], fn)
            result = kernel(*params)
            best[b] = min(timeit.repeat(lambda: kernel(*params), number=1, repeat=args.repeat))
            best.setdefault("_result", result)
            if best["_result"] != result:
                raise SystemExit(f"{label}: backends disagree")
        row = f"{label:32}" + "".join(f"{best[b] * 1e3:10.2f}ms" for b in names)
        if len(names) == 2:
            row += f"{best['python'] / best['compiled']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
