"""Reference implementations of the inner loops (no compilation needed)."""

from math import comb


def cauchy_product(f_codes, f_degs, f_nums, g_codes, g_degs, g_nums, max_degree):
    """Convolve two packed coefficient tables.

    Multi-indices are packed as mixed-radix integers so that adding codes adds
    exponents.  ``g`` must be sorted by degree.  Returns ``{code: numerator}``
    without zero entries.
    """
    acc = {}
    get = acc.get
    g = list(zip(g_codes, g_degs, g_nums))
    for fc, fd, fn in zip(f_codes, f_degs, f_nums):
        room = max_degree - fd
        for gc, gd, gn in g:
            if gd > room:
                break
            c = fc + gc
            acc[c] = get(c, 0) + fn * gn
    return {c: v for c, v in acc.items() if v}


def condition_shell_sums(exps, degs, coefs, btheta, beta, max_degree):
    """Per-degree sums of the binomial-weighted series at ``beta``.

    Term for alpha >= beta: prod C(alpha_i, beta_i) * a_alpha * prod b_i^(alpha_i-beta_i).
    Returns ``(shells, terms_used)`` where ``shells[m]`` is the sum of the
    terms with ``|alpha| == m``.
    """
    shells = [0.0] * (max_degree + 1)
    low = sum(beta)
    used = 0
    for alpha, d, a in zip(exps, degs, coefs):
        if d < low or d > max_degree or a == 0.0:
            continue
        term = a
        ok = True
        for ai, bi, bt in zip(alpha, beta, btheta):
            if ai < bi:
                ok = False
                break
            term *= comb(ai, bi) * bt ** (ai - bi)
        if not ok:
            continue
        used += 1
        shells[d] += term
    return shells, used
