# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same contracts as ``_pure``."""

from libc.math cimport pow as cpow

cdef long long _I64_SAFE = 1LL << 62
cdef Py_ssize_t _DENSE_LIMIT = 1 << 22


def cauchy_product(f_codes, f_degs, f_nums, g_codes, g_degs, g_nums, long max_degree):
    cdef Py_ssize_t nf = len(f_codes), ng = len(g_codes)
    if nf == 0 or ng == 0:
        return {}
    cdef long long[::1] fc = _i64(f_codes)
    cdef long long[::1] gc = _i64(g_codes)
    cdef long[::1] fd = _long(f_degs)
    cdef long[::1] gd = _long(g_degs)
    fmax = max(abs(v) for v in f_nums)
    gmax = max(abs(v) for v in g_nums)
    cdef long long top = 0
    cdef Py_ssize_t i
    for i in range(nf):
        if fc[i] > top:
            top = fc[i]
    cdef long long gtop = 0
    for i in range(ng):
        if gc[i] > gtop:
            gtop = gc[i]
    top += gtop
    if fmax * gmax * min(nf, ng) < _I64_SAFE and top < _DENSE_LIMIT:
        return _product_i64(fc, fd, f_nums, gc, gd, g_nums, max_degree, top)
    return _product_obj(fc, fd, f_nums, gc, gd, g_nums, max_degree)


cdef object _i64(values):
    import array
    return array.array("q", values)


cdef object _long(values):
    import array
    return array.array("l", values)


cdef dict _product_i64(long long[::1] fc, long[::1] fd, f_nums,
                       long long[::1] gc, long[::1] gd, g_nums,
                       long max_degree, long long top):
    import array
    cdef Py_ssize_t nf = fc.shape[0], ng = gc.shape[0], i, j
    cdef long long[::1] fn = array.array("q", f_nums)
    cdef long long[::1] gn = array.array("q", g_nums)
    buf = array.array("q", bytes(8 * (top + 1)))
    cdef long long[::1] acc = buf
    cdef unsigned char[::1] seen = bytearray(top + 1)
    cdef long room
    cdef long long c
    with nogil:
        for i in range(nf):
            room = max_degree - fd[i]
            for j in range(ng):
                if gd[j] > room:
                    break
                c = fc[i] + gc[j]
                acc[c] += fn[i] * gn[j]
                seen[c] = 1
    cdef dict out = {}
    for i in range(top + 1):
        if seen[i] and acc[i] != 0:
            out[i] = acc[i]
    return out


cdef dict _product_obj(long long[::1] fc, long[::1] fd, f_nums,
                       long long[::1] gc, long[::1] gd, g_nums, long max_degree):
    cdef Py_ssize_t nf = fc.shape[0], ng = gc.shape[0], i, j
    cdef dict acc = {}
    cdef long room
    cdef long long c
    cdef list fn = list(f_nums), gn = list(g_nums)
    for i in range(nf):
        room = max_degree - fd[i]
        a = fn[i]
        for j in range(ng):
            if gd[j] > room:
                break
            c = fc[i] + gc[j]
            acc[c] = acc.get(c, 0) + a * gn[j]
    return {k: v for k, v in acc.items() if v}


cdef inline double _comb(long a, long b) nogil:
    cdef double r = 1.0
    cdef long i
    if b < 0 or b > a:
        return 0.0
    if b > a - b:
        b = a - b
    for i in range(1, b + 1):
        r = r * (a - b + i) / i
    return r


def condition_shell_sums(exps, degs, coefs, btheta, beta, long max_degree):
    import array
    cdef Py_ssize_t k = len(degs), n = len(beta), i, t
    cdef long[::1] e = array.array("l", [v for row in exps for v in row])
    cdef long[::1] d = array.array("l", degs)
    cdef double[::1] a = array.array("d", coefs)
    cdef double[::1] b = array.array("d", btheta)
    cdef long[::1] be = array.array("l", beta)
    shells_buf = array.array("d", bytes(8 * (max_degree + 1)))
    cdef double[::1] shells = shells_buf
    cdef long low = 0, used = 0
    cdef double term
    cdef bint ok
    for t in range(n):
        low += be[t]
    with nogil:
        for i in range(k):
            if d[i] < low or d[i] > max_degree or a[i] == 0.0:
                continue
            term = a[i]
            ok = True
            for t in range(n):
                if e[i * n + t] < be[t]:
                    ok = False
                    break
                term = term * _comb(e[i * n + t], be[t]) * cpow(b[t], e[i * n + t] - be[t])
            if not ok:
                continue
            used += 1
            shells[d[i]] += term
    return list(shells_buf), used
