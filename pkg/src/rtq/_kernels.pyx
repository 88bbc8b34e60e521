# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the loops in ``_kernels_py``.  Same signatures, same
results; exponents stay in C longs (they are bounded by |Q| j^2)."""

from libc.stdlib cimport malloc, free
from math import lcm


def expand_compositions(int j, S, A, T, Q, active, K, multinomial, extra, bint sign_from_s):
    cdef int n = len(S)
    if n == 0:
        return {}
    cdef long *cS = <long *> malloc(n * sizeof(long))
    cdef long *cA = <long *> malloc(n * sizeof(long))
    cdef long *cT = <long *> malloc(n * sizeof(long))
    cdef long *cK = <long *> malloc(n * sizeof(long))
    cdef long *cQ = <long *> malloc(n * n * sizeof(long))
    cdef int *cact = <int *> malloc(n * sizeof(int))
    cdef int *d = <int *> malloc(n * sizeof(int))
    cdef int i, k
    for i in range(n):
        cS[i] = S[i]
        cA[i] = A[i]
        cT[i] = T[i]
        cK[i] = K[i]
        cact[i] = 1 if active[i] else 0
        d[i] = 0
        for k in range(n):
            cQ[i * n + k] = Q[i][k]
    out = {}
    try:
        _walk(n, j, d, cS, cA, cT, cK, cQ, cact, multinomial, extra, sign_from_s, out)
    finally:
        free(cS); free(cA); free(cT); free(cK); free(cQ); free(cact); free(d)
    return {key: c for key, c in out.items() if c}


cdef void _emit(int n, int *d, long *cS, long *cA, long *cT, long *cK, long *cQ,
                int *cact, multinomial, extra, bint sign_from_s, dict out) except *:
    cdef long sd = 0, ea = 0, et = 0, kappa = 0, weight = 0, quad = 0
    cdef int i, k, di
    act = []
    ina = []
    for i in range(n):
        di = d[i]
        if di:
            sd += cS[i] * di
            ea += cA[i] * di
            et += cT[i] * di
            kappa += cK[i] * di
            for k in range(n):
                if d[k]:
                    quad += cQ[i * n + k] * di * d[k]
            if cact[i]:
                weight += di
                act.append(di)
            else:
                ina.append(di)
    cdef long sign = 1
    if sign_from_s:
        if sd % 2:
            sign = -1
        et = 0
    cdef long eq = sd + quad
    m1 = multinomial(tuple(act))
    m2 = multinomial(tuple(ina))
    cdef Py_ssize_t x, y
    for shift, c in extra[kappa]:
        dq, da, dt = shift
        c = c * sign
        for x in range(len(m1)):
            c1 = m1[x]
            if not c1:
                continue
            for y in range(len(m2)):
                c2 = m2[y]
                if not c2:
                    continue
                key = (weight, eq + dq + 2 * (x + y), ea + da, et + dt)
                out[key] = out.get(key, 0) + c * c1 * c2


cdef void _walk(int n, int j, int *d, long *cS, long *cA, long *cT, long *cK, long *cQ,
                int *cact, multinomial, extra, bint sign_from_s, dict out) except *:
    # iterative odometer over compositions of j into n parts, same order as the Python recursion
    cdef int i, left
    cdef int *rem = <int *> malloc((n + 1) * sizeof(int))
    try:
        rem[0] = j
        i = 0
        d[0] = j + 1
        while i >= 0:
            if i == n - 1:
                d[i] = rem[i]
                _emit(n, d, cS, cA, cT, cK, cQ, cact, multinomial, extra, sign_from_s, out)
                d[i] = 0
                i -= 1
                continue
            if d[i] == 0:
                i -= 1
                continue
            d[i] -= 1
            rem[i + 1] = rem[i] - d[i]
            i += 1
            d[i] = rem[i] + 1
    finally:
        free(rem)


def half_turns(points):
    # scale to a common denominator so the sign tests run on C integers;
    # coordinates beyond 2**30 fall back to object arithmetic
    pts = list(points)
    den = 1
    for x, y in pts:
        den = lcm(den, getattr(x, "denominator", 1), getattr(y, "denominator", 1))
    scaled = [(int(x * den), int(y * den)) for x, y in pts]
    if all(-_BOUND < a < _BOUND and -_BOUND < b < _BOUND for a, b in scaled):
        return _half_turns_c(scaled)
    return _half_turns_obj(pts)


cdef long _BOUND = 1 << 30


cdef long _half_turns_c(list pts) except? -999999:
    cdef long total = 0
    cdef Py_ssize_t k, n = len(pts)
    cdef long px, py, qx, qy, num, den
    cdef bint upper, up2, pos
    px, py = pts[0]
    if px == 0 and py == 0:
        raise ValueError("path meets the origin")
    upper = py > 0 or (py == 0 and px > 0)
    for k in range(1, n):
        qx, qy = pts[k]
        if qx == 0 and qy == 0:
            raise ValueError("path meets the origin")
        up2 = qy > 0 or (qy == 0 and qx > 0)
        if up2 != upper:
            if py == qy:
                raise ValueError("path runs through the origin")
            num = px * (qy - py) - py * (qx - px)
            den = qy - py
            if num == 0:
                raise ValueError("path runs through the origin")
            pos = (num > 0) == (den > 0)
            if upper:
                total += -1 if pos else 1
            else:
                total += 1 if pos else -1
        elif py == 0 and qy == 0 and (px > 0) != (qx > 0):
            raise ValueError("path runs through the origin")
        px = qx
        py = qy
        upper = up2
    return total


def _half_turns_obj(pts):
    cdef long total = 0
    it = iter(pts)
    px, py = next(it)
    if px == 0 and py == 0:
        raise ValueError("path meets the origin")
    cdef bint upper = py > 0 or (py == 0 and px > 0)
    cdef bint up2, pos
    for qx, qy in it:
        if qx == 0 and qy == 0:
            raise ValueError("path meets the origin")
        up2 = qy > 0 or (qy == 0 and qx > 0)
        if up2 != upper:
            if py == qy:
                raise ValueError("path runs through the origin")
            num = px * (qy - py) - py * (qx - px)
            den = qy - py
            if num == 0:
                raise ValueError("path runs through the origin")
            pos = (num > 0) == (den > 0)
            if upper:
                total += -1 if pos else 1
            else:
                total += 1 if pos else -1
        elif py == 0 and qy == 0 and (px > 0) != (qx > 0):
            raise ValueError("path runs through the origin")
        px, py, upper = qx, qy, up2
    return total
