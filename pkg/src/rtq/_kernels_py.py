"""Pure-Python versions of the hot loops.  ``rtq.kernels`` picks these when
the compiled module is missing or RTQ_PURE_PYTHON is set."""
from __future__ import annotations


def expand_compositions(j, S, A, T, Q, active, K, multinomial, extra, sign_from_s):
    """Accumulate a (almost-)quiver form at color ``j``.

    Returns ``{(weight, eq, ea, et): coeff}``.  ``multinomial(parts)`` gives
    dense q^2-coefficients; ``extra[kappa]`` lists ``((dq, da, dt), c)`` terms
    of the Pochhammer factor at K.d = kappa.  With ``sign_from_s`` the t-power
    is dropped and (-1)^{S.d} folded into the coefficient.
    """
    n = len(S)
    out = {}
    d = [0] * n

    def emit():
        sd = 0
        ea = 0
        et = 0
        kappa = 0
        weight = 0
        quad = 0
        act = []
        ina = []
        for i in range(n):
            di = d[i]
            if di:
                sd += S[i] * di
                ea += A[i] * di
                et += T[i] * di
                kappa += K[i] * di
                row = Q[i]
                for k in range(n):
                    if d[k]:
                        quad += row[k] * di * d[k]
                if active[i]:
                    weight += di
                    act.append(di)
                else:
                    ina.append(di)
        sign = 1
        if sign_from_s:
            if sd % 2:
                sign = -1
            et = 0
        eq = sd + quad
        m1 = multinomial(tuple(act))
        m2 = multinomial(tuple(ina))
        for (dq, da, dt), c in extra[kappa]:
            c *= sign
            for x, c1 in enumerate(m1):
                if not c1:
                    continue
                for y, c2 in enumerate(m2):
                    if not c2:
                        continue
                    key = (weight, eq + dq + 2 * (x + y), ea + da, et + dt)
                    out[key] = out.get(key, 0) + c * c1 * c2

    def rec(i, left):
        if i == n - 1:
            d[i] = left
            emit()
            d[i] = 0
            return
        for v in range(left, -1, -1):
            d[i] = v
            rec(i + 1, left - v)
        d[i] = 0

    if n == 0:
        return out
    rec(0, j)
    return {k: c for k, c in out.items() if c}


def half_turns(points):
    """Signed count of crossings of the real line by a polyline of vectors.

    The plane is split into the half-open halves {y > 0 or (y == 0, x > 0)}
    and its complement, so endpoints on the axis are never ambiguous.
    A counter-clockwise passage counts +1.  For a closed path this is twice
    the winding number about the origin; for a path ending at the negative
    of its start it is the odd number of half-turns.
    """
    total = 0
    px, py = points[0]
    if px == 0 and py == 0:
        raise ValueError("path meets the origin")
    upper = py > 0 or (py == 0 and px > 0)
    for qx, qy in points[1:]:
        if qx == 0 and qy == 0:
            raise ValueError("path meets the origin")
        up2 = qy > 0 or (qy == 0 and qx > 0)
        if up2 != upper:
            if py == qy:
                raise ValueError("path runs through the origin")
            # x where the segment meets y = 0
            num = px * (qy - py) - py * (qx - px)
            den = qy - py
            pos = (num > 0) == (den > 0) if num else None
            if pos is None:
                raise ValueError("path runs through the origin")
            if upper:
                total += -1 if pos else 1
            else:
                total += 1 if pos else -1
        elif py == 0 and qy == 0 and (px > 0) != (qx > 0):
            raise ValueError("path runs through the origin")
        px, py, upper = qx, qy, up2
    return total
