"""Pure-Python implementations of the hot kernels.

Mirrors ``_kernels.pyx`` function for function; used when the compiled
extension is missing or ``QUADOMAIN_PURE_PYTHON`` is set.
"""
import cmath
import numpy as np

_EPS = 2.0 ** -53


def _orient(ax, ay, bx, by, cx, cy):
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def _on_segment(ax, ay, bx, by, cx, cy):
    return (min(ax, bx) <= cx <= max(ax, bx)) and (min(ay, by) <= cy <= max(ay, by))


def _segments_touch(i, j, x, y, n):
    ax, ay = x[i], y[i]
    bx, by = x[(i + 1) % n], y[(i + 1) % n]
    cx, cy = x[j], y[j]
    dx, dy = x[(j + 1) % n], y[(j + 1) % n]
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _on_segment(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _on_segment(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _on_segment(cx, cy, dx, dy, bx, by):
        return True
    return False


def first_crossing(x, y):
    """Return the first crossing pair ``(i, j)`` of a closed polyline, or ``None``.

    Segment ``i`` joins vertex ``i`` to vertex ``i + 1`` (cyclically).
    Adjacent segments are never reported.  Sweep-and-prune over the
    x-extent of the segments, so the cost is close to linear for curves
    that are not pathologically folded.
    """
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    if n < 4:
        return None
    xlo = [min(x[i], x[(i + 1) % n]) for i in range(n)]
    xhi = [max(x[i], x[(i + 1) % n]) for i in range(n)]
    ylo = [min(y[i], y[(i + 1) % n]) for i in range(n)]
    yhi = [max(y[i], y[(i + 1) % n]) for i in range(n)]
    order = sorted(range(n), key=lambda k: (xlo[k], k))
    active = []
    for i in order:
        active = [j for j in active if xhi[j] >= xlo[i]]
        for j in active:
            d = abs(i - j)
            if d == 1 or d == n - 1:
                continue
            if ylo[i] > yhi[j] or ylo[j] > yhi[i]:
                continue
            if _segments_touch(i, j, x, y, n):
                return (min(i, j), max(i, j))
        active.append(i)
    return None


# Carlson symmetric integrals, duplication algorithm (complex capable).

def rc(x, y):
    """Degenerate integral R_C(x, y) for complex ``x``, ``y`` off the negative axis."""
    x = complex(x)
    y = complex(y)
    a = (x + 2.0 * y) / 3.0
    q = (3.0 * _EPS) ** (-1.0 / 8.0) * abs(a - x)
    f = 1.0
    while q * f >= abs(a):
        lam = 2.0 * cmath.sqrt(x) * cmath.sqrt(y) + y
        a = (a + lam) * 0.25
        x = (x + lam) * 0.25
        y = (y + lam) * 0.25
        f *= 0.25
    s = (y - a) / a
    return (1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 + s * (
        9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))))) / cmath.sqrt(a)


def rf(x, y, z):
    """R_F(x, y, z); at most one argument may vanish."""
    x = complex(x)
    y = complex(y)
    z = complex(z)
    a0 = (x + y + z) / 3.0
    q = (3.0 * _EPS) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    f = 1.0
    while q * f >= abs(a):
        sx, sy, sz = cmath.sqrt(x), cmath.sqrt(y), cmath.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        a = (a + lam) * 0.25
        x = (x + lam) * 0.25
        y = (y + lam) * 0.25
        z = (z + lam) * 0.25
        f *= 0.25
    X = (a - x) / a
    Y = (a - y) / a
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / cmath.sqrt(a)


def rj(x, y, z, p):
    """R_J(x, y, z, p) for real non-negative ``x, y, z`` and complex ``p`` off the negative axis."""
    x = complex(x)
    y = complex(y)
    z = complex(z)
    p = complex(p)
    a0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = (0.25 * _EPS) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    a = a0
    f = 1.0
    acc = 0.0j
    m = 0
    while True:
        sx, sy, sz, sp = cmath.sqrt(x), cmath.sqrt(y), cmath.sqrt(z), cmath.sqrt(p)
        lam = sx * sy + sx * sz + sy * sz
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = delta * (4.0 ** (-3 * m)) / (d * d)
        acc += f / d * rc(1.0, 1.0 + e)
        a = (a + lam) * 0.25
        x = (x + lam) * 0.25
        y = (y + lam) * 0.25
        z = (z + lam) * 0.25
        p = (p + lam) * 0.25
        f *= 0.25
        m += 1
        if q * f < abs(a):
            break
    X = (a - x) / a
    Y = (a - y) / a
    Z = (a - z) / a
    P = -(X + Y + Z) / 2.0
    e2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P ** 3
    e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P ** 3) * P
    e5 = X * Y * Z * P * P
    tail = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
            - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return f * tail / (a * cmath.sqrt(a)) + 6.0 * acc


def rd(x, y, z):
    """R_D(x, y, z) = R_J(x, y, z, z)."""
    return rj(x, y, z, z)
