# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: polyline crossing sweep and Carlson duplication."""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, fmax, fmin, pow
from libc.stdlib cimport free, malloc

cdef extern from "complex.h":
    double complex csqrt(double complex z) nogil
    double cabs(double complex z) nogil

cnp.import_array()

cdef double _EPS = 1.1102230246251565e-16


cdef inline int _orient(double ax, double ay, double bx, double by,
                        double cx, double cy) nogil:
    cdef double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


cdef inline bint _on_segment(double ax, double ay, double bx, double by,
                             double cx, double cy) nogil:
    return (fmin(ax, bx) <= cx <= fmax(ax, bx)) and (fmin(ay, by) <= cy <= fmax(ay, by))


cdef bint _touch(Py_ssize_t i, Py_ssize_t j, double[:] x, double[:] y, Py_ssize_t n) nogil:
    cdef double ax = x[i], ay = y[i]
    cdef double bx = x[(i + 1) % n], by = y[(i + 1) % n]
    cdef double cx = x[j], cy = y[j]
    cdef double dx = x[(j + 1) % n], dy = y[(j + 1) % n]
    cdef int o1 = _orient(ax, ay, bx, by, cx, cy)
    cdef int o2 = _orient(ax, ay, bx, by, dx, dy)
    cdef int o3 = _orient(cx, cy, dx, dy, ax, ay)
    cdef int o4 = _orient(cx, cy, dx, dy, bx, by)
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
    """Return the first crossing pair ``(i, j)`` of a closed polyline, or ``None``."""
    cdef double[:] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    if n < 4:
        return None
    cdef double[:] xlo = np.empty(n)
    cdef double[:] xhi = np.empty(n)
    cdef double[:] ylo = np.empty(n)
    cdef double[:] yhi = np.empty(n)
    cdef Py_ssize_t i, j, k, d, nact, keep
    for i in range(n):
        j = (i + 1) % n
        xlo[i] = fmin(xv[i], xv[j])
        xhi[i] = fmax(xv[i], xv[j])
        ylo[i] = fmin(yv[i], yv[j])
        yhi[i] = fmax(yv[i], yv[j])
    cdef cnp.intp_t[:] order = np.lexsort((np.arange(n), np.asarray(xlo)))
    cdef Py_ssize_t *active = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if active == NULL:
        raise MemoryError()
    cdef Py_ssize_t hit_i = -1, hit_j = -1
    nact = 0
    try:
        with nogil:
            for k in range(n):
                i = order[k]
                keep = 0
                for d in range(nact):
                    if xhi[active[d]] >= xlo[i]:
                        active[keep] = active[d]
                        keep += 1
                nact = keep
                for d in range(nact):
                    j = active[d]
                    if i - j == 1 or j - i == 1 or i - j == n - 1 or j - i == n - 1:
                        continue
                    if ylo[i] > yhi[j] or ylo[j] > yhi[i]:
                        continue
                    if _touch(i, j, xv, yv, n):
                        hit_i = i if i < j else j
                        hit_j = j if i < j else i
                        break
                if hit_i >= 0:
                    break
                active[nact] = i
                nact += 1
    finally:
        free(active)
    if hit_i >= 0:
        return (hit_i, hit_j)
    return None


cdef double complex _rc(double complex x, double complex y) nogil:
    cdef double complex a = (x + 2.0 * y) / 3.0
    cdef double q = pow(3.0 * _EPS, -1.0 / 8.0) * cabs(a - x)
    cdef double f = 1.0
    cdef double complex lam, s
    while q * f >= cabs(a):
        lam = 2.0 * csqrt(x) * csqrt(y) + y
        a = (a + lam) * 0.25
        x = (x + lam) * 0.25
        y = (y + lam) * 0.25
        f *= 0.25
    s = (y - a) / a
    return (1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 + s * (
        9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))))) / csqrt(a)


cdef double complex _rf(double complex x, double complex y, double complex z) nogil:
    cdef double complex a = (x + y + z) / 3.0
    cdef double q = pow(3.0 * _EPS, -1.0 / 6.0) * fmax(cabs(a - x), fmax(cabs(a - y), cabs(a - z)))
    cdef double f = 1.0
    cdef double complex sx, sy, sz, lam, X, Y, Z, e2, e3
    while q * f >= cabs(a):
        sx = csqrt(x)
        sy = csqrt(y)
        sz = csqrt(z)
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
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / csqrt(a)


cdef double complex _rj(double complex x, double complex y, double complex z,
                        double complex p) nogil:
    cdef double complex a0 = (x + y + z + 2.0 * p) / 5.0
    cdef double complex delta = (p - x) * (p - y) * (p - z)
    cdef double q = pow(0.25 * _EPS, -1.0 / 6.0) * fmax(fmax(cabs(a0 - x), cabs(a0 - y)),
                                                        fmax(cabs(a0 - z), cabs(a0 - p)))
    cdef double complex a = a0, acc = 0.0, sx, sy, sz, sp, lam, d, e
    cdef double complex X, Y, Z, P, e2, e3, e4, e5, tail
    cdef double f = 1.0, f3 = 1.0
    while True:
        sx = csqrt(x)
        sy = csqrt(y)
        sz = csqrt(z)
        sp = csqrt(p)
        lam = sx * sy + sx * sz + sy * sz
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = delta * f3 / (d * d)
        acc = acc + f / d * _rc(1.0, 1.0 + e)
        a = (a + lam) * 0.25
        x = (x + lam) * 0.25
        y = (y + lam) * 0.25
        z = (z + lam) * 0.25
        p = (p + lam) * 0.25
        f *= 0.25
        f3 *= 1.0 / 64.0
        if q * f < cabs(a):
            break
    X = (a - x) / a
    Y = (a - y) / a
    Z = (a - z) / a
    P = -(X + Y + Z) / 2.0
    e2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P
    e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P
    e5 = X * Y * Z * P * P
    tail = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
            - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return f * tail / (a * csqrt(a)) + 6.0 * acc


def rc(x, y):
    """Degenerate integral R_C(x, y)."""
    return complex(_rc(complex(x), complex(y)))


def rf(x, y, z):
    """R_F(x, y, z); at most one argument may vanish."""
    return complex(_rf(complex(x), complex(y), complex(z)))


def rj(x, y, z, p):
    """R_J(x, y, z, p) for real non-negative ``x, y, z`` and complex ``p``."""
    return complex(_rj(complex(x), complex(y), complex(z), complex(p)))


def rd(x, y, z):
    """R_D(x, y, z) = R_J(x, y, z, z)."""
    return complex(_rj(complex(x), complex(y), complex(z), complex(z)))
