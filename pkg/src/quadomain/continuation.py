"""The function F(w) of the decomposition f = A0 + A1 w + C (w^2 - 1) F(w).

Principal branch (analytic off the cut (-inf, -1/a]):

    F(w) = 1/(pi i) * int_{-inf}^{-1/a} sqrt(G(z)) / (z - w) dz,
    G(z) = (z + a)(1 + a z) / z**3.

On the cut the integrand uses the boundary value from the upper half plane
of the reference branch ``sqrt_G_ref`` below.  After z = -1/xi the integral
lives on [0, a]:

    F(w) = 1/pi * int_0^a sqrt((a - xi)/xi) * sqrt(1 - a xi) / (1 + w xi) dxi,

which is what ``eval_F`` integrates, with Gauss-Jacobi nodes for the two
endpoint singularities.

Branch conventions used throughout:

* ``sqrt_G_ref(w) = sqrt(1 + a/w) * sqrt(1 + a w) / w`` with principal roots.
  It is analytic off (-inf, -1/a] and [-a, 0) and flips sign across both.
* The jump of F across the cut, with the *principal* square root of the
  negative number G(x), is F(x+i0) - F(x-i0) = -2 sqrt(G(x)).
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from . import kernels
from .errors import (BranchError, DomainError, ExtrapolationError, ParameterError,
                     PathError)

N_JACOBI = 96


def _check_a(a):
    a = float(a)
    if not 0.0 < a < 1.0:
        raise ParameterError(f"need 0 < a < 1, got {a}")
    return a


@dataclass(frozen=True)
class CutGeometry:
    a: float

    def __post_init__(self):
        _check_a(self.a)

    @property
    def branch_points(self):
        return (0.0, -self.a, -1.0 / self.a)

    @property
    def cut_end(self):
        return -1.0 / self.a

    def on_outer_cut(self, x):
        return x <= -1.0 / self.a

    def on_inner_cut(self, x):
        return -self.a <= x < 0.0


@dataclass(frozen=True)
class SheetState:
    """Branch F0(w) + 2 m rho(w), where rho = s * sqrt_G_ref is the continued root."""

    m: int = 0
    s: int = 1

    def __post_init__(self):
        if self.s not in (1, -1):
            raise ParameterError("s must be +1 or -1")

    @property
    def principal(self):
        return self.m == 0

    def cross_outer(self):
        return SheetState(self.m + self.s, -self.s)

    def cross_inner(self):
        return SheetState(self.m, -self.s)


def eval_G(z, a):
    """G(z) = (1 + a/z)(1/z + a)(1/z)."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("G has a pole at z = 0")
    out = (z + a) * (1.0 + a * z) / z ** 3
    return out[()] if out.ndim == 0 else out


def sqrt_G_ref(w, a):
    """Reference branch of sqrt(G) built from principal roots."""
    w = np.asarray(w, dtype=complex)
    out = np.sqrt(1.0 + a / w) * np.sqrt(1.0 + a * w) / w
    return out[()] if out.ndim == 0 else out


@lru_cache(maxsize=8)
def _jacobi(n):
    # weight (1 - t)^(1/2) (1 + t)^(-1/2); xi = a (1 + t)/2 puts sqrt(a - xi)/sqrt(xi) there
    t, wt = roots_jacobi(n, 0.5, -0.5)
    t.setflags(write=False)
    wt.setflags(write=False)
    return t, wt


def _cauchy_weight(z, a):
    """int_0^a sqrt((a - xi)/xi) / (xi - z) dxi, closed form, for z off [0, a]."""
    return np.pi * (np.sqrt(z - a) / np.sqrt(z) - 1.0)


def _segment_integral(w, a, n):
    t, wt = _jacobi(n)
    xi = 0.5 * a * (1.0 + t)
    phi = np.sqrt(1.0 - a * xi)
    w = np.asarray(w, dtype=complex).ravel()
    out = np.empty(w.shape, dtype=complex)
    xi0 = np.full(w.shape, np.inf + 0j)
    nz = w != 0
    xi0[nz] = -1.0 / w[nz]
    dist = np.where(xi0.real < 0, np.abs(xi0),
                    np.where(xi0.real > a, np.abs(xi0 - a), np.abs(xi0.imag)))
    near = nz & (dist < 0.5 * min(a, 1.0 / a - a))
    far = ~near
    if np.any(far):
        wf = w[far]
        out[far] = 0.5 * a * ((wt * phi)[None, :] / (1.0 + wf[:, None] * xi[None, :])).sum(axis=1)
    if np.any(near):
        z0 = xi0[near]
        phi0 = np.sqrt(1.0 - a * z0)
        quot = (phi[None, :] - phi0[:, None]) / (xi[None, :] - z0[:, None])
        body = 0.5 * a * (wt[None, :] * quot).sum(axis=1)
        out[near] = (body + phi0 * _cauchy_weight(z0, a)) / w[near]
    return out


def distance_to_cut(w, a):
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    return np.where(x <= -1.0 / a, np.abs(y), np.abs(w + 1.0 / a))


def eval_F(w, a, n=N_JACOBI):
    """Principal branch of F from the segment integral over the cut."""
    a = _check_a(a)
    w = np.asarray(w, dtype=complex)
    if np.any(distance_to_cut(w, a) < 1e-10):
        raise PathError("w lies on the cut (-inf, -1/a]")
    out = _segment_integral(w, a, n).reshape(w.shape) / np.pi
    return out[()] if out.ndim == 0 else out


def eval_F_circle(w, a, m=2048):
    """F(w) for |w| < 1 from the unit-circle integral, trapezoid rule.

    F(w) = 1/(2 pi i) * int_{|z|=1} sqrt((1 + a/z)(1 + a z)) / (z (z - w)) dz.
    """
    a = float(a)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) > 1.0 - 1e-8):
        raise PathError("circle form needs |w| < 1")
    theta = 2.0 * np.pi * np.arange(m) / m
    z = np.exp(1j * theta)
    s = np.sqrt(1.0 + a / z) * np.sqrt(1.0 + a * z)
    out = (s[None, :] / (z[None, :] - w.reshape(-1, 1))).mean(axis=1).reshape(w.shape)
    return out[()] if out.ndim == 0 else out


def jump(x, a, eps=(1e-2, 1e-3, 1e-4)):
    """Richardson-extrapolated F(x + i0) - F(x - i0) at a point x < -1/a of the cut.

    The differences D(eps) = F(x + i eps) - F(x - i eps) are extrapolated
    assuming a power series in eps with a fixed ratio between successive eps.
    """
    a = _check_a(a)
    x = float(x)
    if not x < -1.0 / a:
        raise DomainError(f"x = {x} is not on the open cut (-inf, {-1.0 / a})")
    eps = [float(e) for e in eps]
    if len(eps) < 2:
        raise ParameterError("need at least two eps values")
    pts = np.array([x + 1j * e for e in eps] + [x - 1j * e for e in eps])
    vals = eval_F(pts, a)
    d = vals[:len(eps)] - vals[len(eps):]
    steps = np.abs(np.diff(d))
    if len(steps) > 1 and np.any(steps[1:] > steps[:-1] * 1.5):
        raise ExtrapolationError(f"jump estimates diverge: {d}")
    table = [list(d)]
    for level in range(1, len(eps)):
        prev = table[-1]
        row = []
        for j in range(len(prev) - 1):
            r = (eps[j] / eps[j + level]) ** level
            row.append((r * prev[j + 1] - prev[j]) / (r - 1.0))
        table.append(row)
    return complex(table[-1][0])


def jump_expected(x, a):
    """-2 sqrt(G(x)) with the principal root of the negative real G(x)."""
    x = float(x)
    g = (x + a) * (1.0 + a * x) / x ** 3
    # principal root of the real number; avoids a signed-zero imaginary part
    return -2.0 * np.sqrt(complex(g, 0.0))


# --- analytic continuation -------------------------------------------------

def _check_path(path, a):
    path = np.asarray(path, dtype=complex).ravel()
    if path.size < 2:
        raise PathError("path needs at least two points")
    for b in (0.0, -a, -1.0 / a):
        p, q = path[:-1], path[1:]
        d = q - p
        t = np.clip(np.real((b - p) * np.conj(d)) / np.maximum(np.abs(d) ** 2, 1e-300), 0, 1)
        if np.any(np.abs(p + t * d - b) < 1e-6):
            raise PathError(f"path passes within 1e-6 of branch point {b}")
    on_axis = np.abs(path.imag) < 1e-14
    x = path.real[on_axis]
    if np.any((x <= -1.0 / a) | ((x >= -a) & (x < 0))):
        raise PathError("path vertex lies on a cut")
    return path


def continue_along(path, start=SheetState(), a=0.5, trace=False):
    """Continue the branch described by ``start`` along a polyline.

    Returns ``(end_state, value)`` where ``value`` is the continued F at the
    last vertex.  With ``trace=True`` also returns the branch values at
    every vertex.  The root rho = s * sqrt_G_ref is additionally continued
    numerically vertex by vertex; a mismatch with the crossing bookkeeping
    raises BranchError.
    """
    a = _check_a(a)
    path = _check_path(path, a)
    state = start
    ref = sqrt_G_ref(path, a)
    rho = state.s * ref[0]
    values = [] if trace else None
    if trace:
        F0 = eval_F(path, a)
        values.append(F0[0] + 2 * state.m * rho)
    for k in range(1, path.size):
        p, q = path[k - 1], path[k]
        if p.imag * q.imag < 0:
            x = p.real + (q.real - p.real) * p.imag / (p.imag - q.imag)
            if x < -1.0 / a:
                state = state.cross_outer()
            elif -a < x < 0:
                state = state.cross_inner()
        cand = ref[k]
        new = cand if abs(cand - rho) <= abs(cand + rho) else -cand
        if abs(new - rho) > 0.5 * abs(rho):
            raise PathError(f"path step {k} too coarse to follow sqrt(G)")
        rho = new
        if abs(rho - state.s * cand) > 1e-9 * abs(cand):
            raise BranchError(f"root continuation disagrees with cut bookkeeping at step {k}")
        if trace:
            values.append(F0[k] + 2 * state.m * rho)
    value = complex(eval_F(path[-1], a) + 2 * state.m * rho)
    if trace:
        return state, value, np.array(values)
    return state, value


def default_base_point(a):
    return 0.5j


def _loop(center, radius, base, npts, branch_pts):
    top = center + 1j * radius
    # half-step offsets keep every vertex off the real axis
    ang = np.pi / 2 + 2.0 * np.pi * (np.arange(npts) + 0.5) / npts
    circle = center + radius * np.exp(1j * ang)
    # lead step at most 5% of the base point's distance to the nearest branch point
    d = min(abs(base - b) for b in branch_pts)
    nlead = max(17, int(np.ceil(abs(top - base) / (0.05 * d))) + 1)
    lead = np.linspace(base, top, nlead)
    return np.concatenate([lead, circle, lead[::-1]])


def gamma1(a, base=None, radius=None, npts=512):
    """Loop from ``base`` once counter-clockwise around the branch point -1/a."""
    a = _check_a(a)
    base = default_base_point(a) if base is None else complex(base)
    if radius is None:
        radius = 0.5 * (1.0 / a - a)
    return _loop(-1.0 / a, radius, base, npts, (0.0, -a, -1.0 / a))


def gamma2(a, base=None, radius=None, npts=512):
    """Loop from ``base`` once counter-clockwise around 0, crossing [-a, 0)."""
    a = _check_a(a)
    base = default_base_point(a) if base is None else complex(base)
    if radius is None:
        radius = 0.5 * a
    return _loop(0.0, radius, base, npts, (0.0, -a, -1.0 / a))


def loop_path(tokens, a, base=None):
    """Concatenate loops named by tokens ``"g1"``/``"g2"`` into one polyline."""
    makers = {"g1": gamma1, "g2": gamma2}
    pieces = []
    for tok in tokens:
        if tok not in makers:
            raise PathError(f"unknown loop token {tok!r}; expected g1 or g2")
        seg = makers[tok](a, base)
        pieces.append(seg if not pieces else seg[1:])
    if not pieces:
        b = default_base_point(a) if base is None else complex(base)
        return np.array([b, b])
    return np.concatenate(pieces)


def ladder_tokens(k):
    """gamma1 (gamma2 gamma1)^k: k + 1 copies of gamma1 alternating with gamma2."""
    return ["g1"] + ["g2", "g1"] * int(k)


def run_loops(tokens, a, base=None):
    """Continue the principal branch through a sequence of loops.

    Returns a dict with the visited sheet states as [m, s] pairs, the final
    value, and the offset (value - F0) expressed as a multiple of the continued sqrt(G) at
    the base point.
    """
    a = _check_a(a)
    b = default_base_point(a) if base is None else complex(base)
    state = SheetState()
    visited = [state]
    value = complex(eval_F(b, a))
    for tok in tokens:
        state, value = continue_along(loop_path([tok], a, b), state, a)
        visited.append(state)
    F0 = complex(eval_F(b, a))
    rho = state.s * complex(sqrt_G_ref(b, a))
    mult = (value - F0) / rho
    return {
        "base_point": b,
        "sheets_visited": [[st.m, st.s] for st in visited],
        "value": value,
        "F0": F0,
        "sqrt_G": rho,
        "offset": value - F0,
        "offset_multiple": mult,
        "final_offset_multiple_of_sqrtG": round(mult.real),
    }


# --- elliptic standard form ----------------------------------------------

def ellipk_agm(m):
    """K(m) by the arithmetic-geometric mean, for m < 1."""
    m = float(m)
    if m >= 1.0:
        raise DomainError("K(m) needs m < 1")
    x, y = 1.0, np.sqrt(1.0 - m)
    for _ in range(64):
        if abs(x - y) <= 1e-16 * x:
            break
        x, y = 0.5 * (x + y), np.sqrt(x * y)
    return np.pi / (2.0 * 0.5 * (x + y))


def _pi_raw(n, m):
    return kernels.rf(0.0, 1.0 - m, 1.0) + n / 3.0 * kernels.rj(0.0, 1.0 - m, 1.0, 1.0 - n)


def carlson_pi(n, m):
    """Complete elliptic integral of the third kind,

        Pi(n, m) = int_0^{pi/2} dtheta / ((1 - n sin^2) sqrt(1 - m sin^2)),

    as R_F(0, 1-m, 1) + n/3 R_J(0, 1-m, 1, 1-n).  Real ``n < 1`` gives a real
    result; complex ``n`` off [1, inf) is accepted and returns a complex value.
    """
    m = float(m)
    if m >= 1.0:
        raise DomainError(f"need m < 1, got {m}")
    if np.iscomplexobj(n) and complex(n).imag != 0.0:
        return complex(_pi_raw(complex(n), m))
    n = float(np.real(n))
    if n >= 1.0:
        raise DomainError(f"need n < 1, got {n}")
    return float(_pi_raw(n, m).real)


def _moment_integrals(m):
    """K, int sin^2/Delta, int sin^4/Delta over [0, pi/2] with Delta = sqrt(1 - m sin^2)."""
    K = kernels.rf(0.0, 1.0 - m, 1.0).real
    J1 = kernels.rd(0.0, 1.0 - m, 1.0).real / 3.0
    J2 = (2.0 * (1.0 + m) * J1 - K) / (3.0 * m)
    return K, J1, J2


def xi_constant(a):
    """The w-independent part C0 = F(0), from complete integrals of the first and second kind."""
    a = _check_a(a)
    m = a * a
    K, J1, J2 = _moment_integrals(m)
    return 2.0 * a / np.pi * (K - (1.0 + m) * J1 + m * J2)


def xi_integral(w, a):
    """int_0^a sqrt((xi - 1/a)(xi - a) xi) / (xi + 1/w) dxi via Carlson forms.

    With xi = a sin^2(theta), the integrand reduces to a quadratic in
    sin^2 over Delta plus a multiple of the third-kind integral with
    characteristic n = -a w.
    """
    a = _check_a(a)
    w = complex(w)
    if w == 0:
        raise DomainError("xi form needs w != 0")
    xi0 = -1.0 / w
    if abs(xi0.imag) < 1e-8 and -1e-8 <= xi0.real <= a + 1e-8:
        raise DomainError("-1/w lies on [0, a]")
    m = a * a
    K, J1, J2 = _moment_integrals(m)
    num = np.array([0.0, 1.0, -(1.0 + m), m], dtype=complex)
    den = np.array([1.0 / w, a], dtype=complex)
    q, r = np.polynomial.polynomial.polydiv(num, den)
    q = np.concatenate([q, np.zeros(3 - len(q))])
    n = -a * w
    pi3 = carlson_pi(n if n.imag != 0 else n.real, m)
    body = q[0] * K + q[1] * J1 + q[2] * J2 + r[0] * w * pi3
    return complex(2.0 * a ** 1.5 * body)


# sign fixed by matching eval_F; see xi_form docstring
XI_SIGN = -1.0


def xi_form(w, a):
    """F(w) = C0 + XI_SIGN * sqrt(a)/pi * xi_integral(w, a), XI_SIGN = -1.

    The sign comes from the factor i produced by the square root of the
    negative quantity (xi - 1/a) on [0, a]; it is checked against eval_F in
    the tests rather than assumed.
    """
    return complex(xi_constant(a) + XI_SIGN * np.sqrt(a) / np.pi * xi_integral(w, a))
