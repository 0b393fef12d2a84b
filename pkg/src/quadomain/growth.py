"""Laplacian growth through quadrature-domain families.

By Richardson's theorem the harmonic moments of a domain growing with a
point source of strength Q at the origin obey

    d/dt int u dV = Q u(0),

so along a trajectory a0 grows linearly at rate Q and every higher
coefficient is frozen.  Trajectories are therefore computed in moment space
(a0 += Q dt, a1 fixed) and mapped back to the map parameters by Newton
iteration; there is no time-stepping error, only the inversion tolerance.
Positive Q increases the volume.

For the planar cardioid family zeta = a z^2 + b z the moments are explicit:
area pi (b^2 + 2 a^2) and first moment pi a b^2.
"""
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .conformal import MapParams, UNIVALENCE_TOL, boundary_curve
from .errors import (ConvergenceError, CuspBracketError, OutOfFamilyError,
                     ParameterError)
from .moments import extract_quadrature_direct

CUSP_TOL = 1e-3
PK_CUSP_TOL = 1e-6
INVERT_TOL = 1e-8
MAX_NEWTON = 50
A_MAX = 1.0
GROWTH_SAMPLES = 2048


@dataclass(frozen=True)
class GrowthState:
    t: float
    params: MapParams
    a0: float
    a1: float
    min_abs_df: float
    cusp: bool = False

    def row(self):
        return (self.t, self.params.a, self.params.C, self.a0, self.a1,
                self.min_abs_df, int(self.cusp))


@dataclass(frozen=True)
class PKState:
    t: float
    a: float
    b: float
    M0: float
    M1: float
    cusp: bool = False

    def row(self):
        return (self.t, self.a, self.b, self.M0, self.M1, int(self.cusp))


def forward_moments(p, m=GROWTH_SAMPLES):
    """(a0, a1, min|f'|) of the map with parameters p."""
    curve = boundary_curve(p, m)
    q = extract_quadrature_direct(curve, K=2)
    return q.a0, q.a1, curve.min_abs_df


def initial_state(p, m=GROWTH_SAMPLES):
    a0, a1, mdf = forward_moments(p, m)
    return GrowthState(0.0, p, a0, a1, mdf, mdf < CUSP_TOL * p.C)


def _residual(x, target, m):
    a0, a1, _ = forward_moments(MapParams(x[0], x[1]), m)
    return np.array([a0 - target[0], a1 - target[1]])


def _check_family(x):
    if not (x[0] < A_MAX and x[1] > 0.0):
        raise OutOfFamilyError(f"Newton iterate left the family: a={x[0]:.6g}, C={x[1]:.6g}")


def invert_parameters(target_a0, target_a1, seed, m=GROWTH_SAMPLES, tol=INVERT_TOL,
                      max_iter=MAX_NEWTON):
    """Find (a, C) whose quadrature coefficients are (target_a0, target_a1).

    Newton iteration with a forward-difference Jacobian; the step is halved
    while the residual grows.  a is clamped at 0 (the ball).
    """
    if target_a0 <= 0:
        raise ParameterError("target a0 must be positive")
    target = np.array([target_a0, target_a1], dtype=float)
    x = np.array([seed.a, seed.C], dtype=float)
    r = _residual(x, target, m)
    thresh = tol * target_a0
    for _ in range(max_iter):
        if np.abs(r).sum() < thresh:
            return MapParams(x[0], x[1])
        J = np.empty((2, 2))
        for i, h in enumerate((1e-6, 1e-6 * x[1])):
            xp = x.copy()
            xp[i] += h
            if xp[0] >= A_MAX:
                xp[i] -= 2 * h
                h = -h
            J[:, i] = (_residual(xp, target, m) - r) / h
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian", np.abs(r).sum()) from exc
        lam = 1.0
        norm = np.abs(r).sum()
        for _ in range(30):
            xn = x + lam * step
            xn[0] = max(xn[0], 0.0)
            _check_family(xn)
            rn = _residual(xn, target, m)
            if np.abs(rn).sum() < norm:
                break
            lam *= 0.5
        else:
            raise ConvergenceError("damped Newton step failed to reduce the residual", norm)
        x, r = xn, rn
    if np.abs(r).sum() < thresh:
        return MapParams(x[0], x[1])
    raise ConvergenceError(f"no convergence in {max_iter} iterations", float(np.abs(r).sum()))


def evolve(initial, Q, dt, steps, m=GROWTH_SAMPLES):
    """Trajectory [initial, s1, ...] with a0 = a0(0) + Q t and a1 = a1(0).

    Stops early (cusp flag set) once min|f'| < 1e-3 C.
    """
    if steps < 0 or dt <= 0:
        raise ParameterError("need steps >= 0 and dt > 0")
    if Q < 0 and abs(Q * dt * steps) >= initial.a0:
        raise ParameterError("suction would remove the whole volume")
    out = [initial]
    prev = initial
    for i in range(1, steps + 1):
        t = initial.t + i * dt
        a0 = initial.a0 + Q * (t - initial.t)
        if Q == 0:
            st = replace(initial, t=t)
        else:
            p = invert_parameters(a0, initial.a1, prev.params, m)
            _, _, mdf = forward_moments(p, m)
            st = GrowthState(t, p, a0, initial.a1, mdf, mdf < CUSP_TOL * p.C)
        out.append(st)
        prev = st
        if st.cusp:
            break
    return out


def _cusp_indicator(a, C, m):
    curve = boundary_curve(MapParams(a, C), m)
    v = curve.min_abs_df / C
    return v - UNIVALENCE_TOL if curve.simple else -v


def find_cusp_parameter(C=1.0, bracket=(0.5, 0.99), tol=1e-5, m=4096):
    """First a in ``bracket`` where the boundary degenerates (min|f'| reaches 0 or the curve self-intersects).

    Bisection on the signed indicator min|f'|/C - 1e-6 (negated for a
    non-simple curve).  Raises CuspBracketError when it does not change sign.
    """
    lo, hi = bracket
    vlo, vhi = _cusp_indicator(lo, C, m), _cusp_indicator(hi, C, m)
    if vlo <= 0 or vhi > 0:
        raise CuspBracketError(
            f"min|f'|/C does not vanish on ({lo}, {hi}): "
            f"indicator {vlo:.6g} at a={lo}, {vhi:.6g} at a={hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _cusp_indicator(mid, C, m) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_df_scan(avals, C=1.0, m=4096):
    """min|f'| on the unit circle for each a."""
    return np.array([boundary_curve(MapParams(a, C), m).min_abs_df for a in avals])


def pk_moments(a, b):
    """Area and first moment of the image of a z^2 + b z."""
    return np.pi * (b * b + 2.0 * a * a), np.pi * a * b * b


def pk_state(a, b, t=0.0):
    if not (a >= 0 and b > 2 * a):
        raise ParameterError("cardioid family needs b > 2a >= 0")
    M0, M1 = pk_moments(a, b)
    return PKState(t, a, b, M0, M1, b - 2 * a < PK_CUSP_TOL)


def pk_evolve(initial, Q, dt, steps):
    """Cardioid trajectory with area M0 = M0(0) + Q t and M1 frozen.

    With k = M1/pi, a = k/b^2 and b solves b^2 + 2k^2/b^4 = M0/pi on the
    branch b^3 > 2k; the area is minimal, and the boundary cusped, at
    b^3 = 2k.  A step that would pass that point is clamped to the cusp time.
    """
    if steps < 0 or dt <= 0:
        raise ParameterError("need steps >= 0 and dt > 0")
    k = initial.M1 / np.pi
    bc = (2.0 * k) ** (1.0 / 3.0)
    M0c = 1.5 * np.pi * bc * bc
    out = [initial]
    if initial.cusp:
        return out
    for i in range(1, steps + 1):
        t = initial.t + i * dt
        M0 = initial.M0 + Q * (t - initial.t)
        if M0 <= M0c:
            tc = initial.t + (M0c - initial.M0) / Q
            a = k / bc ** 2 if bc > 0 else 0.0
            out.append(PKState(tc, a, bc, M0c, initial.M1, True))
            break
        if Q == 0:
            out.append(replace(initial, t=t))
            continue
        def phi(b):
            return np.pi * (b * b + 2.0 * k * k / b ** 4) - M0
        b = brentq(phi, max(bc, 1e-300), np.sqrt(M0 / np.pi) + 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        a = k / (b * b)
        st = PKState(t, a, b, M0, initial.M1, b - 2 * a < PK_CUSP_TOL)
        out.append(st)
        if st.cusp:
            break
    return out
