"""Harmonic moments by contour reduction and quadrature-coefficient extraction.

Two independent routes give the coefficients of

    int_Omega u dV = a0 u(0) + a1 du/dx1(0) [+ a2 d2u/dx1^2(0)]

for the axially symmetric domain Omega in R^4 obtained by rotating a planar
domain D about the real axis:

* direct: the moments M_k = int_Omega U_k dV of the axial harmonics
  U_k(x, y) = Im((x + iy)^k) / y, computed from boundary samples by Green's
  theorem.  Since U_k -> k x^(k-1) on the axis, M_k = k! a_(k-1).
* Laurent: the principal part of V(zeta) = (i/4) (zeta - S(zeta))^2 at
  zeta = 0, read off a small contour.  With c_{-j} the Laurent coefficient
  of zeta^(-j) in V, M_k = -2 i pi^2 c_{-(k+1)}.
"""
import warnings
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .conformal import _horner, eval_g, laurent_coeffs
from .errors import BranchError, ParameterError, ResolutionWarning

RESOLUTION_TOL = 1e-10
QUADRATURE_TOL = 1e-4
LAURENT_RADIUS = 0.5
LAURENT_SAMPLES = 512


@dataclass(frozen=True)
class QuadratureData:
    """Quadrature coefficients plus normalized leftovers |M_k| / (a0 L^(k-1))."""

    a0: float
    a1: float
    a2: float = None
    residuals: tuple = ()
    first_order: int = 3
    params: object = None
    scale: float = 1.0
    method: str = "direct"

    @property
    def residual_orders(self):
        return tuple(range(self.first_order, self.first_order + len(self.residuals)))

    @property
    def max_residual(self):
        return max(self.residuals) if self.residuals else 0.0

    @property
    def quadrature(self):
        """False when some higher moment survives above 1e-4 (not a quadrature domain of this order)."""
        return self.max_residual <= QUADRATURE_TOL

    def to_dict(self):
        out = {"method": self.method, "a0": self.a0, "a1": self.a1}
        if self.a2 is not None:
            out["a2"] = self.a2
        out["residual_orders"] = list(self.residual_orders)
        out["residuals"] = list(self.residuals)
        out["max_residual"] = self.max_residual
        out["quadrature"] = self.quadrature
        out["length_scale"] = self.scale
        p = self.params
        if p is not None and hasattr(p, "a") and hasattr(p, "C"):
            out["params"] = {"a": p.a, "C": p.C}
        elif p is not None:
            out["params"] = p
        return out


@dataclass(frozen=True)
class HarmonicTestFamily:
    """Axially symmetric harmonics U_k(x, y) = Im((x + iy)^k) / y of R^4, k = 1..K."""

    K: int = 8

    def __call__(self, k, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        small = np.abs(y) < 1e-300
        ys = np.where(small, 1.0, y)
        val = np.imag((x + 1j * ys) ** k) / ys
        return np.where(small, k * x ** (k - 1), val)

    def on_axis(self, k, x):
        return k * np.asarray(x, dtype=float) ** (k - 1)

    def eval4(self, k, X):
        """U_k at points X of R^4 (last axis of length 4)."""
        X = np.asarray(X, dtype=float)
        return self(k, X[..., 0], np.linalg.norm(X[..., 1:], axis=-1))

    def laplacian4(self, k, X, h=1e-3):
        """Five-point finite-difference Laplacian in R^4."""
        X = np.asarray(X, dtype=float)
        u0 = self.eval4(k, X)
        lap = np.zeros_like(u0)
        for i in range(4):
            e = np.zeros(4)
            e[i] = h
            lap += (self.eval4(k, X + e) - 2.0 * u0 + self.eval4(k, X - e)) / h ** 2
        return lap


def _trapezoid(curve, k, m, stride=1):
    z = curve.zeta[::stride]
    dz = 1j * np.exp(1j * curve.theta[::stride]) * curve.dfd[::stride]
    integrand = z ** k * np.conj(z) ** (m + 1) * dz
    h = 2.0 * np.pi / len(z)
    return integrand.sum() * h / (2j * (m + 1)), np.abs(integrand).sum() * h / (2 * (m + 1))


def complex_moment(curve, k, m, check=True):
    """int_D zeta^k conj(zeta)^m dA = 1/(2i(m+1)) * contour integral of zeta^k conj(zeta)^(m+1) dzeta.

    Trapezoid rule in theta.  Warns with ResolutionWarning when the half
    grid disagrees by more than 1e-10 relative to the integrand size.
    """
    if k < 0 or m < 0:
        raise ParameterError("moment orders must be non-negative")
    val, size = _trapezoid(curve, k, m)
    if check and curve.m % 2 == 0:
        half, _ = _trapezoid(curve, k, m, stride=2)
        if abs(half - val) > RESOLUTION_TOL * max(size, 1e-300):
            warnings.warn(f"moment ({k},{m}) not resolved at m={curve.m}: "
                          f"half-grid change {abs(half - val):.2e}", ResolutionWarning,
                          stacklevel=2)
    return complex(val)


def harmonic_moments_4d(curve, K=8):
    """M_1..M_K of the domain in R^4 generated by rotating the interior of ``curve``.

    M_k = -(pi/2) [mu(k+1,0) - mu(k,1) - mu(1,k) + mu(0,k+1)] with mu the
    planar moments; returns a float array of length K (index 0 holds M_1).
    """
    out = np.empty(K)
    for k in range(1, K + 1):
        s = (complex_moment(curve, k + 1, 0) - complex_moment(curve, k, 1)
             - complex_moment(curve, 1, k) + complex_moment(curve, 0, k + 1))
        M = -0.5 * np.pi * s
        if abs(M.imag) > 1e-12 * max(1.0, abs(M.real)):
            raise BranchError(f"moment M_{k} is not real: imag {M.imag:.2e}")
        out[k - 1] = M.real
    return out


def _from_moments(M, order, L, params, method):
    a = [M[j] / factorial(j + 1) for j in range(order + 1)]
    a0 = a[0]
    res = tuple(abs(M[k - 1]) / (abs(a0) * L ** (k - 1)) for k in range(order + 2, len(M) + 1))
    return QuadratureData(a0=float(a0), a1=float(a[1]),
                          a2=float(a[2]) if order >= 2 else None,
                          residuals=tuple(float(r) for r in res), first_order=order + 2,
                          params=params, scale=float(L), method=method)


def extract_quadrature_direct(curve, K=8, order=1):
    """Quadrature data from boundary moments: a_j = M_(j+1) / (j+1)!.

    ``order`` is the highest derivative kept (1 for the main family, 2 for
    the rotated limacon); higher moments become residuals.
    """
    if order not in (1, 2):
        raise ParameterError("order must be 1 or 2")
    if not curve.simple:
        raise ParameterError("boundary curve is not simple")
    M = harmonic_moments_4d(curve, K)
    return _from_moments(M, order, curve.max_radius, curve.params, "direct")


def _winding(zeta):
    d = np.angle(np.roll(zeta, -1) / zeta)
    return int(np.rint(d.sum() / (2.0 * np.pi)))


def laurent_principal_part(gfun, ffun, dfun, jmax, r=LAURENT_RADIUS, n=LAURENT_SAMPLES):
    """c_{-j}, j = 1..jmax, of V(zeta) = (i/4) g(f^{-1}(zeta)) at zeta = 0.

    c_{-j} = 1/(2 pi i) * int_{|z|=r} (i/4) g(z) f(z)^(j-1) f'(z) dz; the
    image of |z| = r must wind once around the origin.
    """
    z = r * np.exp(2j * np.pi * np.arange(n) / n)
    fz = ffun(z)
    if _winding(fz) != 1:
        raise BranchError("image of the small circle does not wind once around 0")
    base = 0.25j * gfun(z) * dfun(z) * z
    out = np.empty(jmax, dtype=complex)
    pw = np.ones_like(z)
    for j in range(1, jmax + 1):
        out[j - 1] = np.mean(base * pw)
        pw = pw * fz
    return out


def _laurent_data(gfun, taylor, K, order, L, params, r, n):
    d = taylor[1:] * np.arange(1, len(taylor))
    c = laurent_principal_part(gfun, lambda z: _horner(taylor, z),
                               lambda z: _horner(d, z), K + 1, r, n)
    M = -2j * np.pi ** 2 * c[1:]
    if np.max(np.abs(M.imag)) > 1e-10 * max(1.0, abs(M[0].real)):
        raise BranchError("Laurent moments are not real")
    return _from_moments(M.real, order, L, params, "laurent")


def extract_quadrature_laurent(p, grid=None, K=8, r=LAURENT_RADIUS, n=LAURENT_SAMPLES):
    """Quadrature data for the main family from the pole of V at zeta = 0.

    Uses g(z) = C^2 (z^2 - 1)^2 (z + a)(1 + a z) / z^3 exactly and f from
    its Taylor coefficients.
    """
    grid = grid or laurent_coeffs(p)
    taylor = grid.taylor
    L = float(np.max(np.abs(_horner(taylor, np.exp(2j * np.pi * np.arange(1024) / 1024)))))
    return _laurent_data(lambda z: eval_g(z, p), taylor, K, 1, L, p, r, n)


def extract_quadrature_laurent_taylor(coeffs, K=8, order=1, r=LAURENT_RADIUS,
                                      n=LAURENT_SAMPLES, params=None):
    """Laurent route for a polynomial (or truncated Taylor) map with real coefficients.

    Here g(z) = (f(z) - f(1/z))^2.
    """
    taylor = np.asarray(coeffs, dtype=float)

    def g(z):
        return (_horner(taylor, z) - _horner(taylor, 1.0 / z)) ** 2

    L = float(np.max(np.abs(_horner(taylor, np.exp(2j * np.pi * np.arange(1024) / 1024)))))
    return _laurent_data(g, taylor, K, order, L, params, r, n)
