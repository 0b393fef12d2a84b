"""The conformal map family f(.; a, C) and its auxiliary functions.

The map is built from

    h(z) = C (z**2 - 1)/z * sqrt((1 + a/z)(1 + a z)),

whose Laurent coefficients on the unit circle are antisymmetric,
c_{-k} = -c_k.  Keeping the non-negative half gives f(z) = sum_{j>=1} c_j z**j,
which satisfies h(z) = f(z) - f(1/z).

The square root is taken as sqrt(1 + a/z) * sqrt(1 + a z) with principal
branches.  Each factor is analytic on the annulus a < |z| < 1/a and has
positive real part on the unit circle, so the product is exactly the
branch obtained by continuous continuation from the positive value at
z = 1.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError, PathError, ResolutionError

SYMMETRY_TOL = 1e-12
TAIL_TOL = 1e-13
UNIVALENCE_TOL = 1e-6
MAX_SAMPLES = 1 << 17


@dataclass(frozen=True)
class MapParams:
    """Parameters (a, C) of the map family; a = 0 is the disk of radius C."""

    a: float
    C: float = 1.0

    def __post_init__(self):
        a, C = float(self.a), float(self.C)
        if not (np.isfinite(a) and np.isfinite(C)):
            raise ParameterError(f"non-finite map parameters a={a}, C={C}")
        if a < 0.0 or a >= 1.0:
            raise ParameterError(f"a must satisfy 0 <= a < 1, got {a}")
        if C <= 0.0:
            raise ParameterError(f"C must be positive, got {C}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "C", C)


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """Uniform samples of h on |z| = 1 and the Laurent coefficients they give.

    ``coeffs[K + k]`` holds c_k for -K <= k <= K, with K = n // 2 - 1.
    """

    params: MapParams
    n: int
    theta: np.ndarray = field(repr=False)
    hvals: np.ndarray = field(repr=False)
    coeffs: np.ndarray = field(repr=False)
    tail: float = 0.0

    @property
    def K(self):
        return self.n // 2 - 1

    def c(self, k):
        """Coefficient c_k (0 for |k| > K)."""
        k = int(k)
        if abs(k) > self.K:
            return 0.0
        return float(self.coeffs[self.K + k])

    @property
    def taylor(self):
        """Taylor coefficients [0, c_1, ..., c_K] of f."""
        return self.coeffs[self.K:]


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Image of m uniform points of the unit circle under a map.

    ``params`` is the ``MapParams`` for the main family and ``None`` for
    curves built from arbitrary Taylor coefficients (classical shapes).
    """

    params: object
    m: int
    theta: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    dfd: np.ndarray = field(repr=False)
    min_abs_df: float
    simple: bool

    @property
    def max_radius(self):
        return float(np.max(np.abs(self.zeta)))

    @property
    def univalent(self):
        return bool(self.simple and self.min_abs_df > UNIVALENCE_TOL)


def _check_z(z, p):
    z = np.asarray(z, dtype=complex)
    bad = [0.0]
    if p.a > 0.0:
        bad += [-p.a, -1.0 / p.a]
    for b in bad:
        if np.any(np.abs(z - b) < 1e-14):
            raise DomainError(f"z coincides with singular point {b}")
    return z


def _sqrt_factor(z, a):
    return np.sqrt(1.0 + a / z) * np.sqrt(1.0 + a * z)


def eval_h(z, p):
    """Evaluate h at z (scalar or array) on the branch positive at z = 1."""
    z = _check_z(z, p)
    out = p.C * (z * z - 1.0) / z * _sqrt_factor(z, p.a)
    return out[()] if out.ndim == 0 else out


def eval_g(z, p):
    """Rational function g(z) = C^2 (z^2-1)^2 (z+a)(1+az) / z^3, equal to h(z)^2."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("g has a pole at z = 0")
    out = p.C ** 2 * (z * z - 1.0) ** 2 * (z + p.a) * (1.0 + p.a * z) / z ** 3
    return out[()] if out.ndim == 0 else out


def default_grid_size(a, tol=1e-17):
    """Smallest power of two >= 256 whose Nyquist index clears the decay a**k < tol."""
    n = 256
    if a <= 0.0:
        return n
    need = np.log(tol) / np.log(a)
    while n // 2 - 1 < need and n < MAX_SAMPLES:
        n *= 2
    return n


@lru_cache(maxsize=256)
def _laurent_cached(a, C, n):
    return _laurent(MapParams(a, C), n)


def _laurent(p, n):
    theta = 2.0 * np.pi * np.arange(n) / n
    z = np.exp(1j * theta)
    hv = p.C * (z * z - 1.0) / z * _sqrt_factor(z, p.a)
    raw = np.fft.fft(hv) / n
    K = n // 2 - 1
    pos = raw[1:K + 1]
    neg = raw[n - K:][::-1]
    scale = max(float(np.max(np.abs(pos))), 1e-300)
    if abs(raw[0]) > SYMMETRY_TOL * scale or np.max(np.abs(pos + neg)) > SYMMETRY_TOL * scale:
        raise ResolutionError("Laurent coefficients violate c_{-k} = -c_k")
    if np.max(np.abs(pos.imag)) > SYMMETRY_TOL * scale:
        raise ResolutionError("Laurent coefficients are not real")
    tail = float(abs(pos[-1]))
    if tail > TAIL_TOL * max(scale, 1.0):
        raise ResolutionError(
            f"grid n={n} too coarse for a={p.a}: |c_(n/2-1)| = {tail:.3e}")
    ck = 0.5 * (pos.real - neg.real)
    coeffs = np.concatenate([-ck[::-1], [0.0], ck])
    for arr in (theta, hv, coeffs):
        arr.setflags(write=False)
    return CircleGrid(params=p, n=n, theta=theta, hvals=hv, coeffs=coeffs, tail=tail)


def laurent_coeffs(p, n=None):
    """Laurent coefficients of h by FFT of n uniform samples on the unit circle.

    Raises ResolutionError when the last retained coefficient exceeds 1e-13.
    """
    if n is None:
        n = default_grid_size(p.a)
    n = int(n)
    if n < 256 or n & (n - 1):
        raise ParameterError(f"sample count must be a power of two >= 256, got {n}")
    return _laurent_cached(p.a, p.C, n)


def _horner(coeffs, w):
    out = np.zeros_like(w, dtype=complex)
    for c in coeffs[::-1]:
        out = out * w + c
    return out


def eval_f(w, p, grid=None):
    """f(w) by summing the Taylor series; valid for |w| < 1/a."""
    grid = grid or laurent_coeffs(p)
    w = np.asarray(w, dtype=complex)
    if p.a > 0 and np.any(np.abs(w) >= 1.0 / p.a):
        raise DomainError("series for f diverges for |w| >= 1/a")
    out = _horner(grid.taylor, w)
    return out[()] if out.ndim == 0 else out


def eval_fprime(w, p, grid=None):
    """f'(w) from the term-differentiated series."""
    grid = grid or laurent_coeffs(p)
    w = np.asarray(w, dtype=complex)
    if p.a > 0 and np.any(np.abs(w) >= 1.0 / p.a):
        raise DomainError("series for f' diverges for |w| >= 1/a")
    t = grid.taylor
    d = t[1:] * np.arange(1, len(t))
    out = _horner(d, w)
    return out[()] if out.ndim == 0 else out


def contour_radius(p, w_abs):
    """Radius of the circle used by the Cauchy-integral route for a point of modulus w_abs."""
    if w_abs <= 0.9:
        return 1.0
    eps = 0.25 if p.a == 0 else min(0.25 * (1.0 / p.a - 1.0), 0.25)
    return 1.0 + eps


def eval_f_contour(w, p, m=4096):
    """f(w) as the trapezoid-rule Cauchy integral of h over |z| = r.

    r = 1 for |w| <= 0.9, otherwise 1 + eps with eps = min(0.25 (1/a - 1), 0.25),
    which keeps -1/a outside and w inside the contour.
    """
    w = np.asarray(w, dtype=complex)
    wmax = float(np.max(np.abs(w))) if w.size else 0.0
    r = contour_radius(p, wmax)
    if np.any(np.abs(np.abs(w) - r) < 1e-8) or np.any(np.abs(w) > r):
        raise PathError(f"w lies on or outside the contour |z| = {r}")
    theta = 2.0 * np.pi * np.arange(m) / m
    z = r * np.exp(1j * theta)
    hz = p.C * (z * z - 1.0) / z * _sqrt_factor(z, p.a)
    # dz/(2 pi i) = z dtheta/(2 pi)
    kern = (hz * z)[None, :] / (z[None, :] - w.reshape(-1, 1))
    out = kern.mean(axis=1).reshape(w.shape)
    return out[()] if out.ndim == 0 else out


def decomposition_constants(p, n=None):
    """Constants A0, A1 in f(w) = A0 + A1 w + C (w^2 - 1) F(w).

    With s(z) = sqrt((1 + a/z)(1 + a z)) = sum s_k z^k on the unit circle,
    A0 = C s_{-1} and A1 = C s_0.
    """
    if n is None:
        n = default_grid_size(p.a)
    theta = 2.0 * np.pi * np.arange(n) / n
    z = np.exp(1j * theta)
    s = np.fft.fft(_sqrt_factor(z, p.a)) / n
    A0, A1 = p.C * s[-1], p.C * s[0]
    if max(abs(A0.imag), abs(A1.imag)) > 1e-12:
        raise ResolutionError("decomposition constants are not real")
    return float(A0.real), float(A1.real)


def boundary_curve(p, m=4096, grid=None):
    """Sample the boundary f(e^{i theta}) and run the univalence diagnostics."""
    grid = grid or laurent_coeffs(p)
    return curve_from_taylor(grid.taylor, m, params=p)


def curve_from_taylor(coeffs, m=4096, params=None):
    """BoundaryCurve of the map with Taylor coefficients ``coeffs`` (real or complex)."""
    coeffs = np.asarray(coeffs)
    theta = 2.0 * np.pi * np.arange(m) / m
    z = np.exp(1j * theta)
    zeta = _horner(coeffs, z)
    d = coeffs[1:] * np.arange(1, len(coeffs))
    dfd = _horner(d, z) if len(d) else np.zeros(m, dtype=complex)
    # symmetric samples are exact conjugates for real coefficients
    if np.isrealobj(coeffs) or not np.any(np.asarray(coeffs).imag):
        idx = (-np.arange(m)) % m
        zeta = 0.5 * (zeta + np.conj(zeta[idx]))
        dfd = 0.5 * (dfd + np.conj(dfd[idx]))
    return _make_curve(theta, zeta, dfd, params)


def curve_from_map(fun, dfun, m=4096, params=None):
    """BoundaryCurve of a map given as vectorized callables f and f' on |z| = 1."""
    theta = 2.0 * np.pi * np.arange(m) / m
    z = np.exp(1j * theta)
    return _make_curve(theta, np.asarray(fun(z), dtype=complex),
                       np.asarray(dfun(z), dtype=complex), params)


def _make_curve(theta, zeta, dfd, params):
    for arr in (theta, zeta, dfd):
        arr.setflags(write=False)
    simple = kernels.first_crossing(zeta.real, zeta.imag) is None
    return BoundaryCurve(params=params, m=len(theta), theta=theta, zeta=zeta, dfd=dfd,
                         min_abs_df=float(np.min(np.abs(dfd))), simple=simple)


def check_univalent(curve):
    """Return (simple, min |f'|) for a sampled boundary.

    ``simple`` is True iff no two non-adjacent polyline segments meet.
    Univalence is certified when simple and min |f'| > 1e-6.
    """
    if curve.m < 1024:
        raise ParameterError("univalence check needs at least 1024 samples")
    simple = kernels.first_crossing(curve.zeta.real, curve.zeta.imag) is None
    return simple, float(np.min(np.abs(curve.dfd)))
