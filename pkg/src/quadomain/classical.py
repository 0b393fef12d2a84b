"""Closed-form reference shapes used as oracles.

Neumann's oval, the limacon w + sigma w^2 and its rotation into R^4, the
cardioid family a z^2 + b z of planar Laplacian growth, and balls.
"""
from dataclasses import dataclass

import numpy as np

from .conformal import curve_from_map, curve_from_taylor
from .errors import DomainError, ParameterError

POLE_TOL = 1e-12


def _oval_R(a):
    return 0.5 * (a + np.sqrt(a * a + 4.0))


def oval_quartic(x, y, a):
    """(x^2 + y^2)^2 - a^2 (x^2 + y^2) - 4 x^2, zero on the oval."""
    r2 = x * x + y * y
    return r2 * r2 - a * a * r2 - 4.0 * x * x


def neumann_map(z, a):
    """f_R(z) = (R^4 - 1) z / (R (R^2 - z^2)), mapping the disk onto the oval."""
    R = _oval_R(a)
    z = np.asarray(z, dtype=complex)
    return (R ** 4 - 1.0) * z / (R * (R * R - z * z))


def neumann_map_prime(z, a):
    R = _oval_R(a)
    z = np.asarray(z, dtype=complex)
    return (R ** 4 - 1.0) * (R * R + z * z) / (R * (R * R - z * z) ** 2)


def oval_schwarz(zeta, a, quartic_coeff=0.25):
    """Schwarz function of Neumann's oval.

    Solving (zeta zbar)^2 = a^2 zeta zbar + (zeta + zbar)^2 for zbar gives

        S(zeta) = [zeta (a^2 + 2) + 2 zeta sqrt(a^4/4 + a^2 + zeta^2)] / (2 (zeta^2 - 1)).

    The principal root is positive at zeta = 0; its cut lies on the
    imaginary axis beyond |Im zeta| = sqrt(a^4/4 + a^2) > a, outside the
    oval.  ``quartic_coeff=1`` gives the variant with sqrt(a^4 + a^2 + zeta^2),
    which does not reproduce conj(zeta) on the boundary.
    """
    if a <= 0:
        raise ParameterError("oval parameter must be positive")
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(zeta * zeta - 1.0) < POLE_TOL):
        raise DomainError("S has poles at zeta = +-1")
    root = np.sqrt(quartic_coeff * a ** 4 + a * a + zeta * zeta)
    out = (zeta * (a * a + 2.0) + 2.0 * zeta * root) / (2.0 * (zeta * zeta - 1.0))
    return out[()] if out.ndim == 0 else out


def oval_weights_exact(a):
    """pi Res(S, +-1) = pi (a^2 + 2)/2 at each pole."""
    w = np.pi * (a * a + 2.0) / 2.0
    return w, w


def oval_residue_weights(a, radius=0.1, n=256):
    """Weights pi * Res(S, +-1) of the two-point formula int_D u dA = w+ u(1) + w- u(-1).

    Residues are small-circle trapezoid integrals of S.
    """
    out = []
    for c in (1.0, -1.0):
        z = c + radius * np.exp(2j * np.pi * np.arange(n) / n)
        res = np.mean(oval_schwarz(z, a) * (z - c))
        out.append(float((np.pi * res).real))
    return tuple(out)


def limacon_quadrature_2d(sigma):
    """(q0, q1) with int_D u dA = q0 u(0) + q1 u'(0) for D the image of w + sigma w^2."""
    _check_sigma(sigma)
    return np.pi * (1.0 + 2.0 * sigma ** 2), np.pi * sigma


def karp_quadrature_4d(sigma):
    """Coefficients (a0, a1, a2) of the rotated limacon in R^4."""
    _check_sigma(sigma)
    s2 = sigma * sigma
    return (np.pi ** 2 * (1.0 + 6.0 * s2 + 2.0 * s2 * s2) / 2.0,
            np.pi ** 2 * sigma * (1.0 + 2.0 * s2) / 2.0,
            np.pi ** 2 * s2 / 12.0)


def _check_sigma(sigma):
    if not 0.0 <= sigma < 0.5:
        raise ParameterError(f"limacon needs 0 <= sigma < 1/2, got {sigma}")


def sphere_schwarz_potential(x_norm, r, n):
    """Schwarz potential of the sphere |x| = r in R^n as a function of |x|.

    n = 2: r^2 (log|x| + 1/2 - log r); n >= 3: n r^2/(2(n-2)) - r^n/((n-2)|x|^(n-2)).
    """
    x_norm = np.asarray(x_norm, dtype=float)
    if r <= 0 or n < 2 or int(n) != n:
        raise ParameterError("need r > 0 and integer n >= 2")
    if np.any(x_norm <= 0):
        raise DomainError("Schwarz potential of a sphere is singular at the centre")
    if n == 2:
        out = r * r * (np.log(x_norm) + 0.5 - np.log(r))
    else:
        out = n * r * r / (2.0 * (n - 2)) - r ** n / ((n - 2) * x_norm ** (n - 2))
    return out[()] if out.ndim == 0 else out


def pk_cardioid_map(z, a, b):
    """zeta = a z^2 + b z."""
    z = np.asarray(z, dtype=complex)
    out = a * z * z + b * z
    return out[()] if out.ndim == 0 else out


def pk_schwarz(zeta, a, b, root=None):
    """Schwarz function of the image of a z^2 + b z (a, b real).

    S(zeta) = -2ab/(b - q) + 4a^3/(b - q)^2 with q = sqrt(b^2 + 4 a zeta).
    On the boundary q = b + 2 a z, which the principal root gives when
    b > 2a; ``root`` may supply a continued branch instead.
    """
    zeta = np.asarray(zeta, dtype=complex)
    q = np.sqrt(b * b + 4.0 * a * zeta) if root is None else root
    d = b - q
    out = -2.0 * a * b / d + 4.0 * a ** 3 / d ** 2
    return out[()] if out.ndim == 0 else out


def pk_schwarz_as_printed(zeta, a, b):
    """The same expression with the roles of a and b exchanged.

    This is the form -2ab/(a - sqrt(a^2 + 4 b zeta)) + 4b^3/(a - sqrt(...))^2;
    it is the Schwarz function of b z^2 + a z, not of a z^2 + b z.
    """
    return pk_schwarz(zeta, b, a)


def continued_root(values, start_sign=1.0):
    """Square roots of a sampled closed path of values, continued sign-continuously."""
    v = np.asarray(values, dtype=complex)
    q = np.sqrt(v)
    if q[0].real * start_sign < 0:
        q[0] = -q[0]
    for j in range(1, len(q)):
        if abs(q[j] - q[j - 1]) > abs(q[j] + q[j - 1]):
            q[j] = -q[j]
    return q


def pk_boundary_error(a, b, m=1024, printed=False):
    """max |S(f(e^{it})) - conj f(e^{it})| with the root continued from z = 1."""
    z = np.exp(2j * np.pi * np.arange(m) / m)
    zeta = pk_cardioid_map(z, a, b)
    if printed:
        A, B = b, a
    else:
        A, B = a, b
    q = continued_root(B * B + 4.0 * A * zeta)
    S = pk_schwarz(zeta, A, B, root=q)
    return float(np.max(np.abs(S - np.conj(zeta))))


@dataclass(frozen=True)
class ClassicalShape:
    """A reference shape: kind in {"neumann", "limacon", "cardioid", "ball"}.

    Parameters: neumann (a,), limacon (sigma,), cardioid (a, b), ball (r, n).
    """

    kind: str
    params: tuple

    def __post_init__(self):
        k, p = self.kind, tuple(float(x) for x in self.params)
        if k == "neumann":
            if len(p) != 1 or p[0] <= 0:
                raise ParameterError("Neumann oval needs a > 0")
        elif k == "limacon":
            if len(p) != 1:
                raise ParameterError("limacon needs sigma")
            _check_sigma(abs(p[0]))
        elif k == "cardioid":
            if len(p) != 2 or p[0] <= 0 or p[1] <= 2 * p[0]:
                raise ParameterError("cardioid needs b > 2a > 0")
        elif k == "ball":
            if len(p) != 2 or p[0] <= 0 or p[1] < 2 or p[1] != int(p[1]):
                raise ParameterError("ball needs r > 0 and integer n >= 2")
        else:
            raise ParameterError(f"unknown shape kind {k!r}")
        object.__setattr__(self, "params", p)

    def boundary(self, m=4096):
        """Planar profile (generating domain for rotated shapes) as a BoundaryCurve."""
        k, p = self.kind, self.params
        if k == "neumann":
            a = p[0]
            return curve_from_map(lambda z: neumann_map(z, a),
                                  lambda z: neumann_map_prime(z, a), m, params=self)
        if k == "limacon":
            return curve_from_taylor(np.array([0.0, 1.0, p[0]]), m, params=self)
        if k == "cardioid":
            return curve_from_taylor(np.array([0.0, p[1], p[0]]), m, params=self)
        return curve_from_taylor(np.array([0.0, p[0]]), m, params=self)

    def quadrature(self):
        """Known quadrature data as a dict of node -> weights."""
        k, p = self.kind, self.params
        if k == "neumann":
            wp, wm = oval_residue_weights(p[0])
            return {"nodes": [1.0, -1.0], "weights": [wp, wm]}
        if k == "limacon":
            q0, q1 = limacon_quadrature_2d(abs(p[0]))
            a0, a1, a2 = karp_quadrature_4d(abs(p[0]))
            sgn = np.sign(p[0]) or 1.0
            return {"2d": [q0, sgn * q1], "4d": [a0, sgn * a1, a2]}
        if k == "cardioid":
            a, b = p
            return {"area": np.pi * (b * b + 2 * a * a), "first_moment": np.pi * a * b * b}
        r, n = p
        n = int(n)
        from math import gamma
        vol = np.pi ** (n / 2) * r ** n / gamma(n / 2 + 1)
        return {"volume": vol}
