import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadomain.classical import ClassicalShape, karp_quadrature_4d
from quadomain.conformal import MapParams, boundary_curve, curve_from_taylor
from quadomain.errors import ParameterError, ResolutionWarning
from quadomain.moments import (HarmonicTestFamily, complex_moment, extract_quadrature_direct,
                               extract_quadrature_laurent, extract_quadrature_laurent_taylor,
                               harmonic_moments_4d, laurent_principal_part)

DISK = boundary_curve(MapParams(0.0), 1024)
SIGMA = 0.25
LIMACON = curve_from_taylor(np.array([0.0, 1.0, SIGMA]), 4096)


def test_harmonic_family_low_orders():
    U = HarmonicTestFamily()
    x, y = 0.3, 0.7
    assert abs(U(1, x, y) - 1) < 1e-15
    assert abs(U(2, x, y) - 2 * x) < 1e-15
    assert abs(U(3, x, y) - (3 * x * x - y * y)) < 1e-15
    assert abs(U(4, 0.5, 0.0) - 4 * 0.125) < 1e-15


@pytest.mark.parametrize("k", range(1, 9))
def test_harmonic_family_is_harmonic_in_R4(k):
    U = HarmonicTestFamily()
    rng = np.random.default_rng(k)
    X = rng.uniform(-0.8, 0.8, (10, 4))
    X[:, 1] += 0.3  # keep away from the axis where the finite-difference stencil is rough
    assert np.max(np.abs(U.laplacian4(k, X))) < 1e-6 * max(1, k ** 3)


def test_disk_moments():
    assert abs(complex_moment(DISK, 0, 0) - np.pi) < 1e-13
    assert abs(complex_moment(DISK, 1, 0)) < 1e-13
    assert abs(complex_moment(DISK, 1, 1) - np.pi / 2) < 1e-13


def test_limacon_area():
    assert abs(complex_moment(LIMACON, 0, 0) - np.pi * (1 + 2 * SIGMA ** 2)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(k=st.integers(0, 6), m=st.integers(0, 6))
def test_conjugation_symmetry(k, m):
    a = complex_moment(LIMACON, k, m)
    b = complex_moment(LIMACON, m, k)
    assert abs(a - np.conj(b)) < 1e-12 * max(1, abs(a))


def test_resolution_warning():
    coarse = boundary_curve(MapParams(0.8), 64)
    with pytest.warns(ResolutionWarning):
        complex_moment(coarse, 4, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        complex_moment(boundary_curve(MapParams(0.3), 2048), 4, 4)


def test_negative_order_rejected():
    with pytest.raises(ParameterError):
        complex_moment(DISK, -1, 0)


def test_ball_moments():
    M = harmonic_moments_4d(DISK, 8)
    assert abs(M[0] - np.pi ** 2 / 2) < 1e-13
    assert np.max(np.abs(M[1:])) < 1e-13


def test_rotated_limacon_moments():
    a0, a1, a2 = karp_quadrature_4d(SIGMA)
    M = harmonic_moments_4d(LIMACON, 8)
    assert abs(M[0] - a0) < 1e-8 * a0
    assert abs(M[1] - 2 * a1) < 1e-8 * a1
    assert abs(M[2] - 6 * a2) < 1e-8 * a2
    assert np.max(np.abs(M[3:])) < 1e-8 * a0


@pytest.mark.parametrize("a", [0.1, 0.3, 0.5])
def test_profile_family_moments_vanish(a):
    c = boundary_curve(MapParams(a), 4096)
    M = harmonic_moments_4d(c, 8)
    L = c.max_radius
    for k in range(3, 9):
        assert abs(M[k - 1]) < 1e-6 * M[0] * L ** (k - 1)


def test_direct_ball():
    q = extract_quadrature_direct(DISK)
    assert abs(q.a0 - np.pi ** 2 / 2) < 1e-8 * np.pi ** 2 / 2
    assert abs(q.a1) < 1e-12
    assert q.quadrature


def test_direct_profile_family(oracle):
    q = extract_quadrature_direct(boundary_curve(MapParams(0.3), 4096))
    a0, a1 = oracle["a0_a1_a0.3"]
    assert q.a0 > 0 and q.a1 > 0 and q.a1 < q.a0
    assert abs(q.a0 - a0) < 1e-12 * a0 and abs(q.a1 - a1) < 1e-12 * a1
    assert q.max_residual < 1e-6 and q.residual_orders == (3, 4, 5, 6, 7, 8)


def test_direct_limacon_flags_second_order():
    q = extract_quadrature_direct(LIMACON)
    a0, a1, a2 = karp_quadrature_4d(SIGMA)
    # with order 1 the a2 term remains as the first residual
    assert abs(q.residuals[0] - 6 * a2 / (q.a0 * q.scale ** 2)) < 1e-10
    assert not q.quadrature
    q2 = extract_quadrature_direct(LIMACON, order=2)
    assert abs(q2.a2 - a2) < 1e-10 and q2.quadrature


def test_direct_rejects_nonsimple():
    # f = z + z^10/2 has f' = 0 on the circle and small loops there
    c = curve_from_taylor(np.array([0, 1.0, 0, 0, 0, 0, 0, 0, 0, 0, 0.5]), 1024)
    assert not c.simple
    with pytest.raises(ParameterError):
        extract_quadrature_direct(c)


def test_laurent_ball():
    q = extract_quadrature_laurent(MapParams(0.0))
    assert abs(q.a0 - np.pi ** 2 / 2) < 1e-8 * np.pi ** 2 / 2
    assert abs(q.a1) < 1e-12


def test_laurent_limacon():
    q = extract_quadrature_laurent_taylor([0.0, 1.0, SIGMA], order=2)
    a0, a1, a2 = karp_quadrature_4d(SIGMA)
    assert abs(q.a0 - a0) < 1e-8 * a0 and abs(q.a1 - a1) < 1e-8 * a1 and abs(q.a2 - a2) < 1e-8 * a2


@pytest.mark.parametrize("a", [0.1, 0.3, 0.5])
def test_dual_path(a, oracle):
    p = MapParams(a)
    d = extract_quadrature_direct(boundary_curve(p, 4096))
    lq = extract_quadrature_laurent(p)
    assert abs(d.a0 - lq.a0) < 1e-6 * d.a0
    assert abs(d.a1 - lq.a1) < 1e-6 * d.a1
    ref = oracle[f"a0_a1_a{a}"]
    assert abs(lq.a0 - ref[0]) < 1e-12 * ref[0] and abs(lq.a1 - ref[1]) < 1e-12 * ref[1]


@pytest.mark.parametrize("r", [0.1, 0.3, 0.7])
def test_laurent_radius_independent(r):
    q = extract_quadrature_laurent(MapParams(0.3), r=r)
    q0 = extract_quadrature_laurent(MapParams(0.3))
    assert abs(q.a0 - q0.a0) < 1e-10 * q0.a0 and abs(q.a1 - q0.a1) < 1e-10 * q0.a1


def test_principal_part_sign_convention():
    # V = (i/4)(zeta - 1/zeta)^2 for the unit disk: c_{-2} = i/4
    c = laurent_principal_part(lambda z: (z - 1 / z) ** 2, lambda z: z, lambda z: np.ones_like(z), 3)
    assert abs(c[1] - 0.25j) < 1e-15 and abs(c[0]) < 1e-15 and abs(c[2]) < 1e-15


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_scaling_law(lam):
    q1 = extract_quadrature_direct(boundary_curve(MapParams(0.3, 1.0)))
    ql = extract_quadrature_direct(boundary_curve(MapParams(0.3, lam)))
    assert abs(ql.a0 - lam ** 4 * q1.a0) < 1e-12 * ql.a0
    assert abs(ql.a1 - lam ** 5 * q1.a1) < 1e-12 * ql.a1


def test_to_dict():
    d = extract_quadrature_direct(boundary_curve(MapParams(0.3))).to_dict()
    assert set(d) >= {"a0", "a1", "residuals", "params"}
    assert d["params"] == {"a": 0.3, "C": 1.0}
    d2 = extract_quadrature_direct(LIMACON, order=2).to_dict()
    assert "a2" in d2


def test_oval_is_not_a_one_point_domain():
    c = ClassicalShape("neumann", (1.0,)).boundary(4096)
    q = extract_quadrature_direct(c)
    assert not q.quadrature
