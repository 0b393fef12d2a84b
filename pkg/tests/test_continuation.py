import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadomain.conformal import MapParams, decomposition_constants, eval_f
from quadomain.continuation import (CutGeometry, SheetState, carlson_pi, continue_along,
                                    distance_to_cut, ellipk_agm, eval_F, eval_F_circle, eval_G,
                                    gamma1, gamma2, jump, jump_expected, ladder_tokens,
                                    loop_path, run_loops, sqrt_G_ref, xi_constant, xi_form)
from quadomain.errors import DomainError, ExtrapolationError, ParameterError, PathError


def test_cut_geometry():
    g = CutGeometry(0.3)
    b0, b1, b2 = g.branch_points
    assert b2 < -1 < b1 < b0 == 0
    with pytest.raises(ParameterError):
        CutGeometry(1.2)


def test_G_values():
    a = 0.5
    assert abs(eval_G(1.0, a) - (1 + a) ** 2) < 1e-15
    assert eval_G(-a, a) == 0
    assert eval_G(-2.0, a) == 0
    with pytest.raises(DomainError):
        eval_G(0.0, a)


def test_sheet_state_moves():
    s = SheetState()
    assert s.principal
    s1 = s.cross_outer()
    assert (s1.m, s1.s) == (1, -1)
    assert s1.cross_outer() == SheetState(0, 1)
    assert s1.cross_inner() == SheetState(1, 1)
    with pytest.raises(ParameterError):
        SheetState(0, 2)


def test_F_oracle(oracle):
    pts = [complex(*p) for p in oracle["F_points"]]
    for a in ("0.3", "0.5"):
        ref = [complex(*v) for v in oracle[f"F_a{a}"]]
        for w, r in zip(pts, ref):
            if distance_to_cut(w, float(a)) < 1e-10:
                continue
            assert abs(eval_F(w, float(a)) - r) < 1e-12


def test_F_circle_form(oracle):
    assert abs(eval_F_circle(0.5, 0.3) - oracle["F_circle_05_a03"]) < 1e-12
    assert abs(eval_F_circle(0.5, 0.3) - eval_F(0.5, 0.3)) < 1e-9


def test_F_on_cut_rejected():
    with pytest.raises(PathError):
        eval_F(-5.0, 0.5)


@settings(max_examples=40, deadline=None)
@given(x=st.floats(-4, 4), y=st.floats(0.05, 4), a=st.floats(0.05, 0.9))
def test_schwarz_reflection(x, y, a):
    w = complex(x, y)
    assert abs(eval_F(np.conj(w), a) - np.conj(eval_F(w, a))) < 1e-13 * max(1, abs(eval_F(w, a)))


@pytest.mark.parametrize("a", [0.1, 0.3, 0.5])
def test_decomposition_identity(a):
    p = MapParams(a)
    A0, A1 = decomposition_constants(p)
    x = np.linspace(-0.9, 0.9, 5) / np.sqrt(2)
    w = (x[:, None] + 1j * x[None, :]).ravel()
    lhs = eval_f(w, p)
    rhs = A0 + A1 * w + p.C * (w * w - 1) * eval_F(w, a)
    assert np.max(np.abs(lhs - rhs)) < 1e-8


@pytest.mark.parametrize("a", [0.3, 0.5, 0.8])
def test_jump(a):
    for x in -1 / a - np.array([0.1, 0.5, 1.0, 3.0, 10.0]):
        assert abs(jump(x, a) - jump_expected(x, a)) < 1e-6


def test_jump_reference_value():
    a, x = 0.5, -3.0
    G = (x + a) * (1 + a * x) / x ** 3
    assert G < 0
    expect = -2 * np.sqrt(complex(G))
    assert abs(jump(x, a) - expect) < 1e-6
    assert abs(abs(jump(-10.0, a)) - 2 * np.sqrt(abs(eval_G(-10.0, a)))) < 1e-6


def test_jump_rejects_off_cut():
    with pytest.raises(DomainError):
        jump(-1.0, 0.5)
    with pytest.raises(ParameterError):
        jump(-3.0, 0.5, eps=(1e-2,))


def test_trivial_loop():
    t = np.linspace(0, 2 * np.pi, 200)
    path = 2.0 + 0.5 * np.exp(1j * t)
    state, value = continue_along(path, SheetState(), 0.5)
    assert state == SheetState()
    assert abs(value - eval_F(path[-1], 0.5)) < 1e-14


def test_gamma1_twice_is_identity():
    r = run_loops(["g1", "g1"], 0.5)
    assert r["sheets_visited"][-1] == [0, 1]
    assert abs(r["offset"]) < 1e-12


def test_gamma2_alone_is_trivial_for_F():
    r = run_loops(["g2"], 0.5)
    assert abs(r["offset"]) < 1e-12
    assert r["sheets_visited"][-1] == [0, -1]


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_ladder(k):
    for a in (0.3, 0.5):
        r = run_loops(ladder_tokens(k), a)
        assert abs(r["offset"] - 2 * (k + 1) * r["sqrt_G"]) < 1e-6
        assert r["final_offset_multiple_of_sqrtG"] == 2 * (k + 1)


def test_continued_branch_is_continuous():
    # the step between consecutive traced values shrinks in proportion to the path step
    a = 0.5
    path = loop_path(ladder_tokens(2), a)
    jumps = []
    for r in (1, 3, 9):
        t = np.arange(len(path))
        tt = np.linspace(0, len(path) - 1, (len(path) - 1) * r + 1)
        p = np.interp(tt, t, path.real) + 1j * np.interp(tt, t, path.imag)
        _, _, vals = continue_along(p, SheetState(), a, trace=True)
        jumps.append(np.abs(np.diff(vals)).max())
    assert jumps[1] < 0.45 * jumps[0] and jumps[2] < 0.45 * jumps[1]


def test_path_errors():
    a = 0.5
    with pytest.raises(PathError):
        continue_along([1j, -2 + 1j, -2 + 1e-7j], SheetState(), a)
    with pytest.raises(PathError):
        loop_path(["g3"], a)
    with pytest.raises(PathError):
        continue_along([1j, -3.0], SheetState(), a)


def test_loops_avoid_branch_points():
    a = 0.5
    for g in (gamma1(a), gamma2(a)):
        for b in (0, -a, -1 / a):
            assert np.min(np.abs(g - b)) > 1e-3
        assert np.min(np.abs(g.imag)) > 0


def test_sqrt_G_ref_squares_to_G():
    w = np.array([0.5j, 1 + 1j, -3 + 0.2j, 0.1 - 0.1j])
    assert np.max(np.abs(sqrt_G_ref(w, 0.3) ** 2 - eval_G(w, 0.3))) < 1e-13


def test_carlson_pi_closed_forms(oracle, backend):
    assert abs(carlson_pi(0.0, 0.0) - np.pi / 2) < 1e-15
    for m in (0.0, 0.1, 0.5, 0.9, 0.99):
        assert abs(carlson_pi(0.0, m) - ellipk_agm(m)) < 1e-12 * ellipk_agm(m)
    for n in (-5.0, -0.5, 0.3, 0.9):
        assert abs(carlson_pi(n, 0.0) - np.pi / (2 * np.sqrt(1 - n))) < 1e-12 * carlson_pi(n, 0.0)
    for n, m, v in oracle["ellippi"]:
        assert abs(carlson_pi(n, m) - v) < 1e-12 * abs(v)
    for m, v in oracle["ellipk"]:
        assert abs(ellipk_agm(m) - v) < 1e-13 * v


def test_carlson_pi_domain():
    with pytest.raises(DomainError):
        carlson_pi(1.0, 0.5)
    with pytest.raises(DomainError):
        carlson_pi(0.2, 1.0)


@pytest.mark.parametrize("a", [0.3, 0.5])
def test_xi_form_matches_segment(oracle, a, backend):
    pts = [complex(*p) for p in oracle["F_points"]]
    for w in pts:
        if distance_to_cut(w, a) < 1e-10:
            continue
        assert abs(xi_form(w, a) - eval_F(w, a)) < 1e-8


def test_xi_constant_is_F_at_zero():
    for a in (0.1, 0.3, 0.7):
        assert abs(xi_constant(a) - eval_F(0.0, a)) < 1e-13


def test_xi_differences_are_constant_free():
    a = 0.3
    d1 = xi_form(0.5, a) - xi_form(-20 + 1j, a)
    d2 = eval_F(0.5, a) - eval_F(-20 + 1j, a)
    assert abs(d1 - d2) < 1e-9
    for w in (-3.0, -1.5, -0.2):
        assert abs(xi_form(w, a) - eval_F(w, a)) < 1e-8


def test_xi_form_singular():
    with pytest.raises(DomainError):
        xi_form(0.0, 0.3)
    with pytest.raises(DomainError):
        xi_form(-1 / 0.1, 0.3)


def test_extrapolation_error_on_nonconvergence():
    # increasing eps makes successive differences grow
    with pytest.raises(ExtrapolationError):
        jump(-3.0, 0.5, eps=(1e-4, 1e-3, 1e-2))
