"""Grid conventions, the linear group, and the dealiased quadratic term."""

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from srlw.spectral import (
    SpectralGrid,
    StatePair,
    alpha,
    hermitian_defect,
    hermitian_project,
    linear_propagate,
    make_grid,
    mode_numbers,
    nonlinear_term,
    pad_coefficients,
    phi_symbol,
    pointwise_linear_energy,
)


def _random_state(grid, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    u = scale * rng.standard_normal(grid.M)
    v = scale * rng.standard_normal(grid.M)
    return StatePair.from_samples(grid, u, v)


def test_symbols_at_reference_points():
    assert alpha(0.0) == 0.0
    assert phi_symbol(0.0) == 0.0
    np.testing.assert_allclose(alpha(1.0), 1.0 / np.sqrt(2.0), rtol=1e-15)
    np.testing.assert_allclose(phi_symbol(1.0), 0.5, rtol=1e-15)
    # alpha = phi * sqrt(1 + xi^2) at any frequency
    xi = np.linspace(-30.0, 30.0, 101)
    np.testing.assert_allclose(alpha(xi), phi_symbol(xi) * np.sqrt(1 + xi * xi), rtol=1e-14)


def test_alpha_is_odd_and_bounded():
    xi = np.linspace(-50.0, 50.0, 201)
    np.testing.assert_allclose(alpha(-xi), -alpha(xi), atol=1e-15)
    assert np.all(np.abs(alpha(xi)) < 1.0)


def test_mode_numbers_fft_order():
    np.testing.assert_array_equal(mode_numbers(8), [0, 1, 2, 3, -4, -3, -2, -1])


def test_grid_attributes():
    grid = make_grid(np.pi, 8)
    np.testing.assert_allclose(grid.xi, grid.n.astype(float), atol=1e-15)
    assert grid.x[0] == -np.pi
    np.testing.assert_allclose(np.diff(grid.x), grid.dx)
    assert grid.nyquist_index == 4
    # phase alternates with the mode number, not the storage index
    np.testing.assert_array_equal(grid.phase[grid.n % 2 == 1], -1.0)
    np.testing.assert_array_equal(grid.phase[grid.n % 2 == 0], 1.0)


@pytest.mark.parametrize(
    "l,M",
    [(0.0, 8), (-1.0, 8), (5.0, 7), (5.0, 2)],
    ids=["zero-l", "negative-l", "odd-M", "tiny-M"],
)
def test_grid_rejects_bad_parameters(l, M):
    with pytest.raises(ValueError):
        SpectralGrid(l, M)


def test_dealias_band_avoids_product_aliasing():
    # the alias image of the largest kept product must miss the kept band
    for M in (96, 128, 256, 384):
        grid = make_grid(1.0, M)
        K = int(np.max(np.abs(grid.n[grid.dealias_keep > 0])))
        assert 3 * K < M


def test_round_trip_samples_coefficients():
    grid = make_grid(13.0, 64)
    rng = np.random.default_rng(3)
    f = rng.standard_normal(64)
    back = grid.samples(grid.coefficients(f))
    np.testing.assert_allclose(back.real, f, atol=1e-12)
    np.testing.assert_allclose(back.imag, 0.0, atol=1e-13)


def test_cosine_mode_coefficients():
    # cos(pi x / l) = (1/2) e^{i pi x / l} + (1/2) e^{-i pi x / l}
    grid = make_grid(7.0, 32)
    c = grid.coefficients(np.cos(np.pi * grid.x / grid.l))
    expected = np.zeros(32, dtype=complex)
    expected[1] = 0.5
    expected[-1] = 0.5
    np.testing.assert_allclose(c, expected, atol=1e-14)


def test_hermitian_project_yields_real_fields():
    grid = make_grid(5.0, 32)
    rng = np.random.default_rng(11)
    c = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    p = hermitian_project(c)
    assert hermitian_defect(p) < 1e-14
    np.testing.assert_allclose(grid.samples(p).imag, 0.0, atol=1e-13)
    # idempotent, and exact on already-symmetric input
    np.testing.assert_allclose(hermitian_project(p), p, atol=1e-15)
    c_real = grid.coefficients(rng.standard_normal(32))
    np.testing.assert_allclose(hermitian_project(c_real), c_real, atol=1e-15)


def test_pad_coefficients_refines_the_same_function():
    grid = make_grid(4.0, 16)
    rng = np.random.default_rng(7)
    c = grid.coefficients(rng.standard_normal(16))
    fine = SpectralGrid(4.0, 48)
    padded = pad_coefficients(c, 48)
    vals = fine.samples(padded)
    # every third fine node coincides with a coarse node
    np.testing.assert_allclose(vals.real[::3], grid.samples(c).real, atol=1e-12)


def test_state_pair_zeroes_nyquist_and_validates():
    grid = make_grid(5.0, 16)
    c = np.ones(16, dtype=complex)
    state = StatePair(grid, c, c)
    assert state.u_hat[grid.nyquist_index] == 0.0
    assert state.v_hat[grid.nyquist_index] == 0.0
    state_bad = _random_state(grid, 0)
    state_bad.u_hat[3] += 1.0  # breaks conjugate symmetry
    with pytest.raises(ValueError):
        state_bad.validate()


def test_state_pair_arithmetic():
    grid = make_grid(5.0, 16)
    a = _random_state(grid, 1)
    b = _random_state(grid, 2)
    s = a + b
    np.testing.assert_allclose(s.u_hat, a.u_hat + b.u_hat)
    d = (a - b) * 2.0
    np.testing.assert_allclose(d.v_hat, 2.0 * (a.v_hat - b.v_hat))
    np.testing.assert_allclose((0.5 * a).u_hat, 0.5 * a.u_hat)
    other = _random_state(make_grid(5.0, 32), 3)
    with pytest.raises(ValueError):
        a + other


def test_linear_propagate_identity_at_zero():
    grid = make_grid(8.0, 32)
    state = _random_state(grid, 4)
    out = linear_propagate(state, 0.0)
    np.testing.assert_allclose(out.u_hat, state.u_hat, atol=1e-15)
    np.testing.assert_allclose(out.v_hat, state.v_hat, atol=1e-15)


def test_linear_propagate_single_mode_closed_form():
    # one mode at xi = 1 starting from (u, v) = (1, 0):
    # u(t) = cos(t/sqrt(2)), v(t) = i sqrt(2) sin(t/sqrt(2))
    grid = make_grid(np.pi, 8)
    u = np.zeros(8, dtype=complex)
    u[1] = 1.0
    u[-1] = 1.0
    state = StatePair(grid, u, np.zeros(8, dtype=complex))
    out = linear_propagate(state, 1.0)
    np.testing.assert_allclose(out.u_hat[1], np.cos(1.0 / np.sqrt(2.0)), rtol=1e-14)
    np.testing.assert_allclose(
        out.v_hat[1], 1j * np.sqrt(2.0) * np.sin(1.0 / np.sqrt(2.0)), rtol=1e-14
    )


@pytest.mark.parametrize("seed", [0, 1, 2], ids=["state-a", "state-b", "state-c"])
def test_linear_group_law_composition_and_inverse(seed):
    grid = make_grid(8.0, 32)
    state = _random_state(grid, seed)
    rng = np.random.default_rng(100 + seed)
    t, s = rng.uniform(-5.0, 5.0, size=2)
    once = linear_propagate(state, t + s)
    twice = linear_propagate(linear_propagate(state, t), s)
    np.testing.assert_allclose(twice.u_hat, once.u_hat, atol=1e-11)
    np.testing.assert_allclose(twice.v_hat, once.v_hat, atol=1e-11)
    back = linear_propagate(linear_propagate(state, t), -t)
    np.testing.assert_allclose(back.u_hat, state.u_hat, atol=1e-11)
    np.testing.assert_allclose(back.v_hat, state.v_hat, atol=1e-11)


def test_linear_propagate_matches_mode_ode():
    # per mode: u' = i phi(xi) v, v' = i xi u; integrate stiffly and compare
    grid = make_grid(6.0, 16)
    state = _random_state(grid, 9)
    t_end = 1.7

    def rhs(_, y):
        u = y[0 : grid.M] + 1j * y[grid.M : 2 * grid.M]
        v = y[2 * grid.M : 3 * grid.M] + 1j * y[3 * grid.M :]
        du = 1j * phi_symbol(grid.xi) * v
        dv = 1j * grid.xi * u
        return np.concatenate([du.real, du.imag, dv.real, dv.imag])

    y0 = np.concatenate(
        [state.u_hat.real, state.u_hat.imag, state.v_hat.real, state.v_hat.imag]
    )
    sol = solve_ivp(rhs, (0.0, t_end), y0, method="DOP853", rtol=1e-12, atol=1e-12)
    u_ode = sol.y[0 : grid.M, -1] + 1j * sol.y[grid.M : 2 * grid.M, -1]
    v_ode = sol.y[2 * grid.M : 3 * grid.M, -1] + 1j * sol.y[3 * grid.M :, -1]
    out = linear_propagate(state, t_end)
    np.testing.assert_allclose(out.u_hat, u_ode, atol=1e-9)
    np.testing.assert_allclose(out.v_hat, v_ode, atol=1e-9)


def test_linear_propagate_conserves_pointwise_energy():
    grid = make_grid(8.0, 32)
    state = _random_state(grid, 5)
    before = pointwise_linear_energy(state)
    after = pointwise_linear_energy(linear_propagate(state, 3.3))
    np.testing.assert_allclose(after, before, rtol=1e-11, atol=1e-13)


def test_linear_propagate_keeps_fields_real():
    grid = make_grid(8.0, 32)
    out = linear_propagate(_random_state(grid, 6), 2.1)
    assert out.hermitian_defect() < 1e-13


def _convolution_oracle(state):
    # g_m = phi(xi_m) * (1/2) sum_n u_n u_{m-n} over the kept band only
    grid = state.grid
    keep = grid.dealias_keep
    u = state.u_hat * keep
    M = grid.M
    g = np.zeros(M, dtype=complex)
    for im, m in enumerate(grid.n):
        if keep[im] == 0.0:
            continue
        acc = 0.0 + 0.0j
        for inn, n in enumerate(grid.n):
            k = m - n
            if abs(k) > M // 2 - 1:
                continue
            acc += u[inn] * u[k % M]
        g[im] = phi_symbol(grid.xi[im]) * 0.5 * acc
    return g


def test_nonlinear_term_matches_direct_convolution():
    grid = make_grid(9.0, 48)
    state = _random_state(grid, 12)
    term = nonlinear_term(state)
    np.testing.assert_allclose(term.u_hat, _convolution_oracle(state), atol=1e-10)
    np.testing.assert_array_equal(term.v_hat, 0.0)


def test_nonlinear_term_zero_on_zero_state():
    grid = make_grid(9.0, 48)
    term = nonlinear_term(StatePair.zero(grid))
    np.testing.assert_array_equal(term.u_hat, 0.0)
    np.testing.assert_array_equal(term.v_hat, 0.0)
