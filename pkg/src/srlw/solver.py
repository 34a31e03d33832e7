"""Nonlinear time evolution on the periodic grid.

The Duhamel form u(t) = S(t)u0 - i int_0^t S(t-tau) G[u(tau)] dtau suggests
the change of variables w(tau) = S(-tau)u(tau), which satisfies the
non-stiff ODE w' = S(-tau) N(S(tau) w) with N = -iG.  One step advances w
by classical RK4 with exact evaluations of S, then maps back; the linear
part is therefore integrated exactly and only the quadratic term carries
time-discretization error.

Also here: the four conserved functionals, a remainder check for the
quadratic truncation of the solution's expansion in the data amplitude,
and a residual validator for the equivalent kernel-convolution integral
equations.
"""

import math

import numpy as np
from scipy import integrate

from .report import ExperimentReport
from .spectral import (
    SpectralGrid,
    StatePair,
    hermitian_project,
    linear_propagate,
    nonlinear_term,
    pad_coefficients,
)

__all__ = [
    "EvolutionConfig",
    "InvariantSnapshot",
    "EvolutionResult",
    "BlowupError",
    "step",
    "evolve",
    "invariants",
    "second_iterate_grid",
    "picard_expansion_check",
    "duhamel_residual",
    "truncated_kernel_transform",
]


class BlowupError(RuntimeError):
    """Non-finite coefficients appeared during stepping."""

    def __init__(self, t):
        super().__init__(f"non-finite coefficients at t = {t}")
        self.t = t


class EvolutionConfig:
    """Time-stepping parameters: step size, horizon, snapshot cadence."""

    def __init__(self, dt=0.01, t_final=1.0, snapshot_stride=10):
        dt = float(dt)
        t_final = float(t_final)
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        if t_final < 0.0:
            raise ValueError("t_final must be nonnegative")
        n = round(t_final / dt) if t_final > 0 else 0
        if abs(n * dt - t_final) > 1e-9 * max(1.0, t_final):
            raise ValueError("t_final must be an integer multiple of dt")
        self.dt = dt
        self.t_final = t_final
        self.n_steps = int(n)
        self.snapshot_stride = int(snapshot_stride)
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be at least 1")


class InvariantSnapshot:
    """The four conserved functionals at one time."""

    __slots__ = ("t", "E", "V", "I1", "I2")

    def __init__(self, t, E, V, I1, I2):
        self.t = float(t)
        self.E = float(E)
        self.V = float(V)
        self.I1 = float(I1)
        self.I2 = float(I2)

    def as_row(self):
        return (self.t, self.E, self.V, self.I1, self.I2)


class EvolutionResult:
    """Snapshots of a run: times, states, and invariant series."""

    def __init__(self, grid, times, states, invariant_series, config):
        self.grid = grid
        self.times = np.asarray(times, dtype=float)
        self.states = list(states)
        self.invariant_series = list(invariant_series)
        self.config = config

    @property
    def final_state(self):
        return self.states[-1]

    def state_at(self, t):
        k = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[k] - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"no snapshot at t = {t}")
        return self.states[k]

    def invariant_report(self, config_info=None):
        rows = [snap.as_row() for snap in self.invariant_series]
        e0, v0 = self.invariant_series[0].E, self.invariant_series[0].V
        drift_v = max(abs(s.V - v0) for s in self.invariant_series)
        drift_e = max(abs(s.E - e0) for s in self.invariant_series)
        rel_v = drift_v / max(abs(v0), np.finfo(float).tiny)
        rel_e = drift_e / max(abs(e0), 1.0)
        summary = f"invariant drift: |dV|/V = {rel_v:.3e}, |dE|/max(|E|,1) = {rel_e:.3e}"
        return ExperimentReport(
            columns=["t", "E", "V", "I1", "I2"],
            rows=rows,
            config=config_info or {},
            flags={"rel_drift_V": rel_v, "rel_drift_E": rel_e},
            summary=summary,
        )

    def state_dump_rows(self):
        state = self.final_state
        n = state.grid.n
        return [
            (int(n[k]), state.u_hat[k].real, state.u_hat[k].imag, state.v_hat[k].real, state.v_hat[k].imag)
            for k in range(state.grid.M)
        ]


class _Stepper:
    """One integrating-factor RK4 step with precomputed half/full rotations."""

    def __init__(self, grid, dt):
        self.grid = grid
        self.dt = float(dt)
        xi = grid.xi
        root = np.sqrt(1.0 + xi * xi)
        a = xi / root
        self._half = self._rotation(a, 0.5 * self.dt, root)
        self._half_back = self._rotation(a, -0.5 * self.dt, root)
        self._full = self._rotation(a, self.dt, root)
        self._full_back = self._rotation(a, -self.dt, root)

    @staticmethod
    def _rotation(alpha_xi, t, root):
        c = np.cos(alpha_xi * t)
        s = np.sin(alpha_xi * t)
        return c, 1j * s / root, 1j * s * root

    @staticmethod
    def _apply(rot, u, v):
        c, up, vp = rot
        return c * u + up * v, vp * u + c * v

    def _vector_field(self, rot_fwd, rot_back, u, v):
        # S(-tau) N(S(tau) w) with N = -iG; G's second component is zero
        uu, vv = self._apply(rot_fwd, u, v)
        g = nonlinear_term(StatePair(self.grid, uu, vv))
        gu = -1j * g.u_hat
        c, up, vp = rot_back
        return c * gu, vp * gu

    def step(self, state):
        h = self.dt
        u, v = state.u_hat, state.v_hat
        ident = (np.ones(self.grid.M), np.zeros(self.grid.M), np.zeros(self.grid.M))
        k1u, k1v = self._vector_field(ident, ident, u, v)
        k2u, k2v = self._vector_field(self._half, self._half_back, u + 0.5 * h * k1u, v + 0.5 * h * k1v)
        k3u, k3v = self._vector_field(self._half, self._half_back, u + 0.5 * h * k2u, v + 0.5 * h * k2v)
        k4u, k4v = self._vector_field(self._full, self._full_back, u + h * k3u, v + h * k3v)
        wu = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        wv = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        un, vn = self._apply(self._full, wu, wv)
        return StatePair(self.grid, hermitian_project(un), hermitian_project(vn))


def step(state, dt):
    """Advance one time step of size dt; raises BlowupError on non-finite output."""
    out = _Stepper(state.grid, dt).step(state)
    if not (np.all(np.isfinite(out.u_hat)) and np.all(np.isfinite(out.v_hat))):
        raise BlowupError(dt)
    return out


def evolve(state, config):
    """Run the stepper over config.t_final, recording snapshots.

    Snapshots are taken at t = 0, every snapshot_stride steps, and at the
    final time.  Raises BlowupError with the failing time.
    """
    stepper = _Stepper(state.grid, config.dt)
    times = [0.0]
    states = [state.copy()]
    snaps = [invariants(state)]
    current = state
    for k in range(1, config.n_steps + 1):
        current = stepper.step(current)
        if not (np.all(np.isfinite(current.u_hat)) and np.all(np.isfinite(current.v_hat))):
            raise BlowupError(k * config.dt)
        if k % config.snapshot_stride == 0 or k == config.n_steps:
            t = k * config.dt
            times.append(t)
            states.append(current)
            snaps.append(invariants(current, t=t))
    return EvolutionResult(state.grid, times, states, snaps, config)


def invariants(state, t=0.0):
    """The four conserved functionals from the coefficients.

    V and the bilinear part of E are Parseval sums; the cubic term of E is
    the zero mode of u^3 on a doubled grid, which is alias-free because
    3(M/2 - 1) < 2M.
    """
    grid = state.grid
    l = grid.l
    xi = grid.xi
    u, v = state.u_hat, state.v_hat
    V = l * float(np.sum((1.0 + xi * xi) * np.abs(u) ** 2 + np.abs(v) ** 2))
    I1 = 2.0 * l * float(u[0].real)
    I2 = 2.0 * l * float(v[0].real)
    uv = 2.0 * l * float(np.sum(u * np.conj(v)).real)
    grid2 = SpectralGrid(l, 2 * grid.M)
    u_fine = grid2.samples(pad_coefficients(u, 2 * grid.M)).real
    cube_mean = float(np.mean(u_fine**3))
    E = uv - (2.0 * l * cube_mean) / 6.0
    return InvariantSnapshot(t, E, V, I1, I2)


def second_iterate_grid(state, t, n_quad=200):
    """Quadratic Taylor coefficient of the flow in the data amplitude.

    Simpson quadrature of -i int_0^t S(t - tau) G[S(tau) u0] dtau on the
    grid.  The -i prefactor comes from the Duhamel form and makes the
    result the transform of a real field pair; it is what the amplitude
    expansion u(eps u0, t) = eps S(t)u0 + eps^2 (this) + O(eps^3) requires,
    as the remainder-ratio check verifies against the solver.
    """
    if n_quad % 2 != 0:
        n_quad += 1
    taus = np.linspace(0.0, t, n_quad + 1)
    h = t / n_quad if n_quad else 0.0
    acc_u = np.zeros(state.grid.M, dtype=complex)
    acc_v = np.zeros(state.grid.M, dtype=complex)
    weights = np.ones(n_quad + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= h / 3.0
    for tau, w in zip(taus, weights):
        term = linear_propagate(nonlinear_term(linear_propagate(state, tau)), t - tau)
        acc_u += w * term.u_hat
        acc_v += w * term.v_hat
    return StatePair(state.grid, -1j * acc_u, -1j * acc_v)


def _x0_norm(state):
    from .norms import xs_norm

    return xs_norm(state, 0.0)


def picard_expansion_check(state, eps_list, t, dt=0.002, n_quad=200, floor_factor=10.0):
    """Remainder of the quadratic amplitude expansion, with decay ratios.

    For each eps: R(eps) = || evolve(eps u0, t) - eps S(t)u0 - eps^2 I2 ||_X0
    with I2 from second_iterate_grid.  Cubic remainder means R(eps)/R(eps/2)
    of about 8.  Rows where R sits within floor_factor of the solver's own
    dt-limited error floor (estimated by a dt/2 re-run) are flagged.
    """
    eps_list = [float(e) for e in eps_list]
    if any(e <= 0 for e in eps_list) or any(
        b >= a for a, b in zip(eps_list, eps_list[1:])
    ):
        raise ValueError("eps_list must be positive and decreasing")
    iterate = second_iterate_grid(state, t, n_quad=n_quad)
    linear = linear_propagate(state, t)
    rows = []
    warnings = []
    remainders = []
    for eps in eps_list:
        scaled = eps * state
        cfg = EvolutionConfig(dt=dt, t_final=t, snapshot_stride=max(1, round(t / dt)))
        final = evolve(scaled, cfg).final_state
        cfg_half = EvolutionConfig(dt=dt / 2.0, t_final=t, snapshot_stride=max(1, round(2 * t / dt)))
        final_half = evolve(scaled, cfg_half).final_state
        floor = _x0_norm(final - final_half)
        remainder = _x0_norm(final - eps * linear - (eps * eps) * iterate)
        flagged = remainder < floor_factor * floor
        if flagged:
            warnings.append(
                f"eps={eps:g}: remainder {remainder:.3e} within {floor_factor:g}x of solver floor {floor:.3e}"
            )
        remainders.append(remainder)
        rows.append((eps, remainder, floor, math.nan, "floor" if flagged else "ok"))
    for i in range(1, len(rows)):
        prev, cur = remainders[i - 1], remainders[i]
        ratio = prev / cur if cur > 0 else math.inf
        rows[i] = rows[i][:3] + (ratio,) + rows[i][4:]
    ratios = [r[3] for r in rows[1:]]
    summary = "remainder ratios: " + ", ".join(f"{r:.4g}" for r in ratios)
    return ExperimentReport(
        columns=["eps", "remainder_X0", "solver_floor_X0", "ratio_prev", "status"],
        rows=rows,
        config={"t": t, "dt": dt, "n_quad": n_quad, "eps_list": ",".join(f"{e:g}" for e in eps_list)},
        flags={"ratios": ratios},
        summary=summary,
        warnings=warnings,
    )


def truncated_kernel_transform(omega, radius=40.0):
    """Transform of the kernel -sgn(x) e^{-|x|} / 2 truncated to |x| <= radius.

    Equals i [omega - e^{-radius}(omega cos(omega radius) + sin(omega radius))]
    / (1 + omega^2); the radius-infinity limit is i*phi(omega), which ties the
    convolution formulation to the multiplier form independently.
    """
    omega = np.asarray(omega, dtype=float)
    damp = math.exp(-radius)
    num = omega - damp * (omega * np.cos(omega * radius) + np.sin(omega * radius))
    return 1j * num / (1.0 + omega * omega)


def duhamel_residual(result, t, probe_points=None, kernel_radius=40.0):
    """Consistency residual of the kernel-convolution integral equations.

    The evolved pair must satisfy
        u(t) = u(0) + int_0^t K * (v - u^2/2) ds,
        v(t) = v(0) + int_0^t u_x ds,
    with K the exponential kernel above, wrapped periodically (coefficient
    multiplication by its truncated transform).  Returns the max absolute
    residual of both equations over the probe points, using Simpson in time
    over the stored snapshots up to t.
    """
    grid = result.grid
    mask = result.times <= t + 1e-12
    times = result.times[mask]
    if abs(times[-1] - t) > 1e-9 * max(1.0, abs(t)):
        raise ValueError(f"no snapshot chain reaching t = {t}")
    states = [s for s, m in zip(result.states, mask) if m]
    keep = grid.dealias_keep
    khat = truncated_kernel_transform(grid.xi, kernel_radius)
    integrand_u = np.empty((len(states), grid.M), dtype=complex)
    integrand_v = np.empty((len(states), grid.M), dtype=complex)
    for i, s in enumerate(states):
        u_phys = grid.samples(s.u_hat * keep).real
        w_hat = grid.coefficients(0.5 * u_phys * u_phys) * keep
        integrand_u[i] = khat * (s.v_hat - w_hat)
        integrand_v[i] = (1j * grid.xi) * s.u_hat
    int_u = integrate.simpson(integrand_u, x=times, axis=0)
    int_v = integrate.simpson(integrand_v, x=times, axis=0)
    res_u_hat = states[-1].u_hat - states[0].u_hat - int_u
    res_v_hat = states[-1].v_hat - states[0].v_hat - int_v
    if probe_points is None:
        res_u = grid.samples(res_u_hat)
        res_v = grid.samples(res_v_hat)
    else:
        x = np.asarray(probe_points, dtype=float)
        basis = np.exp(1j * np.outer(x, grid.xi))
        res_u = basis @ res_u_hat
        res_v = basis @ res_v_hat
    return float(max(np.max(np.abs(res_u)), np.max(np.abs(res_v))))
