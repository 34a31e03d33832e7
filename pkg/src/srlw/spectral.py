"""Fourier grids, multiplier symbols, the exact linear group and the
quadratic nonlinearity of the symmetric regularized-long-wave system.

The system in first-order form is

    u_t - u_xxt + u u_x - v_x = 0,      v_t - u_x = 0,

or, with D_x = -i d/dx,

    i u_t = phi(D_x)(u^2/2 - v),        i v_t = -psi(D_x) u,

where phi(xi) = xi/(1+xi^2) and psi(xi) = xi.  Everything here lives on a
uniform periodic grid of period 2l.  Coefficient arrays follow FFT ordering
and hold the f_n of f(x) = sum_n f_n exp(i n pi x / l); real fields are
represented by Hermitian-symmetric coefficients.
"""

import numpy as np

__all__ = [
    "alpha",
    "phi_symbol",
    "psi_symbol",
    "mode_numbers",
    "make_grid",
    "SpectralGrid",
    "StatePair",
    "hermitian_project",
    "hermitian_defect",
    "pad_coefficients",
    "linear_propagate",
    "nonlinear_term",
    "pointwise_linear_energy",
]


def alpha(xi):
    """Dispersion symbol xi / sqrt(1 + xi^2); odd, |alpha| < 1, increasing."""
    return xi / np.sqrt(1.0 + xi * xi)


def phi_symbol(xi):
    """Multiplier xi / (1 + xi^2); odd, |phi| <= 1/2 with maximum at xi = 1."""
    return xi / (1.0 + xi * xi)


def psi_symbol(xi):
    """Multiplier of the second equation; the identity symbol xi."""
    return xi


def mode_numbers(M):
    """Integer mode numbers n in FFT order: 0..M/2-1, -M/2..-1."""
    return np.concatenate([np.arange(0, M // 2), np.arange(-M // 2, 0)])


class SpectralGrid:
    """Uniform periodic grid of period 2l with M Fourier modes.

    Frequencies are xi_n = n pi / l for n in {-M/2, ..., M/2-1}; physical
    nodes are x_j = -l + 2l j / M.  The coefficient/sample maps absorb the
    phase (-1)^n that comes from the grid starting at -l rather than 0.
    """

    def __init__(self, l, M):
        l = float(l)
        M = int(M)
        if l <= 0.0:
            raise ValueError("half-period l must be positive")
        if M % 2 != 0 or M < 4:
            raise ValueError("mode count M must be even and at least 4")
        self.l = l
        self.M = M
        self.n = mode_numbers(M)
        self.xi = self.n * (np.pi / l)
        self.x = -l + 2.0 * l * np.arange(M) / M
        self.dx = 2.0 * l / M
        # exp(i n pi x_j / l) = (-1)^n exp(2 pi i n j / M)
        self.phase = np.where(self.n % 2 == 0, 1.0, -1.0)
        # 2/3 rule: keep |n| <= K with 3K < M strictly, so that the alias
        # image of any kept-mode product (at |n1+n2| - M) misses the band
        self.dealias_keep = (np.abs(self.n) <= (M - 1) // 3).astype(float)
        self.nyquist_index = M // 2

    def coefficients(self, samples):
        """Expansion coefficients f_n of the sampled field."""
        return np.fft.fft(samples) * (self.phase / self.M)

    def samples(self, coeffs):
        """Field values at the grid nodes (complex; take .real for real fields)."""
        return np.fft.ifft(coeffs * self.phase) * self.M

    def __repr__(self):
        return f"SpectralGrid(l={self.l!r}, M={self.M})"


def make_grid(l, M):
    """Build a SpectralGrid; rejects l <= 0 and odd or tiny M."""
    return SpectralGrid(l, M)


def hermitian_project(coeffs):
    """Nearest Hermitian-symmetric coefficient array, c_{-n} = conj(c_n)."""
    M = len(coeffs)
    idx = (-np.arange(M)) % M
    return 0.5 * (coeffs + np.conj(coeffs[idx]))


def hermitian_defect(coeffs):
    """Largest deviation from c_{-n} = conj(c_n)."""
    M = len(coeffs)
    idx = (-np.arange(M)) % M
    return float(np.max(np.abs(coeffs - np.conj(coeffs[idx]))))


def pad_coefficients(coeffs, M_out):
    """Embed FFT-ordered coefficients into a longer FFT-ordered array."""
    M = len(coeffs)
    if M_out < M:
        raise ValueError("target length must not be smaller")
    out = np.zeros(M_out, dtype=complex)
    out[mode_numbers(M) % M_out] = coeffs
    return out


class StatePair:
    """The pair (u, v) as complex Fourier coefficients on a shared grid.

    Real fields require Hermitian symmetry.  The mode n = -M/2 has no
    partner at +M/2, so a nonzero coefficient there cannot stay consistent
    with a real field under the modal rotation of the linear group; it is
    zeroed at construction.
    """

    __slots__ = ("grid", "u_hat", "v_hat")

    def __init__(self, grid, u_hat, v_hat):
        u_hat = np.array(u_hat, dtype=complex)
        v_hat = np.array(v_hat, dtype=complex)
        if u_hat.shape != (grid.M,) or v_hat.shape != (grid.M,):
            raise ValueError("coefficient arrays must have length M")
        u_hat[grid.nyquist_index] = 0.0
        v_hat[grid.nyquist_index] = 0.0
        self.grid = grid
        self.u_hat = u_hat
        self.v_hat = v_hat

    @classmethod
    def zero(cls, grid):
        return cls(grid, np.zeros(grid.M, dtype=complex), np.zeros(grid.M, dtype=complex))

    @classmethod
    def from_samples(cls, grid, u, v):
        return cls(grid, grid.coefficients(u), grid.coefficients(v))

    def u_samples(self):
        return self.grid.samples(self.u_hat).real

    def v_samples(self):
        return self.grid.samples(self.v_hat).real

    def hermitian_defect(self):
        return max(hermitian_defect(self.u_hat), hermitian_defect(self.v_hat))

    def validate(self, tol=1e-12):
        scale = max(1.0, float(np.max(np.abs(self.u_hat))), float(np.max(np.abs(self.v_hat))))
        if not (np.all(np.isfinite(self.u_hat)) and np.all(np.isfinite(self.v_hat))):
            raise ValueError("non-finite coefficients")
        if self.hermitian_defect() > tol * scale:
            raise ValueError("coefficients are not Hermitian-symmetric")
        return self

    def copy(self):
        return StatePair(self.grid, self.u_hat, self.v_hat)

    def __add__(self, other):
        self._check(other)
        return StatePair(self.grid, self.u_hat + other.u_hat, self.v_hat + other.v_hat)

    def __sub__(self, other):
        self._check(other)
        return StatePair(self.grid, self.u_hat - other.u_hat, self.v_hat - other.v_hat)

    def __mul__(self, c):
        return StatePair(self.grid, c * self.u_hat, c * self.v_hat)

    __rmul__ = __mul__

    def _check(self, other):
        if other.grid is not self.grid and (other.grid.l != self.grid.l or other.grid.M != self.grid.M):
            raise ValueError("states live on different grids")


def linear_propagate(state, t):
    """Apply the linear group S(t) mode by mode.

    Per frequency xi, with a = alpha(xi) t and r = sqrt(1 + xi^2):

        u_hat(t) = cos(a) u0 + (i/r) sin(a) v0
        v_hat(t) = i r sin(a) u0 + cos(a) v0
    """
    xi = state.grid.xi
    root = np.sqrt(1.0 + xi * xi)
    a = alpha(xi) * t
    c = np.cos(a)
    s = np.sin(a)
    u_new = c * state.u_hat + (1j * s / root) * state.v_hat
    v_new = (1j * root * s) * state.u_hat + c * state.v_hat
    return StatePair(state.grid, u_new, v_new)


def nonlinear_term(state):
    """G(u, v) = (phi(D_x)(u^2/2), 0) with 2/3-rule de-aliasing.

    The square is formed pseudospectrally from the de-aliased field and the
    product coefficients are truncated again, so the kept band carries the
    exact convolution of the kept input modes.
    """
    grid = state.grid
    keep = grid.dealias_keep
    u = grid.samples(state.u_hat * keep).real
    w_hat = grid.coefficients(0.5 * u * u) * keep
    g_u = phi_symbol(grid.xi) * w_hat
    return StatePair(grid, g_u, np.zeros(grid.M, dtype=complex))


def pointwise_linear_energy(state):
    """Per-mode invariant (1 + xi^2)|u_hat|^2 + |v_hat|^2 of the linear flow."""
    xi = state.grid.xi
    return (1.0 + xi * xi) * np.abs(state.u_hat) ** 2 + np.abs(state.v_hat) ** 2
