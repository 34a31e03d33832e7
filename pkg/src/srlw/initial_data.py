"""Library of initial-data profiles with closed-form line transforms.

Each datum bundles a pointwise profile f(x) and, when one exists, its
unitary angular-frequency transform

    fhat(xi) = (2 pi)^{-1/2} integral f(x) exp(-i x xi) dx,

which is what the periodization and line-norm routines consume.  The
cosine mode is periodic-native and carries no line transform.
"""

import numpy as np

__all__ = ["Datum", "make_datum", "DATUM_KINDS"]

DATUM_KINDS = ("gaussian", "gaussian-derivative", "sech2", "cosine-mode", "zero")


class Datum:
    """A named profile with optional closed-form transform and derivative.

    profile(x) evaluates the field; transform(xi) evaluates the unitary
    angular-frequency transform, or is None for periodic-only data;
    derivative(x) evaluates d profile/dx when a closed form is wired up.
    """

    def __init__(self, kind, profile, transform, params, derivative=None):
        self.kind = kind
        self.profile = profile
        self.transform = transform
        self.derivative = derivative
        self.params = dict(params)

    def sample(self, grid):
        """Field values at the nodes of a periodic grid."""
        return self.profile(grid.x)

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"Datum({self.kind!r}, {inner})"


def _gaussian(amplitude, width):
    a, w = float(amplitude), float(width)

    def profile(x):
        return a * np.exp(-((x / w) ** 2))

    def transform(xi):
        return (a * w / np.sqrt(2.0)) * np.exp(-(w * xi) ** 2 / 4.0)

    def derivative(x):
        return a * (-2.0 * x / w**2) * np.exp(-((x / w) ** 2))

    return profile, transform, derivative


def _gaussian_derivative(amplitude, width):
    # amplitude refers to the underlying gaussian being differentiated
    a, w = float(amplitude), float(width)

    def profile(x):
        return a * (-2.0 * x / w**2) * np.exp(-((x / w) ** 2))

    def transform(xi):
        return 1j * xi * (a * w / np.sqrt(2.0)) * np.exp(-(w * xi) ** 2 / 4.0)

    def derivative(x):
        return a * (-2.0 / w**2 + 4.0 * x * x / w**4) * np.exp(-((x / w) ** 2))

    return profile, transform, derivative


def _sech2(amplitude, width):
    a, w = float(amplitude), float(width)

    def profile(x):
        return a / np.cosh(x / w) ** 2

    def transform(xi):
        # integral sech^2(x/w) e^{-i x xi} dx = pi w^2 xi / sinh(pi w xi / 2)
        z = np.asarray(0.5 * np.pi * w * xi, dtype=float)
        small = np.abs(z) < 1e-6
        zs = np.where(small, 1.0, z)
        ratio = np.where(small, 1.0 - z * z / 6.0, zs / np.sinh(zs))
        return a * (2.0 * w / np.sqrt(2.0 * np.pi)) * ratio

    def derivative(x):
        return (-2.0 * a / w) * np.tanh(x / w) / np.cosh(x / w) ** 2

    return profile, transform, derivative


def make_datum(kind, amplitude=1.0, width=1.0, mode=1, half_period=None):
    """Build a Datum by kind name.

    gaussian:            amplitude * exp(-(x/width)^2)
    gaussian-derivative: d/dx of the gaussian with the same parameters
    sech2:               amplitude * sech(x/width)^2
    cosine-mode:         amplitude * cos(mode * pi * x / half_period); no
                         line transform, usable on grids of matching period
    zero:                the zero field
    """
    if kind in ("gaussian", "gaussian-derivative", "sech2"):
        maker = {
            "gaussian": _gaussian,
            "gaussian-derivative": _gaussian_derivative,
            "sech2": _sech2,
        }[kind]
        profile, transform, derivative = maker(amplitude, width)
        return Datum(
            kind, profile, transform, {"amplitude": amplitude, "width": width}, derivative
        )
    if kind == "cosine-mode":
        a = float(amplitude)
        k = int(mode)
        if half_period is None:
            raise ValueError("cosine-mode requires half_period")
        L = float(half_period)

        def profile(x):
            return a * np.cos(k * np.pi * x / L)

        def derivative(x):
            return -a * (k * np.pi / L) * np.sin(k * np.pi * x / L)

        return Datum(
            kind, profile, None, {"amplitude": a, "mode": k, "half_period": L}, derivative
        )
    if kind == "zero":
        zero_field = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        return Datum("zero", zero_field, zero_field, {}, zero_field)
    raise ValueError(f"unknown datum kind {kind!r}; expected one of {DATUM_KINDS}")
