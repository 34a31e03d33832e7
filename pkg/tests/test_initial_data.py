"""Profile library: closed-form transforms and derivatives against quadrature."""

import numpy as np
import pytest
from scipy import integrate

from srlw.initial_data import DATUM_KINDS, make_datum


def _transform_oracle(profile, xi, half_width=60.0):
    # unitary angular convention: (2 pi)^{-1/2} int f(x) e^{-i x xi} dx
    def re(x):
        return profile(x) * np.cos(x * xi)

    def im(x):
        return -profile(x) * np.sin(x * xi)

    a, _ = integrate.quad(re, -half_width, half_width, epsabs=1e-13, limit=400)
    b, _ = integrate.quad(im, -half_width, half_width, epsabs=1e-13, limit=400)
    return (a + 1j * b) / np.sqrt(2.0 * np.pi)


@pytest.mark.parametrize(
    "kind,amplitude,width",
    [
        ("gaussian", 1.3, 2.0),
        ("gaussian", 0.25, 0.7),
        ("gaussian-derivative", 0.8, 1.5),
        ("sech2", 1.1, 1.2),
    ],
    ids=["gaussian-wide", "gaussian-narrow", "gaussian-derivative", "sech2"],
)
def test_transform_matches_quadrature(kind, amplitude, width):
    datum = make_datum(kind, amplitude=amplitude, width=width)
    for xi in (0.0, 0.3, 1.0, 2.5, -1.7):
        want = _transform_oracle(datum.profile, xi)
        got = np.complex128(datum.transform(xi))
        np.testing.assert_allclose(got, want, atol=1e-10)


@pytest.mark.parametrize(
    "kind", ["gaussian", "gaussian-derivative", "sech2"], ids=str
)
def test_derivative_matches_finite_differences(kind):
    datum = make_datum(kind, amplitude=0.9, width=1.4)
    x = np.linspace(-6.0, 6.0, 41)
    h = 1e-6
    fd = (datum.profile(x + h) - datum.profile(x - h)) / (2.0 * h)
    np.testing.assert_allclose(datum.derivative(x), fd, atol=1e-8)


def test_sech2_transform_continuous_at_origin():
    datum = make_datum("sech2", amplitude=1.0, width=1.0)
    # z/sinh(z) -> 1: the series branch must join the generic branch
    tiny = datum.transform(np.array([0.0, 1e-9, 1e-5]))
    np.testing.assert_allclose(tiny, tiny[0], rtol=1e-9)
    left = datum.transform(np.array([1e-7]))
    right = datum.transform(np.array([2e-6]))
    np.testing.assert_allclose(left, right, rtol=1e-8)


def test_gaussian_transform_peak_value():
    # a e^{-(x/w)^2} has transform (a w / sqrt(2)) e^{-w^2 xi^2 / 4}
    a, w = 2.0, 3.0
    datum = make_datum("gaussian", amplitude=a, width=w)
    np.testing.assert_allclose(datum.transform(0.0), a * w / np.sqrt(2.0), rtol=1e-14)


def test_cosine_mode_needs_half_period():
    with pytest.raises(ValueError):
        make_datum("cosine-mode", amplitude=1.0, mode=2)
    datum = make_datum("cosine-mode", amplitude=1.5, mode=2, half_period=5.0)
    x = np.linspace(-5.0, 5.0, 11)
    np.testing.assert_allclose(datum.profile(x), 1.5 * np.cos(2 * np.pi * x / 5.0))
    assert datum.transform is None


def test_zero_datum():
    datum = make_datum("zero")
    x = np.linspace(-4.0, 4.0, 9)
    np.testing.assert_array_equal(datum.profile(x), 0.0)
    np.testing.assert_array_equal(datum.transform(x), 0.0)
    np.testing.assert_array_equal(datum.derivative(x), 0.0)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        make_datum("triangle")
    assert "gaussian" in DATUM_KINDS
