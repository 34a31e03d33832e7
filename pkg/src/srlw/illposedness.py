"""Norm-inflation machinery: frequency-localized counterexample data, the
resonance time integrals in closed form, the second Picard iterate spectrum,
and the inflation experiment.

The data pair concentrates on the frequency band I_N = [N-1, N+1] and its
mirror.  On the line,

    u0_hat = indicator(I_N) + indicator(-I_N),    v0_hat = sqrt(1+xi^2) u0_hat,

so the X^s size of the data decays like N^s for s < 0 while the second
iterate of the Duhamel expansion keeps an N-independent X^s size: the
quadratic interaction of the +N and -N bands lands at frequencies of size
O(1), where the near-resonant time integrals grow linearly in t.

The second iterate's transform is evaluated in closed form as

    A(xi) = phi(xi) [cos(alpha(xi) t) IJ12(xi) + sin(alpha(xi) t) IJ34(xi)],
    B(xi) = i sqrt(1+xi^2) phi(xi)
            [sin(alpha(xi) t) IJ12(xi) - cos(alpha(xi) t) IJ34(xi)],

where IJ12 and IJ34 integrate J1 - J2 and J3 - J4 over the interaction set
B_xi = {eta in U, xi - eta in U}, U = I_N union -I_N.  A is real and odd, B
imaginary and even; the physical pair is -i (A, B), which is Hermitian.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import integrate

from .report import ExperimentReport
from .spectral import alpha, phi_symbol

__all__ = [
    "CounterexampleDatum",
    "build_counterexample",
    "ResonanceEvaluation",
    "theta",
    "j_closed",
    "j_oracle",
    "reduced_combinations",
    "eta_support",
    "cross_band_pieces",
    "second_iterate_spectrum",
    "second_iterate_norm",
    "input_xs_norm",
    "inflation_experiment",
]

# torus half-period for the periodic flavor (integer frequencies)
TORUS_HALF_PERIOD = math.pi


class CounterexampleDatum:
    """Frequency-band data pair, line or periodic flavor.

    Line: transforms are indicators as in the module docstring.  Periodic:
    coefficients a_n = 1 and b_n = sqrt(1+N^2) on the integer band
    |n| in {N-1, N, N+1}, zero elsewhere (zero mode in particular).
    """

    def __init__(self, N, flavor):
        if flavor not in ("line", "periodic"):
            raise ValueError(f"flavor must be 'line' or 'periodic', got {flavor!r}")
        if not (N >= 2):
            raise ValueError("frequency scale N must be at least 2")
        if flavor == "periodic":
            if abs(N - round(N)) > 0:
                raise ValueError("periodic flavor requires integer N")
            N = int(round(N))
        self.N = N
        self.flavor = flavor

    # line flavor -------------------------------------------------------
    def u_transform(self, xi):
        xi = np.asarray(xi, dtype=float)
        a = np.abs(xi)
        return ((a >= self.N - 1.0) & (a <= self.N + 1.0)).astype(float)

    def v_transform(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.sqrt(1.0 + xi * xi) * self.u_transform(xi)

    # periodic flavor ---------------------------------------------------
    def band_modes(self):
        N = int(self.N)
        pos = [N - 1, N, N + 1]
        return sorted([-n for n in pos] + pos)

    def u_coefficient(self, n):
        return 1.0 if abs(int(n)) in (self.N - 1, self.N, self.N + 1) else 0.0

    def v_coefficient(self, n):
        return math.sqrt(1.0 + self.N**2) * self.u_coefficient(n)

    def __repr__(self):
        return f"CounterexampleDatum(N={self.N}, flavor={self.flavor!r})"


def build_counterexample(N, flavor="line"):
    """Data pair at frequency scale N; rejects N < 2."""
    return CounterexampleDatum(N, flavor)


class ResonanceEvaluation:
    """The four resonance phases and time integrals at one (xi, eta, t)."""

    __slots__ = ("xi", "eta", "t", "theta", "J")

    def __init__(self, xi, eta, t, theta_values, j_values):
        self.xi = xi
        self.eta = eta
        self.t = t
        self.theta = tuple(theta_values)
        self.J = tuple(j_values)


def theta(k, xi, eta):
    """Resonance phase theta_k: signed combination of alpha at xi, xi-eta, eta.

    theta_1 = a + b + c, theta_2 = a - b + c, theta_3 = a - b - c,
    theta_4 = a + b - c with a = alpha(xi), b = alpha(xi-eta), c = alpha(eta).
    """
    a = alpha(np.asarray(xi, dtype=float))
    b = alpha(np.asarray(xi, dtype=float) - np.asarray(eta, dtype=float))
    c = alpha(np.asarray(eta, dtype=float))
    if k == 1:
        return a + b + c
    if k == 2:
        return a - b + c
    if k == 3:
        return a - b - c
    if k == 4:
        return a + b - c
    raise ValueError("k must be 1..4")


def _sin_ratio(th, t, threshold=1e-4):
    """sin(theta t)/theta with a series branch removing the singularity."""
    th = np.asarray(th, dtype=float)
    z = th * t
    small = np.abs(z) < threshold
    th_safe = np.where(small, 1.0, th)
    direct = np.sin(z) / th_safe
    series = t * (1.0 - z * z / 6.0 + z**4 / 120.0)
    return np.where(small, series, direct)


def _cos_ratio(th, t, threshold=1e-4):
    """(cos(theta t) - 1)/theta with a series branch removing the singularity."""
    th = np.asarray(th, dtype=float)
    z = th * t
    small = np.abs(z) < threshold
    th_safe = np.where(small, 1.0, th)
    direct = (np.cos(z) - 1.0) / th_safe
    series = t * (-z / 2.0 + z**3 / 24.0 - z**5 / 720.0)
    return np.where(small, series, direct)


def j_closed(xi, eta, t, series_threshold=1e-4):
    """J1..J4 from the four-phase closed forms.

    4 J1 = s1+s2+s3+s4, -4 J2 = s1-s2+s3-s4 with s_k = sin(theta_k t)/theta_k;
    -4 J3 = c1+c2+c3+c4, 4 J4 = c1-c2+c3-c4 with c_k = (cos(theta_k t)-1)/theta_k.
    """
    th = [theta(k, xi, eta) for k in (1, 2, 3, 4)]
    s = [_sin_ratio(tk, t, series_threshold) for tk in th]
    c = [_cos_ratio(tk, t, series_threshold) for tk in th]
    j1 = (s[0] + s[1] + s[2] + s[3]) / 4.0
    j2 = -(s[0] - s[1] + s[2] - s[3]) / 4.0
    j3 = -(c[0] + c[1] + c[2] + c[3]) / 4.0
    j4 = (c[0] - c[1] + c[2] - c[3]) / 4.0
    return ResonanceEvaluation(xi, eta, t, th, (j1, j2, j3, j4))


def j_oracle(xi, eta, t, tol=1e-12):
    """J1..J4 by adaptive quadrature of the defining time integrals.

    Brute-force reference for j_closed; scalar arguments only.
    """
    xi, eta, t = float(xi), float(eta), float(t)
    a, b, c = alpha(xi), alpha(xi - eta), alpha(eta)
    integrands = [
        lambda tau: math.cos(a * tau) * math.cos(b * tau) * math.cos(c * tau),
        lambda tau: math.cos(a * tau) * math.sin(b * tau) * math.sin(c * tau),
        lambda tau: math.sin(a * tau) * math.cos(b * tau) * math.cos(c * tau),
        lambda tau: math.sin(a * tau) * math.sin(b * tau) * math.sin(c * tau),
    ]
    js = []
    for f in integrands:
        val, err = integrate.quad(f, 0.0, t, epsabs=tol, epsrel=tol, limit=500)
        js.append(val)
    th = [theta(k, xi, eta) for k in (1, 2, 3, 4)]
    return ResonanceEvaluation(xi, eta, t, th, tuple(js))


def reduced_combinations(xi, eta, t, series_threshold=1e-4):
    """(J1 - J2, J3 - J4) via the two-phase reductions.

    2[J1 - J2] = sin(theta_1 t)/theta_1 + sin(theta_3 t)/theta_3 and
    -2[J3 - J4] = (cos(theta_1 t)-1)/theta_1 + (cos(theta_3 t)-1)/theta_3;
    theta_2 and theta_4 cancel identically in these combinations.
    """
    th1 = theta(1, xi, eta)
    th3 = theta(3, xi, eta)
    j12 = 0.5 * (_sin_ratio(th1, t, series_threshold) + _sin_ratio(th3, t, series_threshold))
    j34 = -0.5 * (_cos_ratio(th1, t, series_threshold) + _cos_ratio(th3, t, series_threshold))
    return j12, j34


def _interval_intersections(pieces_a, pieces_b):
    out = []
    for a0, a1 in pieces_a:
        for b0, b1 in pieces_b:
            lo, hi = max(a0, b0), min(a1, b1)
            if hi > lo:
                out.append((lo, hi))
    out.sort()
    return out


def _band_intervals(N):
    return [(-N - 1.0, -N + 1.0), (N - 1.0, N + 1.0)]


def eta_support(N, xi):
    """The interaction set B_xi as a sorted list of disjoint intervals.

    B_xi = {eta : eta in U and xi - eta in U} with U the two data bands;
    xi - eta in [a, b] is eta in [xi - b, xi - a].  At most two pieces.
    """
    xi = float(xi)
    u = _band_intervals(float(N))
    shifted = [(xi - b, xi - a) for a, b in u]
    return _interval_intersections(u, shifted)


def cross_band_pieces(N, xi):
    """The two cross-band pieces of B_xi (eta and xi-eta in opposite bands).

    Each piece has length 2 - |xi| for |xi| <= 2 and is empty beyond; their
    union carries the near-resonant interaction at small output frequency.
    """
    xi = float(xi)
    N = float(N)
    neg, pos = _band_intervals(N)
    p1 = _interval_intersections([pos], [(xi - neg[1], xi - neg[0])])
    p2 = _interval_intersections([neg], [(xi - pos[1], xi - pos[0])])
    return p1 + p2


def _gauss_nodes(lo, hi, order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (hi - lo)
    return lo + half * (nodes + 1.0), half * weights


def _eta_integrals(N, xi, t, order_per_unit=32, min_order=16, series_threshold=1e-4):
    """(IJ12, IJ34): integrals of J1-J2 and J3-J4 in eta over B_xi."""
    ij12 = 0.0
    ij34 = 0.0
    for lo, hi in eta_support(N, xi):
        order = max(min_order, int(math.ceil(order_per_unit * (hi - lo))))
        nodes, weights = _gauss_nodes(lo, hi, order)
        j12, j34 = reduced_combinations(xi, nodes, t, series_threshold)
        ij12 += float(np.dot(weights, j12))
        ij34 += float(np.dot(weights, j34))
    return ij12, ij34


def second_iterate_spectrum(datum, t, xi, order_per_unit=32, series_threshold=1e-4):
    """Transform pair (A, B) of the second Picard iterate at frequency xi.

    Line flavor only.  xi may be scalar or array; outside the support of the
    interaction set the result is (0, 0).
    """
    if datum.flavor != "line":
        raise ValueError("spectrum evaluation requires the line flavor")
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    a_out = np.zeros(xi_arr.shape, dtype=complex)
    b_out = np.zeros(xi_arr.shape, dtype=complex)
    for i, x in enumerate(xi_arr):
        ij12, ij34 = _eta_integrals(
            datum.N, x, t, order_per_unit=order_per_unit, series_threshold=series_threshold
        )
        ph = phi_symbol(x)
        ca, sa = math.cos(alpha(x) * t), math.sin(alpha(x) * t)
        a_out[i] = ph * (ca * ij12 + sa * ij34)
        b_out[i] = 1j * math.sqrt(1.0 + x * x) * ph * (sa * ij12 - ca * ij34)
    if np.isscalar(xi) or np.asarray(xi).ndim == 0:
        return complex(a_out[0]), complex(b_out[0])
    return a_out, b_out


def _xi_breakpoints(N):
    """Frequencies where the piece structure of B_xi changes."""
    N = float(N)
    pts = [-2 * N - 2, -2 * N, -2 * N + 2, -2.0, 0.0, 2.0, 2 * N - 2, 2 * N, 2 * N + 2]
    return [p for p in sorted(set(pts))]


def _periodic_iterate_modes(datum, t, series_threshold=1e-4):
    """Mode sums (m, A_m, B_m) of the second iterate for the periodic flavor.

    The coefficient pair b does not satisfy b_n = sqrt(1+n^2) a_n exactly
    (b is constant on the band), so the J2/J4 terms keep their own weight
    b_n b_{m-n} / (sqrt(1+n^2) sqrt(1+(m-n)^2)) instead of reducing to the
    two-phase combination.
    """
    band = datum.band_modes()
    band_set = set(int(n) for n in band)
    b2 = 1.0 + float(datum.N) ** 2
    sums = {}
    for n1 in band_set:
        for n2 in band_set:
            m = n1 + n2
            n = n2
            ev = j_closed(float(m), float(n), t, series_threshold)
            j1, j2, j3, j4 = ev.J
            w = b2 / (math.sqrt(1.0 + n * n) * math.sqrt(1.0 + (m - n) ** 2))
            s12, s34 = sums.get(m, (0.0, 0.0))
            sums[m] = (s12 + (j1 - j2 * w), s34 + (j3 - j4 * w))
    modes = sorted(sums)
    a_m = np.zeros(len(modes), dtype=complex)
    b_m = np.zeros(len(modes), dtype=complex)
    for i, m in enumerate(modes):
        s12, s34 = sums[m]
        ph = phi_symbol(float(m))
        ca, sa = math.cos(alpha(float(m)) * t), math.sin(alpha(float(m)) * t)
        a_m[i] = ph * (ca * s12 + sa * s34)
        b_m[i] = 1j * math.sqrt(1.0 + m * m) * ph * (sa * s12 - ca * s34)
    return np.array(modes), a_m, b_m


def second_iterate_norm(datum, t, s, xi_order=48, order_per_unit=32, series_threshold=1e-4):
    """X^s norm of the second iterate.

    Line flavor: Gauss quadrature of (1+xi^2)^s |A|^2 + (1+xi^2)^{s-1} |B|^2
    over each smooth piece of the support.  Periodic flavor: the analogous
    mode sums 2*pi*l-weighted as in the periodic H^s norm with l = pi.
    """
    if datum.flavor == "periodic":
        modes, a_m, b_m = _periodic_iterate_modes(datum, t, series_threshold)
        w = 1.0 + modes.astype(float) ** 2
        total = 2.0 * TORUS_HALF_PERIOD * (
            np.sum(w**s * np.abs(a_m) ** 2) + np.sum(w ** (s - 1.0) * np.abs(b_m) ** 2)
        )
        return float(np.sqrt(total))
    pts = _xi_breakpoints(datum.N)
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi - lo > 4.0:
            # gap between the low-frequency block and the 2N blocks
            continue
        nodes, weights = _gauss_nodes(lo, hi, xi_order)
        a_vals, b_vals = second_iterate_spectrum(
            datum, t, nodes, order_per_unit=order_per_unit, series_threshold=series_threshold
        )
        w = 1.0 + nodes * nodes
        integrand = w**s * np.abs(a_vals) ** 2 + w ** (s - 1.0) * np.abs(b_vals) ** 2
        total += float(np.dot(weights, integrand))
    return float(np.sqrt(total))


def input_xs_norm(datum, s, order=64):
    """X^s norm of the data pair.

    Line: the two components contribute identically, giving
    4 * integral over [N-1, N+1] of (1+xi^2)^s dxi.  Periodic: the mode sums
    with the constant-in-n second coefficient.
    """
    if datum.flavor == "periodic":
        n = np.asarray(datum.band_modes(), dtype=float)
        w = 1.0 + n * n
        b2 = 1.0 + float(datum.N) ** 2
        total = 2.0 * TORUS_HALF_PERIOD * (np.sum(w**s) + b2 * np.sum(w ** (s - 1.0)))
        return float(np.sqrt(total))
    nodes, weights = _gauss_nodes(datum.N - 1.0, datum.N + 1.0, order)
    val = 4.0 * float(np.dot(weights, (1.0 + nodes * nodes) ** s))
    return float(np.sqrt(val))


def inflation_experiment(config):
    """Sweep N and compare data size against second-iterate size in X^s.

    config keys: s, t, N_list, flavor (default line); optional
    input_drop_threshold (default 10.0), band_threshold (default 2.0),
    series_threshold, order_per_unit, xi_order, workers (default 1; rows
    are independent, so a pool may compute them).

    The INFLATION flag is set when the input norm fell by at least
    input_drop_threshold across the sweep while the iterate norms stayed
    within band_threshold of each other.  A quadrature failure poisons its
    own row (nan) without aborting the sweep.
    """
    s = float(config["s"])
    t = float(config["t"])
    n_list = list(config["N_list"])
    flavor = config.get("flavor", "line")
    drop_threshold = float(config.get("input_drop_threshold", 10.0))
    band_threshold = float(config.get("band_threshold", 2.0))
    series_threshold = float(config.get("series_threshold", 1e-4))
    order_per_unit = int(config.get("order_per_unit", 32))
    xi_order = int(config.get("xi_order", 48))
    workers = max(1, int(config.get("workers", 1)))

    def one_row(n):
        try:
            datum = build_counterexample(n, flavor)
            inp = input_xs_norm(datum, s)
            out = second_iterate_norm(
                datum,
                t,
                s,
                xi_order=xi_order,
                order_per_unit=order_per_unit,
                series_threshold=series_threshold,
            )
            ratio = out / inp if inp > 0 else math.inf
            return (n, s, t, inp, out, ratio), None
        except ValueError as exc:
            nan = math.nan
            return (n, s, t, nan, nan, nan), f"N={n}: {exc}"

    if workers > 1 and len(n_list) > 1:
        # map preserves N_list order, so assembly stays deterministic
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one_row, n_list))
    else:
        outcomes = [one_row(n) for n in n_list]
    rows = [row for row, _ in outcomes]
    warnings = [w for _, w in outcomes if w is not None]

    inputs = [r[3] for r in rows if math.isfinite(r[3])]
    iterates = [r[4] for r in rows if math.isfinite(r[4]) and r[4] > 0]
    inflation = False
    drop = band = math.nan
    if len(inputs) >= 2 and len(iterates) >= 2:
        drop = inputs[0] / inputs[-1]
        band = max(iterates) / min(iterates)
        inflation = drop >= drop_threshold and band <= band_threshold
    status = "yes" if inflation else "no"
    summary = (
        f"INFLATION: {status} (input drop {drop:.6g}x across sweep, "
        f"iterate band {band:.6g}x; thresholds {drop_threshold:g}x/{band_threshold:g}x)"
    )
    resolved = {
        "s": s,
        "t": t,
        "N_list": ",".join(str(n) for n in n_list),
        "flavor": flavor,
        "input_drop_threshold": drop_threshold,
        "band_threshold": band_threshold,
        "series_threshold": series_threshold,
        "order_per_unit": order_per_unit,
        "xi_order": xi_order,
        "workers": workers,
    }
    return ExperimentReport(
        columns=["N", "s", "t", "input_norm_Xs", "iterate_norm_Xs", "ratio"],
        rows=rows,
        config=resolved,
        flags={"INFLATION": inflation, "input_drop": drop, "iterate_band": band},
        summary=summary,
        warnings=warnings,
    )
