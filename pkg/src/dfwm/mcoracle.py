"""Brute-force verification engine for Gaussian mode statistics.

Propagates real quadrature covariance matrices through affine mode maps and
estimates the same observables by Wigner phase-space Monte Carlo sampling.
Everything here is deliberately independent of the closed forms in
``quantumnoise``: the only shared input is the transform matrix itself.

Quadrature convention: X = (a + a^dag)/2, Y = (a - a^dag)/(2i), so vacuum
has variance 1/4 per quadrature.  State vectors interleave (X1, Y1, X2, Y2,
...).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientBrightnessError, PhysicsDomainError

VACUUM_VARIANCE = 0.25

#: Minimum mean photon number for linearized photon-number sampling.
BRIGHTNESS_FLOOR = 1e3


def _symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True)
class GaussianState:
    """First and second moments of an n-mode Gaussian state."""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.covariance, dtype=float)
        if mean.ndim != 1 or mean.size % 2 != 0:
            raise PhysicsDomainError("mean must have even length 2N")
        if cov.shape != (mean.size, mean.size):
            raise PhysicsDomainError("covariance shape must match the mean")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def validate(self, tol: float = 1e-9) -> None:
        """Check symmetry, positivity and the uncertainty bound."""
        cov = self.covariance
        if np.max(np.abs(cov - cov.T)) > tol:
            raise PhysicsDomainError("covariance is not symmetric")
        if np.min(np.linalg.eigvalsh(cov)) < -tol:
            raise PhysicsDomainError("covariance is not positive semidefinite")
        # [X, Y] = i/2 per mode, so the Robertson bound is cov + i Omega/4 >= 0
        omega = _symplectic_form(self.n_modes)
        if np.min(np.linalg.eigvalsh(cov + 0.25j * omega)) < -tol:
            raise PhysicsDomainError("covariance violates the uncertainty bound")

    @classmethod
    def vacuum(cls, n_modes: int) -> "GaussianState":
        return cls(np.zeros(2 * n_modes),
                   VACUUM_VARIANCE * np.eye(2 * n_modes))

    @classmethod
    def coherent(cls, alphas) -> "GaussianState":
        """Coherent state with the given complex amplitudes, one per mode."""
        alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
        mean = np.empty(2 * alphas.size)
        mean[0::2] = alphas.real
        mean[1::2] = alphas.imag
        return cls(mean, VACUUM_VARIANCE * np.eye(2 * alphas.size))


@dataclass(frozen=True)
class AffineModeMap:
    """Linear map on (a1, a1^dag, ...) with optional injected vacuum modes."""

    matrix: np.ndarray
    vacuum_matrix: np.ndarray | None = None

    @property
    def n_out(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def n_in(self) -> int:
        return self.matrix.shape[1] // 2

    @property
    def n_vacuum(self) -> int:
        return 0 if self.vacuum_matrix is None else self.vacuum_matrix.shape[1] // 2

    @classmethod
    def from_transform(cls, transform) -> "AffineModeMap":
        """Adapt a quantumnoise ModeTransform (same operator ordering)."""
        return cls(np.asarray(transform.matrix, dtype=complex),
                   None if transform.vacuum_matrix is None
                   else np.asarray(transform.vacuum_matrix, dtype=complex))


def _annihilation_to_quadrature(matrix: np.ndarray) -> np.ndarray:
    """Real quadrature-basis version of a map given on (a, a^dag) pairs."""
    n_out, n_in = matrix.shape[0] // 2, matrix.shape[1] // 2
    u = np.array([[1.0, 1.0j], [1.0, -1.0j]])       # (X, Y) -> (a, a^dag)
    u_inv = np.array([[0.5, 0.5], [-0.5j, 0.5j]])   # (a, a^dag) -> (X, Y)
    real_map = np.kron(np.eye(n_out), u_inv) @ matrix @ np.kron(np.eye(n_in), u)
    if np.max(np.abs(real_map.imag)) > 1e-10:
        raise PhysicsDomainError("map does not preserve Hermitian conjugation")
    return real_map.real


def propagate(state: GaussianState, amap: AffineModeMap) -> GaussianState:
    """Push a Gaussian state through the affine map exactly."""
    if amap.n_in != state.n_modes:
        raise PhysicsDomainError(
            f"map expects {amap.n_in} modes, state has {state.n_modes}")
    r = _annihilation_to_quadrature(amap.matrix)
    mean = r @ state.mean
    cov = r @ state.covariance @ r.T
    if amap.vacuum_matrix is not None:
        rv = _annihilation_to_quadrature(amap.vacuum_matrix)
        cov = cov + VACUUM_VARIANCE * rv @ rv.T
    return GaussianState(mean, cov)


# ---------------------------------------------------------------------------
# observables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JointQuadrature:
    """j = sum_i e^{-i theta_i} a_i + e^{i theta_i} a_i^dag."""

    thetas: tuple

    def coefficient_row(self, n_modes: int) -> np.ndarray:
        if len(self.thetas) != n_modes:
            raise PhysicsDomainError("one detector phase per mode required")
        row = np.empty(2 * n_modes)
        row[0::2] = 2 * np.cos(self.thetas)
        row[1::2] = 2 * np.sin(self.thetas)
        return row


@dataclass(frozen=True)
class IntensityDifference:
    """n_1 - n_2 - ... with the given signs, linearized around bright means."""

    signs: tuple = (1.0, -1.0)


def quadrature_statistics(state: GaussianState, obs: JointQuadrature):
    """Exact (mean, variance) of a joint quadrature on a Gaussian state."""
    row = obs.coefficient_row(state.n_modes)
    return float(row @ state.mean), float(row @ state.covariance @ row)


def _complex_moments(state: GaussianState):
    """Mean amplitudes and operator-ordered moments N_ij, M_ij of the state.

    The classical covariance of Wigner samples gives symmetrized moments;
    <a_i^dag a_j> subtracts the delta_ij/2 ordering correction.
    """
    n = state.n_modes
    alphas = state.mean[0::2] + 1j * state.mean[1::2]
    cov = state.covariance
    xx = cov[0::2, 0::2]
    yy = cov[1::2, 1::2]
    xy = cov[0::2, 1::2]
    yx = cov[1::2, 0::2]
    m_mat = xx - yy + 1j * (xy + yx)
    n_mat = xx + yy + 1j * (xy - yx) - 0.5 * np.eye(n)
    return alphas, n_mat, m_mat


def photon_number_statistics(state: GaussianState, signs=(1.0, -1.0)):
    """Exact (mean, variance) of the signed photon-number sum.

    Uses the Gaussian moment expansion of Cov(n_i, n_j); exact for any
    Gaussian state including vacuum seeds.
    """
    signs = np.asarray(signs, dtype=float)
    alphas, n_mat, m_mat = _complex_moments(state)
    n_modes = state.n_modes
    if signs.size != n_modes:
        raise PhysicsDomainError("one sign per mode required")
    means = np.abs(alphas) ** 2 + np.diag(n_mat).real
    var = 0.0
    for p in range(n_modes):
        for q in range(n_modes):
            cov_pq = 2 * (np.conj(alphas[p]) * np.conj(alphas[q]) * m_mat[p, q]
                          + np.conj(alphas[p]) * alphas[q] * n_mat[q, p]).real
            cov_pq += (np.abs(m_mat[p, q]) ** 2 + (n_mat[p, q] * n_mat[q, p]).real)
            if p == q:
                cov_pq += means[p]
            var += signs[p] * signs[q] * cov_pq
    return float(signs @ means), float(var)


def photon_number_means(state: GaussianState) -> np.ndarray:
    alphas, n_mat, _ = _complex_moments(state)
    return np.abs(alphas) ** 2 + np.diag(n_mat).real


# ---------------------------------------------------------------------------
# Monte Carlo estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MCEstimate:
    mean: float
    mean_stderr: float
    variance: float
    variance_stderr: float
    samples: int


def _merge_welford(count_a, mean_a, m2_a, count_b, mean_b, m2_b):
    # Chan parallel combination of (count, mean, sum of squared deviations)
    count = count_a + count_b
    delta = mean_b - mean_a
    mean = mean_a + delta * count_b / count
    m2 = m2_a + m2_b + delta ** 2 * count_a * count_b / count
    return count, mean, m2


def mc_estimate(state: GaussianState, amap: AffineModeMap, observable,
                samples: int, seed: int = 0,
                chunk_size: int = 1 << 18) -> MCEstimate:
    """Estimate an observable by sampling inputs and pushing them through the map.

    Phase-space samples are drawn from the input Wigner distribution (plus
    independent vacuum for every injected loss mode), transformed per sample,
    and reduced with chunked Welford accumulation so the result is
    deterministic for a given seed.  Joint quadratures are linear in phase
    space, so their sample statistics are unbiased.  Photon-number
    differences use the linearized observable n ~ <n> + 2|alpha| dX along the
    mean-field phase, valid for bright seeds; dim seeds are refused.
    """
    if samples < 1e4:
        raise PhysicsDomainError("at least 1e4 samples required")
    state.validate()
    r = _annihilation_to_quadrature(amap.matrix)
    rv = (_annihilation_to_quadrature(amap.vacuum_matrix)
          if amap.vacuum_matrix is not None else None)
    out_mean = r @ state.mean
    chol = np.linalg.cholesky(
        state.covariance + 1e-14 * np.max(np.abs(state.covariance)) * np.eye(state.mean.size))

    if isinstance(observable, JointQuadrature):
        row = observable.coefficient_row(amap.n_out)
        offset = 0.0
    elif isinstance(observable, IntensityDifference):
        alphas = out_mean[0::2] + 1j * out_mean[1::2]
        photons = np.abs(alphas) ** 2
        if np.max(photons) < BRIGHTNESS_FLOOR:
            raise InsufficientBrightnessError(
                f"linearized photon statistics need a mean photon number of at "
                f"least {BRIGHTNESS_FLOOR:g}; brightest output mode has {np.max(photons):.3g}")
        signs = np.asarray(observable.signs, dtype=float)
        row = np.empty(2 * amap.n_out)
        row[0::2] = signs * 2 * alphas.real
        row[1::2] = signs * 2 * alphas.imag
        offset = float(signs @ photons)
    else:
        raise PhysicsDomainError(f"unsupported observable {observable!r}")

    streams = np.random.SeedSequence(seed).spawn(-(-samples // chunk_size))
    count, mean, m2 = 0, 0.0, 0.0
    drawn = 0
    for stream in streams:
        n = min(chunk_size, samples - drawn)
        drawn += n
        rng = np.random.default_rng(stream)
        z_in = state.mean + rng.standard_normal((n, state.mean.size)) @ chol.T
        z_out = z_in @ r.T
        if rv is not None:
            z_vac = rng.standard_normal((n, rv.shape[1])) * np.sqrt(VACUUM_VARIANCE)
            z_out = z_out + z_vac @ rv.T
        values = (z_out - out_mean) @ row if isinstance(observable, IntensityDifference) \
            else z_out @ row
        c = values.size
        mu = float(np.mean(values))
        count, mean, m2 = _merge_welford(
            count, mean, m2, c, mu, float(np.sum((values - mu) ** 2)))
    variance = m2 / (count - 1)
    return MCEstimate(
        mean=mean + offset,
        mean_stderr=float(np.sqrt(variance / count)),
        variance=variance,
        variance_stderr=float(variance * np.sqrt(2.0 / (count - 1))),
        samples=count,
    )
