"""Two-mode input-output transforms, loss, and squeezing levels in dB.

The mode ordering throughout is (a1, a1^dag, a2, a2^dag) with mode 1 the
forward/probe output and mode 2 the backward/conjugate output.  Squeezing is
reported as 10 log10(noise / shot noise): negative values mean squeezing.

Detector phase conventions: the joint quadrature variance depends on
theta_f - theta_b in the phase-conjugate geometry and on theta_f + theta_b in
the forward geometry (theta_f, theta_b are the probe- and conjugate-arm
homodyne phases; the backward detector phase enters with a reversed sign).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AboveThresholdError, PhysicsDomainError
from .fwmcoupling import THRESHOLD, CouplingStrength, Geometry

#: Commutator metric for the (a, a^dag, b, b^dag) ordering.
COMMUTATOR_METRIC = np.diag([1.0, -1.0, 1.0, -1.0])

#: Shot-noise variance of the joint quadrature j = j_f + j_b.
JOINT_QUADRATURE_SHOT = 2.0


class Detection(enum.Enum):
    JOINT_QUADRATURE = "quadrature"
    INTENSITY_DIFFERENCE = "intensity_difference"


@dataclass(frozen=True)
class LossChannel:
    """Beam-splitter power transmissions for the two output arms."""

    eta_f: float = 1.0
    eta_b: float = 1.0

    def __post_init__(self):
        if not 0 <= self.eta_f <= 1 or not 0 <= self.eta_b <= 1:
            raise PhysicsDomainError("transmissions must lie in [0, 1]")

    @property
    def lossless(self) -> bool:
        return self.eta_f == 1.0 and self.eta_b == 1.0


@dataclass(frozen=True)
class DetectionConfig:
    detection: Detection
    theta_f: float = 0.0
    theta_b: float = 0.0
    seed_photons: float = 0.0

    def __post_init__(self):
        if self.seed_photons < 0:
            raise PhysicsDomainError("seed photon number must be non-negative")


@dataclass(frozen=True)
class ModeTransform:
    """Linear map on (a1, a1^dag, a2, a2^dag), plus optional vacuum injection.

    A lossy transform acts as v_out = matrix @ v_in + vacuum_matrix @ v_vac
    where v_vac stacks independent vacuum modes in the same ordering.  The
    combined map preserves bosonic commutators: M J M^dag + B J B^dag = J.
    """

    matrix: np.ndarray
    geometry: Geometry
    coupling: CouplingStrength
    vacuum_matrix: np.ndarray | None = None

    @property
    def lossless(self) -> bool:
        return self.vacuum_matrix is None

    def commutator_defect(self) -> float:
        """Max-norm violation of the commutator metric (0 for a physical map)."""
        j = COMMUTATOR_METRIC
        total = self.matrix @ j @ self.matrix.conj().T
        if self.vacuum_matrix is not None:
            n_vac = self.vacuum_matrix.shape[1] // 4
            jv = np.kron(np.eye(n_vac), j)
            total = total + self.vacuum_matrix @ jv @ self.vacuum_matrix.conj().T
        return float(np.max(np.abs(total - j)))


@dataclass(frozen=True)
class SqueezingResult:
    noise_variance: float
    shot_noise_variance: float
    squeezing_db: float
    geometry: Geometry
    detection: Detection


def _two_mode_matrix(diagonal: float, cross: float, phase: complex) -> np.ndarray:
    # rows: a1_out, a1dag_out, a2_out, a2dag_out; cross term i*phase*cross
    c = 1j * phase * cross
    return np.array([
        [diagonal, 0, 0, c],
        [0, diagonal, np.conj(c), 0],
        [0, c, diagonal, 0],
        [np.conj(c), 0, 0, diagonal],
    ])


def pc_mode_transform(c: CouplingStrength) -> ModeTransform:
    """Phase-conjugate input-output map: sec diagonal, +-i tan cross terms."""
    if c.geometry is not Geometry.PHASE_CONJUGATE:
        raise PhysicsDomainError("coupling is not phase-conjugate")
    x = c.magnitude_l
    if x >= THRESHOLD:
        raise AboveThresholdError(f"|kappa|L = {x:.6g} at or above pi/2")
    return ModeTransform(_two_mode_matrix(1 / np.cos(x), np.tan(x), c.phase),
                         Geometry.PHASE_CONJUGATE, c)


def ffwm_mode_transform(c: CouplingStrength) -> ModeTransform:
    """Forward two-mode squeeze map: cosh diagonal, +-i sinh cross terms."""
    if c.geometry is not Geometry.FORWARD:
        raise PhysicsDomainError("coupling is not forward")
    x = c.magnitude_l
    return ModeTransform(_two_mode_matrix(np.cosh(x), np.sinh(x), c.phase),
                         Geometry.FORWARD, c)


def mode_transform(c: CouplingStrength) -> ModeTransform:
    if c.geometry is Geometry.PHASE_CONJUGATE:
        return pc_mode_transform(c)
    return ffwm_mode_transform(c)


def _mode_transform_periodic(c: CouplingStrength) -> ModeTransform:
    """Transform without the threshold guard (sec/tan continue past pi/2).

    The continuation still preserves commutators (sec^2 - tan^2 = 1 on every
    branch); sweep tables use it for rows that are flagged above threshold.
    """
    if c.geometry is Geometry.FORWARD:
        return ffwm_mode_transform(c)
    x = c.magnitude_l
    return ModeTransform(_two_mode_matrix(1 / np.cos(x), np.tan(x), c.phase),
                         Geometry.PHASE_CONJUGATE, c)


def apply_loss(t: ModeTransform, loss: LossChannel) -> ModeTransform:
    """Insert beam splitters after the mixer; vacuum enters the open ports."""
    sf, sb = np.sqrt(loss.eta_f), np.sqrt(loss.eta_b)
    scale = np.diag([sf, sf, sb, sb])
    vf, vb = np.sqrt(1 - loss.eta_f), np.sqrt(1 - loss.eta_b)
    injection = np.diag([1j * vf, -1j * vf, 1j * vb, -1j * vb]).astype(complex)
    vacuum = injection if t.vacuum_matrix is None else np.hstack(
        [scale @ t.vacuum_matrix, injection])
    return ModeTransform(scale @ t.matrix, t.geometry, t.coupling,
                         vacuum_matrix=vacuum)


# ---------------------------------------------------------------------------
# joint quadrature detection
# ---------------------------------------------------------------------------

def _detector_row(t: ModeTransform, det: DetectionConfig) -> tuple:
    """Pull the joint quadrature back through the transform.

    Returns the row over input operators and the row over vacuum operators.
    The backward homodyne phase enters with reversed sign in the
    phase-conjugate geometry (matches the sec/tan closed form).
    """
    phi_b = -det.theta_b if t.geometry is Geometry.PHASE_CONJUGATE else det.theta_b
    row_out = np.array([np.exp(-1j * det.theta_f), np.exp(1j * det.theta_f),
                        np.exp(-1j * phi_b), np.exp(1j * phi_b)])
    row_in = row_out @ t.matrix
    row_vac = row_out @ t.vacuum_matrix if t.vacuum_matrix is not None else None
    return row_in, row_vac


def joint_quadrature_variance(t: ModeTransform, det: DetectionConfig) -> float:
    """Variance of j = j_f + j_b for coherent inputs and vacuum loss modes.

    For a Hermitian linear form sum_m (c_m a_m + conj(c_m) a_m^dag) over
    coherent-state modes the variance is sum_m |c_m|^2.  At zero coupling the
    value is the shot reference 2 exactly.
    """
    row_in, row_vac = _detector_row(t, det)
    var = float(np.sum(np.abs(row_in[0::2]) ** 2))
    if row_vac is not None:
        var += float(np.sum(np.abs(row_vac[0::2]) ** 2))
    return var


def quadrature_squeezing_db(t: ModeTransform, det: DetectionConfig) -> SqueezingResult:
    """Joint-quadrature squeezing 10 log10(variance / 2) in dB."""
    var = joint_quadrature_variance(t, det)
    return SqueezingResult(
        noise_variance=var,
        shot_noise_variance=JOINT_QUADRATURE_SHOT,
        squeezing_db=10 * np.log10(var / JOINT_QUADRATURE_SHOT),
        geometry=t.geometry,
        detection=Detection.JOINT_QUADRATURE,
    )


def pc_quadrature_variance_lossless(kappa_l: float, phase_diff: float,
                                    phase: complex = 1.0 + 0.0j) -> float:
    """Closed form 2 |sec + i e^{-i(theta_f - theta_b)} (kappa/|kappa|) tan|^2."""
    if kappa_l == 0:
        return 2.0
    s, t = 1 / np.cos(kappa_l), np.tan(kappa_l)
    return float(2 * np.abs(s + 1j * np.exp(-1j * phase_diff) * phase * t) ** 2)


def ffwm_quadrature_variance_lossless(nu_l: float, phase_sum: float,
                                      phase: complex = 1.0 + 0.0j) -> float:
    """Closed form 2 |-i cosh + e^{-i(theta_+ + theta_-)} (nu/|nu|) sinh|^2."""
    c, s = np.cosh(nu_l), np.sinh(nu_l)
    return float(2 * np.abs(-1j * c + np.exp(-1j * phase_sum) * phase * s) ** 2)


# ---------------------------------------------------------------------------
# photon-number statistics (exact Gaussian moments)
# ---------------------------------------------------------------------------

def _output_moments(t: ModeTransform, seed_photons: float):
    """Mean amplitudes and fluctuation moments N_pq, M_pq of the two outputs.

    The seed is a coherent state of |alpha|^2 = seed_photons on input mode 1;
    every other input (and loss port) is vacuum.  For rows r, s of the map,
    <(r.dv)(s.dv)> = sum over modes of r[annih] s[creat].
    """
    alpha_in = np.sqrt(seed_photons)
    a = t.matrix
    b = t.vacuum_matrix

    def pair(i, j):
        val = np.sum(a[i, 0::2] * a[j, 1::2])
        if b is not None:
            val += np.sum(b[i, 0::2] * b[j, 1::2])
        return val

    mean = a @ np.array([alpha_in, alpha_in, 0.0, 0.0])
    alphas = mean[0::2]
    n_mat = np.array([[pair(2 * p + 1, 2 * q) for q in range(2)] for p in range(2)])
    m_mat = np.array([[pair(2 * p, 2 * q) for q in range(2)] for p in range(2)])
    return alphas, n_mat, m_mat


def _photon_cov(alphas, n_mat, m_mat, p, q):
    """Exact Cov(n_p, n_q) of a Gaussian state from its moments."""
    val = 2 * (np.conj(alphas[p]) * np.conj(alphas[q]) * m_mat[p, q]
               + np.conj(alphas[p]) * alphas[q] * n_mat[q, p]).real
    val += float((np.abs(m_mat[p, q]) ** 2 + n_mat[p, q] * n_mat[q, p]).real)
    if p == q:
        val += float(np.abs(alphas[p]) ** 2 + n_mat[p, p].real)
    return val


def output_photon_numbers(t: ModeTransform, det: DetectionConfig) -> tuple[float, float]:
    """Mean photon numbers (n_f, n_b) of the two outputs for a seeded input."""
    alphas, n_mat, _ = _output_moments(t, det.seed_photons)
    return (float(np.abs(alphas[0]) ** 2 + n_mat[0, 0].real),
            float(np.abs(alphas[1]) ** 2 + n_mat[1, 1].real))


def intensity_diff_statistics(t: ModeTransform, det: DetectionConfig) -> tuple[float, float]:
    """(variance of n_f - n_b, shot noise <n_f> + <n_b>) via the matrix moments.

    Generic over any transform but subject to cancellation at very large
    coupling; :func:`intensity_diff_exact` is the reduced, numerically stable
    form for the standard mixer-plus-loss chain.
    """
    alphas, n_mat, m_mat = _output_moments(t, det.seed_photons)
    var = (_photon_cov(alphas, n_mat, m_mat, 0, 0)
           + _photon_cov(alphas, n_mat, m_mat, 1, 1)
           - 2 * _photon_cov(alphas, n_mat, m_mat, 0, 1))
    shot = float(np.abs(alphas[0]) ** 2 + n_mat[0, 0].real
                 + np.abs(alphas[1]) ** 2 + n_mat[1, 1].real)
    return var, shot


def _seeded_pair_conversion(c: CouplingStrength) -> float:
    """Pair-conversion weight W: tan^2(|kappa|L) or sinh^2(|nu|L)."""
    if c.geometry is Geometry.PHASE_CONJUGATE:
        return float(np.tan(c.magnitude_l) ** 2)
    return float(np.sinh(c.magnitude_l) ** 2)


def intensity_diff_exact(c: CouplingStrength, loss: LossChannel,
                         seed_photons: float) -> tuple[float, float]:
    """Exact (variance of n_f - n_b, shot noise) for the seeded lossy mixer.

    Reduction of the Gaussian photon-number moments using sec^2 - tan^2 = 1
    (cosh^2 - sinh^2 = 1), leaving only sums of non-negative terms in the
    pair-conversion weight W = tan^2 (sinh^2):

        var  = g [ef + c1 W + c2 W^2] + (ef + eb - 2 ef eb) W + (ef - eb)^2 W^2
        shot = g ef (1 + W) + [ef + eb (g + 1)] W

    with c1 = ef + eb + 2 ef^2 - 4 ef eb and c2 = 2 (ef - eb)^2.  Exact for
    every seed strength and loss split, and free of the exponential
    cancellation the raw moment expansion suffers at large coupling.
    """
    g = seed_photons
    ef, eb = loss.eta_f, loss.eta_b
    w = _seeded_pair_conversion(c)
    c1 = ef + eb + 2 * ef ** 2 - 4 * ef * eb
    c2 = 2 * (ef - eb) ** 2
    var = g * (ef + c1 * w + c2 * w ** 2) \
        + (ef + eb - 2 * ef * eb) * w + (ef - eb) ** 2 * w ** 2
    shot = g * ef * (1 + w) + (ef + eb * (g + 1)) * w
    return float(var), float(shot)


def intensity_diff_squeezing_db(c: CouplingStrength, loss: LossChannel,
                                det: DetectionConfig) -> SqueezingResult:
    """Intensity-difference squeezing 10 log10(var / shot) in dB.

    Uses the exact reduced statistics of :func:`intensity_diff_exact`, valid
    at every seed strength: the bright-seed closed forms are the
    seed -> inf limit, and at zero seed the exact vacuum-seeded statistics
    are returned.  With no output photons at all (e.g. full loss) the level
    is 0 dB by convention; a strictly zero noise variance with finite shot
    noise (lossless vacuum-seeded pair correlation) gives -inf dB.
    """
    var, shot = intensity_diff_exact(c, loss, det.seed_photons)
    if shot <= 0:
        db = 0.0
    elif var <= 0:
        var = max(var, 0.0)
        db = float("-inf")
    else:
        db = float(10 * np.log10(var / shot))
    return SqueezingResult(
        noise_variance=float(var), shot_noise_variance=shot, squeezing_db=db,
        geometry=c.geometry, detection=Detection.INTENSITY_DIFFERENCE,
    )


# ---------------------------------------------------------------------------
# bright-seed closed forms
# ---------------------------------------------------------------------------

def pc_intensity_diff_ratio_seeded(kappa_l: float, seed_photons: float) -> float:
    """Lossless single-seeded noise/shot ratio g / (g sec^2 + (g + 2) tan^2)."""
    s2 = 1 / np.cos(kappa_l) ** 2
    t2 = np.tan(kappa_l) ** 2
    return float(seed_photons / (seed_photons * s2 + (seed_photons + 2) * t2))


def pc_intensity_diff_db_bright(kappa_l: float, eta: float) -> float:
    """Bright-seed lossy level 10 log10[1 - eta (2 + 4 / (cos(2|kappa|L) - 3))]."""
    return float(10 * np.log10(1 - eta * (2 + 4 / (np.cos(2 * kappa_l) - 3))))


def ffwm_intensity_diff_db_bright(nu_l: float, eta: float = 1.0) -> float:
    """Bright-seed forward level 10 log10[1 - eta + eta sech(2|nu|L)]."""
    return float(10 * np.log10(1 - eta + eta / np.cosh(2 * nu_l)))
