import numpy as np
import pytest

from dfwm.errors import AboveThresholdError, PhysicsDomainError
from dfwm.fwmcoupling import CouplingStrength, Geometry
from dfwm.quantumnoise import (
    COMMUTATOR_METRIC,
    Detection,
    DetectionConfig,
    LossChannel,
    apply_loss,
    ffwm_intensity_diff_db_bright,
    ffwm_mode_transform,
    ffwm_quadrature_variance_lossless,
    intensity_diff_squeezing_db,
    intensity_diff_statistics,
    joint_quadrature_variance,
    mode_transform,
    output_photon_numbers,
    pc_intensity_diff_db_bright,
    pc_intensity_diff_ratio_seeded,
    pc_mode_transform,
    pc_quadrature_variance_lossless,
    quadrature_squeezing_db,
)


def pc(kl, phase=1.0 + 0.0j):
    return CouplingStrength.from_magnitude(Geometry.PHASE_CONJUGATE, kl, phase)


def fwd(nl, phase=1.0 + 0.0j):
    return CouplingStrength.from_magnitude(Geometry.FORWARD, nl, phase)


def quad_det(theta_f=0.0, theta_b=0.0):
    return DetectionConfig(Detection.JOINT_QUADRATURE, theta_f=theta_f,
                           theta_b=theta_b)


def id_det(gamma):
    return DetectionConfig(Detection.INTENSITY_DIFFERENCE, seed_photons=gamma)


# ---------------------------------------------------------------------------
# mode transforms
# ---------------------------------------------------------------------------

def test_pc_transform_identity_at_zero_coupling():
    t = pc_mode_transform(pc(0.0))
    np.testing.assert_allclose(t.matrix, np.eye(4), atol=1e-15)


def test_pc_transform_entries():
    kl = np.pi / 4
    t = pc_mode_transform(pc(kl))
    s, tn = 1 / np.cos(kl), np.tan(kl)
    expected = np.array([
        [s, 0, 0, 1j * tn],
        [0, s, -1j * tn, 0],
        [0, 1j * tn, s, 0],
        [-1j * tn, 0, 0, s],
    ])
    np.testing.assert_allclose(t.matrix, expected, atol=1e-15)


def test_pc_transform_threshold():
    with pytest.raises(AboveThresholdError):
        pc_mode_transform(pc(np.pi / 2))


def test_transforms_preserve_commutators():
    rng = np.random.default_rng(3)
    for _ in range(50):
        kl = rng.uniform(0, np.pi / 2 - 1e-3)
        phase = np.exp(2j * np.pi * rng.uniform())
        assert pc_mode_transform(pc(kl, phase)).commutator_defect() < 1e-12
    for _ in range(50):
        nl = rng.uniform(0, 3.0)
        phase = np.exp(2j * np.pi * rng.uniform())
        assert ffwm_mode_transform(fwd(nl, phase)).commutator_defect() < 1e-12


def test_lossy_transform_preserves_commutators():
    rng = np.random.default_rng(4)
    for _ in range(50):
        t = mode_transform(pc(rng.uniform(0, 1.5)))
        lossy = apply_loss(t, LossChannel(rng.uniform(), rng.uniform()))
        assert lossy.commutator_defect() < 1e-12


def test_transform_conjugate_row_pairing():
    for t in (pc_mode_transform(pc(0.7, np.exp(0.3j))),
              ffwm_mode_transform(fwd(1.2, np.exp(-1.1j)))):
        m = t.matrix
        swap = [1, 0, 3, 2]
        np.testing.assert_allclose(m[1], np.conj(m[0][swap]), atol=1e-15)
        np.testing.assert_allclose(m[3], np.conj(m[2][swap]), atol=1e-15)


def test_single_output_quadrature_is_thermal():
    # variance of one output quadrature alone: (1/4)(sec^2 + tan^2)
    from dfwm.mcoracle import AffineModeMap, GaussianState, JointQuadrature, propagate
    kl = np.pi / 4
    t = pc_mode_transform(pc(kl))
    state = propagate(GaussianState.vacuum(2), AffineModeMap.from_transform(t))
    x_f_var = state.covariance[0, 0]
    expected = 0.25 * (1 / np.cos(kl) ** 2 + np.tan(kl) ** 2)
    assert x_f_var == pytest.approx(expected, rel=1e-12)
    assert x_f_var == pytest.approx(0.75, rel=1e-12)


def test_ffwm_vacuum_photon_number():
    nl = 0.8
    t = ffwm_mode_transform(fwd(nl))
    n_f, n_b = output_photon_numbers(t, id_det(0.0))
    assert n_f == pytest.approx(np.sinh(nl) ** 2, rel=1e-12)
    assert n_b == pytest.approx(np.sinh(nl) ** 2, rel=1e-12)


def test_apply_loss_validates_eta():
    with pytest.raises(PhysicsDomainError):
        LossChannel(1.2, 0.5)
    with pytest.raises(PhysicsDomainError):
        LossChannel(0.5, -0.1)


# ---------------------------------------------------------------------------
# joint quadrature
# ---------------------------------------------------------------------------

def test_quadrature_shot_reference_at_zero_coupling():
    t = pc_mode_transform(pc(0.0))
    assert joint_quadrature_variance(t, quad_det(0.3, 1.2)) == pytest.approx(2.0)
    assert quadrature_squeezing_db(t, quad_det()).squeezing_db == 0.0


def test_pc_quadrature_closed_form_checkpoint():
    # theta_f - theta_b = 3 pi/2, |kappa|L = pi/4: 2 (sec - tan)^2
    t = pc_mode_transform(pc(np.pi / 4))
    var = joint_quadrature_variance(t, quad_det(theta_f=3 * np.pi / 2))
    assert var == pytest.approx(2 * (np.sqrt(2) - 1) ** 2, rel=1e-12)
    assert var == pytest.approx(0.3431, rel=1e-3)
    db = quadrature_squeezing_db(t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db
    assert db == pytest.approx(-7.6555137067572616, abs=1e-9)


def test_pc_quadrature_matches_printed_form_over_phases():
    kl = 1.1
    phase = np.exp(0.45j)
    t = pc_mode_transform(pc(kl, phase))
    for theta_f in np.linspace(0, 2 * np.pi, 7):
        for theta_b in np.linspace(0, 2 * np.pi, 7):
            var = joint_quadrature_variance(t, quad_det(theta_f, theta_b))
            closed = pc_quadrature_variance_lossless(kl, theta_f - theta_b, phase)
            assert var == pytest.approx(closed, rel=1e-12)


def test_ffwm_quadrature_matches_printed_form_over_phases():
    nl = 0.9
    phase = np.exp(-0.8j)
    t = ffwm_mode_transform(fwd(nl, phase))
    for theta_f in np.linspace(0, 2 * np.pi, 7):
        for theta_b in np.linspace(0, 2 * np.pi, 7):
            var = joint_quadrature_variance(t, quad_det(theta_f, theta_b))
            closed = ffwm_quadrature_variance_lossless(nl, theta_f + theta_b, phase)
            assert var == pytest.approx(closed, rel=1e-12)


def test_ffwm_quadrature_optimal_phase_checkpoint():
    # theta_+ + theta_- = 3 pi/2 at |nu|L = 1: 2 e^{-2}
    t = ffwm_mode_transform(fwd(1.0))
    var = joint_quadrature_variance(t, quad_det(theta_f=3 * np.pi / 2))
    assert var == pytest.approx(2 * np.exp(-2), rel=1e-12)
    db = quadrature_squeezing_db(t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db
    assert db == pytest.approx(-8.6858896380650366, abs=1e-9)


def test_quadrature_phase_periodicity():
    t = pc_mode_transform(pc(0.6))
    for d in np.linspace(0, 2 * np.pi, 9):
        a = joint_quadrature_variance(t, quad_det(theta_f=d))
        b = joint_quadrature_variance(t, quad_det(theta_f=d + 2 * np.pi))
        assert a == pytest.approx(b, rel=1e-12)
    tf = ffwm_mode_transform(fwd(0.8))
    for d in np.linspace(0, 2 * np.pi, 9):
        a = joint_quadrature_variance(tf, quad_det(theta_f=d, theta_b=0.3))
        b = joint_quadrature_variance(tf, quad_det(theta_f=d, theta_b=0.3 + 2 * np.pi))
        assert a == pytest.approx(b, rel=1e-12)


def test_quadrature_near_threshold_depth():
    kl = np.pi / 2 - 1e-3
    t = pc_mode_transform(pc(kl))
    db = quadrature_squeezing_db(t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db
    assert db < -30


def test_lossy_quadrature_reduces_to_lossless_and_vacuum():
    t = pc_mode_transform(pc(0.9))
    det = quad_det(theta_f=3 * np.pi / 2)
    lossless = joint_quadrature_variance(t, det)
    same = joint_quadrature_variance(apply_loss(t, LossChannel(1.0, 1.0)), det)
    assert same == pytest.approx(lossless, rel=1e-12)
    dead = joint_quadrature_variance(apply_loss(t, LossChannel(0.0, 0.0)), det)
    assert dead == pytest.approx(2.0, rel=1e-12)


def test_lossy_quadrature_interpolates_linearly_in_eta():
    t = pc_mode_transform(pc(0.9))
    det = quad_det(theta_f=3 * np.pi / 2)
    lossless = joint_quadrature_variance(t, det)
    for eta in (0.3, 0.7):
        var = joint_quadrature_variance(apply_loss(t, LossChannel(eta, eta)), det)
        assert var == pytest.approx(eta * lossless + 2 * (1 - eta), rel=1e-12)


def test_quadrature_seed_independent():
    # the joint-measurement noise does not depend on the seed strength
    t = pc_mode_transform(pc(0.7))
    base = joint_quadrature_variance(t, quad_det(0.4, 1.0))
    for gamma in (0.0, 1.0, 1e3, 1e6):
        det = DetectionConfig(Detection.JOINT_QUADRATURE, theta_f=0.4,
                              theta_b=1.0, seed_photons=gamma)
        assert joint_quadrature_variance(t, det) == base


# ---------------------------------------------------------------------------
# intensity difference
# ---------------------------------------------------------------------------

def test_id_lossless_noise_equals_seed_both_geometries():
    det = id_det(250.0)
    for coupling in (pc(0.9), fwd(1.3)):
        t = mode_transform(coupling)
        var, _ = intensity_diff_statistics(t, det)
        assert var == pytest.approx(250.0, rel=1e-10)


def test_id_single_seeded_shot_noise():
    # gamma = 100 at |kappa|L = pi/4: shot = 100 sec^2 + 102 tan^2 = 302
    t = pc_mode_transform(pc(np.pi / 4))
    _, shot = intensity_diff_statistics(t, id_det(100.0))
    assert shot == pytest.approx(302.0, rel=1e-12)
    n_f, n_b = output_photon_numbers(t, id_det(100.0))
    assert n_f + n_b == pytest.approx(shot, rel=1e-12)
    assert n_f == pytest.approx(100 * 2 + 1, rel=1e-12)
    assert n_b == pytest.approx(101 * 1, rel=1e-12)


def test_id_zero_coupling_photon_numbers():
    t = pc_mode_transform(pc(0.0))
    assert output_photon_numbers(t, id_det(42.0)) == pytest.approx((42.0, 0.0))


def test_id_vacuum_seeded_pair_photons():
    kl = 0.8
    t = pc_mode_transform(pc(kl))
    n_f, n_b = output_photon_numbers(t, id_det(0.0))
    assert n_f == pytest.approx(np.tan(kl) ** 2, rel=1e-12)
    assert n_b == pytest.approx(np.tan(kl) ** 2, rel=1e-12)


def test_id_exact_form_matches_matrix_moments():
    # the reduced closed form agrees with the generic matrix-moment route
    from dfwm.quantumnoise import intensity_diff_exact
    rng = np.random.default_rng(17)
    for _ in range(40):
        geometry = rng.choice([Geometry.PHASE_CONJUGATE, Geometry.FORWARD])
        mag = rng.uniform(0.05, 1.4 if geometry is Geometry.PHASE_CONJUGATE else 2.0)
        c = CouplingStrength.from_magnitude(geometry, mag,
                                            np.exp(2j * np.pi * rng.uniform()))
        loss = LossChannel(rng.uniform(), rng.uniform())
        gamma = rng.choice([0.0, 1.0, 37.5, 1e4])
        t = apply_loss(mode_transform(c), loss)
        var_m, shot_m = intensity_diff_statistics(t, id_det(gamma))
        var_s, shot_s = intensity_diff_exact(c, loss, gamma)
        assert var_s == pytest.approx(var_m, rel=1e-9, abs=1e-9)
        assert shot_s == pytest.approx(shot_m, rel=1e-12, abs=1e-12)


def test_id_forward_saturates_without_overflow():
    # huge coupling: the reduced form saturates at 1 - eta cleanly
    from dfwm.quantumnoise import intensity_diff_exact
    c = CouplingStrength.from_magnitude(Geometry.FORWARD, 50.0)
    var, shot = intensity_diff_exact(c, LossChannel(0.7, 0.7), 1e6)
    assert np.isfinite(var) and np.isfinite(shot)
    assert var / shot == pytest.approx(0.3, rel=1e-6)


def test_id_matches_seeded_ratio_closed_form():
    kl = np.pi / 3
    for gamma in (1.0, 10.0, 1e4):
        result = intensity_diff_squeezing_db(pc(kl), LossChannel(), id_det(gamma))
        expected = 10 * np.log10(pc_intensity_diff_ratio_seeded(kl, gamma))
        assert result.squeezing_db == pytest.approx(expected, rel=1e-10)


def test_id_checkpoint_pc():
    # gamma >> 1, |kappa|L = pi/3 -> 10 log10(1/7)
    db = intensity_diff_squeezing_db(pc(np.pi / 3), LossChannel(),
                                     id_det(1e12)).squeezing_db
    assert db == pytest.approx(-8.4509804001425683, abs=1e-9)


def test_id_checkpoint_forward():
    # cosh(2|nu|L) = 2 at eta = 1 -> 10 log10(1/2)
    nl = float(np.arccosh(2.0) / 2)
    db = intensity_diff_squeezing_db(fwd(nl), LossChannel(), id_det(1e12)).squeezing_db
    assert db == pytest.approx(-3.010299956639812, abs=1e-9)


def test_id_bright_limit_formulas_match_exact_path():
    gamma = 1e10
    for kl in (0.3, 0.9, 1.4):
        for eta in (1.0, 0.7, 0.3):
            exact = intensity_diff_squeezing_db(
                pc(kl), LossChannel(eta, eta), id_det(gamma)).squeezing_db
            assert exact == pytest.approx(
                pc_intensity_diff_db_bright(kl, eta), abs=1e-6)
    for nl in (0.4, 1.0, 2.0):
        for eta in (1.0, 0.7, 0.3):
            exact = intensity_diff_squeezing_db(
                fwd(nl), LossChannel(eta, eta), id_det(gamma)).squeezing_db
            assert exact == pytest.approx(
                ffwm_intensity_diff_db_bright(nl, eta), abs=1e-6)


def test_id_bright_pc_lossless_identity():
    # the eta = 1 loss formula equals the gamma -> inf lossless limit
    for kl in np.linspace(1e-3, np.pi / 2 - 1e-3, 100):
        lossy_form = pc_intensity_diff_db_bright(kl, 1.0)
        limit = 10 * np.log10(np.cos(kl) ** 2 / (1 + np.sin(kl) ** 2))
        assert lossy_form == pytest.approx(limit, abs=1e-10)


def test_id_full_loss_is_shot_limited():
    for coupling in (pc(0.9), fwd(1.1)):
        result = intensity_diff_squeezing_db(coupling, LossChannel(0.0, 0.0),
                                             id_det(1e6))
        assert result.squeezing_db == 0.0
        assert result.shot_noise_variance == pytest.approx(0.0, abs=1e-6)


def test_id_vacuum_seeded_lossless_is_perfectly_correlated():
    result = intensity_diff_squeezing_db(pc(0.9), LossChannel(), id_det(0.0))
    assert result.noise_variance == pytest.approx(0.0, abs=1e-9)
    assert result.shot_noise_variance == pytest.approx(2 * np.tan(0.9) ** 2, rel=1e-12)
    assert result.squeezing_db == float("-inf")


def test_id_zero_coupling_zero_seed_convention():
    result = intensity_diff_squeezing_db(pc(0.0), LossChannel(), id_det(0.0))
    assert result.squeezing_db == 0.0


# ---------------------------------------------------------------------------
# cross-detection and loss-monotonicity properties
# ---------------------------------------------------------------------------

def test_optimal_quadrature_at_least_as_squeezed_as_intensity_difference():
    gamma = 1e6
    for kl in np.linspace(0.05, 1.5, 15):
        for eta in (1.0, 0.7, 0.4):
            t = apply_loss(pc_mode_transform(pc(kl)), LossChannel(eta, eta))
            mq = quadrature_squeezing_db(t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db
            mid = intensity_diff_squeezing_db(pc(kl), LossChannel(eta, eta),
                                              id_det(gamma)).squeezing_db
            assert mq <= mid + 1e-9
    for nl in np.linspace(0.05, 2.5, 15):
        for eta in (1.0, 0.7, 0.4):
            t = apply_loss(ffwm_mode_transform(fwd(nl)), LossChannel(eta, eta))
            mq = quadrature_squeezing_db(t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db
            mid = intensity_diff_squeezing_db(fwd(nl), LossChannel(eta, eta),
                                              id_det(gamma)).squeezing_db
            assert mq <= mid + 1e-9


def test_squeezing_monotone_in_loss():
    etas = np.linspace(1.0, 0.0, 11)
    for coupling in (pc(1.0), fwd(1.2)):
        mq = []
        mid = []
        for eta in etas:
            t = apply_loss(mode_transform(coupling), LossChannel(eta, eta))
            mq.append(quadrature_squeezing_db(
                t, quad_det(theta_f=3 * np.pi / 2)).squeezing_db)
            mid.append(intensity_diff_squeezing_db(
                coupling, LossChannel(eta, eta), id_det(1e6)).squeezing_db)
        assert np.all(np.diff(mq) >= -1e-12)
        assert np.all(np.diff(mid) >= -1e-12)
        assert mq[-1] == pytest.approx(0.0, abs=1e-12)


def test_detection_config_validation():
    with pytest.raises(PhysicsDomainError):
        DetectionConfig(Detection.INTENSITY_DIFFERENCE, seed_photons=-1.0)
