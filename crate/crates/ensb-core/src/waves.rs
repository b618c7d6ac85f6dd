//! Laser-field description: intensity parameters, pulse envelopes,
//! combination frequencies, and the multiphoton arguments (gamma, chi, alpha)
//! at both diagram vertices.
//!
//! Polarization basis: e_1x = +x, e_1y = +y; the wave-2 basis is rotated by
//! the angle Delta about the propagation axis z.

use num_complex::Complex64;

use crate::constants::{ELECTRON_MASS_EV, HBAR_C_EV_CM};
use crate::error::{Error, Result};
use crate::fourvec::{ComplexFourVector, FourVector};
use crate::math;

/// Hard upper bound on the intensity parameter (moderately strong fields).
pub const ETA_MAX: f64 = 0.3;
/// Intensity above which a perturbative-quality warning applies.
pub const ETA_WARN: f64 = 0.1;
/// omega*tau below which the quasimonochromatic assumption is rejected.
pub const OMEGA_TAU_MIN: f64 = 1.0;
/// omega*tau below which a warning applies.
pub const OMEGA_TAU_WARN: f64 = 10.0;

/// Pulse envelope shape (extension point; only Gaussian is implemented).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Envelope {
    #[default]
    Gaussian,
}

/// One circularly polarized pulsed wave.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaserWave {
    /// Carrier frequency (eV).
    pub omega: f64,
    /// Dimensionless intensity parameter eta0.
    pub eta0: f64,
    /// Circular polarization handedness, +1 or -1.
    pub delta: i8,
    /// Pulse width tau (eV^-1).
    pub tau: f64,
    pub envelope: Envelope,
}

impl LaserWave {
    pub fn new(omega: f64, eta0: f64, delta: i8, tau: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::Domain {
                what: "wave frequency must be positive",
                value: omega,
            });
        }
        if !(0.0..ETA_MAX).contains(&eta0) {
            return Err(Error::Domain {
                what: "intensity parameter must satisfy 0 <= eta0 < 0.3",
                value: eta0,
            });
        }
        if delta != 1 && delta != -1 {
            return Err(Error::Domain {
                what: "polarization handedness must be +1 or -1",
                value: delta as f64,
            });
        }
        if !(tau > 0.0) || omega * tau < OMEGA_TAU_MIN {
            return Err(Error::Domain {
                what: "pulse must be quasimonochromatic (omega*tau >= 1)",
                value: omega * tau,
            });
        }
        Ok(Self {
            omega,
            eta0,
            delta,
            tau,
            envelope: Envelope::Gaussian,
        })
    }

    /// True when eta0 exceeds the moderately-strong-field comfort zone.
    pub fn strong_field_warning(&self) -> bool {
        self.eta0 > ETA_WARN
    }

    /// True when omega*tau is below the recommended margin.
    pub fn quasimono_warning(&self) -> bool {
        quasimono_margin(self.omega, self.tau) < OMEGA_TAU_WARN
    }
}

/// Two co-propagating pulsed waves with polarization axes at angle Delta.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoWaveField {
    pub wave1: LaserWave,
    pub wave2: LaserWave,
    /// Angle between e_1x and e_2x (rad).
    pub delta_angle: f64,
}

impl TwoWaveField {
    pub fn new(wave1: LaserWave, wave2: LaserWave, delta_angle: f64) -> Result<Self> {
        if !(wave1.omega > wave2.omega) {
            return Err(Error::Domain {
                what: "wave frequencies must satisfy omega1 > omega2",
                value: wave2.omega,
            });
        }
        Ok(Self {
            wave1,
            wave2,
            delta_angle,
        })
    }

    /// True for the counter-rotating configuration delta1 = -delta2 = +1, the
    /// only one for which the resonant cross sections are implemented.
    pub fn is_counter_rotating(&self) -> bool {
        self.wave1.delta == 1 && self.wave2.delta == -1
    }
}

/// Intensity parameter eta0 = e F0/(m omega) from a field strength in V/cm.
pub fn eta_from_field_strength(f0_v_per_cm: f64, omega_ev: f64) -> Result<f64> {
    if !(f0_v_per_cm > 0.0 && omega_ev > 0.0) {
        return Err(Error::Domain {
            what: "field strength and frequency must be positive",
            value: if omega_ev > 0.0 { f0_v_per_cm } else { omega_ev },
        });
    }
    Ok(f0_v_per_cm * HBAR_C_EV_CM / (ELECTRON_MASS_EV * omega_ev))
}

/// Field strength in V/cm from the intensity parameter (inverse of
/// [`eta_from_field_strength`]).
pub fn field_strength_from_eta(eta0: f64, omega_ev: f64) -> f64 {
    eta0 * ELECTRON_MASS_EV * omega_ev / HBAR_C_EV_CM
}

/// Quasimonochromaticity margin omega*tau.
pub fn quasimono_margin(omega: f64, tau: f64) -> f64 {
    omega * tau
}

/// Gaussian pulse envelope g(phi) = exp(-phi^2).
pub fn envelope_gaussian(phi: f64) -> f64 {
    math::exp(-phi * phi)
}

/// Combination frequencies (omega_plus, omega_minus) = (omega1 +- omega2).
pub fn combination_frequencies(field: &TwoWaveField) -> (f64, f64) {
    (
        field.wave1.omega + field.wave2.omega,
        field.wave1.omega - field.wave2.omega,
    )
}

/// Selects which combination frequency an interference parameter refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrequencySign {
    Plus,
    Minus,
}

/// The four-momentum ratio difference Q = p/(np) - p'/(np') (dimensionless).
fn q_ratio(p: &FourVector, p_prime: &FourVector) -> Result<FourVector> {
    let n = crate::kinematics::wave_direction();
    let np = n.dot(p);
    let npp = n.dot(p_prime);
    if np <= 0.0 || npp <= 0.0 {
        return Err(Error::Domain {
            what: "(n p) and (n p') must be positive",
            value: if np > 0.0 { npp } else { np },
        });
    }
    Ok((1.0 / np) * *p - (1.0 / npp) * *p_prime)
}

/// Bunkin-Fedorov multiphoton parameter gamma0j = eta0j (m/omega_j) sqrt(-Q^2).
///
/// -Q^2 is clamped to 0 within 1e-12 of zero; values below -1e-9 indicate a
/// numerical inconsistency and are rejected.
pub fn gamma0_general(
    eta0j: f64,
    omega_j: f64,
    p: &FourVector,
    p_prime: &FourVector,
) -> Result<f64> {
    let q = q_ratio(p, p_prime)?;
    let mut mq2 = -q.square();
    if mq2 < -1e-9 {
        return Err(Error::Inconsistent {
            what: "-Q^2 must be non-negative for physical momenta",
            value: mq2,
        });
    }
    if mq2 < 0.0 {
        mq2 = 0.0;
    }
    Ok(eta0j * (ELECTRON_MASS_EV / omega_j) * math::sqrt(mq2))
}

/// Phase angles chi1, chi2 of the transverse part of Q.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiPhases {
    pub chi1: f64,
    pub chi2: f64,
    /// True when |Q_perp| vanishes (interference region): the phases are
    /// undefined but multiply vanishing gamma parameters.
    pub degenerate: bool,
}

/// chi1 = atan2 of the transverse Q components in the wave-1 basis;
/// chi2 = chi1 - Delta.
pub fn chi_phases(p: &FourVector, p_prime: &FourVector, delta_angle: f64) -> Result<ChiPhases> {
    let q = q_ratio(p, p_prime)?;
    let perp = math::hypot(q.x, q.y);
    if perp < 1e-14 {
        return Ok(ChiPhases {
            chi1: 0.0,
            chi2: -delta_angle,
            degenerate: true,
        });
    }
    let chi1 = math::atan2(q.y, q.x);
    Ok(ChiPhases {
        chi1,
        chi2: chi1 - delta_angle,
        degenerate: false,
    })
}

/// Interference multiphoton parameter
/// alpha0_pm = eta01 eta02 m^2/(omega1 +- omega2) * (1/(np) - 1/(np')).
pub fn alpha0_general(
    field: &TwoWaveField,
    sign: FrequencySign,
    p: &FourVector,
    p_prime: &FourVector,
) -> Result<f64> {
    let n = crate::kinematics::wave_direction();
    let np = n.dot(p);
    let npp = n.dot(p_prime);
    if np <= 0.0 || npp <= 0.0 {
        return Err(Error::Domain {
            what: "(n p) and (n p') must be positive",
            value: if np > 0.0 { npp } else { np },
        });
    }
    let (wp, wm) = combination_frequencies(field);
    let w = match sign {
        FrequencySign::Plus => wp,
        FrequencySign::Minus => wm,
    };
    let m = ELECTRON_MASS_EV;
    Ok(field.wave1.eta0 * field.wave2.eta0 * m * m / w * (1.0 / np - 1.0 / npp))
}

/// Multiphoton parameters at one vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexParams {
    pub gamma01: f64,
    pub gamma02: f64,
    pub alpha0_plus: f64,
    pub alpha0_minus: f64,
    pub chi1: f64,
    pub chi2: f64,
}

impl VertexParams {
    /// Attach phase angles computed separately via [`chi_phases`].
    pub fn with_phases(mut self, chi1: f64, chi2: f64) -> Self {
        self.chi1 = chi1;
        self.chi2 = chi2;
        self
    }
}

/// Emission-vertex parameters in terms of the invariants u, u':
/// gamma0j = 2 eta0j (omega/omega_j) sqrt((u'/u)(1 - u'/u)),
/// alpha0_pm = 2 eta01 eta02 (omega/omega_pm) (u'/u).
pub fn emission_vertex_params(
    omega: f64,
    u: f64,
    u_prime: f64,
    field: &TwoWaveField,
) -> Result<VertexParams> {
    if !(u > 0.0) {
        return Err(Error::Domain {
            what: "invariant u must be positive",
            value: u,
        });
    }
    if !(0.0..=u).contains(&u_prime) {
        return Err(Error::Domain {
            what: "invariant u' must lie in [0, u]",
            value: u_prime,
        });
    }
    let r = u_prime / u;
    let root = math::sqrt((r * (1.0 - r)).max(0.0));
    let (wp, wm) = combination_frequencies(field);
    Ok(VertexParams {
        gamma01: 2.0 * field.wave1.eta0 * (omega / field.wave1.omega) * root,
        gamma02: 2.0 * field.wave2.eta0 * (omega / field.wave2.omega) * root,
        alpha0_plus: 2.0 * field.wave1.eta0 * field.wave2.eta0 * (omega / wp) * r,
        alpha0_minus: 2.0 * field.wave1.eta0 * field.wave2.eta0 * (omega / wm) * r,
        chi1: 0.0,
        chi2: 0.0,
    })
}

/// Scattering-vertex Bunkin-Fedorov parameters
/// gamma0j = eta0j (m/omega_j) sqrt(a_i^2 + a_f^2 - 2 a_i a_f cos dphi).
pub fn scattering_vertex_gamma(
    field: &TwoWaveField,
    a_i: f64,
    a_f: f64,
    delta_phi: f64,
) -> (f64, f64) {
    let tri = (a_i * a_i + a_f * a_f - 2.0 * a_i * a_f * math::cos(delta_phi)).max(0.0);
    let root = math::sqrt(tri);
    let m = ELECTRON_MASS_EV;
    (
        field.wave1.eta0 * (m / field.wave1.omega) * root,
        field.wave2.eta0 * (m / field.wave2.omega) * root,
    )
}

/// Transverse polarization basis vector e_jx for wave j (1-based), rotated by
/// Delta for wave 2.
pub fn basis_ex(j: usize, delta_angle: f64) -> FourVector {
    match j {
        1 => FourVector::new(0.0, 1.0, 0.0, 0.0),
        _ => {
            let (s, c) = math::sin_cos(delta_angle);
            FourVector::new(0.0, c, s, 0.0)
        }
    }
}

/// Transverse polarization basis vector e_jy.
pub fn basis_ey(j: usize, delta_angle: f64) -> FourVector {
    match j {
        1 => FourVector::new(0.0, 0.0, 1.0, 0.0),
        _ => {
            let (s, c) = math::sin_cos(delta_angle);
            FourVector::new(0.0, -s, c, 0.0)
        }
    }
}

/// Circular polarization vector eps_j^(-) = e_jx - i delta_j e_jy.
pub fn eps_minus(wave_index: usize, delta_j: i8, delta_angle: f64) -> ComplexFourVector {
    let ex = basis_ex(wave_index, delta_angle);
    let ey = basis_ey(wave_index, delta_angle);
    let i_delta = Complex64::new(0.0, -(delta_j as f64));
    ComplexFourVector::from_real(&ex) + ComplexFourVector::from_real(&ey).scale(i_delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::tau_ev_inv_from_ps;
    use crate::kinematics::{
        a_parameter, intermediate_momentum, photon_four_vector,
        resonant_frequency, u_invariants, wave_direction, ElectronState,
    };

    fn fig_field() -> TwoWaveField {
        let tau = tau_ev_inv_from_ps(0.1);
        TwoWaveField::new(
            LaserWave::new(2.35, 0.1, 1, tau).unwrap(),
            LaserWave::new(1.0, 0.1, -1, tau).unwrap(),
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn wave_validation() {
        let tau = tau_ev_inv_from_ps(0.1);
        assert!(LaserWave::new(2.35, 0.5, 1, tau).is_err());
        assert!(LaserWave::new(2.35, 0.1, 0, tau).is_err());
        assert!(LaserWave::new(1.0, 0.1, 1, 0.5).is_err()); // omega*tau < 1
        let w = LaserWave::new(2.35, 0.2, 1, tau).unwrap();
        assert!(w.strong_field_warning());
        assert!(!w.quasimono_warning());
        // ordering enforced
        assert!(TwoWaveField::new(
            LaserWave::new(1.0, 0.1, 1, tau).unwrap(),
            LaserWave::new(2.35, 0.1, -1, tau).unwrap(),
            0.0
        )
        .is_err());
        assert!(fig_field().is_counter_rotating());
    }

    #[test]
    fn eta_field_strength_round_trip() {
        // eta0 = 0.1 at omega = 1 eV corresponds to ~2.59e9 V/cm
        let f0 = field_strength_from_eta(0.1, 1.0);
        assert!((f0 - 2.59e9).abs() / 2.59e9 < 1e-3, "f0 = {f0:e}");
        let eta = eta_from_field_strength(f0, 1.0).unwrap();
        assert!((eta - 0.1).abs() < 1e-14);
        // linear in F0
        assert!(
            (eta_from_field_strength(2.0 * f0, 1.0).unwrap() - 0.2).abs() < 1e-14
        );
        // the stated upper bound on moderately strong optical fields keeps eta < 1
        assert!(eta_from_field_strength(1e10, 2.35).unwrap() < 1.0);
    }

    #[test]
    fn quasimono_values() {
        let tau = tau_ev_inv_from_ps(0.1);
        assert!((quasimono_margin(2.35, tau) - 357.0).abs() < 0.2);
        assert!((quasimono_margin(1.0, tau) - 151.9).abs() < 0.1);
    }

    #[test]
    fn envelope_properties() {
        assert_eq!(envelope_gaussian(0.0), 1.0);
        assert!((envelope_gaussian(1.0) - 1.0 / core::f64::consts::E).abs() < 1e-15);
        for phi in [0.3, 1.7, 4.0] {
            assert_eq!(envelope_gaussian(phi), envelope_gaussian(-phi));
            assert!(envelope_gaussian(phi) > 0.0 && envelope_gaussian(phi) <= 1.0);
        }
    }

    #[test]
    fn combination_frequency_values() {
        let (wp, wm) = combination_frequencies(&fig_field());
        assert!((wp - 3.35).abs() < 1e-12 && (wm - 1.35).abs() < 1e-12);
        assert!(wp > wm && wm > 0.0);
    }

    #[test]
    fn gamma_zero_in_interference_region_and_symmetry() {
        let s_i = ElectronState::from_energy(1.02e6, crate::constants::deg_to_rad(163.0), 0.0)
            .unwrap();
        let a_i = a_parameter(&s_i).unwrap();
        // final state on the a_f = a_i branch with the same azimuth
        let p_i = s_i.four_vector();
        let p_f = p_i; // elastic, same angles: exact interference geometry
        let g = gamma0_general(0.1, 2.35, &p_i, &p_f).unwrap();
        assert!(g.abs() <= 1e-10);
        // scattering-vertex parametrization agrees
        let (g1, _) = scattering_vertex_gamma(&fig_field(), a_i, a_i, 0.0);
        assert!(g1.abs() <= 1e-10);
        // generic geometry: gamma ~ eta m/omega ~ 1e4..1e5 scale
        let s_f = ElectronState::from_energy(1.02e6, crate::constants::deg_to_rad(120.0), 0.4)
            .unwrap();
        let g_gen = gamma0_general(0.1, 2.35, &p_i, &s_f.four_vector()).unwrap();
        assert!(g_gen > 1e3 && g_gen < 1e6, "gamma = {g_gen:e}");
        // symmetry under p <-> p'
        let g_swap = gamma0_general(0.1, 2.35, &s_f.four_vector(), &p_i).unwrap();
        assert!((g_gen - g_swap).abs() <= 1e-10 * g_gen);
    }

    #[test]
    fn chi_phase_basics() {
        // Q along e_1x: slow electron displaced in +x only
        let p = FourVector::new(1.02e6, 3.0e4, 0.0, 1.0e4);
        let pp = FourVector::new(1.02e6, 1.0e4, 0.0, 1.0e4);
        let ph = chi_phases(&p, &pp, 0.7).unwrap();
        assert!(!ph.degenerate);
        assert!(ph.chi1.abs() < 1e-12);
        assert!((ph.chi2 - (ph.chi1 - 0.7)).abs() < 1e-15);
        // Q along e_1y
        let py = FourVector::new(1.02e6, 0.0, 3.0e4, 1.0e4);
        let ppy = FourVector::new(1.02e6, 0.0, 1.0e4, 1.0e4);
        let phy = chi_phases(&py, &ppy, 0.0).unwrap();
        assert!((phy.chi1 - core::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(phy.chi1, phy.chi2);
        // degenerate flag when p' = p
        assert!(chi_phases(&p, &p, 0.0).unwrap().degenerate);
    }

    #[test]
    fn alpha_antisymmetry_and_scale() {
        let field = fig_field();
        let p = ElectronState::from_velocity(0.1, 2.0, 0.0).unwrap().four_vector();
        let pp = ElectronState::from_velocity(0.12, 2.5, 0.3).unwrap().four_vector();
        let a = alpha0_general(&field, FrequencySign::Plus, &p, &pp).unwrap();
        let b = alpha0_general(&field, FrequencySign::Plus, &pp, &p).unwrap();
        assert!((a + b).abs() <= 1e-12 * a.abs().max(1e-300));
        assert_eq!(alpha0_general(&field, FrequencySign::Plus, &p, &p).unwrap(), 0.0);
        // scattering-vertex magnitude scale ~ eta1 eta2 m/omega_pm times O(v) factors
        assert!(a.abs() > 1.0, "alpha = {a:e}");
    }

    #[test]
    fn emission_vertex_limits() {
        let field = fig_field();
        let omega = 2.35;
        let u = 9.2e-6;
        // u' = u: gamma = 0, alpha_plus = 2 eta1 eta2 omega/omega_plus
        let v = emission_vertex_params(omega, u, u, &field).unwrap();
        assert_eq!(v.gamma01, 0.0);
        assert_eq!(v.gamma02, 0.0);
        let expect = 2.0 * 0.1 * 0.1 * omega / 3.35;
        assert!((v.alpha0_plus - expect).abs() < 1e-15);
        // u' = 0: all zero
        let v0 = emission_vertex_params(omega, u, 0.0, &field).unwrap();
        assert_eq!(
            (v0.gamma01, v0.gamma02, v0.alpha0_plus, v0.alpha0_minus),
            (0.0, 0.0, 0.0, 0.0)
        );
        // magnitude hierarchy: alpha ~ eta1 eta2, gamma <~ eta
        let vh = emission_vertex_params(omega, u, 0.5 * u, &field).unwrap();
        assert!(vh.gamma01 <= 2.0 * 0.1);
        assert!(vh.alpha0_plus <= 2.0 * 0.01);
        assert!(emission_vertex_params(omega, 0.0, 0.0, &field).is_err());
    }

    #[test]
    fn emission_vertex_matches_general_at_resonance() {
        // gamma/alpha from the invariant form vs the general (q_i, p_i) form
        let field = fig_field();
        let s = ElectronState::from_energy(1.02e6, crate::constants::deg_to_rad(163.0), 0.0)
            .unwrap();
        let p_i = s.four_vector();
        let n = wave_direction();
        // generic (non-interference) photon direction so gamma != 0
        let dir = crate::kinematics::PhotonDirection {
            polar: 1.1,
            azimuth: 0.3,
        };
        let omega = 2.35;
        let w_res = resonant_frequency(&p_i, &dir.unit_four_vector(), omega).unwrap();
        let k_prime = photon_four_vector(w_res, &dir);
        let q_i = intermediate_momentum(&p_i, &k_prime, 1, 0, &(omega * n), &(0.0 * n));
        let (u, u_prime) = u_invariants(omega, &p_i, &k_prime, &q_i).unwrap();
        let v = emission_vertex_params(omega, u, u_prime.min(u), &field).unwrap();
        let g1 = gamma0_general(field.wave1.eta0, field.wave1.omega, &q_i, &p_i).unwrap();
        let a_p = alpha0_general(&field, FrequencySign::Plus, &q_i, &p_i).unwrap();
        assert!(
            (v.gamma01 - g1).abs() <= 1e-8 * g1.abs().max(1e-300),
            "gamma invariant {} vs general {}",
            v.gamma01,
            g1
        );
        assert!(
            (v.alpha0_plus.abs() - a_p.abs()).abs() <= 1e-8 * a_p.abs().max(1e-300),
            "alpha invariant {} vs general {}",
            v.alpha0_plus,
            a_p
        );
    }

    #[test]
    fn scattering_vertex_triangle() {
        let field = fig_field();
        let (g1, g2) = scattering_vertex_gamma(&field, 0.02, 0.0, 0.0);
        let m = ELECTRON_MASS_EV;
        assert!((g1 - 0.1 * (m / 2.35) * 0.02).abs() < 1e-9 * g1);
        assert!((g2 - 0.1 * (m / 1.0) * 0.02).abs() < 1e-9 * g2);
        let (t1, _) = scattering_vertex_gamma(&field, 0.02, 0.03, 1.0);
        assert!(t1 <= 0.1 * (m / 2.35) * 0.05 + 1e-12);
    }

    #[test]
    fn eps_minus_structure() {
        let e1 = eps_minus(1, 1, 0.0);
        assert_eq!(e1.x, Complex64::new(1.0, 0.0));
        assert_eq!(e1.y, Complex64::new(0.0, -1.0));
        let e2 = eps_minus(2, -1, 0.0);
        assert_eq!(e2.x, Complex64::new(1.0, 0.0));
        assert_eq!(e2.y, Complex64::new(0.0, 1.0));
        // null transverse vectors: eps . eps = 0, eps . conj(eps) = -2
        let self_dot = e1.dot(&e1);
        assert!(self_dot.norm() < 1e-14);
        let norm_dot = e1.dot(&e1.conj());
        assert!((norm_dot - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
    }
}
