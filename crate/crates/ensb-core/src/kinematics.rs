//! Relativistic kinematics in natural units: electron/photon states, the
//! interference-region geometry, resonance frequencies, the resonance
//! parameter, and the transit width.
//!
//! Frame convention: the common wave direction is **n** = +z, so
//! n = (1; 0, 0, 1) and (n p) = E - p_z. Azimuths are measured from +x.

use alloc::vec::Vec;

use crate::constants::ELECTRON_MASS_EV;
use crate::error::{Error, Result};
use crate::fourvec::FourVector;
use crate::math;

pub use crate::fourvec::minkowski_dot;

/// Safety factor applied to the order-of-magnitude small-angle gate.
pub const SMALL_ANGLE_SAFETY_FACTOR: f64 = 10.0;

/// Light-like four-vector of the common wave direction, n = (1; 0, 0, 1).
pub const fn wave_direction() -> FourVector {
    FourVector::new(1.0, 0.0, 0.0, 1.0)
}

/// Electron described by energy, momentum magnitude, and direction angles
/// relative to the wave direction **n** = +z.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElectronState {
    /// Total energy E (eV).
    pub energy: f64,
    /// Momentum magnitude |p| (eV).
    pub momentum: f64,
    /// Polar angle theta with respect to **n** (rad).
    pub polar: f64,
    /// Azimuth phi from +x (rad).
    pub azimuth: f64,
}

impl ElectronState {
    /// Electron of total energy `energy_ev` > m.
    pub fn from_energy(energy_ev: f64, polar: f64, azimuth: f64) -> Result<Self> {
        let m = ELECTRON_MASS_EV;
        if !(energy_ev > m) {
            return Err(Error::Domain {
                what: "electron total energy must exceed the rest mass",
                value: energy_ev,
            });
        }
        let momentum = math::sqrt((energy_ev - m) * (energy_ev + m));
        Ok(Self {
            energy: energy_ev,
            momentum,
            polar,
            azimuth,
        })
    }

    /// Electron of velocity `v` in [0, 1).
    pub fn from_velocity(v: f64, polar: f64, azimuth: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::Domain {
                what: "electron velocity must lie in [0, 1)",
                value: v,
            });
        }
        let gamma = 1.0 / math::sqrt((1.0 - v) * (1.0 + v));
        let energy = gamma * ELECTRON_MASS_EV;
        Ok(Self {
            energy,
            momentum: energy * v,
            polar,
            azimuth,
        })
    }

    /// v = |p|/E.
    pub fn velocity(&self) -> f64 {
        self.momentum / self.energy
    }

    /// Four-momentum p = (E; p sin theta cos phi, p sin theta sin phi, p cos theta).
    pub fn four_vector(&self) -> FourVector {
        let (sp, cp) = math::sin_cos(self.azimuth);
        let (st, ct) = math::sin_cos(self.polar);
        FourVector::new(
            self.energy,
            self.momentum * st * cp,
            self.momentum * st * sp,
            self.momentum * ct,
        )
    }

    /// Light-front projection (n p) = E - p_z.
    pub fn np(&self) -> f64 {
        self.energy - self.momentum * math::cos(self.polar)
    }
}

/// Direction of an emitted photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonDirection {
    /// Polar angle theta' with respect to **n** (rad), in [0, pi].
    pub polar: f64,
    /// Azimuth phi' from +x (rad).
    pub azimuth: f64,
}

impl PhotonDirection {
    /// Light-like unit four-vector n' = (1; **n**').
    pub fn unit_four_vector(&self) -> FourVector {
        let (sp, cp) = math::sin_cos(self.azimuth);
        let (st, ct) = math::sin_cos(self.polar);
        FourVector::new(1.0, st * cp, st * sp, ct)
    }
}

/// Light-like photon four-vector k' = omega' n'.
pub fn photon_four_vector(omega_prime: f64, dir: &PhotonDirection) -> FourVector {
    omega_prime * dir.unit_four_vector()
}

/// The geometry parameter a = |p| sin theta / (n p).
pub fn a_parameter(state: &ElectronState) -> Result<f64> {
    let np = state.np();
    if np <= 0.0 {
        return Err(Error::Domain {
            what: "(n p) must be positive (massive electron, v < 1)",
            value: np,
        });
    }
    Ok(state.momentum * math::sin(state.polar) / np)
}

/// Photon direction in the interference region: cot(theta'/2) = a_i, phi' = phi_i.
pub fn interference_photon_angle(state: &ElectronState) -> Result<PhotonDirection> {
    let a = a_parameter(state)?;
    Ok(PhotonDirection {
        polar: 2.0 * math::atan2(1.0, a),
        azimuth: state.azimuth,
    })
}

/// Final polar angles satisfying a_f = a_i at energy `e_f` (azimuth is the
/// initial azimuth). Both branches are returned, ordered by |theta_f - theta_i|.
pub fn interference_final_polar(initial: &ElectronState, e_f: f64) -> Result<Vec<f64>> {
    let m = ELECTRON_MASS_EV;
    if !(e_f > m) {
        return Err(Error::Domain {
            what: "final electron energy must exceed the rest mass",
            value: e_f,
        });
    }
    let a = a_parameter(initial)?;
    let p_f = math::sqrt((e_f - m) * (e_f + m));
    // a_f = a  <=>  sin theta + a cos theta = a E_f / |p_f|
    let c = a * e_f / p_f;
    let r = math::sqrt(1.0 + a * a);
    let mut roots: Vec<f64> = Vec::new();
    if a == 0.0 {
        roots.push(0.0);
        roots.push(core::f64::consts::PI);
    } else if c <= r {
        let psi = math::atan2(a, 1.0);
        let s0 = math::asin(c / r);
        for cand in [s0 - psi, core::f64::consts::PI - s0 - psi] {
            if (-1e-12..=core::f64::consts::PI + 1e-12).contains(&cand) {
                roots.push(cand.clamp(0.0, core::f64::consts::PI));
            }
        }
        roots.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    }
    if roots.is_empty() {
        return Err(Error::Domain {
            what: "no final polar angle satisfies a_f = a_i at this energy",
            value: e_f,
        });
    }
    roots.sort_by(|x, y| {
        let dx = math::abs(x - initial.polar);
        let dy = math::abs(y - initial.polar);
        dx.partial_cmp(&dy).unwrap()
    });
    Ok(roots)
}

/// Classification of a (s1, s2) channel by its combined energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelClass {
    /// Energy drawn from wave 1 only.
    SingleWave1,
    /// Energy drawn from wave 2 only.
    SingleWave2,
    /// Correlated absorption from both waves at omega_plus.
    Sum,
    /// Absorption from one wave, emission into the other, at omega_minus.
    Difference,
    /// Any other integer combination.
    Other,
}

/// Classify the photon-number pair (s1, s2).
pub fn classify_channel(s1: i32, s2: i32) -> ChannelClass {
    match (s1, s2) {
        (s, 0) if s != 0 => ChannelClass::SingleWave1,
        (0, s) if s != 0 => ChannelClass::SingleWave2,
        (a, b) if a == b && a != 0 => ChannelClass::Sum,
        (a, b) if a == -b && a != 0 => ChannelClass::Difference,
        _ => ChannelClass::Other,
    }
}

/// Combined energy omega = s1 omega1 + s2 omega2 drawn from the two waves.
///
/// Requires omega1 > omega2 > 0; a non-positive result is flagged as a
/// non-resonant channel.
pub fn combined_energy(s1: i32, s2: i32, omega1: f64, omega2: f64) -> Result<f64> {
    if !(omega1 > omega2 && omega2 > 0.0) {
        return Err(Error::Domain {
            what: "wave frequencies must satisfy omega1 > omega2 > 0",
            value: if omega2 > 0.0 { omega1 } else { omega2 },
        });
    }
    let omega = s1 as f64 * omega1 + s2 as f64 * omega2;
    if omega <= 0.0 {
        return Err(Error::NonResonant { omega });
    }
    Ok(omega)
}

/// Intermediate-electron four-momentum q_i = p_i - k' + s1 k1 + s2 k2.
pub fn intermediate_momentum(
    p_i: &FourVector,
    k_prime: &FourVector,
    s1: i32,
    s2: i32,
    k1: &FourVector,
    k2: &FourVector,
) -> FourVector {
    *p_i - *k_prime + s1 as f64 * *k1 + s2 as f64 * *k2
}

/// Unshifted resonance frequency omega'_i = omega (n p_i)/(n' p_i).
pub fn resonant_frequency_unshifted(
    p_i: &FourVector,
    n_prime: &FourVector,
    omega: f64,
) -> Result<f64> {
    let npp = n_prime.dot(p_i);
    if npp <= 0.0 {
        return Err(Error::Domain {
            what: "(n' p_i) must be positive",
            value: npp,
        });
    }
    Ok(omega * wave_direction().dot(p_i) / npp)
}

/// Resonance frequency of the spontaneous photon,
/// omega'_res = omega'_i / (1 + d_i) with d_i = omega (n n')/(n' p_i).
///
/// This is the exact root of the intermediate-electron mass-shell condition
/// q_i^2 = m^2.
pub fn resonant_frequency(p_i: &FourVector, n_prime: &FourVector, omega: f64) -> Result<f64> {
    let npp = n_prime.dot(p_i);
    if npp <= 0.0 {
        return Err(Error::Domain {
            what: "(n' p_i) must be positive",
            value: npp,
        });
    }
    let d_i = omega * wave_direction().dot(n_prime) / npp;
    Ok(resonant_frequency_unshifted(p_i, n_prime, omega)? / (1.0 + d_i))
}

/// Resonance frequency in the interference region, expressed through the
/// initial-electron parameters: omega (1 + a^2)/(1 - a^2 + 2 a cot theta).
///
/// (Equivalent to the unshifted frequency evaluated at cot(theta'/2) = a;
/// the recoil shift d_i is not included.)
pub fn resonant_frequency_interference(a_i: f64, theta_i: f64, omega: f64) -> Result<f64> {
    let denom = 1.0 - a_i * a_i + 2.0 * a_i / math::tan(theta_i);
    if math::abs(denom) < 1e-300 {
        return Err(Error::Singular {
            what: "interference resonance-frequency denominator vanishes",
        });
    }
    Ok(omega * (1.0 + a_i * a_i) / denom)
}

/// Resonance parameter beta_i = (1 - omega'/omega'_res) * omega tau / 2.
pub fn resonance_parameter(omega_prime: f64, omega_prime_res: f64, omega: f64, tau: f64) -> f64 {
    (1.0 - omega_prime / omega_prime_res) * omega * tau / 2.0
}

/// Transit width of the resonance, Gamma = sqrt(2) omega'_res / (omega tau).
pub fn transit_width(omega_prime_res: f64, omega: f64, tau: f64) -> f64 {
    core::f64::consts::SQRT_2 * omega_prime_res / (omega * tau)
}

/// Order-of-magnitude lower bound on the electron scattering angle below which
/// the interference treatment does not apply:
/// theta_min ~ (1 - (n p_i)/E_i) * omega_pm / |p_i|, clamped at 0.
///
/// Callers should compare against [`SMALL_ANGLE_SAFETY_FACTOR`] times this.
pub fn small_angle_threshold(p_i: &FourVector, omega_pm: f64) -> f64 {
    let pmag = p_i.spatial_norm();
    let raw = (1.0 - wave_direction().dot(p_i) / p_i.t) * omega_pm / pmag;
    raw.max(0.0)
}

/// True when the scattering angle is safely above the small-angle gate.
pub fn scattering_angle_is_safe(theta: f64, threshold: f64) -> bool {
    theta > SMALL_ANGLE_SAFETY_FACTOR * threshold
}

/// Relativistic-invariant parameters u = 2 omega (n p_i)/m^2, u' = (n k')/(n q_i).
pub fn u_invariants(
    omega: f64,
    p_i: &FourVector,
    k_prime: &FourVector,
    q_i: &FourVector,
) -> Result<(f64, f64)> {
    let n = wave_direction();
    let nq = n.dot(q_i);
    if nq <= 0.0 {
        return Err(Error::Domain {
            what: "(n q_i) must be positive",
            value: nq,
        });
    }
    let m = ELECTRON_MASS_EV;
    let u = 2.0 * omega * n.dot(p_i) / (m * m);
    let u_prime = n.dot(k_prime) / nq;
    Ok((u, u_prime))
}

/// One resonance channel with its derived quantities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonanceChannel {
    pub s1: i32,
    pub s2: i32,
    /// omega = s1 omega1 + s2 omega2 (eV).
    pub combined_energy: f64,
    /// omega'_res (eV).
    pub resonant_frequency: f64,
    /// beta_i at the evaluated omega'.
    pub resonance_parameter: f64,
    /// Gamma (eV).
    pub transit_width: f64,
}

impl ResonanceChannel {
    /// Assemble the channel quantities for photon direction n' and evaluated
    /// spontaneous-photon energy omega'.
    pub fn build(
        s1: i32,
        s2: i32,
        omega1: f64,
        omega2: f64,
        p_i: &FourVector,
        n_prime: &FourVector,
        tau: f64,
        omega_prime: f64,
    ) -> Result<Self> {
        let omega = combined_energy(s1, s2, omega1, omega2)?;
        let w_res = resonant_frequency(p_i, n_prime, omega)?;
        Ok(Self {
            s1,
            s2,
            combined_energy: omega,
            resonant_frequency: w_res,
            resonance_parameter: resonance_parameter(omega_prime, w_res, omega, tau),
            transit_width: transit_width(w_res, omega, tau),
        })
    }
}
