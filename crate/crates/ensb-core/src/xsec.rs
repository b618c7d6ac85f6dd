//! Physics observables: emission probabilities, resonance peak profiles,
//! Mott and Bethe-Heitler baselines, partial/summed/integrated resonant
//! cross sections, and the enhancement ratio R over the field-free process.
//!
//! All cross sections are differential in the stated variables and carry
//! natural units (powers of eV); lengths are eV^-1, areas eV^-2.

use alloc::vec::Vec;
use core::cell::Cell;

use num_complex::Complex64;

use crate::constants::{CLASSICAL_ELECTRON_RADIUS, ELECTRON_MASS_EV, FINE_STRUCTURE_ALPHA};
use crate::error::{Error, Result};
use crate::fourvec::{ComplexFourVector, FourVector};
use crate::kinematics::{
    a_parameter, combined_energy, interference_photon_angle, intermediate_momentum,
    photon_four_vector, resonant_frequency, u_invariants, wave_direction,
    ElectronState, PhotonDirection,
};
use crate::math;
use crate::quad;
use crate::specfun::erf::complex_erf;
use crate::specfun::series::{i_two_wave, IArgs, RotationSign, SeriesControl};
use crate::waves::{
    alpha0_general, chi_phases, emission_vertex_params, envelope_gaussian, eps_minus,
    scattering_vertex_gamma, FrequencySign, TwoWaveField, VertexParams,
};

/// Absolute quadrature tolerance for the profile integrals.
pub const PROFILE_QUAD_TOL: f64 = 1e-9;

/// Resonance channel (s1, s2): net photon numbers drawn from the two waves
/// at the emission vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// (s1, s2) = (1, 0): one photon from wave 1.
    S10,
    /// (s1, s2) = (0, 1): one photon from wave 2.
    S01,
    /// (s1, s2) = (1, 1): correlated photons from both waves.
    S11,
}

impl Channel {
    pub fn indices(self) -> (i32, i32) {
        match self {
            Channel::S10 => (1, 0),
            Channel::S01 => (0, 1),
            Channel::S11 => (1, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Channel::S10 => "(1,0)",
            Channel::S01 => "(0,1)",
            Channel::S11 => "(1,1)",
        }
    }

    /// All implemented channels.
    pub const ALL: [Channel; 3] = [Channel::S10, Channel::S01, Channel::S11];
}

/// Arguments of a resonance-profile evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileParams {
    /// Resonance parameter beta.
    pub beta: f64,
    /// Observation-window ratio rho = T/tau.
    pub rho: f64,
    pub channel: Channel,
}

/// |e^{-s} (erf(z) + 1)|^2 factor of the profile integrand for the given
/// channel. The detuning damping e^{-beta^2} (resp. e^{-beta^2/2}) is folded
/// into the erf factor before squaring: |erf(phi + i beta)| grows like
/// e^{beta^2 - phi^2}, so the damped product stays O(1) and the absolute
/// quadrature tolerance remains meaningful at large detuning.
fn profile_erf_factor(channel: Channel, phi: f64, beta: f64) -> f64 {
    let (z, damp) = match channel {
        Channel::S10 | Channel::S01 => (Complex64::new(phi, beta), beta * beta),
        Channel::S11 => (
            Complex64::new(
                core::f64::consts::SQRT_2 * phi,
                beta / core::f64::consts::SQRT_2,
            ),
            0.5 * beta * beta,
        ),
    };
    let scale = math::exp(-damp);
    let w = (complex_erf(z) + 1.0) * scale;
    if w.is_finite() {
        return w.norm_sqr();
    }
    // The erf overflowed (|Im z| very large); use the asymptotic tail
    // erf(z) -> 1 - e^{-z^2}/(sqrt(pi) z) for Re z > 0, with the odd
    // reflection for Re z < 0. The damped combination is finite.
    let sqrt_pi = 1.772453850905516_f64;
    let tail = (-(z * z) - damp).exp() / (sqrt_pi * z);
    let w = if z.re >= 0.0 {
        Complex64::new(2.0 * scale, 0.0) - tail
    } else {
        -tail
    };
    w.norm_sqr()
}

/// Channel-dependent prefactor of the profile integral (the detuning
/// exponential lives inside `profile_erf_factor`).
fn profile_prefactor(channel: Channel, rho: f64) -> f64 {
    match channel {
        Channel::S10 | Channel::S01 => 1.0 / (4.0 * rho),
        Channel::S11 => 1.0 / (8.0 * rho),
    }
}

/// Resonance peak profile P_res(beta, rho), summed over all stimulated
/// partial processes.
pub fn profile_res(params: &ProfileParams) -> Result<f64> {
    if !(params.rho > 0.0) {
        return Err(Error::Domain {
            what: "observation-window ratio rho must be positive",
            value: params.rho,
        });
    }
    let (beta, rho, channel) = (params.beta, params.rho, params.channel);
    let integral = quad::integrate(
        |phi| profile_erf_factor(channel, phi, beta),
        -rho,
        rho,
        PROFILE_QUAD_TOL,
    )?;
    Ok(profile_prefactor(channel, rho) * integral.value)
}

/// Partial resonance profile P_{l1 l2}: one term of the sum over stimulated
/// photon numbers at the scattering vertex, with envelope-modulated series
/// arguments gamma_j(phi) = gamma0j g(phi), alpha(phi) = alpha0 g(phi)^2.
pub fn profile_partial(
    l1: i64,
    l2: i64,
    channel: Channel,
    beta: f64,
    rho: f64,
    base: &IArgs,
    ctrl: &SeriesControl,
) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain {
            what: "observation-window ratio rho must be positive",
            value: rho,
        });
    }
    let (s1, s2) = channel.indices();
    let n1 = l1 + s1 as i64;
    let n2 = l2 + s2 as i64;
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |phi: f64| -> f64 {
        let g = envelope_gaussian(phi);
        let args = IArgs {
            gamma1: base.gamma1 * g,
            gamma2: base.gamma2 * g,
            alpha: base.alpha * g * g,
            ..*base
        };
        match i_two_wave(n1, n2, &args, ctrl) {
            Ok(v) => profile_erf_factor(channel, phi, beta) * v.norm_sqr(),
            Err(e) => {
                if failure.get().is_none() {
                    failure.set(Some(e));
                }
                0.0
            }
        }
    };
    let integral = quad::integrate(integrand, -rho, rho, PROFILE_QUAD_TOL)?;
    if let Some(e) = failure.get() {
        return Err(e);
    }
    Ok(profile_prefactor(channel, rho) * integral.value)
}

/// The bracket of the second-order emission factor for the single-wave
/// channels: W''_{1,0} = eta01^2 [1 + u'^2/(2(1+u')) - (4u'/u)(1 - u'/u)].
pub fn w2_10(eta0j: f64, u: f64, u_prime: f64) -> f64 {
    let r = u_prime / u;
    eta0j
        * eta0j
        * (1.0 + u_prime * u_prime / (2.0 * (1.0 + u_prime)) - 4.0 * r * (1.0 - r))
}

/// The frequency factor u_omega = 1 - (omega^2/(omega1 omega2))(1 - u'/u).
pub fn u_omega(field: &TwoWaveField, omega: f64, u: f64, u_prime: f64) -> f64 {
    1.0 - omega * omega / (field.wave1.omega * field.wave2.omega) * (1.0 - u_prime / u)
}

/// The complex four-vector D entering the (1,1) channel:
/// D = -1/2 (eta01 e^{i chi2} gamma02 eps1^(-) + eta02 e^{i chi1} gamma01 eps2^(-)).
pub fn d_vector(field: &TwoWaveField, vertex: &VertexParams) -> ComplexFourVector {
    let e1 = eps_minus(1, field.wave1.delta, field.delta_angle);
    let e2 = eps_minus(2, field.wave2.delta, field.delta_angle);
    let c1 = Complex64::from_polar(field.wave1.eta0 * vertex.gamma02, vertex.chi2);
    let c2 = Complex64::from_polar(field.wave2.eta0 * vertex.gamma01, vertex.chi1);
    (e1.scale(c1) + e2.scale(c2)).scale(Complex64::new(-0.5, 0.0))
}

/// Full emission bracket for the (1,1) channel, including the D-dependent
/// terms that survive outside the interference region.
#[allow(clippy::too_many_arguments)]
pub fn w2_11_general(
    field: &TwoWaveField,
    u: f64,
    u_prime: f64,
    u_om: f64,
    p_i: &FourVector,
    q_i: &FourVector,
    vertex: &VertexParams,
) -> f64 {
    let m = ELECTRON_MASS_EV;
    let r = u_prime / u;
    let d = d_vector(field, vertex);
    let dc = d.conj();
    let dd = d.dot(&dc).re;
    let qd = dc.dot_real(q_i);
    let pd = dc.dot_real(p_i);
    let g = 1.0 + u_prime * u_prime / (2.0 * (1.0 + u_prime));
    // The first two canonical terms -4r^2 u_om^2 (1 - uu'/(2(1+u'))) + 4r u_om
    // are regrouped as 4r u_om (1 - r u_om) + 4r^2 u_om^2 uu'/(2(1+u')) to
    // avoid catastrophic cancellation near r = u_om = 1, where the closed
    // interference form 2 u'^2/(1+u') is tiny.
    let bracket = 4.0 * r * u_om * (1.0 - r * u_om)
        + 4.0 * r * r * u_om * u_om * u * u_prime / (2.0 * (1.0 + u_prime))
        - 0.5 * dd * g
        - 4.0 * u_prime * u_prime / (m * u) * u_om * (qd - pd / (1.0 + u_prime)).re;
    let e2 = field.wave1.eta0 * field.wave1.eta0 * field.wave2.eta0 * field.wave2.eta0;
    e2 * bracket
}

/// Evaluation regime of an emission probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    General,
    Interference,
}

/// Differential probability per unit time of spontaneous emission,
/// dW'/domega' dOmega'.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmissionProbability {
    pub value: f64,
    pub channel: Channel,
    pub regime: Regime,
}

/// Everything derived from (channel, initial state, photon direction).
struct ChannelContext {
    omega: f64,
    p_i: FourVector,
    q_i: FourVector,
    nq_i: f64,
    u: f64,
    u_prime: f64,
    omega_res: f64,
}

fn channel_context(
    channel: Channel,
    state_i: &ElectronState,
    omega_prime: f64,
    dir: &PhotonDirection,
    field: &TwoWaveField,
) -> Result<ChannelContext> {
    let (s1, s2) = channel.indices();
    let omega = combined_energy(s1, s2, field.wave1.omega, field.wave2.omega)?;
    let p_i = state_i.four_vector();
    let n_prime = dir.unit_four_vector();
    let omega_res = resonant_frequency(&p_i, &n_prime, omega)?;
    let k_prime = photon_four_vector(omega_prime, dir);
    let n = wave_direction();
    let q_i = intermediate_momentum(
        &p_i,
        &k_prime,
        s1,
        s2,
        &(field.wave1.omega * n),
        &(field.wave2.omega * n),
    );
    let nq_i = n.dot(&q_i);
    let (u, u_prime) = u_invariants(omega, &p_i, &k_prime, &q_i)?;
    Ok(ChannelContext {
        omega,
        p_i,
        q_i,
        nq_i,
        u,
        u_prime,
        omega_res,
    })
}

fn require_counter_rotating(field: &TwoWaveField) -> Result<()> {
    if !field.is_counter_rotating() {
        return Err(Error::Unsupported {
            what: "resonant observables are implemented for the counter-rotating \
                   configuration delta1 = -delta2 = +1 only",
        });
    }
    Ok(())
}

/// Emission probability dW'/domega' dOmega' = alpha m^2 W''/(4 pi E_i),
/// with W'' evaluated from the general (per-channel) bracket.
pub fn emission_probability(
    channel: Channel,
    state_i: &ElectronState,
    omega_prime: f64,
    dir: &PhotonDirection,
    field: &TwoWaveField,
) -> Result<EmissionProbability> {
    require_counter_rotating(field)?;
    let ctx = channel_context(channel, state_i, omega_prime, dir, field)?;
    let (u, mut u_prime) = (ctx.u, ctx.u_prime);
    if u_prime > u {
        if u_prime > u * (1.0 + 1e-2) {
            return Err(Error::Domain {
                what: "u' exceeds u beyond the resonance validity window",
                value: u_prime / u,
            });
        }
        u_prime = u;
    }
    let w2 = match channel {
        Channel::S10 => w2_10(field.wave1.eta0, u, u_prime),
        Channel::S01 => w2_10(field.wave2.eta0, u, u_prime),
        Channel::S11 => {
            let phases = chi_phases(&ctx.q_i, &ctx.p_i, field.delta_angle)?;
            let vertex = emission_vertex_params(ctx.omega, u, u_prime, field)?
                .with_phases(phases.chi1, phases.chi2);
            let u_om = u_omega(field, ctx.omega, u, u_prime);
            w2_11_general(field, u, u_prime, u_om, &ctx.p_i, &ctx.q_i, &vertex)
        }
    };
    let m = ELECTRON_MASS_EV;
    Ok(EmissionProbability {
        value: FINE_STRUCTURE_ALPHA * m * m * w2
            / (4.0 * core::f64::consts::PI * state_i.energy),
        channel,
        regime: Regime::General,
    })
}

/// Emission probability with the interference-region closed-form brackets
/// (the gamma-dependent terms dropped exactly).
pub fn emission_probability_interference(
    channel: Channel,
    state_i: &ElectronState,
    omega_prime: f64,
    dir: &PhotonDirection,
    field: &TwoWaveField,
) -> Result<EmissionProbability> {
    require_counter_rotating(field)?;
    let ctx = channel_context(channel, state_i, omega_prime, dir, field)?;
    let up = ctx.u_prime.min(ctx.u);
    let g = 1.0 + up * up / (2.0 * (1.0 + up));
    let m = ELECTRON_MASS_EV;
    let pref = FINE_STRUCTURE_ALPHA * m * m / (4.0 * core::f64::consts::PI * state_i.energy);
    let value = match channel {
        Channel::S10 => pref * field.wave1.eta0 * field.wave1.eta0 * g,
        Channel::S01 => pref * field.wave2.eta0 * field.wave2.eta0 * g,
        Channel::S11 => {
            let e2 =
                field.wave1.eta0 * field.wave1.eta0 * field.wave2.eta0 * field.wave2.eta0;
            // alpha m^2 eta1^2 eta2^2/(2 pi E_i) * u'^2/(1+u')
            2.0 * pref * e2 * up * up / (1.0 + up)
        }
    };
    Ok(EmissionProbability {
        value,
        channel,
        regime: Regime::Interference,
    })
}

/// Elastic electron-nucleus (Mott) cross section
/// dsigma/dOmega_f = (2 Z^2 r_e^2 m^2/|q|^4)(E_i E_f + m^2 + p_i.p_f).
pub fn mott(state_i: &ElectronState, state_f: &ElectronState, z: f64) -> Result<f64> {
    let p_i = state_i.four_vector();
    let p_f = state_f.four_vector();
    let q = p_f - p_i;
    let q2 = q.spatial_dot(&q);
    if q2 <= 0.0 {
        return Err(Error::Domain {
            what: "momentum transfer |q| must be nonzero (forward singularity)",
            value: q2,
        });
    }
    let m = ELECTRON_MASS_EV;
    let re = CLASSICAL_ELECTRON_RADIUS;
    Ok(2.0 * z * z * re * re * m * m / (q2 * q2)
        * (p_i.t * p_f.t + m * m + p_i.spatial_dot(&p_f)))
}

/// Partial scattering cross section with the intermediate electron in place
/// of the initial one: (2 Z^2 r_e^2 m^2/|q|^4)(m^2 + (q_i p_f) + 2 q_i.p_f).
pub fn scattering_partial(q_i: &FourVector, p_f: &FourVector, q: &FourVector, z: f64) -> Result<f64> {
    let q2 = q.spatial_dot(q);
    if q2 <= 0.0 {
        return Err(Error::Domain {
            what: "momentum transfer |q| must be nonzero (forward singularity)",
            value: q2,
        });
    }
    let m = ELECTRON_MASS_EV;
    let re = CLASSICAL_ELECTRON_RADIUS;
    Ok(2.0 * z * z * re * re * m * m / (q2 * q2)
        * (m * m + q_i.dot(p_f) + 2.0 * q_i.spatial_dot(p_f)))
}

/// Field-free photon-emission probability factor of the Bethe-Heitler cross
/// section, per unit domega' dOmega':
/// (alpha/4 pi^2) {q^2 - (n'.q)^2 m^2/(kappa'_i kappa'_f)}/(omega' kappa'_i kappa'_f).
pub fn bh_photon_probability(
    state_i: &ElectronState,
    state_f: &ElectronState,
    dir: &PhotonDirection,
    omega_prime: f64,
) -> Result<f64> {
    let p_i = state_i.four_vector();
    let p_f = state_f.four_vector();
    let n_prime = dir.unit_four_vector();
    let kappa_i = n_prime.dot(&p_i);
    let kappa_f = n_prime.dot(&p_f);
    if kappa_i <= 0.0 || kappa_f <= 0.0 {
        return Err(Error::Domain {
            what: "kappa'_{i,f} = E - n'.p must be positive",
            value: if kappa_i > 0.0 { kappa_f } else { kappa_i },
        });
    }
    let q = p_f - p_i;
    let q2 = q.spatial_dot(&q);
    let nq = n_prime.spatial_dot(&q);
    let m = ELECTRON_MASS_EV;
    let s = q2 - nq * nq * m * m / (kappa_i * kappa_f);
    Ok(FINE_STRUCTURE_ALPHA / (4.0 * core::f64::consts::PI * core::f64::consts::PI) * s
        / (omega_prime * kappa_i * kappa_f))
}

/// Field-free Bethe-Heitler cross section,
/// dsigma_BH/domega' dOmega' dOmega_f = mott * bh_photon_probability.
pub fn bethe_heitler(
    state_i: &ElectronState,
    state_f: &ElectronState,
    dir: &PhotonDirection,
    omega_prime: f64,
    z: f64,
) -> Result<f64> {
    Ok(mott(state_i, state_f, z)? * bh_photon_probability(state_i, state_f, dir, omega_prime)?)
}

/// Inputs shared by the resonant cross-section operations: initial electron,
/// final polar angle (same azimuth, elastic energy), field, nuclear charge,
/// and observation-window ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonantConfig {
    pub state_i: ElectronState,
    /// Final-electron polar angle (rad); azimuth equals the initial azimuth.
    pub theta_f: f64,
    pub field: TwoWaveField,
    /// Nuclear charge number.
    pub z: f64,
    /// rho = T/tau.
    pub rho: f64,
}

impl ResonantConfig {
    pub fn validate(&self) -> Result<()> {
        require_counter_rotating(&self.field)?;
        if self.field.wave1.tau != self.field.wave2.tau {
            return Err(Error::Unsupported {
                what: "the two pulses must share one duration (tau1 = tau2)",
            });
        }
        if !(self.rho > 0.0) {
            return Err(Error::Domain {
                what: "observation-window ratio rho must be positive",
                value: self.rho,
            });
        }
        if !(self.z > 0.0) {
            return Err(Error::Domain {
                what: "nuclear charge must be positive",
                value: self.z,
            });
        }
        Ok(())
    }

    /// Final electron in the elastic approximation (E_f = E_i).
    pub fn state_f(&self) -> ElectronState {
        ElectronState {
            energy: self.state_i.energy,
            momentum: self.state_i.momentum,
            polar: self.theta_f,
            azimuth: self.state_i.azimuth,
        }
    }

    fn tau(&self) -> f64 {
        self.field.wave1.tau
    }
}

/// A cross-section value with its per-channel decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossSectionResult {
    pub value: f64,
    /// Which variables the cross section is differential in.
    pub differential_with_respect_to: &'static str,
    pub channels: Vec<(Channel, f64)>,
}

impl CrossSectionResult {
    fn from_channels(differential: &'static str, channels: Vec<(Channel, f64)>) -> Self {
        let value = channels.iter().map(|(_, v)| v).sum();
        Self {
            value,
            differential_with_respect_to: differential,
            channels,
        }
    }
}

/// Resonant cross section summed over stimulated partial processes,
/// differential in omega', Omega', Omega_f:
/// dsigma_{s1 s2} = (E_i tau^2/2 (n q_i)^2) dsigma_Mott omega'_res dW' P_res.
pub fn resonant_summed_xsec(
    channels: &[Channel],
    cfg: &ResonantConfig,
    omega_prime: f64,
) -> Result<CrossSectionResult> {
    cfg.validate()?;
    let dir = interference_photon_angle(&cfg.state_i)?;
    let state_f = cfg.state_f();
    let mott_xs = mott(&cfg.state_i, &state_f, cfg.z)?;
    let tau = cfg.tau();
    let mut parts = Vec::with_capacity(channels.len());
    for &ch in channels {
        let ctx = channel_context(ch, &cfg.state_i, omega_prime, &dir, &cfg.field)?;
        let dw = emission_probability_interference(ch, &cfg.state_i, ctx.omega_res, &dir, &cfg.field)?;
        let beta = crate::kinematics::resonance_parameter(omega_prime, ctx.omega_res, ctx.omega, tau);
        let p_res = profile_res(&ProfileParams {
            beta,
            rho: cfg.rho,
            channel: ch,
        })?;
        let v = cfg.state_i.energy * tau * tau / (2.0 * ctx.nq_i * ctx.nq_i)
            * mott_xs
            * ctx.omega_res
            * dw.value
            * p_res;
        parts.push((ch, v));
    }
    Ok(CrossSectionResult::from_channels(
        "domega' dOmega' dOmega_f",
        parts,
    ))
}

/// Series arguments of the scattering vertex for the configured geometry,
/// built from the general multiphoton parameters on (p_i, p_f).
pub fn scattering_vertex_args(cfg: &ResonantConfig) -> Result<IArgs> {
    let state_f = cfg.state_f();
    let a_i = a_parameter(&cfg.state_i)?;
    let a_f = a_parameter(&state_f)?;
    let (gamma1, gamma2) = scattering_vertex_gamma(&cfg.field, a_i, a_f, 0.0);
    let p_i = cfg.state_i.four_vector();
    let p_f = state_f.four_vector();
    let alpha = alpha0_general(&cfg.field, FrequencySign::Plus, &p_i, &p_f)?;
    let phases = chi_phases(&p_i, &p_f, cfg.field.delta_angle)?;
    Ok(IArgs {
        chi1: phases.chi1,
        chi2: phases.chi2,
        gamma1,
        gamma2,
        alpha,
        delta_angle: cfg.field.delta_angle,
        rotation_sign: RotationSign::Plus,
    })
}

/// One stimulated partial process: dsigma = (omega' tau^2 E_i/2 (n q_i)^2)
/// dW' dsigma^(s) P_{l1 l2}.
pub fn resonant_partial_xsec(
    channel: Channel,
    l1: i64,
    l2: i64,
    cfg: &ResonantConfig,
    omega_prime: f64,
    ctrl: &SeriesControl,
) -> Result<CrossSectionResult> {
    cfg.validate()?;
    let dir = interference_photon_angle(&cfg.state_i)?;
    let state_f = cfg.state_f();
    let p_f = state_f.four_vector();
    let ctx = channel_context(channel, &cfg.state_i, omega_prime, &dir, &cfg.field)?;
    let q = p_f - ctx.q_i;
    let sigma_s = scattering_partial(&ctx.q_i, &p_f, &q, cfg.z)?;
    let dw = emission_probability_interference(channel, &cfg.state_i, ctx.omega_res, &dir, &cfg.field)?;
    let tau = cfg.tau();
    let beta = crate::kinematics::resonance_parameter(omega_prime, ctx.omega_res, ctx.omega, tau);
    let base = scattering_vertex_args(cfg)?;
    let p_l = profile_partial(l1, l2, channel, beta, cfg.rho, &base, ctrl)?;
    let v = omega_prime * tau * tau * cfg.state_i.energy / (2.0 * ctx.nq_i * ctx.nq_i)
        * dw.value
        * sigma_s
        * p_l;
    Ok(CrossSectionResult {
        value: v,
        differential_with_respect_to: "domega' dOmega' dOmega_f",
        channels: alloc::vec![(channel, v)],
    })
}

/// Resonant cross section integrated over the spontaneous-photon energy:
/// dsigma/dOmega' dOmega_f = sqrt(pi/2) E_i tau/(n q_i)^2 dsigma_Mott
///   * sum over single-wave channels of omega'_res^2 dW'/omega.
pub fn resonant_integrated_xsec(cfg: &ResonantConfig) -> Result<CrossSectionResult> {
    cfg.validate()?;
    let dir = interference_photon_angle(&cfg.state_i)?;
    let state_f = cfg.state_f();
    let mott_xs = mott(&cfg.state_i, &state_f, cfg.z)?;
    let tau = cfg.tau();
    let mut parts = Vec::with_capacity(2);
    for ch in [Channel::S10, Channel::S01] {
        let ctx = channel_context(ch, &cfg.state_i, 0.0, &dir, &cfg.field)?;
        // rebuild q_i at the channel's resonance frequency
        let ctx = channel_context(ch, &cfg.state_i, ctx.omega_res, &dir, &cfg.field)?;
        let dw = emission_probability_interference(ch, &cfg.state_i, ctx.omega_res, &dir, &cfg.field)?;
        let v = math::sqrt(core::f64::consts::PI / 2.0) * cfg.state_i.energy * tau
            / (ctx.nq_i * ctx.nq_i * ctx.omega)
            * mott_xs
            * ctx.omega_res
            * ctx.omega_res
            * dw.value;
        parts.push((ch, v));
    }
    Ok(CrossSectionResult::from_channels("dOmega' dOmega_f", parts))
}

/// Effective spontaneous-photon bandwidth of the field-free baseline used by
/// [`ratio_direct`], matched to the transit-broadened resonance.
pub fn bh_effective_bandwidth(tau: f64) -> f64 {
    4.0 / tau
}

/// Closed-form enhancement ratio for a single-wave channel:
/// R = (pi sqrt(2 pi)/8) eta0j^2 (omega_j tau)^2 (omega'_res/omega_j)
///     (m^2/p_i^2) f, with
/// f = (kappa'_f/kappa'_i) / [4 sin^2(theta/2)
///     - (cos theta'_f - cos theta'_i)^2 m^2/(kappa'_i kappa'_f)].
pub fn ratio_closed_form(channel: Channel, cfg: &ResonantConfig) -> Result<f64> {
    cfg.validate()?;
    let (eta, omega_j) = match channel {
        Channel::S10 => (cfg.field.wave1.eta0, cfg.field.wave1.omega),
        Channel::S01 => (cfg.field.wave2.eta0, cfg.field.wave2.omega),
        Channel::S11 => {
            return Err(Error::Unsupported {
                what: "the closed-form ratio is defined for the single-wave channels",
            })
        }
    };
    let dir = interference_photon_angle(&cfg.state_i)?;
    let p_i = cfg.state_i.four_vector();
    let n_prime = dir.unit_four_vector();
    let omega_res = resonant_frequency(&p_i, &n_prime, omega_j)?;
    let state_f = cfg.state_f();
    let p_f = state_f.four_vector();
    let kappa_i = n_prime.dot(&p_i);
    let kappa_f = n_prime.dot(&p_f);
    if kappa_i <= 0.0 || kappa_f <= 0.0 {
        return Err(Error::Domain {
            what: "kappa'_{i,f} must be positive",
            value: if kappa_i > 0.0 { kappa_f } else { kappa_i },
        });
    }
    let q = p_f - p_i;
    let pmag2 = cfg.state_i.momentum * cfg.state_i.momentum;
    let m = ELECTRON_MASS_EV;
    // 4 sin^2(theta/2) - (cos th'_f - cos th'_i)^2 m^2/(kappa_i kappa_f),
    // written through |q|^2 and (n'.q) at |p_f| = |p_i|
    let denom = (q.spatial_dot(&q)
        - n_prime.spatial_dot(&q) * n_prime.spatial_dot(&q) * m * m / (kappa_i * kappa_f))
        / pmag2;
    if denom <= 0.0 {
        return Err(Error::Singular {
            what: "closed-form ratio denominator is non-positive at this geometry",
        });
    }
    let f = (kappa_f / kappa_i) / denom;
    let tau = cfg.tau();
    let pref = core::f64::consts::PI * math::sqrt(2.0 * core::f64::consts::PI) / 8.0;
    Ok(pref * eta * eta * (omega_j * tau) * (omega_j * tau) * (omega_res / omega_j)
        * (m * m / pmag2)
        * f)
}

/// Enhancement ratios from direct division of the integrated resonant cross
/// section by the field-free Bethe-Heitler baseline at omega' = omega'_res.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioResult {
    pub r10: f64,
    pub r01: f64,
    /// R_res = R_{1,0} + R_{0,1}.
    pub total: f64,
}

/// Direct enhancement ratio R_res = R_{1,0} + R_{0,1}.
pub fn ratio_direct(cfg: &ResonantConfig) -> Result<RatioResult> {
    cfg.validate()?;
    let dir = interference_photon_angle(&cfg.state_i)?;
    let state_f = cfg.state_f();
    let integrated = resonant_integrated_xsec(cfg)?;
    let tau = cfg.tau();
    let mut r = [0.0_f64; 2];
    for (slot, ch) in [Channel::S10, Channel::S01].into_iter().enumerate() {
        let (s1, s2) = ch.indices();
        let omega = combined_energy(s1, s2, cfg.field.wave1.omega, cfg.field.wave2.omega)?;
        let p_i = cfg.state_i.four_vector();
        let omega_res = resonant_frequency(&p_i, &dir.unit_four_vector(), omega)?;
        let bh = bethe_heitler(&cfg.state_i, &state_f, &dir, omega_res, cfg.z)?;
        if bh <= 0.0 {
            return Err(Error::Singular {
                what: "field-free baseline vanishes at this geometry",
            });
        }
        let num = integrated
            .channels
            .iter()
            .find(|(c, _)| *c == ch)
            .map(|(_, v)| *v)
            .unwrap_or(0.0);
        r[slot] = num / (bh * bh_effective_bandwidth(tau));
    }
    Ok(RatioResult {
        r10: r[0],
        r01: r[1],
        total: r[0] + r[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{deg_to_rad, tau_ev_inv_from_ps};
    use crate::kinematics::transit_width;
    use crate::waves::LaserWave;

    fn fig_field() -> TwoWaveField {
        let tau = tau_ev_inv_from_ps(0.1);
        TwoWaveField::new(
            LaserWave::new(2.35, 0.1, 1, tau).unwrap(),
            LaserWave::new(1.0, 0.1, -1, tau).unwrap(),
            0.0,
        )
        .unwrap()
    }

    fn fig_cfg() -> ResonantConfig {
        ResonantConfig {
            state_i: ElectronState::from_energy(1.02e6, deg_to_rad(163.0), 0.0).unwrap(),
            theta_f: deg_to_rad(10.0),
            field: fig_field(),
            z: 1.0,
            rho: 5.0,
        }
    }

    #[test]
    fn w2_10_reductions() {
        let eta = 0.1;
        let u = 9.2e-6;
        // u' = u
        let full = w2_10(eta, u, u);
        let closed = eta * eta * (1.0 + u * u / (2.0 * (1.0 + u)));
        assert!((full - closed).abs() <= 1e-12 * closed);
        // u' = 0
        assert!((w2_10(eta, u, 0.0) - eta * eta).abs() < 1e-15);
        // u' = u/2: the constant terms cancel, leaving eta^2 u^2/(8 + 4u).
        // Checked at O(1) arguments where the cancellation 1 - 4r(1-r) = 0 is
        // benign relative to the surviving term.
        let ub = 0.5;
        let half = w2_10(eta, ub, ub / 2.0);
        let expect = eta * eta * ub * ub / (8.0 + 4.0 * ub);
        assert!(
            (half - expect).abs() <= 1e-10 * expect.abs(),
            "got {half:e}, expect {expect:e}"
        );
    }

    #[test]
    fn w2_11_interference_reduction() {
        // gamma = 0, u_omega = 1: bracket must equal the closed form exactly
        let field = fig_field();
        let u = 9.2e-6;
        let p_i = FourVector::new(1.02e6, 0.0, 0.0, 0.0);
        let q_i = p_i;
        for r in [0.5_f64, 0.9, 0.999] {
            let up = u * r;
            let vertex = VertexParams {
                gamma01: 0.0,
                gamma02: 0.0,
                alpha0_plus: 1.0,
                alpha0_minus: 1.0,
                chi1: 0.0,
                chi2: 0.0,
            };
            let got = w2_11_general(&field, u, up, 1.0, &p_i, &q_i, &vertex);
            let e2 = 0.1_f64.powi(4);
            let closed = e2
                * (-4.0 * (up / u) * (up / u) * (1.0 - u * up / (2.0 * (1.0 + up)))
                    + 4.0 * up / u);
            assert!((got - closed).abs() <= 1e-10 * closed.abs().max(1e-300));
        }
        // at u' = u the closed form is 2 eta1^2 eta2^2 u'^2/(1+u')
        let vertex = VertexParams {
            gamma01: 0.0,
            gamma02: 0.0,
            alpha0_plus: 1.0,
            alpha0_minus: 1.0,
            chi1: 0.0,
            chi2: 0.0,
        };
        let got = w2_11_general(&field, u, u, 1.0, &p_i, &q_i, &vertex);
        let closed = 0.1_f64.powi(4) * 2.0 * u * u / (1.0 + u);
        assert!(
            (got - closed).abs() <= 1e-10 * closed,
            "got {got:e}, closed {closed:e}"
        );
    }

    #[test]
    fn emission_probability_closed_forms_and_hierarchy() {
        let cfg = fig_cfg();
        let dir = interference_photon_angle(&cfg.state_i).unwrap();
        let p_i = cfg.state_i.four_vector();
        let np = dir.unit_four_vector();
        let w_res_10 = resonant_frequency(&p_i, &np, 2.35).unwrap();
        let w10 =
            emission_probability(Channel::S10, &cfg.state_i, w_res_10, &dir, &cfg.field).unwrap();
        let w10_int = emission_probability_interference(
            Channel::S10,
            &cfg.state_i,
            w_res_10,
            &dir,
            &cfg.field,
        )
        .unwrap();
        // general and interference forms agree up to the small gamma term
        assert!(
            (w10.value - w10_int.value).abs() / w10_int.value < 1e-3,
            "general {} vs interference {}",
            w10.value,
            w10_int.value
        );
        assert_eq!(w10_int.regime, Regime::Interference);
        // channel hierarchy (1,0) over (1,1) by >= 1e3
        let w_res_11 = resonant_frequency(&p_i, &np, 3.35).unwrap();
        let w11 = emission_probability(Channel::S11, &cfg.state_i, w_res_11, &dir, &cfg.field)
            .unwrap();
        assert!(w11.value > 0.0);
        assert!(
            w10.value / w11.value >= 1e3,
            "hierarchy {} / {} = {}",
            w10.value,
            w11.value,
            w10.value / w11.value
        );
        // the (1,1) general bracket reduces to the closed form at this geometry
        let w11_int = emission_probability_interference(
            Channel::S11,
            &cfg.state_i,
            w_res_11,
            &dir,
            &cfg.field,
        )
        .unwrap();
        assert!(
            (w11.value - w11_int.value).abs() / w11_int.value < 1e-2,
            "(1,1) general {} vs interference {}",
            w11.value,
            w11_int.value
        );
        // co-rotating configuration rejected
        let tau = tau_ev_inv_from_ps(0.1);
        let co = TwoWaveField::new(
            LaserWave::new(2.35, 0.1, 1, tau).unwrap(),
            LaserWave::new(1.0, 0.1, 1, tau).unwrap(),
            0.0,
        )
        .unwrap();
        assert!(matches!(
            emission_probability(Channel::S10, &cfg.state_i, w_res_10, &dir, &co),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn mott_rutherford_limit_and_scalings() {
        let theta = deg_to_rad(120.0);
        for v in [0.02_f64, 0.05] {
            let si = ElectronState::from_velocity(v, 0.0, 0.0).unwrap();
            let sf = ElectronState::from_velocity(v, theta, 0.0).unwrap();
            let got = mott(&si, &sf, 1.0).unwrap();
            let m = ELECTRON_MASS_EV;
            let half = theta / 2.0;
            let s2 = math::sin(half) * math::sin(half);
            let ruth = (FINE_STRUCTURE_ALPHA / (2.0 * m * v * v) / s2)
                * (FINE_STRUCTURE_ALPHA / (2.0 * m * v * v) / s2);
            assert!(
                (got - ruth).abs() / ruth < 0.05,
                "v={v}: mott {got:e} vs rutherford {ruth:e}"
            );
        }
        // Z^2 scaling
        let si = ElectronState::from_velocity(0.3, 0.0, 0.0).unwrap();
        let sf = ElectronState::from_velocity(0.3, theta, 0.0).unwrap();
        let z1 = mott(&si, &sf, 1.0).unwrap();
        let z3 = mott(&si, &sf, 3.0).unwrap();
        assert!((z3 / z1 - 9.0).abs() < 1e-12);
        // forward singularity rejected
        assert!(mott(&si, &si, 1.0).is_err());
    }

    #[test]
    fn scattering_partial_matches_mott_structure() {
        let si = ElectronState::from_velocity(0.3, deg_to_rad(163.0), 0.0).unwrap();
        let sf = ElectronState::from_velocity(0.3, deg_to_rad(10.0), 0.0).unwrap();
        let p_i = si.four_vector();
        let p_f = sf.four_vector();
        let q = p_f - p_i;
        let a = scattering_partial(&p_i, &p_f, &q, 1.0).unwrap();
        let b = mott(&si, &sf, 1.0).unwrap();
        assert!((a - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn bh_probability_basics() {
        let si = ElectronState::from_velocity(0.3, deg_to_rad(163.0), 0.0).unwrap();
        let sf = ElectronState::from_velocity(0.3, deg_to_rad(10.0), 0.0).unwrap();
        // q = 0: identical states
        let dir = PhotonDirection {
            polar: 1.0,
            azimuth: 0.0,
        };
        let zero = bh_photon_probability(&si, &si, &dir, 2.35).unwrap();
        assert!(zero.abs() < 1e-30);
        // n' perpendicular to q (q along x-z plane here; take n' = +y)
        let perp = PhotonDirection {
            polar: core::f64::consts::FRAC_PI_2,
            azimuth: core::f64::consts::FRAC_PI_2,
        };
        let got = bh_photon_probability(&si, &sf, &perp, 2.35).unwrap();
        let p_i = si.four_vector();
        let p_f = sf.four_vector();
        let q = p_f - p_i;
        let np = perp.unit_four_vector();
        let expect = FINE_STRUCTURE_ALPHA
            / (4.0 * core::f64::consts::PI * core::f64::consts::PI)
            * q.spatial_dot(&q)
            / (2.35 * np.dot(&p_i) * np.dot(&p_f));
        assert!((got - expect).abs() <= 1e-12 * expect);
        // factorization
        let bh = bethe_heitler(&si, &sf, &perp, 2.35, 1.0).unwrap();
        let prod = mott(&si, &sf, 1.0).unwrap() * got;
        assert!((bh - prod).abs() <= 1e-15 * prod);
        assert!(bh > 0.0);
    }

    #[test]
    fn profile_res_shape() {
        let p0 = profile_res(&ProfileParams {
            beta: 0.0,
            rho: 5.0,
            channel: Channel::S10,
        })
        .unwrap();
        assert!(p0 > 0.85 && p0 < 1.0, "P(0) = {p0}");
        let p_sqrt2 = profile_res(&ProfileParams {
            beta: 0.0,
            rho: core::f64::consts::SQRT_2,
            channel: Channel::S10,
        })
        .unwrap();
        assert!(p_sqrt2 < p0);
        // large beta suppression
        let far = profile_res(&ProfileParams {
            beta: 6.0,
            rho: 5.0,
            channel: Channel::S10,
        })
        .unwrap();
        assert!(far < 1e-3);
        // (1,1) channel positive and below 1
        let p11 = profile_res(&ProfileParams {
            beta: 0.0,
            rho: 5.0,
            channel: Channel::S11,
        })
        .unwrap();
        assert!(p11 > 0.0 && p11 < 1.0);
    }

    #[test]
    fn profile_partial_reduces_to_profile_res() {
        // with all series arguments zero, the only surviving index is (0,0)
        // and |I_{0,0}|^2 = 1
        let base = IArgs {
            chi1: 0.0,
            chi2: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
            alpha: 0.0,
            delta_angle: 0.0,
            rotation_sign: RotationSign::Plus,
        };
        let ctrl = SeriesControl::default();
        for (channel, l1, l2) in [
            (Channel::S10, -1_i64, 0_i64),
            (Channel::S01, 0, -1),
            (Channel::S11, -1, -1),
        ] {
            for beta in [0.0, 0.7] {
                let partial =
                    profile_partial(l1, l2, channel, beta, 5.0, &base, &ctrl).unwrap();
                let full = profile_res(&ProfileParams {
                    beta,
                    rho: 5.0,
                    channel,
                })
                .unwrap();
                assert!(
                    (partial - full).abs() <= 1e-9,
                    "{channel:?} beta={beta}: {partial} vs {full}"
                );
            }
        }
    }

    #[test]
    fn summed_xsec_hierarchy_and_peak() {
        let cfg = fig_cfg();
        let p_i = cfg.state_i.four_vector();
        let dir = interference_photon_angle(&cfg.state_i).unwrap();
        let np = dir.unit_four_vector();
        let w_res = resonant_frequency(&p_i, &np, 2.35).unwrap();
        let at_peak =
            resonant_summed_xsec(&[Channel::S10, Channel::S11], &cfg, w_res).unwrap();
        let c10 = at_peak.channels[0].1;
        let c11 = at_peak.channels[1].1;
        assert!(c10 > 0.0 && c11 > 0.0);
        assert!(c10 / c11 >= 1e3, "hierarchy {}", c10 / c11);
        // decomposition sums to total
        assert!((at_peak.value - (c10 + c11)).abs() <= 1e-10 * at_peak.value);
        // peak at omega'_res: off-peak value is smaller
        let gamma = transit_width(w_res, 2.35, cfg.field.wave1.tau);
        let off = resonant_summed_xsec(&[Channel::S10], &cfg, w_res - 3.0 * gamma).unwrap();
        let peak10 = resonant_summed_xsec(&[Channel::S10], &cfg, w_res).unwrap();
        assert!(off.value < peak10.value);
        // tau^2 scaling at fixed beta=0
        let mut cfg2 = cfg;
        cfg2.field.wave1.tau *= 2.0;
        cfg2.field.wave2.tau *= 2.0;
        let doubled = resonant_summed_xsec(&[Channel::S10], &cfg2, w_res).unwrap();
        assert!((doubled.value / peak10.value - 4.0).abs() < 1e-6);
    }

    #[test]
    fn partial_xsec_consistency() {
        let mut cfg = fig_cfg();
        // keep the scattering-vertex Bessel arguments inside the documented
        // domain for this check
        cfg.field.wave1.eta0 = 1e-3;
        cfg.field.wave2.eta0 = 1e-3;
        let p_i = cfg.state_i.four_vector();
        let dir = interference_photon_angle(&cfg.state_i).unwrap();
        let w_res = resonant_frequency(&p_i, &dir.unit_four_vector(), 2.35).unwrap();
        let ctrl = SeriesControl::default();
        // P -> 0 => result -> 0 (far detuning)
        let gamma = transit_width(w_res, 2.35, cfg.field.wave1.tau);
        let far = resonant_partial_xsec(
            Channel::S10,
            -1,
            0,
            &cfg,
            w_res - 20.0 * gamma,
            &ctrl,
        )
        .unwrap();
        let near = resonant_partial_xsec(Channel::S10, -1, 0, &cfg, w_res, &ctrl).unwrap();
        assert!(near.value > 0.0);
        assert!(far.value < 1e-2 * near.value);
    }

    #[test]
    fn partial_sum_reproduces_summed() {
        // weak fields keep the scattering-vertex arguments small, so a
        // modest (l1, l2) window exhausts the normalization sum
        let mut cfg = fig_cfg();
        cfg.field.wave1.eta0 = 1e-5;
        cfg.field.wave2.eta0 = 1e-5;
        let p_i = cfg.state_i.four_vector();
        let dir = interference_photon_angle(&cfg.state_i).unwrap();
        let w_res = resonant_frequency(&p_i, &dir.unit_four_vector(), 2.35).unwrap();
        let ctrl = SeriesControl::default();
        let base = scattering_vertex_args(&cfg).unwrap();
        let w1 = (base.gamma1.abs() + base.alpha.abs()) as i64 + 10;
        let w2 = (base.gamma2.abs() + base.alpha.abs()) as i64 + 10;
        let mut total = 0.0;
        for l1 in -w1..=w1 {
            for l2 in -w2..=w2 {
                total += resonant_partial_xsec(Channel::S10, l1, l2, &cfg, w_res, &ctrl)
                    .unwrap()
                    .value;
            }
        }
        let summed = resonant_summed_xsec(&[Channel::S10], &cfg, w_res).unwrap();
        assert!(
            (total - summed.value).abs() <= 1e-4 * summed.value,
            "sum {total:e} vs summed {:e} (rel {:e})",
            summed.value,
            (total - summed.value).abs() / summed.value
        );
    }

    #[test]
    fn integrated_matches_omega_integral_of_summed() {
        let cfg = fig_cfg();
        let p_i = cfg.state_i.four_vector();
        let dir = interference_photon_angle(&cfg.state_i).unwrap();
        let integrated = resonant_integrated_xsec(&cfg).unwrap();
        let mut total = 0.0;
        for (slot, ch) in [Channel::S10, Channel::S01].into_iter().enumerate() {
            let (s1, s2) = ch.indices();
            let omega = combined_energy(s1, s2, 2.35, 1.0).unwrap();
            let w_res = resonant_frequency(&p_i, &dir.unit_four_vector(), omega).unwrap();
            let gamma = transit_width(w_res, omega, cfg.field.wave1.tau);
            let lo = w_res - 6.0 * core::f64::consts::SQRT_2 * gamma;
            let hi = w_res + 6.0 * core::f64::consts::SQRT_2 * gamma;
            let scale = integrated.channels[slot].1 / (hi - lo);
            let r = quad::integrate(
                |wp| resonant_summed_xsec(&[ch], &cfg, wp).map(|r| r.value).unwrap_or(0.0),
                lo,
                hi,
                1e-4 * scale.abs() * (hi - lo),
            )
            .unwrap();
            total += r.value;
        }
        assert!(
            (total - integrated.value).abs() <= 0.02 * integrated.value,
            "integral {total:e} vs closed {:e}",
            integrated.value
        );
    }

    #[test]
    fn ratio_methods_agree() {
        let mut cfg = fig_cfg();
        for v in [0.05, 0.1, 0.2, 0.3] {
            cfg.state_i =
                ElectronState::from_velocity(v, deg_to_rad(163.0), 0.0).unwrap();
            let direct = ratio_direct(&cfg).unwrap();
            let cl10 = ratio_closed_form(Channel::S10, &cfg).unwrap();
            let cl01 = ratio_closed_form(Channel::S01, &cfg).unwrap();
            assert!(
                (direct.r10 - cl10).abs() / cl10 < 0.01,
                "v={v}: direct {} vs closed {}",
                direct.r10,
                cl10
            );
            assert!((direct.r01 - cl01).abs() / cl01 < 0.01);
            assert!(
                (direct.total - (direct.r10 + direct.r01)).abs()
                    <= 1e-12 * direct.total
            );
        }
    }

    #[test]
    fn ratio_scalings() {
        let cfg = fig_cfg();
        // R proportional to (omega1 tau)^2 via tau
        let r1 = ratio_closed_form(Channel::S10, &cfg).unwrap();
        let mut cfg2 = cfg;
        cfg2.field.wave1.tau *= 2.0;
        cfg2.field.wave2.tau *= 2.0;
        let r2 = ratio_closed_form(Channel::S10, &cfg2).unwrap();
        assert!((r2 / r1 - 4.0).abs() < 1e-12);
        // eta^2 scaling
        let mut cfg3 = cfg;
        cfg3.field.wave1.eta0 = 0.2;
        let r3 = ratio_closed_form(Channel::S10, &cfg3).unwrap();
        assert!((r3 / r1 - 4.0).abs() < 1e-12);
    }
}
