//! Scan drivers: resonance-profile scan, enhancement-ratio scan, generic
//! parameter sweeps and single-point evaluation. Rows with kinematic
//! singularities are emitted as explicit null markers so grids stay
//! rectangular; grid evaluation may be spread over worker threads without
//! affecting output order.

use ensb_core::kinematics::{
    a_parameter, interference_photon_angle, resonant_frequency, transit_width,
};
use ensb_core::waves::envelope_gaussian;
use ensb_core::xsec::{
    bethe_heitler, emission_probability_interference, mott, profile_res, ratio_closed_form,
    ratio_direct, Channel, ProfileParams, ResonantConfig,
};

use crate::config::{Config, Mode, Resolved, Spacing};

/// Variables accepted by the `sweep` subcommand.
pub const SWEEP_VARIABLES: [&str; 10] = [
    "E_i", "v_i", "theta_i", "theta_f", "omega1", "omega2", "eta01", "eta02", "tau", "rho",
];

const DEG: f64 = std::f64::consts::PI / 180.0;

/// A rectangular scan result; `None` cells are singular/null rows.
pub struct ScanResult {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Evaluate `f` over `0..n` on up to `threads` workers, preserving order.
fn par_map<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 {
        return (0..n).map(f).collect();
    }
    let mut chunks: Vec<Vec<(usize, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let f = &f;
                scope.spawn(move || {
                    (w..n)
                        .step_by(threads)
                        .map(|i| (i, f(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut out: Vec<(usize, T)> = Vec::with_capacity(n);
    for chunk in chunks.iter_mut() {
        out.append(chunk);
    }
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, v)| v).collect()
}

fn grid(min: f64, max: f64, points: usize, spacing: Spacing) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match spacing {
                Spacing::Linear => min + (max - min) * t,
                Spacing::Log => min * (max / min).powf(t),
            }
        })
        .collect()
}

/// Resonance-profile scan: beta grid (default 401 points over [-4, 4]) with
/// the single-wave and two-wave peak profiles and the Gaussian envelope of
/// the detuning factor.
pub fn run_profile_scan(resolved: &Resolved, threads: usize) -> Result<ScanResult, String> {
    let scan = &resolved.config.scan;
    let min = scan.min.unwrap_or(-4.0);
    let max = scan.max.unwrap_or(4.0);
    let points = scan.points.unwrap_or(401) as usize;
    let spacing = scan.spacing.unwrap_or(Spacing::Linear);
    let betas = grid(min, max, points, spacing);
    let rho = resolved.config.field.rho;
    let omega_tau = resolved.field.wave1.omega * resolved.tau;

    let rows = par_map(betas.len(), threads, |i| {
        let beta = betas[i];
        let p10 = profile_res(&ProfileParams {
            beta,
            rho,
            channel: Channel::S10,
        })
        .ok();
        let p11 = profile_res(&ProfileParams {
            beta,
            rho,
            channel: Channel::S11,
        })
        .ok();
        // beta = (1 - omega'/omega'_res) * omega*tau/2 for the (1,0) channel
        let omega_ratio = 1.0 - 2.0 * beta / omega_tau;
        vec![
            Some(omega_ratio),
            Some(beta),
            p10,
            p11,
            Some((envelope_gaussian(beta) as f64).powi(2)),
        ]
    });
    Ok(ScanResult {
        columns: vec!["omega_ratio", "beta", "p_res_10", "p_res_11", "envelope"],
        rows,
    })
}

/// Enhancement-ratio scan over the initial velocity (default 100 log-spaced
/// points over [0.05, 0.9]).
pub fn run_ratio_scan(resolved: &Resolved, threads: usize) -> Result<ScanResult, String> {
    let scan = &resolved.config.scan;
    let min = scan.min.unwrap_or(0.05);
    let max = scan.max.unwrap_or(0.9);
    let points = scan.points.unwrap_or(100) as usize;
    let spacing = scan.spacing.unwrap_or(Spacing::Log);
    let velocities = grid(min, max, points, spacing);
    let base = resolved.resonant_config();
    let theta_i = resolved.config.electron.theta_i_deg * DEG;
    let phi_i = resolved.config.electron.phi_i_deg * DEG;

    let rows = par_map(velocities.len(), threads, |i| {
        let v = velocities[i];
        let mut row = vec![Some(v), None, None, None, None];
        let Ok(state_i) = ensb_core::kinematics::ElectronState::from_velocity(v, theta_i, phi_i)
        else {
            return row;
        };
        let cfg = ResonantConfig { state_i, ..base };
        row[1] = ratio_closed_form(Channel::S10, &cfg).ok();
        if let Ok(direct) = ratio_direct(&cfg) {
            row[2] = Some(direct.r10);
            row[4] = Some(direct.total);
        }
        row[3] = ratio_closed_form(Channel::S01, &cfg).ok();
        row
    });
    Ok(ScanResult {
        columns: vec!["v_i", "r10_closed", "r10_direct", "r01_closed", "r_res"],
        rows,
    })
}

/// Apply a sweep-variable value to a copy of the configuration.
fn with_variable(config: &Config, variable: &str, value: f64) -> Config {
    let mut c = config.clone();
    match variable {
        "E_i" => {
            c.electron.energy_mev = Some(value);
            c.electron.velocity = None;
        }
        "v_i" => {
            c.electron.velocity = Some(value);
            c.electron.energy_mev = None;
        }
        "theta_i" => c.electron.theta_i_deg = value,
        "theta_f" => c.electron.theta_f_deg = value,
        "omega1" => c.field.omega1_ev = value,
        "omega2" => c.field.omega2_ev = value,
        "eta01" => c.field.eta01 = value,
        "eta02" => c.field.eta02 = value,
        "tau" => c.field.tau_ps = value,
        "rho" => c.field.rho = value,
        _ => unreachable!("variable validated at config load"),
    }
    c
}

/// Observable set shared by `sweep` rows and the `point` evaluation.
fn observables(cfg: &ResonantConfig, tau: f64) -> Vec<Option<f64>> {
    let mut row = vec![None; 6];
    let Ok(dir) = interference_photon_angle(&cfg.state_i) else {
        return row;
    };
    let p_i = cfg.state_i.four_vector();
    let n_prime = dir.unit_four_vector();
    if let Ok(omega_res) = resonant_frequency(&p_i, &n_prime, cfg.field.wave1.omega) {
        row[0] = Some(omega_res);
        row[1] = Some(transit_width(omega_res, cfg.field.wave1.omega, tau));
    }
    row[2] = profile_res(&ProfileParams {
        beta: 0.0,
        rho: cfg.rho,
        channel: Channel::S10,
    })
    .ok();
    row[3] = ratio_closed_form(Channel::S10, cfg).ok();
    row[4] = ratio_closed_form(Channel::S01, cfg).ok();
    row[5] = ratio_direct(cfg).ok().map(|r| r.total);
    row
}

const OBSERVABLE_COLUMNS: [&str; 6] = [
    "omega_res_10",
    "gamma_10",
    "profile_peak_10",
    "r10_closed",
    "r01_closed",
    "r_res_direct",
];

/// Generic sweep over one configuration variable.
pub fn run_sweep(resolved: &Resolved, threads: usize) -> Result<ScanResult, String> {
    let scan = &resolved.config.scan;
    let variable = scan.variable.clone().expect("validated at config load");
    let min = scan.min.expect("validated at config load");
    let max = scan.max.expect("validated at config load");
    let points = scan.points.unwrap_or(50) as usize;
    let spacing = scan.spacing.unwrap_or(Spacing::Linear);
    let values = grid(min, max, points, spacing);

    let rows = par_map(values.len(), threads, |i| {
        let value = values[i];
        let mut row = vec![Some(value)];
        let c = with_variable(&resolved.config, &variable, value);
        match crate::config::resolve(c, Mode::Sweep) {
            Ok(r) => row.extend(observables(&r.resonant_config(), r.tau)),
            Err(_) => row.extend(std::iter::repeat(None).take(OBSERVABLE_COLUMNS.len())),
        }
        row
    });
    let mut columns = vec!["value"];
    columns.extend(OBSERVABLE_COLUMNS);
    Ok(ScanResult { columns, rows })
}

/// Single-point evaluation: interference-region kinematics, per-channel
/// resonant frequencies, emission and baseline cross sections, enhancement
/// ratios.
pub fn run_point(resolved: &Resolved) -> Result<ScanResult, String> {
    let cfg = resolved.resonant_config();
    let state_i = &cfg.state_i;
    let err = |e: ensb_core::Error| e.to_string();

    let a_i = a_parameter(state_i).map_err(err)?;
    let dir = interference_photon_angle(state_i).map_err(err)?;
    let p_i = state_i.four_vector();
    let n_prime = dir.unit_four_vector();
    let w1 = cfg.field.wave1.omega;
    let w2 = cfg.field.wave2.omega;
    let res = |omega: f64| resonant_frequency(&p_i, &n_prime, omega);
    let omega_res_10 = res(w1).map_err(err)?;
    let omega_res_01 = res(w2).map_err(err)?;
    let omega_res_11 = res(w1 + w2).map_err(err)?;

    let w10 =
        emission_probability_interference(Channel::S10, state_i, omega_res_10, &dir, &cfg.field)
            .map_err(err)?
            .value;
    let w11 =
        emission_probability_interference(Channel::S11, state_i, omega_res_11, &dir, &cfg.field)
            .map_err(err)?
            .value;
    let state_f = cfg.state_f();
    let mott_xs = mott(state_i, &state_f, cfg.z).map_err(err)?;
    let bh = bethe_heitler(state_i, &state_f, &dir, omega_res_10, cfg.z).map_err(err)?;
    let r10_closed = ratio_closed_form(Channel::S10, &cfg).ok();
    let r01_closed = ratio_closed_form(Channel::S01, &cfg).ok();
    let direct = ratio_direct(&cfg).ok();

    let row = vec![
        Some(a_i),
        Some(dir.polar / DEG),
        Some(omega_res_10),
        Some(omega_res_01),
        Some(omega_res_11),
        Some(transit_width(omega_res_10, w1, resolved.tau)),
        Some(w10),
        Some(w11),
        Some(mott_xs),
        Some(bh),
        r10_closed,
        direct.as_ref().map(|d| d.r10),
        r01_closed,
        direct.as_ref().map(|d| d.total),
    ];
    Ok(ScanResult {
        columns: vec![
            "a_i",
            "theta_prime_deg",
            "omega_res_10",
            "omega_res_01",
            "omega_res_11",
            "gamma_10",
            "w10_interference",
            "w11_interference",
            "mott",
            "bethe_heitler_10",
            "r10_closed",
            "r10_direct",
            "r01_closed",
            "r_res",
        ],
        rows: vec![row],
    })
}
