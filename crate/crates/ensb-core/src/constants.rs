//! Physical constants and laboratory-unit conversions.
//!
//! Internal unit system: hbar = c = 1, all energies in eV. The two `hbar`
//! constants exist only for converting pulse durations (seconds) and field
//! strengths (V/cm) at the API boundary.

/// Electron rest mass, eV.
pub const ELECTRON_MASS_EV: f64 = 0.511e6;

/// Fine structure constant.
pub const FINE_STRUCTURE_ALPHA: f64 = 1.0 / 137.036;

/// Classical electron radius r_e = alpha / m, in eV^-1.
pub const CLASSICAL_ELECTRON_RADIUS: f64 = FINE_STRUCTURE_ALPHA / ELECTRON_MASS_EV;

/// hbar in eV * s (time conversion only).
pub const HBAR_EV_S: f64 = 6.582119569e-16;

/// hbar * c in eV * cm (field-strength conversion only).
pub const HBAR_C_EV_CM: f64 = 1.9733e-5;

/// Bundle of the constants used throughout the crate.
///
/// Immutable after construction; `default()` gives the standard values above.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub electron_mass_ev: f64,
    pub fine_structure_alpha: f64,
    pub classical_electron_radius: f64,
    pub hbar_ev_s: f64,
    pub hbar_c_ev_cm: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            electron_mass_ev: ELECTRON_MASS_EV,
            fine_structure_alpha: FINE_STRUCTURE_ALPHA,
            classical_electron_radius: CLASSICAL_ELECTRON_RADIUS,
            hbar_ev_s: HBAR_EV_S,
            hbar_c_ev_cm: HBAR_C_EV_CM,
        }
    }
}

impl PhysicalConstants {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Convert a pulse duration in picoseconds to eV^-1.
pub fn tau_ev_inv_from_ps(tau_ps: f64) -> f64 {
    tau_ps * 1e-12 / HBAR_EV_S
}

/// Convert a duration in eV^-1 back to picoseconds.
pub fn tau_ps_from_ev_inv(tau: f64) -> f64 {
    tau * HBAR_EV_S / 1e-12
}

/// Convert an angle in degrees to radians.
pub fn deg_to_rad(deg: f64) -> f64 {
    deg * core::f64::consts::PI / 180.0
}
