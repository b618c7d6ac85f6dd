//! Resonant spontaneous bremsstrahlung of an electron scattered by a nucleus
//! in the field of two pulsed, circularly polarized laser waves.
//!
//! The crate computes the observables of the resonant parametric interference
//! effect: interference-region kinematics, resonance frequencies and transit
//! widths, the two-index multiphoton series functions, resonance peak
//! profiles, partial/summed/integrated resonant cross sections, and the
//! enhancement ratio over the field-free Bethe-Heitler baseline.
//!
//! All internal quantities are in natural units (hbar = c = 1) with energies
//! in electron-volts; constructors accept laboratory units (MeV, degrees,
//! picoseconds, V/cm) and convert once at the boundary.
//!
//! The crate is `no_std`-compatible: disable the default `std` feature and
//! enable `libm` to use it without the standard library (an allocator is
//! still required).

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("ensb-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub(crate) mod math;

pub mod constants;
pub mod error;
pub mod fourvec;
pub mod kinematics;
pub mod quad;
pub mod specfun;
pub mod waves;
pub mod xsec;

pub use error::{Error, Result};
pub use fourvec::{ComplexFourVector, FourVector};
