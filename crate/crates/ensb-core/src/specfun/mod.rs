//! Special functions: integer-order Bessel functions, real/complex error
//! functions, and the two-index multiphoton series built from them.

pub mod bessel;
pub mod erf;
pub mod series;

pub use bessel::{bessel_j, bessel_j_array, bessel_j_checked, bessel_j_flagged, BESSEL_MAX_ARG};
pub use erf::{complex_erf, complex_erf_flagged, erf_real, erfi_real, ERF_MAX_IM, ERF_MAX_RE};
pub use series::{i_interference, i_two_wave, IArgs, RotationSign, SeriesControl};
