//! Minkowski four-vectors with metric (a b) = a0 b0 - a.b.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Real four-vector (t; x, y, z), components in eV.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// Minkowski product a0 b0 - a.b.
    pub fn dot(&self, other: &FourVector) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    /// Minkowski square (self self).
    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    /// Euclidean dot product of the spatial parts.
    pub fn spatial_dot(&self, other: &FourVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Magnitude of the spatial part.
    pub fn spatial_norm(&self) -> f64 {
        crate::math::sqrt(self.spatial_dot(self))
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.t + rhs.t, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.t - rhs.t, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, rhs: FourVector) -> FourVector {
        FourVector::new(self * rhs.t, self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

/// Minkowski product of two real four-vectors.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.dot(b)
}

/// Four-vector with complex components, used for the circular polarization
/// vectors eps_j^(+-) = e_jx +- i delta_j e_jy and combinations thereof.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexFourVector {
    pub t: Complex64,
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl ComplexFourVector {
    pub const fn new(t: Complex64, x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_real(v: &FourVector) -> Self {
        Self {
            t: Complex64::new(v.t, 0.0),
            x: Complex64::new(v.x, 0.0),
            y: Complex64::new(v.y, 0.0),
            z: Complex64::new(v.z, 0.0),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Component-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            t: self.t.conj(),
            x: self.x.conj(),
            y: self.y.conj(),
            z: self.z.conj(),
        }
    }

    /// Minkowski product with a real four-vector.
    pub fn dot_real(&self, other: &FourVector) -> Complex64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    /// Minkowski product with another complex four-vector (no conjugation).
    pub fn dot(&self, other: &ComplexFourVector) -> Complex64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            t: c * self.t,
            x: c * self.x,
            y: c * self.y,
            z: c * self.z,
        }
    }
}

impl Add for ComplexFourVector {
    type Output = ComplexFourVector;
    fn add(self, rhs: ComplexFourVector) -> ComplexFourVector {
        ComplexFourVector::new(self.t + rhs.t, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}
