use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::circle::Angle;
use crate::contfrac::ContinuedFraction;

/// `P(z) = λz + z²` with `λ = e^{2πiα}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticMap {
    rotation: f64,
    lambda: Complex64,
}

impl QuadraticMap {
    pub fn from_rotation(alpha: f64) -> Self {
        Self {
            rotation: alpha,
            lambda: Complex64::from_polar(1.0, TAU * alpha),
        }
    }

    pub fn from_angle(alpha: &Angle) -> Self {
        Self::from_rotation(alpha.to_f64())
    }

    pub fn from_continued_fraction(cf: &ContinuedFraction) -> Self {
        Self::from_rotation(cf.value())
    }

    /// Rotation number `(√5 − 1)/2`.
    pub fn golden_mean() -> Self {
        Self::from_rotation((5f64.sqrt() - 1.0) / 2.0)
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// `−λ/2`.
    pub fn critical_point(&self) -> Complex64 {
        -self.lambda / 2.0
    }

    /// The indifferent fixed point `0` and the other fixed point `1 − λ`.
    pub fn fixed_points(&self) -> [Complex64; 2] {
        [Complex64::new(0.0, 0.0), 1.0 - self.lambda]
    }

    #[inline]
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        z * (self.lambda + z)
    }

    #[inline]
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.lambda + 2.0 * z
    }

    /// The other preimage of `P(z)`: `−λ − z`.
    #[inline]
    pub fn involution(&self, z: Complex64) -> Complex64 {
        -self.lambda - z
    }

    pub fn iterate(&self, mut z: Complex64, n: usize) -> Complex64 {
        for _ in 0..n {
            z = self.evaluate(z);
        }
        z
    }

    /// `(P^n(z), (P^n)'(z))`.
    pub fn iterate_with_derivative(&self, mut z: Complex64, n: usize) -> (Complex64, Complex64) {
        let mut dz = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            dz *= self.derivative(z);
            z = self.evaluate(z);
        }
        (z, dz)
    }

    /// The parameter `c` of the conjugate map `u ↦ u² + c`, `u = z + λ/2`.
    pub fn conjugate_parameter(&self) -> Complex64 {
        self.lambda / 2.0 - self.lambda * self.lambda / 4.0
    }
}
