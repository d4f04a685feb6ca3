//! Dirichlet cavity modes in the small-cavity approximation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::geometry::{
    equatorial_metric_functions, velocity_normalization, CavityGeometry, EquatorialOrbit,
    KerrParams,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIndex {
    pub n: u32,
    pub ky: f64,
    pub kz: f64,
}

/// Thresholds above which the small-cavity approximation is flagged as doubtful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityThresholds {
    pub alpha_length: f64,
    pub length_over_radius: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            alpha_length: 0.01,
            length_over_radius: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityDiagnostics {
    /// α = (M − r)/r², the coefficient of the radial first-derivative term.
    pub alpha: f64,
    pub length_over_radius: f64,
    pub mass_length_over_r2: f64,
    /// False when |α|·L or L/r reaches its threshold.
    pub small_cavity: bool,
}

/// Pieces of the dispersion relation that depend only on the background and orbit.
struct Dispersion {
    prefactor: f64,
    transverse: f64,
    radial: f64,
}

fn dispersion(params: &KerrParams, orbit: &EquatorialOrbit) -> Result<Dispersion> {
    let c = velocity_normalization(params, orbit)?;
    let f = equatorial_metric_functions(params, orbit.radius)?;
    let r = orbit.radius;
    let radial = f.delta / (r * r);
    Ok(Dispersion {
        prefactor: r / (f.delta.sqrt() * c * c),
        transverse: radial * c * c,
        radial,
    })
}

fn check_mode(mode: &ModeIndex, cavity: &CavityGeometry) -> Result<()> {
    cavity.validate()?;
    if mode.n == 0 {
        return Err(domain("mode number n must be >= 1"));
    }
    if !(mode.ky.is_finite() && mode.kz.is_finite()) {
        return Err(domain("transverse wave numbers must be finite"));
    }
    Ok(())
}

/// ω_n = (r/(√Δ C²))·[(πn/L)² + (Δ/r²)C²((Δ/r²)k_y² + k_z²)]^(1/2).
pub fn eigenfrequency(
    mode: &ModeIndex,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cavity: &CavityGeometry,
) -> Result<f64> {
    check_mode(mode, cavity)?;
    let d = dispersion(params, orbit)?;
    let kn = PI * f64::from(mode.n) / cavity.length;
    let inner = kn * kn + d.transverse * (d.radial * mode.ky * mode.ky + mode.kz * mode.kz);
    Ok(d.prefactor * inner.sqrt())
}

pub fn cavity_validity(
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cavity: &CavityGeometry,
    thresholds: &ValidityThresholds,
) -> Result<ValidityDiagnostics> {
    params.validate()?;
    cavity.validate()?;
    let r = orbit.radius;
    if !(r.is_finite() && r > 0.0) {
        return Err(domain(format!("radius must be > 0, got {r}")));
    }
    let alpha = (params.mass - r) / (r * r);
    let length_over_radius = cavity.length / r;
    Ok(ValidityDiagnostics {
        alpha,
        length_over_radius,
        mass_length_over_r2: params.mass * cavity.length / (r * r),
        small_cavity: alpha.abs() * cavity.length < thresholds.alpha_length
            && length_over_radius < thresholds.length_over_radius,
    })
}

/// Frequency including the 2iαk_y term from the radial first-derivative of the exact
/// Klein-Gordon operator, with α = (M − r)/r².
pub fn corrected_eigenfrequency(
    mode: &ModeIndex,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cavity: &CavityGeometry,
) -> Result<Complex64> {
    let r = orbit.radius;
    let alpha = (params.mass - r) / (r * r);
    corrected_eigenfrequency_with_alpha(mode, params, orbit, cavity, alpha)
}

/// As [`corrected_eigenfrequency`] but with α supplied, for probing the α → 0 limit.
/// Uses the principal branch of the complex square root.
pub fn corrected_eigenfrequency_with_alpha(
    mode: &ModeIndex,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cavity: &CavityGeometry,
    alpha: f64,
) -> Result<Complex64> {
    check_mode(mode, cavity)?;
    let d = dispersion(params, orbit)?;
    let kn = PI * f64::from(mode.n) / cavity.length;
    let inner = Complex64::new(
        kn * kn + d.transverse * (d.radial * mode.ky * mode.ky + mode.kz * mode.kz),
        d.transverse * 2.0 * alpha * mode.ky,
    );
    Ok(inner.sqrt() * d.prefactor)
}
