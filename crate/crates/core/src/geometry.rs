//! Kerr equatorial geometry and the proper quantities of a comoving cavity.
//!
//! Signature (+,−,−,−), natural units ħ = c = G = k_B = 1, θ = π/2 throughout.

use crate::error::{domain, CasimirError, Result};

/// Mass and specific angular momentum of the rotating source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    pub mass: f64,
    pub spin: f64,
    /// Require |a| ≤ M. Disable to explore naked-singularity backgrounds.
    pub black_hole_mode: bool,
}

impl KerrParams {
    pub fn new(mass: f64, spin: f64) -> Result<Self> {
        let p = Self {
            mass,
            spin,
            black_hole_mode: true,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with |a| > M permitted.
    pub fn naked(mass: f64, spin: f64) -> Result<Self> {
        let p = Self {
            mass,
            spin,
            black_hole_mode: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// Minkowski space (M = a = 0).
    pub fn flat() -> Self {
        Self {
            mass: 0.0,
            spin: 0.0,
            black_hole_mode: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mass.is_finite() || self.mass < 0.0 {
            return Err(domain(format!("mass must be finite and >= 0, got {}", self.mass)));
        }
        if !self.spin.is_finite() {
            return Err(domain(format!("spin must be finite, got {}", self.spin)));
        }
        if self.black_hole_mode && self.spin.abs() > self.mass {
            return Err(CasimirError::NakedSingularity {
                mass: self.mass,
                spin: self.spin,
            });
        }
        Ok(())
    }
}

/// Circular equatorial orbit: Boyer-Lindquist radius and coordinate angular velocity dφ/dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquatorialOrbit {
    pub radius: f64,
    pub omega: f64,
}

impl EquatorialOrbit {
    pub fn new(params: &KerrParams, radius: f64, omega: f64) -> Result<Self> {
        let orbit = Self { radius, omega };
        velocity_normalization(params, &orbit)?;
        Ok(orbit)
    }

    /// Zero-angular-momentum observer, Ω = ω_d.
    pub fn zamo(params: &KerrParams, radius: f64) -> Result<Self> {
        let omega = dragging_angular_velocity(params, radius)?;
        Self::new(params, radius, omega)
    }

    /// Ω = ω_d + f·(r²√Δ/A), so that f ∈ (−1, 1) spans the allowed band.
    pub fn band_fraction(params: &KerrParams, radius: f64, fraction: f64) -> Result<Self> {
        if !(fraction > -1.0 && fraction < 1.0) {
            return Err(domain(format!("band fraction must lie in (-1, 1), got {fraction}")));
        }
        let omega_d = dragging_angular_velocity(params, radius)?;
        let half = omega_half_width(params, radius)?;
        Self::new(params, radius, omega_d + fraction * half)
    }
}

/// Σ, Δ and A of the Kerr metric at the equator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricFunctions {
    pub sigma: f64,
    pub delta: f64,
    pub big_a: f64,
}

/// Coefficients of the comoving Cartesian metric ĝ_μν.
///
/// `tx` is the metric component ĝ_tx, so the dt·dx term of the line element is `2·tx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatMetric {
    pub tt: f64,
    pub tx: f64,
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    /// −det(ĝ)/ĝ_tt, the spatial volume weight.
    pub g_s: f64,
}

/// Coordinate plate separation L and plate area S₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    pub length: f64,
    pub area: f64,
}

impl CavityGeometry {
    pub fn new(length: f64, area: f64) -> Result<Self> {
        let c = Self { length, area };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(domain(format!("plate separation must be > 0, got {}", self.length)));
        }
        if !(self.area.is_finite() && self.area > 0.0) {
            return Err(domain(format!("plate area must be > 0, got {}", self.area)));
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        self.length * self.area
    }
}

/// Cavity as measured by the comoving observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperFrame {
    /// Normalization C(Ω) of the observer 4-velocity (inverse redshift factor).
    pub c: f64,
    pub length: f64,
    pub area: f64,
    pub volume: f64,
    pub temperature: f64,
}

impl ProperFrame {
    /// A frame given directly in proper variables, with C = 1 and Vp = Sp·Lp.
    pub fn from_proper(length: f64, area: f64, temperature: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(domain(format!("proper length must be > 0, got {length}")));
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(domain(format!("proper area must be > 0, got {area}")));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(domain(format!("temperature must be >= 0, got {temperature}")));
        }
        Ok(Self {
            c: 1.0,
            length,
            area,
            volume: length * area,
            temperature,
        })
    }

    pub fn with_temperature(&self, temperature: f64) -> Self {
        Self {
            temperature,
            ..*self
        }
    }

    /// Same cavity with Tp chosen so that 1/(2·Lp·Tp) equals `beta_hat`.
    pub fn at_beta_hat(&self, beta_hat: f64) -> Self {
        self.with_temperature(1.0 / (2.0 * self.length * beta_hat))
    }
}

/// Outer horizon r₊ = M + √(M² − a²).
pub fn horizon_radius(params: &KerrParams) -> Result<f64> {
    params.validate()?;
    let (m, a) = (params.mass, params.spin);
    if a.abs() > m {
        return Err(CasimirError::NakedSingularity { mass: m, spin: a });
    }
    Ok(m + (m * m - a * a).sqrt())
}

pub fn equatorial_metric_functions(params: &KerrParams, radius: f64) -> Result<MetricFunctions> {
    params.validate()?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(domain(format!("radius must be > 0, got {radius}")));
    }
    let (m, a, r) = (params.mass, params.spin, radius);
    let r2 = r * r;
    let a2 = a * a;
    Ok(MetricFunctions {
        sigma: r2,
        delta: r2 + a2 - 2.0 * m * r,
        big_a: (r2 + a2) * r2 + 2.0 * m * r * a2,
    })
}

fn outside_horizon(params: &KerrParams, radius: f64) -> Result<MetricFunctions> {
    let f = equatorial_metric_functions(params, radius)?;
    if f.delta <= 0.0 {
        return Err(CasimirError::InsideHorizon {
            radius,
            delta: f.delta,
        });
    }
    Ok(f)
}

/// Frame-dragging angular velocity ω_d = 2Mar/A.
pub fn dragging_angular_velocity(params: &KerrParams, radius: f64) -> Result<f64> {
    let f = outside_horizon(params, radius)?;
    Ok(2.0 * params.mass * params.spin * radius / f.big_a)
}

/// Half-width r²√Δ/A of the band of timelike angular velocities around ω_d.
pub fn omega_half_width(params: &KerrParams, radius: f64) -> Result<f64> {
    let f = outside_horizon(params, radius)?;
    Ok(radius * radius * f.delta.sqrt() / f.big_a)
}

/// Open interval of Ω for which the comoving worldline is timelike.
pub fn allowed_omega_interval(params: &KerrParams, radius: f64) -> Result<(f64, f64)> {
    let omega_d = dragging_angular_velocity(params, radius)?;
    let half = omega_half_width(params, radius)?;
    Ok((omega_d - half, omega_d + half))
}

/// 1 − (A²/(r⁴Δ))(Ω − ω_d)², the factor by which relative rotation shrinks the normalization.
pub fn comoving_bracket(params: &KerrParams, orbit: &EquatorialOrbit) -> Result<f64> {
    let (min, max) = allowed_omega_interval(params, orbit.radius)?;
    let omega = orbit.omega;
    let forbidden = CasimirError::ForbiddenOrbit { omega, min, max };
    if !(omega > min && omega < max) {
        return Err(forbidden);
    }
    let f = outside_horizon(params, orbit.radius)?;
    let r = orbit.radius;
    let omega_d = 2.0 * params.mass * params.spin * r / f.big_a;
    let dw = omega - omega_d;
    let bracket = 1.0 - f.big_a * f.big_a / (r.powi(4) * f.delta) * dw * dw;
    if bracket <= 0.0 {
        return Err(forbidden);
    }
    Ok(bracket)
}

/// C(Ω) = [ (r²Δ/A)·(1 − (A²/(r⁴Δ))(Ω − ω_d)²) ]^(−1/2).
pub fn velocity_normalization(params: &KerrParams, orbit: &EquatorialOrbit) -> Result<f64> {
    let bracket = comoving_bracket(params, orbit)?;
    let f = outside_horizon(params, orbit.radius)?;
    let r2 = orbit.radius * orbit.radius;
    Ok((r2 * f.delta / f.big_a * bracket).sqrt().recip())
}

pub fn comoving_metric(params: &KerrParams, orbit: &EquatorialOrbit) -> Result<HatMetric> {
    let c = velocity_normalization(params, orbit)?;
    let f = outside_horizon(params, orbit.radius)?;
    let r = orbit.radius;
    let omega_d = 2.0 * params.mass * params.spin * r / f.big_a;

    let tt = (c * c).recip();
    let tx = -f.big_a / r.powi(3) * (orbit.omega - omega_d);
    let xx = -f.big_a / r.powi(4);
    let yy = -r * r / f.delta;
    let zz = -1.0;
    let det = (tt * xx - tx * tx) * yy * zz;
    Ok(HatMetric {
        tt,
        tx,
        xx,
        yy,
        zz,
        g_s: -det / tt,
    })
}

/// Proper length, area, volume and temperature seen by the comoving observer.
pub fn proper_frame(
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cavity: &CavityGeometry,
    temperature: f64,
) -> Result<ProperFrame> {
    cavity.validate()?;
    if !(temperature.is_finite() && temperature >= 0.0) {
        return Err(domain(format!("temperature must be >= 0, got {temperature}")));
    }
    let c = velocity_normalization(params, orbit)?;
    let f = outside_horizon(params, orbit.radius)?;
    let r = orbit.radius;
    let sqrt_delta = f.delta.sqrt();
    Ok(ProperFrame {
        c,
        length: cavity.length * sqrt_delta * c / r,
        area: r / sqrt_delta * cavity.area,
        volume: cavity.area * cavity.length * c,
        temperature: temperature * c,
    })
}
