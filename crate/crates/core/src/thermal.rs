//! Renormalized thermal Casimir quantities from the resummed hyperbolic series.
//!
//! Every series here is written with coth(y) = 1 + 2/(e^{2y} − 1) and the
//! constant part summed in closed form through ζ(3). What is left is a sum of
//! positive terms decaying like e^{−2πmβ̂}, which stays accurate at large β̂
//! where the printed forms cancel to a tiny remainder.

use std::f64::consts::PI;

use crate::error::{domain, CasimirError, Result};
use crate::geometry::{comoving_bracket, EquatorialOrbit, KerrParams, ProperFrame};

/// ζ(3), Apéry's constant.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// ζ(4) = π⁴/90.
pub fn zeta_4() -> f64 {
    PI.powi(4) / 90.0
}

/// Above this value of πmβ̂, coth − 1 and 1/sinh² are below 1e−304 and are taken as zero.
const HYPERBOLIC_CUTOFF: f64 = 350.0;

/// Truncation policy for the infinite sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub m_max: usize,
    /// Mode-index ceiling for the brute-force oracle sums.
    pub n_max: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            m_max: 1_000_000,
            n_max: 100_000,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(domain(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(domain(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.m_max < 1 {
            return Err(domain("m_max must be >= 1"));
        }
        Ok(())
    }
}

/// Dimensionless inverse temperature β̂ = 1/(2·Lp·Tp).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BetaHat(f64);

impl BetaHat {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(domain(format!("beta-hat must be finite and > 0, got {value}")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn beta_hat(frame: &ProperFrame) -> Result<BetaHat> {
    let tp = frame.temperature;
    if !(tp.is_finite() && tp >= 0.0) {
        return Err(domain(format!("proper temperature must be >= 0, got {tp}")));
    }
    if tp == 0.0 {
        return Err(CasimirError::ZeroTemperature);
    }
    BetaHat::new(1.0 / (2.0 * frame.length * tp))
}

/// A truncated series value with its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summed {
    pub value: f64,
    pub terms_used: usize,
    pub truncation_estimate: f64,
}

/// Hyperbolic factors at y = πmβ̂: (coth y − 1, 1/sinh² y).
fn hyperbolic(y: f64) -> (f64, f64) {
    if y > HYPERBOLIC_CUTOFF {
        return (0.0, 0.0);
    }
    let e = (2.0 * y).exp_m1();
    (2.0 / e, 4.0 * (e + 1.0) / (e * e))
}

/// Sums `term(m, coth − 1, 1/sinh²)` for m = 1, 2, … until the geometric tail bound
/// |term|·q/(1 − q), q = e^{−2πβ̂}, drops below rel_tol of |offset + partial|. The
/// offset is the closed-form part the series is added to, so the tolerance applies to
/// the reported quantity even when the two cancel.
fn sum_exponential<F>(bh: BetaHat, ctl: &SeriesControl, offset: f64, term: F) -> Result<Summed>
where
    F: Fn(f64, f64, f64) -> f64,
{
    ctl.validate()?;
    let b = bh.value();
    let q = (-2.0 * PI * b).exp();
    let tail_factor = q / (-(-2.0 * PI * b).exp_m1());
    let mut partial = 0.0;
    let mut estimate = f64::INFINITY;
    for m in 1..=ctl.m_max {
        let mf = m as f64;
        let (cm1, csch2) = hyperbolic(PI * mf * b);
        let t = term(mf, cm1, csch2);
        partial += t;
        estimate = t.abs() * tail_factor;
        if t.abs() <= ctl.abs_tol || estimate <= ctl.rel_tol * (offset + partial).abs() {
            return Ok(Summed {
                value: partial,
                terms_used: m,
                truncation_estimate: estimate,
            });
        }
    }
    Err(CasimirError::Truncation {
        partial,
        estimate,
        terms: ctl.m_max,
    })
}

/// Below this β̂ the renormalized quantities are evaluated from the Matsubara (dual)
/// series in e^{−2πn/β̂}. The direct series there adds surface and bulk terms of size
/// β̂⁻⁴ that cancel down to O(1/β̂), losing digits to rounding.
pub const DUAL_SWITCH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Path {
    Direct,
    Dual,
}

impl Path {
    fn for_beta(bh: BetaHat) -> Self {
        if bh.value() < DUAL_SWITCH {
            Path::Dual
        } else {
            Path::Direct
        }
    }
}

/// Dual counterpart of [`sum_exponential`]: sums `term(n, x·n, u, 1 − u)`, x = 2π/β̂,
/// u = e^{−xn}, with tail ratio e^{−x}.
fn sum_dual<F>(bh: BetaHat, ctl: &SeriesControl, offset: f64, term: F) -> Result<Summed>
where
    F: Fn(f64, f64, f64, f64) -> f64,
{
    ctl.validate()?;
    let x = 2.0 * PI / bh.value();
    let tail_factor = (-x).exp() / (-(-x).exp_m1());
    let mut partial = 0.0;
    let mut estimate = f64::INFINITY;
    for n in 1..=ctl.m_max {
        let nf = n as f64;
        let xn = x * nf;
        let t = if xn > 2.0 * HYPERBOLIC_CUTOFF {
            0.0
        } else {
            term(nf, xn, (-xn).exp(), -(-xn).exp_m1())
        };
        partial += t;
        estimate = t.abs() * tail_factor;
        if t.abs() <= ctl.abs_tol || estimate <= ctl.rel_tol * (offset + partial).abs() {
            return Ok(Summed {
                value: partial,
                terms_used: n,
                truncation_estimate: estimate,
            });
        }
    }
    Err(CasimirError::Truncation {
        partial,
        estimate,
        terms: ctl.m_max,
    })
}

/// H = Σ_n [u/(1 − u) + xn·u/(1 − u)²]/n³.
fn dual_h(n: f64, xn: f64, u: f64, d: f64) -> f64 {
    (u / d + xn * u / (d * d)) / (n * n * n)
}

/// x·dH/dx = −Σ_n (xn)²·u(1 + u)/((1 − u)³n³).
fn dual_xdh(n: f64, xn: f64, u: f64, d: f64) -> f64 {
    -xn * xn * u * (1.0 + u) / (d * d * d * n * n * n)
}

/// Σ_m [ (coth − 1)/(mβ̂)³ + π/((mβ̂)² sinh²) ].
fn free_energy_series(bh: BetaHat, ctl: &SeriesControl, offset: f64) -> Result<Summed> {
    let b = bh.value();
    sum_exponential(bh, ctl, offset, |m, cm1, csch2| {
        let mb = m * b;
        cm1 / (mb * mb * mb) + PI * csch2 / (mb * mb)
    })
}

/// Σ_m [ (coth − 1)/(m³β̂²) + π/(m²β̂ sinh²) + 2π² coth/(3m sinh²) ].
fn entropy_series(bh: BetaHat, ctl: &SeriesControl, offset: f64) -> Result<Summed> {
    let b = bh.value();
    sum_exponential(bh, ctl, offset, |m, cm1, csch2| {
        cm1 / (m * m * m * b * b)
            + PI * csch2 / (m * m * b)
            + 2.0 * PI * PI * (1.0 + cm1) * csch2 / (3.0 * m)
    })
}

/// Σ_m [ (coth − 1)/(mβ̂)³ + π/((mβ̂)² sinh²) + π² coth/(mβ̂ sinh²) ].
fn energy_series(bh: BetaHat, ctl: &SeriesControl, offset: f64) -> Result<Summed> {
    let b = bh.value();
    sum_exponential(bh, ctl, offset, |m, cm1, csch2| {
        let mb = m * b;
        cm1 / (mb * mb * mb) + PI * csch2 / (mb * mb) + PI * PI * (1.0 + cm1) * csch2 / mb
    })
}

/// Flat-space scalar Casimir energy density between Dirichlet plates, −π²/(1440·Lp⁴).
pub fn flat_casimir_density(proper_length: f64) -> Result<f64> {
    if !(proper_length.is_finite() && proper_length > 0.0) {
        return Err(domain(format!("proper length must be > 0, got {proper_length}")));
    }
    Ok(-PI * PI / (1440.0 * proper_length.powi(4)))
}

/// Zero-temperature renormalized energy Vp·ε⁰(Lp)·[1 − (A²/(r⁴Δ))(Ω − ω_d)²]^(1/2).
pub fn vacuum_energy(frame: &ProperFrame, params: &KerrParams, orbit: &EquatorialOrbit) -> Result<f64> {
    let bracket = comoving_bracket(params, orbit)?;
    Ok(frame.volume * flat_casimir_density(frame.length)? * bracket.sqrt())
}

fn check_frame(frame: &ProperFrame) -> Result<()> {
    if !(frame.length > 0.0 && frame.area > 0.0 && frame.volume > 0.0) {
        return Err(domain("proper length, area and volume must be > 0"));
    }
    Ok(())
}

fn thermal_correction_summed(
    frame: &ProperFrame,
    bh: BetaHat,
    ctl: &SeriesControl,
    offset: f64,
) -> Result<Summed> {
    check_frame(frame)?;
    let s = free_energy_series(bh, ctl, offset)?;
    Ok(Summed {
        value: -frame.area / (32.0 * PI * frame.length.powi(3)) * s.value,
        ..s
    })
}

/// Unrenormalized thermal correction Δ_T𝓕₀ in proper variables.
pub fn thermal_correction_exact(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<f64> {
    Ok(thermal_correction_summed(frame, bh, ctl, 0.0)?.value)
}

/// The hyperbolic-series part −(Sp/(32πLp³))·Σ[coth/(mβ̂)³ + π/((mβ̂)² sinh²)].
pub fn hyperbolic_series_part(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<f64> {
    let b = bh.value();
    let exact = thermal_correction_exact(frame, bh, ctl)?;
    Ok(exact - ZETA_3 * frame.area / (32.0 * PI * (frame.length * b).powi(3)))
}

fn renorm_summed(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<Summed> {
    renorm_via(frame, bh, ctl, Path::for_beta(bh))
}

fn renorm_via(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl, path: Path) -> Result<Summed> {
    let b = bh.value();
    if path == Path::Dual {
        // Δ_T𝓕_ren = (Sp/Lp³)[π²/1440 − (ζ(3)/2 + H)/(16πβ̂)]
        check_frame(frame)?;
        let offset = ZETA_3 / 2.0 - PI.powi(3) * b / 90.0;
        let h = sum_dual(bh, ctl, offset, dual_h)?;
        let scale = frame.area / frame.length.powi(3);
        return Ok(Summed {
            value: scale * (PI * PI / 1440.0 - (ZETA_3 / 2.0 + h.value) / (16.0 * PI * b)),
            ..h
        });
    }
    // surface and bulk terms in units of the series: ζ(3)/β̂³ − π³/(45β̂⁴)
    let offset = ZETA_3 / (b * b * b) - PI.powi(3) / (45.0 * b.powi(4));
    let s = thermal_correction_summed(frame, bh, ctl, offset)?;
    let surface = ZETA_3 * frame.area / (32.0 * PI * (frame.length * b).powi(3));
    Ok(Summed {
        value: s.value - surface - frame.volume * blackbody_density(frame.temperature)?,
        ..s
    })
}

/// Renormalized thermal correction: the hyperbolic series plus Vp·π²Tp⁴/90.
pub fn renorm_thermal_correction(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<f64> {
    Ok(renorm_summed(frame, bh, ctl)?.value)
}

/// Black-body free-energy density −π²Tp⁴/90.
pub fn blackbody_density(proper_temperature: f64) -> Result<f64> {
    if !(proper_temperature.is_finite() && proper_temperature >= 0.0) {
        return Err(domain(format!("temperature must be >= 0, got {proper_temperature}")));
    }
    Ok(-PI * PI * proper_temperature.powi(4) / 90.0)
}

pub fn total_free_energy(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    bh: BetaHat,
    ctl: &SeriesControl,
) -> Result<f64> {
    Ok(vacuum_energy(frame, params, orbit)? + renorm_thermal_correction(frame, bh, ctl)?)
}

fn entropy_summed(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<Summed> {
    entropy_via(frame, bh, ctl, Path::for_beta(bh))
}

fn entropy_via(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl, path: Path) -> Result<Summed> {
    check_frame(frame)?;
    let b = bh.value();
    if path == Path::Dual {
        // S = (Sp/(8πLp²))[ζ(3)/2 + H + x·dH/dx]
        let offset = ZETA_3 / 2.0;
        let s = sum_dual(bh, ctl, offset, |n, xn, u, d| dual_h(n, xn, u, d) + dual_xdh(n, xn, u, d))?;
        return Ok(Summed {
            value: frame.area / (8.0 * PI * frame.length * frame.length) * (offset + s.value),
            ..s
        });
    }
    let offset = ZETA_3 / (b * b) - 4.0 * PI.powi(3) / (135.0 * b * b * b);
    let s = entropy_series(bh, ctl, offset)?;
    let bracket = offset + s.value;
    Ok(Summed {
        value: 3.0 * frame.area / (16.0 * PI * frame.length * frame.length) * bracket,
        ..s
    })
}

/// Renormalized entropy S = −∂𝓕/∂Tp in closed form.
pub fn entropy(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<f64> {
    Ok(entropy_summed(frame, bh, ctl)?.value)
}

/// U − E₀, the thermal part of the renormalized internal energy.
fn thermal_energy_summed(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<Summed> {
    thermal_energy_via(frame, bh, ctl, Path::for_beta(bh))
}

fn thermal_energy_via(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl, path: Path) -> Result<Summed> {
    check_frame(frame)?;
    let b = bh.value();
    if path == Path::Dual {
        // U − E₀ = (Sp/Lp³)[π²/1440 + x·(dH/dx)/(16πβ̂)]
        let offset = PI.powi(3) * b / 90.0;
        let s = sum_dual(bh, ctl, offset, dual_xdh)?;
        return Ok(Summed {
            value: frame.area / (16.0 * PI * b * frame.length.powi(3)) * (offset + s.value),
            ..s
        });
    }
    let offset = ZETA_3 / (b * b * b) - PI.powi(3) / (30.0 * b.powi(4));
    let s = energy_series(bh, ctl, offset)?;
    let bracket = offset + s.value;
    Ok(Summed {
        value: frame.area / (16.0 * PI * frame.length.powi(3)) * bracket,
        ..s
    })
}

/// Renormalized internal energy U = −Tp²·∂(𝓕/Tp)/∂Tp in closed form.
pub fn internal_energy(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    bh: BetaHat,
    ctl: &SeriesControl,
) -> Result<f64> {
    Ok(vacuum_energy(frame, params, orbit)? + thermal_energy_summed(frame, bh, ctl)?.value)
}

/// Thermal parts of 𝓕, S and U; they depend on (Lp, Sp, Tp) only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParts {
    pub free_energy: f64,
    pub entropy: f64,
    pub internal_energy: f64,
}

pub fn thermal_parts(frame: &ProperFrame, bh: BetaHat, ctl: &SeriesControl) -> Result<ThermalParts> {
    Ok(ThermalParts {
        free_energy: renorm_thermal_correction(frame, bh, ctl)?,
        entropy: entropy(frame, bh, ctl)?,
        internal_energy: thermal_energy_summed(frame, bh, ctl)?.value,
    })
}

/// Full set of renormalized quantities at one point, plus convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirReport {
    pub vacuum_energy: f64,
    pub thermal_correction: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub internal_energy: f64,
    pub blackbody_density: f64,
    /// `None` at zero temperature.
    pub beta_hat: Option<BetaHat>,
    /// Largest number of terms any of the three series needed.
    pub terms_used: usize,
    /// Largest tail-bound estimate across the three series.
    pub truncation_estimate: f64,
}

impl CasimirReport {
    /// U − (𝓕 + Tp·S), relative to max(|U|, |𝓕|).
    pub fn legendre_residual(&self, proper_temperature: f64) -> f64 {
        let lhs = self.internal_energy;
        let rhs = self.free_energy + proper_temperature * self.entropy;
        let scale = lhs.abs().max(self.free_energy.abs());
        if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs) / scale
        }
    }
}

pub fn casimir_report(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    ctl: &SeriesControl,
) -> Result<CasimirReport> {
    let e0 = vacuum_energy(frame, params, orbit)?;
    let bb = blackbody_density(frame.temperature)?;
    let bh = match beta_hat(frame) {
        Ok(bh) => bh,
        Err(CasimirError::ZeroTemperature) => {
            return Ok(CasimirReport {
                vacuum_energy: e0,
                thermal_correction: 0.0,
                free_energy: e0,
                entropy: 0.0,
                internal_energy: e0,
                blackbody_density: bb,
                beta_hat: None,
                terms_used: 0,
                truncation_estimate: 0.0,
            })
        }
        Err(e) => return Err(e),
    };
    let f = renorm_summed(frame, bh, ctl)?;
    let s = entropy_summed(frame, bh, ctl)?;
    let u = thermal_energy_summed(frame, bh, ctl)?;
    Ok(CasimirReport {
        vacuum_energy: e0,
        thermal_correction: f.value,
        free_energy: e0 + f.value,
        entropy: s.value,
        internal_energy: e0 + u.value,
        blackbody_density: bb,
        beta_hat: Some(bh),
        terms_used: f.terms_used.max(s.terms_used).max(u.terms_used),
        truncation_estimate: f
            .truncation_estimate
            .max(s.truncation_estimate)
            .max(u.truncation_estimate),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(tp: f64) -> ProperFrame {
        ProperFrame::from_proper(1.0, 1.0, tp).unwrap()
    }

    fn bh_of(f: &ProperFrame) -> BetaHat {
        beta_hat(f).unwrap()
    }

    /// Straight evaluation of the printed hyperbolic forms with mpmath-free f64 arithmetic,
    /// usable only where there is no cancellation problem (moderate β̂).
    fn printed_free_energy(sp: f64, lp: f64, b: f64) -> f64 {
        let mut s = 0.0;
        let mut head = 0.0;
        for m in 1..2000 {
            let y = PI * m as f64 * b;
            let mb = m as f64 * b;
            s += 1.0 / (y.tanh() * mb.powi(3)) + PI / (mb * mb * y.sinh().powi(2));
            head += 1.0 / (m as f64).powi(3);
        }
        // coth = 1 to double precision beyond m = 2000, leaving the ζ(3) tail
        s += (ZETA_3 - head) / b.powi(3);
        -sp / (32.0 * PI * lp.powi(3)) * s + ZETA_3 * sp / (32.0 * PI * (lp * b).powi(3))
    }

    #[test]
    fn casimir_density_values() {
        assert_relative_eq!(flat_casimir_density(1.0).unwrap(), -6.853_891_945_200_942e-3, max_relative = 1e-14);
        assert_relative_eq!(
            flat_casimir_density(2.0).unwrap(),
            flat_casimir_density(1.0).unwrap() / 16.0,
            max_relative = 1e-15
        );
        for lp in [1e-3, 0.3, 7.0] {
            assert!(flat_casimir_density(lp).unwrap() < 0.0);
        }
        assert!(flat_casimir_density(0.0).is_err());
    }

    #[test]
    fn vacuum_energy_brackets() {
        use crate::geometry::{proper_frame, CavityGeometry};
        let flat = KerrParams::flat();
        let orbit = EquatorialOrbit { radius: 5.0, omega: 0.0 };
        let cav = CavityGeometry::new(1.0, 1.0).unwrap();
        let fr = proper_frame(&flat, &orbit, &cav, 0.0).unwrap();
        assert_relative_eq!(vacuum_energy(&fr, &flat, &orbit).unwrap(), -PI * PI / 1440.0, max_relative = 1e-15);

        let p = KerrParams::new(1.0, 0.5).unwrap();
        let cav = CavityGeometry::new(0.01, 1e-4).unwrap();
        let zamo = EquatorialOrbit::zamo(&p, 10.0).unwrap();
        let fr = proper_frame(&p, &zamo, &cav, 0.0).unwrap();
        let eps = flat_casimir_density(fr.length).unwrap();
        assert_eq!(vacuum_energy(&fr, &p, &zamo).unwrap(), fr.volume * eps);

        let off = EquatorialOrbit::band_fraction(&p, 10.0, 0.5).unwrap();
        let fr = proper_frame(&p, &off, &cav, 0.0).unwrap();
        let eps = flat_casimir_density(fr.length).unwrap();
        assert_relative_eq!(
            vacuum_energy(&fr, &p, &off).unwrap(),
            fr.volume * eps * 0.75_f64.sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn beta_hat_values() {
        assert_eq!(beta_hat(&unit(0.5)).unwrap().value(), 1.0);
        let f = ProperFrame::from_proper(2.0, 1.0, 0.25).unwrap();
        assert_eq!(beta_hat(&f).unwrap().value(), 1.0);
        assert_relative_eq!(beta_hat(&unit(0.1)).unwrap().value(), 5.0, max_relative = 1e-15);
        assert_eq!(beta_hat(&unit(0.0)), Err(CasimirError::ZeroTemperature));
    }

    #[test]
    fn exponential_series_matches_printed_form_at_moderate_beta() {
        for b in [0.2, 0.5, 1.0] {
            let f = unit(1.0).at_beta_hat(b);
            let got = thermal_correction_exact(&f, bh_of(&f), &SeriesControl::default()).unwrap();
            assert_relative_eq!(got, printed_free_energy(1.0, 1.0, b), max_relative = 1e-11);
        }
    }

    #[test]
    fn exact_correction_vanishes_exponentially_at_low_t() {
        // Δ_T𝓕₀ ≈ −(Sp/(2Lp))Tp²e^{−2πβ̂}(1 + 1/(2πβ̂)) for large β̂
        let b = 10.0;
        let f = unit(1.0).at_beta_hat(b);
        let got = thermal_correction_exact(&f, bh_of(&f), &SeriesControl::default()).unwrap();
        let tp = f.temperature;
        let lead = -0.5 * tp * tp * (-2.0 * PI * b).exp() * (1.0 + 1.0 / (2.0 * PI * b));
        assert_relative_eq!(got, lead, max_relative = 1e-12);
    }

    #[test]
    fn series_part_tends_to_surface_term() {
        // hyperbolic series part → −ζ(3)SpTp³/(4π) as β̂ → ∞
        let f = unit(1.0).at_beta_hat(10.0);
        let h = hyperbolic_series_part(&f, bh_of(&f), &SeriesControl::default()).unwrap();
        let tp = f.temperature;
        assert_relative_eq!(h, -ZETA_3 * tp.powi(3) / (4.0 * PI), max_relative = 1e-14);
    }

    #[test]
    fn renorm_correction_linear_in_area() {
        let ctl = SeriesControl::default();
        let a = ProperFrame::from_proper(0.7, 1.3, 0.4).unwrap();
        let b = ProperFrame::from_proper(0.7, 2.6, 0.4).unwrap();
        let ha = hyperbolic_series_part(&a, bh_of(&a), &ctl).unwrap();
        let hb = hyperbolic_series_part(&b, bh_of(&b), &ctl).unwrap();
        assert_relative_eq!(hb, 2.0 * ha, max_relative = 1e-15);
    }

    #[test]
    fn renorm_correction_at_high_t_keeps_classical_term() {
        // at small β̂ the renormalized correction approaches π²Sp/(1440Lp³) − ζ(3)SpTp/(16πLp²)
        let f = unit(1.0).at_beta_hat(0.05);
        let got = renorm_thermal_correction(&f, bh_of(&f), &SeriesControl::default()).unwrap();
        let tp = f.temperature;
        let expect = PI * PI / 1440.0 - ZETA_3 * tp / (16.0 * PI);
        assert_relative_eq!(got, expect, max_relative = 1e-10);
    }

    #[test]
    fn direct_and_dual_series_agree() {
        // 40-digit values of the thermal parts of 𝓕, S, U at Lp = Sp = 1
        let reference = [
            (0.3, [-0.033_003_046_308_407_52, 0.023_914_148_955_163_543, 0.006_853_868_616_865_052_8]),
            (1.0, [-0.005_374_832_654_956_842_5, 0.021_499_330_619_827_37, 0.005_374_832_654_956_842_5]),
            (2.0, [-0.001_066_384_546_818_441_7, 0.011_088_619_566_050_074, 0.001_705_770_344_694_076_9]),
        ];
        let ctl = SeriesControl::default();
        for (b, want) in reference {
            let f = unit(1.0).at_beta_hat(b);
            let bh = bh_of(&f);
            for path in [Path::Direct, Path::Dual] {
                let got = [
                    renorm_via(&f, bh, &ctl, path).unwrap().value,
                    entropy_via(&f, bh, &ctl, path).unwrap().value,
                    thermal_energy_via(&f, bh, &ctl, path).unwrap().value,
                ];
                for (g, w) in got.iter().zip(want) {
                    assert_relative_eq!(*g, w, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn dual_series_is_cheap_at_high_t() {
        let f = unit(1.0).at_beta_hat(0.05);
        let s = renorm_summed(&f, bh_of(&f), &SeriesControl::default()).unwrap();
        assert!(s.terms_used <= 2, "{}", s.terms_used);
        let direct = renorm_via(&f, bh_of(&f), &SeriesControl::default(), Path::Direct).unwrap();
        assert!(direct.terms_used > 50);
    }

    #[test]
    fn entropy_vanishes_as_tp_squared() {
        // power-law tails up to e^{−2πβ̂}: S = 3ζ(3)SpTp²/(4π) − 2π²VpTp³/45 and
        // U − E₀ = ζ(3)SpTp³/(2π) − π²VpTp⁴/30
        let ctl = SeriesControl::default();
        for b in [20.0, 50.0, 500.0] {
            let f = ProperFrame::from_proper(1.0, 2.0, 1.0).unwrap().at_beta_hat(b);
            let (tp, vp) = (f.temperature, f.volume);
            let bh = bh_of(&f);
            let s = entropy(&f, bh, &ctl).unwrap();
            let s_tail = 3.0 * ZETA_3 * 2.0 * tp * tp / (4.0 * PI) - 2.0 * PI * PI * vp * tp.powi(3) / 45.0;
            assert_relative_eq!(s, s_tail, max_relative = 1e-12);
            let u = thermal_energy_summed(&f, bh, &ctl).unwrap().value;
            let u_tail = ZETA_3 * 2.0 * tp.powi(3) / (2.0 * PI) - PI * PI * vp * tp.powi(4) / 30.0;
            assert_relative_eq!(u, u_tail, max_relative = 1e-12);
        }
    }

    #[test]
    fn blackbody_density_values() {
        assert_eq!(blackbody_density(0.0).unwrap(), 0.0);
        assert_relative_eq!(blackbody_density(1.0).unwrap(), -0.109_662_271_123_215_9, max_relative = 1e-14);
        assert!(blackbody_density(-1.0).is_err());
    }

    #[test]
    fn zero_temperature_report() {
        let flat = KerrParams::flat();
        let orbit = EquatorialOrbit { radius: 5.0, omega: 0.0 };
        let r = casimir_report(&unit(0.0), &flat, &orbit, &SeriesControl::default()).unwrap();
        assert_relative_eq!(r.free_energy, -PI * PI / 1440.0, max_relative = 1e-15);
        assert_eq!(r.free_energy, r.vacuum_energy);
        assert_eq!(r.internal_energy, r.vacuum_energy);
        assert_eq!((r.entropy, r.thermal_correction, r.beta_hat), (0.0, 0.0, None));
    }

    #[test]
    fn free_energy_tends_to_vacuum_energy() {
        let flat = KerrParams::flat();
        let orbit = EquatorialOrbit { radius: 5.0, omega: 0.0 };
        let f = unit(1.0).at_beta_hat(50.0);
        let fr = total_free_energy(&f, &flat, &orbit, bh_of(&f), &SeriesControl::default()).unwrap();
        let e0 = -PI * PI / 1440.0;
        let tp = f.temperature;
        // remaining power-law terms of the low-temperature form
        let expect = e0 - ZETA_3 * tp.powi(3) / (4.0 * PI) + PI * PI * tp.powi(4) / 90.0;
        assert_relative_eq!(fr, expect, max_relative = 1e-15);
        assert!((fr - e0).abs() < 1e-6);
    }

    #[test]
    fn report_is_consistent() {
        let p = KerrParams::new(1.0, 0.5).unwrap();
        let orbit = EquatorialOrbit::zamo(&p, 10.0).unwrap();
        let cav = crate::geometry::CavityGeometry::new(0.01, 1e-4).unwrap();
        let f = crate::geometry::proper_frame(&p, &orbit, &cav, 10.0).unwrap();
        let r = casimir_report(&f, &p, &orbit, &SeriesControl::default()).unwrap();
        assert_relative_eq!(r.free_energy, r.vacuum_energy + r.thermal_correction, max_relative = 1e-12);
        assert!(r.legendre_residual(f.temperature).abs() < 1e-9);
        assert!(r.terms_used >= 1);
        assert!(r.truncation_estimate.is_finite());
    }

    #[test]
    fn truncation_error_when_m_max_too_small() {
        let f = unit(1.0).at_beta_hat(0.5);
        let ctl = SeriesControl { m_max: 1, ..Default::default() };
        match thermal_correction_exact(&f, bh_of(&f), &ctl) {
            Err(CasimirError::Truncation { terms, partial, .. }) => {
                assert_eq!(terms, 1);
                assert!(partial > 0.0);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn deep_low_t_uses_overflow_branch() {
        let f = unit(1.0).at_beta_hat(500.0);
        let bh = bh_of(&f);
        let ctl = SeriesControl::default();
        assert_eq!(thermal_correction_exact(&f, bh, &ctl).unwrap(), 0.0);
        let s = entropy(&f, bh, &ctl).unwrap();
        assert!(s.is_finite() && s > 0.0);
    }
}
