//! Brute-force re-derivations of the closed forms.
//!
//! None of these routines share code with the hyperbolic-series kernels in
//! [`crate::thermal`]: the double sum works from the exponential expansion of the
//! logarithm, the quadrature integrates the logarithm itself, and the thermodynamic
//! derivatives are taken by central differences of the free energy.

use std::f64::consts::PI;

use crate::error::{domain, CasimirError, Result};
use crate::geometry::{EquatorialOrbit, KerrParams, ProperFrame};
use crate::quadrature::integrate;
use crate::thermal::{beta_hat, total_free_energy, BetaHat, SeriesControl};

/// Exponential arguments beyond this are dropped; e^{−700} ≈ 1e−304.
const EXP_CUTOFF: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub n_max: usize,
    pub m_max: usize,
    /// Subinterval budget for each adaptive integration.
    pub quad_points: usize,
    /// Relative finite-difference step, h = fd_step·Tp.
    pub fd_step: f64,
    pub rel_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_max: 100_000,
            m_max: 100_000,
            quad_points: 4000,
            fd_step: 1e-5,
            rel_tol: 1e-14,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.m_max == 0 || self.quad_points == 0 {
            return Err(domain("oracle n_max, m_max and quad_points must be positive"));
        }
        if !(self.fd_step > 0.0 && self.rel_tol > 0.0) {
            return Err(domain("oracle fd_step and rel_tol must be positive"));
        }
        Ok(())
    }
}

fn check_frame(frame: &ProperFrame) -> Result<()> {
    if !(frame.length > 0.0 && frame.area > 0.0) {
        return Err(domain("proper length and area must be > 0"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleSum {
    pub value: f64,
    /// Number of diagonal shells n + m = const that were summed.
    pub shells: usize,
}

/// Δ_T𝓕₀ = −(Sp/(16πLp³β̂³)) Σ_{n,m≥1} (1 + 2πmnβ̂)/m³ · e^{−2πmnβ̂}, traversed along
/// diagonal shells n + m = s.
pub fn double_sum_free_energy(frame: &ProperFrame, bh: BetaHat, cfg: &OracleConfig) -> Result<DoubleSum> {
    cfg.validate()?;
    check_frame(frame)?;
    let b = bh.value();
    let ratio = (-2.0 * PI * b).exp();
    let tail_factor = ratio / (1.0 - ratio);
    let term = |n: usize, m: usize| {
        let x = 2.0 * PI * (m * n) as f64 * b;
        if x > EXP_CUTOFF {
            0.0
        } else {
            (1.0 + x) / (m as f64).powi(3) * (-x).exp()
        }
    };

    let mut shells = Vec::new();
    let mut partial = 0.0;
    let mut converged = false;
    for s in 2..=(cfg.n_max + cfg.m_max) {
        let n_lo = s.saturating_sub(cfg.m_max).max(1);
        let n_hi = (s - 1).min(cfg.n_max);
        let shell: f64 = (n_lo..=n_hi).map(|n| term(n, s - n)).sum();
        shells.push(shell);
        partial += shell;
        if shell * tail_factor <= cfg.rel_tol * partial || shell == 0.0 {
            converged = true;
            break;
        }
    }
    let total: f64 = shells.iter().rev().sum();
    let prefactor = -frame.area / (16.0 * PI * frame.length.powi(3) * b.powi(3));
    if !converged {
        return Err(CasimirError::Truncation {
            partial: prefactor * total,
            estimate: (prefactor * shells.last().copied().unwrap_or(0.0) * tail_factor).abs(),
            terms: shells.len(),
        });
    }
    Ok(DoubleSum {
        value: prefactor * total,
        shells: shells.len(),
    })
}

/// Term-by-term form −(Sp/(16πLp³)) Σ_m [(2πmβ̂ + 1)e^{2πmβ̂} − 1] / [(e^{2πmβ̂} − 1)²(mβ̂)³],
/// evaluated with the numerator and denominator scaled by e^{−4πmβ̂}.
pub fn exponential_form_free_energy(frame: &ProperFrame, bh: BetaHat, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    check_frame(frame)?;
    let b = bh.value();
    let ratio = (-2.0 * PI * b).exp();
    let tail_factor = ratio / (1.0 - ratio);
    let mut partial = 0.0;
    for m in 1..=cfg.m_max {
        let mb = m as f64 * b;
        let x = 2.0 * PI * mb;
        let t = if x > EXP_CUTOFF {
            0.0
        } else {
            let e = (-x).exp();
            let d = -(-x).exp_m1();
            ((x + 1.0) * e - e * e) / (d * d * mb.powi(3))
        };
        partial += t;
        if t == 0.0 || t * tail_factor <= cfg.rel_tol * partial {
            return Ok(-frame.area / (16.0 * PI * frame.length.powi(3)) * partial);
        }
    }
    Err(CasimirError::Truncation {
        partial,
        estimate: f64::INFINITY,
        terms: cfg.m_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSum {
    pub value: f64,
    /// Number of Dirichlet modes n whose integrals were needed.
    pub modes: usize,
    /// Bound on the integral beyond the exponential cutoff, relative to |value|.
    pub tail_fraction: f64,
}

/// Δ_T𝓕₀ = (Sp/(4πLp³β̂)) Σ_n ∫₀^∞ q ln(1 − e^{−2β̂√(π²n² + q²)}) dq, integrating the
/// logarithm directly. Here q is the transverse wave number in units of 1/L.
pub fn quadrature_free_energy(frame: &ProperFrame, bh: BetaHat, cfg: &OracleConfig) -> Result<QuadratureSum> {
    cfg.validate()?;
    check_frame(frame)?;
    let b = bh.value();
    let ratio = (-2.0 * PI * b).exp();
    let tail_factor = ratio / (1.0 - ratio);
    // ∫_{z ≥ Z} q e^{−z}/(1 − e^{−z}) dq with z = 2β̂√(a² + q²) is at most (1 + Z)e^{−Z}/(4β̂²)
    let cutoff_tail = (1.0 + EXP_CUTOFF) * (-EXP_CUTOFF).exp() / (4.0 * b * b);

    let mut partial = 0.0;
    let mut tail = 0.0;
    for n in 1..=cfg.n_max {
        let a = PI * n as f64;
        if 2.0 * b * a >= EXP_CUTOFF {
            return Ok(finish(frame, b, partial, tail, n - 1));
        }
        let q_cut = ((0.5 * EXP_CUTOFF / b).powi(2) - a * a).sqrt();
        let integrand = |q: f64| {
            let z = 2.0 * b * (a * a + q * q).sqrt();
            q * (-(-z).exp()).ln_1p()
        };
        // panels on the decay scale 1/(2β̂) near the origin, then the long flat tail
        let knee = (20.0 / b).min(q_cut);
        let near = integrate(integrand, 0.0, knee, 16, 0.1 * cfg.rel_tol, 0.0, cfg.quad_points)?;
        let far_tol = 0.1 * cfg.rel_tol * near.value.abs();
        let far = integrate(integrand, knee, q_cut, 4, 0.1 * cfg.rel_tol, far_tol, cfg.quad_points)?;
        let mode = near.value + far.value;
        partial += mode;
        tail += cutoff_tail;
        if mode == 0.0 || mode.abs() * tail_factor <= cfg.rel_tol * partial.abs() {
            return Ok(finish(frame, b, partial, tail, n));
        }
    }
    Err(CasimirError::Truncation {
        partial: frame.area / (4.0 * PI * frame.length.powi(3) * b) * partial,
        estimate: f64::INFINITY,
        terms: cfg.n_max,
    })
}

fn finish(frame: &ProperFrame, b: f64, partial: f64, tail: f64, modes: usize) -> QuadratureSum {
    QuadratureSum {
        value: frame.area / (4.0 * PI * frame.length.powi(3) * b) * partial,
        modes,
        tail_fraction: if partial == 0.0 { 0.0 } else { tail / partial.abs() },
    }
}

/// f_bb = Tp ∫ d³k/(2π)³ ln(1 − e^{−|k|/Tp}), as a nested integral over k_x and |k_⊥|
/// in units of Tp.
pub fn blackbody_quadrature(proper_temperature: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let tp = proper_temperature;
    if !(tp.is_finite() && tp > 0.0) {
        return Err(domain(format!("black-body quadrature needs Tp > 0, got {tp}")));
    }
    let tol = 1e-12;
    let inner = |ux: f64| -> Result<f64> {
        let cut = (EXP_CUTOFF * EXP_CUTOFF - ux * ux).max(0.0).sqrt();
        let f = |u: f64| u * (-(-(ux * ux + u * u).sqrt()).exp()).ln_1p();
        let knee = 40.0_f64.min(cut);
        let near = integrate(f, 0.0, knee, 8, tol, 0.0, cfg.quad_points)?;
        let far = integrate(f, knee, cut, 2, tol, tol * near.value.abs(), cfg.quad_points)?;
        Ok(near.value + far.value)
    };
    // the outer integrand is itself a quadrature; keep the first error it reports
    let failure = std::cell::RefCell::new(None);
    let outer = |ux: f64| match inner(ux) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let near = integrate(outer, 0.0, 40.0, 8, tol, 0.0, cfg.quad_points)?;
    let far = integrate(outer, 40.0, EXP_CUTOFF, 2, tol, tol * near.value.abs(), cfg.quad_points)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(tp.powi(4) / (2.0 * PI * PI) * (near.value + far.value))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdThermo {
    /// −∂𝓕/∂Tp.
    pub entropy: f64,
    /// −Tp²·∂(𝓕/Tp)/∂Tp.
    pub internal_energy: f64,
}

/// Central differences of the total renormalized free energy in Tp, with Lp, Sp, Vp and
/// the orbit held fixed.
pub fn finite_difference_thermo(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
    cfg: &OracleConfig,
    ctl: &SeriesControl,
) -> Result<FdThermo> {
    cfg.validate()?;
    let tp = frame.temperature;
    if !(tp.is_finite() && tp > 0.0) {
        return Err(domain(format!("finite differences need Tp > 0, got {tp}")));
    }
    let h = cfg.fd_step * tp;
    let (up, down) = (tp + h, tp - h);
    let step = up - down;
    if !(h > 0.0) || up == tp || down == tp || !(down > 0.0) || !(step > 0.0) {
        return Err(CasimirError::FdStep { temperature: tp, step: h });
    }
    let free = |t: f64| -> Result<f64> {
        let f = frame.with_temperature(t);
        total_free_energy(&f, params, orbit, beta_hat(&f)?, ctl)
    };
    let (f_up, f_down) = (free(up)?, free(down)?);
    Ok(FdThermo {
        entropy: -(f_up - f_down) / step,
        internal_energy: -tp * tp * (f_up / up - f_down / down) / step,
    })
}
