//! High- and low-temperature closed forms, all in proper variables (Tp, Lp, Sp, Vp).

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::geometry::{EquatorialOrbit, KerrParams, ProperFrame};
use crate::thermal::{vacuum_energy, ZETA_3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    LowTemperature,
    HighTemperature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport {
    pub value: f64,
    /// First neglected term, with its printed sign.
    pub leading_correction: f64,
    pub regime: Regime,
}

fn check_temperature(frame: &ProperFrame) -> Result<f64> {
    let tp = frame.temperature;
    if !(tp.is_finite() && tp >= 0.0) {
        return Err(domain(format!("proper temperature must be >= 0, got {tp}")));
    }
    Ok(tp)
}

/// e^{−π/(Lp·Tp)}, zero at Tp = 0.
fn boltzmann_gap(frame: &ProperFrame) -> f64 {
    if frame.temperature == 0.0 {
        0.0
    } else {
        (-PI / (frame.length * frame.temperature)).exp()
    }
}

/// Three-term high-temperature form of the unrenormalized thermal correction:
/// −Vp·π²Tp⁴/90 + Sp·ζ(3)Tp³/(4π) − π²Sp/(720Lp³).
///
/// This is the expansion exactly as obtained through zeta regularization of the
/// Laurent series. Compared with the exact series it lacks a term linear in Tp,
/// so its relative accuracy only improves like O(β̂³).
pub fn high_temperature_expansion(frame: &ProperFrame) -> Result<f64> {
    let tp = check_temperature(frame)?;
    if tp == 0.0 {
        return Err(domain("high-temperature expansion needs Tp > 0"));
    }
    Ok(-frame.volume * PI * PI * tp.powi(4) / 90.0 + frame.area * ZETA_3 * tp.powi(3) / (4.0 * PI)
        - PI * PI * frame.area / (720.0 * frame.length.powi(3)))
}

/// 𝓕 ≈ E₀ − ζ(3)SpTp³/(4π) + Vpπ²Tp⁴/90, correction −(Sp/(2Lp))Tp²e^{−π/(LpTp)}.
pub fn low_temperature_free_energy(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
) -> Result<AsymptoticReport> {
    let tp = check_temperature(frame)?;
    let e0 = vacuum_energy(frame, params, orbit)?;
    Ok(AsymptoticReport {
        value: e0 - ZETA_3 * frame.area * tp.powi(3) / (4.0 * PI)
            + frame.volume * PI * PI * tp.powi(4) / 90.0,
        leading_correction: -frame.area / (2.0 * frame.length) * tp * tp * boltzmann_gap(frame),
        regime: Regime::LowTemperature,
    })
}

/// S ≈ (3ζ(3)/(4π))SpTp² − (2π²/45)VpTp³, correction (πSp/(2Lp²))e^{−π/(LpTp)}.
pub fn low_temperature_entropy(frame: &ProperFrame) -> Result<AsymptoticReport> {
    let tp = check_temperature(frame)?;
    Ok(AsymptoticReport {
        value: 3.0 * ZETA_3 / (4.0 * PI) * frame.area * tp * tp
            - 2.0 * PI * PI / 45.0 * frame.volume * tp.powi(3),
        leading_correction: PI * frame.area / (2.0 * frame.length * frame.length) * boltzmann_gap(frame),
        regime: Regime::LowTemperature,
    })
}

/// U ≈ E₀ + ζ(3)SpTp³/(2π) − Vpπ²Tp⁴/30, correction (πSpTp/(2Lp²))e^{−π/(LpTp)}.
pub fn low_temperature_internal_energy(
    frame: &ProperFrame,
    params: &KerrParams,
    orbit: &EquatorialOrbit,
) -> Result<AsymptoticReport> {
    let tp = check_temperature(frame)?;
    let e0 = vacuum_energy(frame, params, orbit)?;
    Ok(AsymptoticReport {
        value: e0 + ZETA_3 * frame.area * tp.powi(3) / (2.0 * PI)
            - frame.volume * PI * PI * tp.powi(4) / 30.0,
        leading_correction: PI * frame.area * tp / (2.0 * frame.length * frame.length)
            * boltzmann_gap(frame),
        regime: Regime::LowTemperature,
    })
}
