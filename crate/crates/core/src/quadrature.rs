//! Globally adaptive 21-point Gauss–Kronrod quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{CasimirError, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_value = fc.abs() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod += WGK[j] * (f1 + f2);
        abs_value += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_value * half.abs(),
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]`, starting from `initial` equal panels and bisecting the
/// worst panel until the summed error estimate is below `max(abs_tol, rel_tol·|I|)`,
/// or below the rounding floor of the integrand.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    initial: usize,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(CasimirError::Quadrature(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, panels: 0 });
    }
    let initial = initial.max(1);
    let width = (b - a) / initial as f64;
    let mut heap: BinaryHeap<Panel> = (0..initial)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == initial { b } else { a + width * (i + 1) as f64 };
            gauss_kronrod(&f, lo, hi)
        })
        .collect();

    loop {
        let (value, error, abs_value) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |(v, e, s), p| (v + p.value, e + p.error, s + p.abs_value));
        if !value.is_finite() {
            return Err(CasimirError::Quadrature("non-finite integrand".into()));
        }
        let floor = 50.0 * f64::EPSILON * abs_value;
        if error <= abs_tol.max(rel_tol * value.abs()).max(floor) {
            return Ok(Integral { value, error, panels: heap.len() });
        }
        if heap.len() >= max_panels {
            return Err(CasimirError::Quadrature(format!(
                "{} panels exhausted with error {error:e} on value {value:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod(&f, worst.a, mid));
        heap.push(gauss_kronrod(&f, mid, worst.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_exact_on_one_panel() {
        let r = integrate(|x| x.powi(19) - 3.0 * x, 0.0, 1.0, 1, 1e-14, 0.0, 1).unwrap();
        assert_relative_eq!(r.value, 1.0 / 20.0 - 1.5, max_relative = 1e-14);
    }

    #[test]
    fn exponential_decay() {
        let r = integrate(|x| x * (-x).exp(), 0.0, 700.0, 8, 1e-13, 0.0, 1000).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫₀¹ x ln x dx = −1/4
        let r = integrate(|x| if x == 0.0 { 0.0 } else { x * x.ln() }, 0.0, 1.0, 1, 1e-12, 0.0, 500).unwrap();
        assert_relative_eq!(r.value, -0.25, max_relative = 1e-11);
    }

    #[test]
    fn bose_integral() {
        // ∫₀^∞ x² ln(1 − e^{−x}) dx = −2ζ(4) = −π⁴/45
        let r = integrate(|x: f64| x * x * (-(-x).exp()).ln_1p(), 0.0, 700.0, 16, 1e-13, 0.0, 2000).unwrap();
        assert_relative_eq!(r.value, -PI.powi(4) / 45.0, max_relative = 1e-11);
    }

    #[test]
    fn panel_budget_is_reported() {
        let err = integrate(|x: f64| (1.0 / x.max(1e-300)).sin(), 0.0, 1.0, 1, 1e-15, 0.0, 4).unwrap_err();
        assert!(matches!(err, CasimirError::Quadrature(_)));
    }
}
