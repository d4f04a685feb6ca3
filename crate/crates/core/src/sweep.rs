//! Point evaluation, deterministic parameter sweeps and record serialization.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{domain, CasimirError, Result};
use crate::geometry::{
    dragging_angular_velocity, omega_half_width, proper_frame, CavityGeometry, EquatorialOrbit,
    KerrParams, ProperFrame,
};
use crate::modes::{cavity_validity, ValidityDiagnostics, ValidityThresholds};
use crate::thermal::{casimir_report, CasimirReport, SeriesControl};

/// How the orbital angular velocity is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaSpec {
    Value(f64),
    /// Ω = ω_d.
    Zamo,
    /// Ω = ω_d + f·(r²√Δ/A), f ∈ (−1, 1).
    BandFraction(f64),
}

impl OmegaSpec {
    pub fn resolve(&self, params: &KerrParams, radius: f64) -> Result<f64> {
        match *self {
            OmegaSpec::Value(w) => Ok(w),
            OmegaSpec::Zamo => dragging_angular_velocity(params, radius),
            OmegaSpec::BandFraction(f) => {
                if !(f > -1.0 && f < 1.0) {
                    return Err(domain(format!("band fraction must lie in (-1, 1), got {f}")));
                }
                Ok(dragging_angular_velocity(params, radius)? + f * omega_half_width(params, radius)?)
            }
        }
    }
}

impl FromStr for OmegaSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("zamo") {
            return Ok(OmegaSpec::Zamo);
        }
        if let Some(f) = s.strip_prefix("frac=") {
            let f: f64 = f.parse().map_err(|e| format!("bad band fraction {f:?}: {e}"))?;
            if !(f > -1.0 && f < 1.0) {
                return Err(format!("band fraction must lie in (-1, 1), got {f}"));
            }
            return Ok(OmegaSpec::BandFraction(f));
        }
        s.parse()
            .map(OmegaSpec::Value)
            .map_err(|_| format!("omega must be a number, `zamo` or `frac=<f>`, got {s:?}"))
    }
}

impl fmt::Display for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSpec::Value(w) => write!(f, "{w}"),
            OmegaSpec::Zamo => write!(f, "zamo"),
            OmegaSpec::BandFraction(x) => write!(f, "frac={x}"),
        }
    }
}

/// Everything needed to evaluate one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRequest {
    pub mass: f64,
    pub spin: f64,
    pub allow_naked: bool,
    pub radius: f64,
    pub omega: OmegaSpec,
    pub cavity: CavityGeometry,
    pub temperature: f64,
    pub series: SeriesControl,
    pub thresholds: ValidityThresholds,
}

impl PointRequest {
    pub fn params(&self) -> Result<KerrParams> {
        if self.allow_naked {
            KerrParams::naked(self.mass, self.spin)
        } else {
            KerrParams::new(self.mass, self.spin)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ForbiddenOrbit,
    InsideHorizon,
    TruncationError,
    InvalidInput,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ForbiddenOrbit => "forbidden_orbit",
            Status::InsideHorizon => "inside_horizon",
            Status::TruncationError => "truncation_error",
            Status::InvalidInput => "invalid_input",
        }
    }

    fn from_error(e: &CasimirError) -> Self {
        match e {
            CasimirError::ForbiddenOrbit { .. } => Status::ForbiddenOrbit,
            CasimirError::InsideHorizon { .. } => Status::InsideHorizon,
            CasimirError::Truncation { .. } => Status::TruncationError,
            _ => Status::InvalidInput,
        }
    }
}

/// One output line. Optional fields are empty for failed points.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub request: PointRequest,
    /// Ω after resolving presets.
    pub omega: Option<f64>,
    pub frame: Option<ProperFrame>,
    pub report: Option<CasimirReport>,
    pub validity: Option<ValidityDiagnostics>,
    /// Relative residual of U − (𝓕 + Tp·S).
    pub legendre_residual: Option<f64>,
    pub status: Status,
    /// Failing stage, for status ≠ ok.
    pub message: Option<String>,
}

pub fn evaluate_point(req: &PointRequest) -> OutputRecord {
    let mut rec = OutputRecord {
        request: *req,
        omega: None,
        frame: None,
        report: None,
        validity: None,
        legendre_residual: None,
        status: Status::Ok,
        message: None,
    };
    let run = |rec: &mut OutputRecord| -> Result<()> {
        let params = req.params()?;
        req.series.validate()?;
        let omega = req.omega.resolve(&params, req.radius)?;
        rec.omega = Some(omega);
        let orbit = EquatorialOrbit {
            radius: req.radius,
            omega,
        };
        let frame = proper_frame(&params, &orbit, &req.cavity, req.temperature)?;
        rec.frame = Some(frame);
        rec.validity = Some(cavity_validity(&params, &orbit, &req.cavity, &req.thresholds)?);
        let report = casimir_report(&frame, &params, &orbit, &req.series)?;
        rec.legendre_residual = Some(report.legendre_residual(frame.temperature));
        rec.report = Some(report);
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.status = Status::from_error(&e);
        rec.message = Some(e.to_string());
        rec.frame = None;
        rec.report = None;
        rec.validity = None;
        rec.legendre_residual = None;
    }
    rec
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Radius,
    Omega,
    Temperature,
    Length,
    Spin,
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "radius" => Ok(Axis::Radius),
            "omega" => Ok(Axis::Omega),
            "t" | "temperature" => Ok(Axis::Temperature),
            "l" | "length" => Ok(Axis::Length),
            "a" | "spin" => Ok(Axis::Spin),
            other => Err(format!("unknown sweep axis {other:?} (expected r, omega, T, L or a)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(format!("unknown scale {other:?} (expected linear or log)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
    pub base: PointRequest,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(domain(format!(
                "sweep needs finite start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.count < 2 {
            return Err(domain("sweep count must be >= 2"));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(domain("log-scale sweep needs start > 0"));
        }
        Ok(())
    }

    /// Grid values in ascending order; both endpoints are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i + 1 == self.count {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }

    pub fn request_at(&self, value: f64) -> PointRequest {
        let mut req = self.base;
        match self.axis {
            Axis::Radius => req.radius = value,
            Axis::Omega => req.omega = OmegaSpec::Value(value),
            Axis::Temperature => req.temperature = value,
            Axis::Length => req.cavity.length = value,
            Axis::Spin => req.spin = value,
        }
        req
    }
}

/// Evaluates every grid point on a pool of `parallelism` threads. Records come back in
/// grid order whatever the interleaving.
pub fn run_sweep(spec: &SweepSpec, parallelism: usize) -> Result<Vec<OutputRecord>> {
    spec.validate()?;
    let requests: Vec<PointRequest> = spec.grid().into_iter().map(|v| spec.request_at(v)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| domain(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(|| requests.par_iter().map(evaluate_point).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::JsonLines),
            other => Err(format!("unknown format {other:?} (expected csv or jsonl)")),
        }
    }
}

/// Column order of both output formats.
pub const COLUMNS: [&str; 27] = [
    "mass",
    "spin",
    "radius",
    "omega",
    "length",
    "area",
    "temperature",
    "C",
    "Lp",
    "Sp",
    "Vp",
    "Tp",
    "E0_ren",
    "DeltaTF_ren",
    "F_ren",
    "S_ren",
    "U_ren",
    "f_bb",
    "beta_hat",
    "terms_used",
    "truncation_estimate",
    "alpha",
    "L_over_r",
    "ML_over_r2",
    "small_cavity",
    "legendre_residual",
    "status",
];

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Number(Option<f64>),
    Integer(Option<usize>),
    Flag(Option<bool>),
    Text(&'static str),
}

/// 17 significant digits; non-finite values become empty fields.
fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Number(x) => x.and_then(format_float).unwrap_or_default(),
            Cell::Integer(n) => n.map(|n| n.to_string()).unwrap_or_default(),
            Cell::Flag(b) => b.map(|b| b.to_string()).unwrap_or_default(),
            Cell::Text(s) => (*s).to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Number(x) => x.and_then(format_float).unwrap_or_else(|| "null".into()),
            Cell::Integer(n) => n.map(|n| n.to_string()).unwrap_or_else(|| "null".into()),
            Cell::Flag(b) => b.map(|b| b.to_string()).unwrap_or_else(|| "null".into()),
            Cell::Text(s) => format!("\"{s}\""),
        }
    }
}

impl OutputRecord {
    fn cells(&self) -> [Cell; 27] {
        use Cell::*;
        let q = &self.request;
        let fr = self.frame.as_ref();
        let rep = self.report.as_ref();
        let v = self.validity.as_ref();
        [
            Number(Some(q.mass)),
            Number(Some(q.spin)),
            Number(Some(q.radius)),
            Number(self.omega),
            Number(Some(q.cavity.length)),
            Number(Some(q.cavity.area)),
            Number(Some(q.temperature)),
            Number(fr.map(|f| f.c)),
            Number(fr.map(|f| f.length)),
            Number(fr.map(|f| f.area)),
            Number(fr.map(|f| f.volume)),
            Number(fr.map(|f| f.temperature)),
            Number(rep.map(|r| r.vacuum_energy)),
            Number(rep.map(|r| r.thermal_correction)),
            Number(rep.map(|r| r.free_energy)),
            Number(rep.map(|r| r.entropy)),
            Number(rep.map(|r| r.internal_energy)),
            Number(rep.map(|r| r.blackbody_density)),
            Number(rep.and_then(|r| r.beta_hat).map(|b| b.value())),
            Integer(rep.map(|r| r.terms_used)),
            Number(rep.map(|r| r.truncation_estimate)),
            Number(v.map(|d| d.alpha)),
            Number(v.map(|d| d.length_over_radius)),
            Number(v.map(|d| d.mass_length_over_r2)),
            Flag(v.map(|d| d.small_cavity)),
            Number(self.legendre_residual),
            Text(self.status.as_str()),
        ]
    }

    pub fn csv_fields(&self) -> Vec<String> {
        self.cells().iter().map(Cell::csv).collect()
    }

    pub fn json_line(&self) -> String {
        let body: Vec<String> = COLUMNS
            .iter()
            .zip(self.cells().iter())
            .map(|(k, c)| format!("\"{k}\":{}", c.json()))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

pub fn write_records<W: Write>(out: W, records: &[OutputRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in records {
                w.write_record(r.csv_fields())?;
            }
            w.flush()
        }
        Format::JsonLines => {
            let mut out = out;
            for r in records {
                writeln!(out, "{}", r.json_line())?;
            }
            out.flush()
        }
    }
}

pub fn render_records(records: &[OutputRecord], format: Format) -> Vec<u8> {
    let mut buf = Vec::new();
    write_records(&mut buf, records, format).expect("writing to a Vec cannot fail");
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn flat_request(t: f64) -> PointRequest {
        PointRequest {
            mass: 0.0,
            spin: 0.0,
            allow_naked: false,
            radius: 10.0,
            omega: OmegaSpec::Value(0.0),
            cavity: CavityGeometry::new(1.0, 1.0).unwrap(),
            temperature: t,
            series: SeriesControl::default(),
            thresholds: ValidityThresholds::default(),
        }
    }

    fn kerr_request() -> PointRequest {
        PointRequest {
            mass: 1.0,
            spin: 0.5,
            radius: 10.0,
            omega: OmegaSpec::Zamo,
            cavity: CavityGeometry::new(0.01, 1e-4).unwrap(),
            temperature: 10.0,
            ..flat_request(0.0)
        }
    }

    #[test]
    fn flat_zero_temperature_point() {
        let rec = evaluate_point(&flat_request(0.0));
        assert_eq!(rec.status, Status::Ok);
        let r = rec.report.unwrap();
        assert_relative_eq!(r.free_energy, -PI * PI / 1440.0, max_relative = 1e-15);
        assert_eq!(r.free_energy, r.vacuum_energy);
    }

    #[test]
    fn forbidden_and_horizon_statuses() {
        let mut q = flat_request(1.0);
        q.omega = OmegaSpec::Value(0.2);
        let rec = evaluate_point(&q);
        assert_eq!(rec.status, Status::ForbiddenOrbit);
        assert!(rec.report.is_none() && rec.frame.is_none());

        let mut q = kerr_request();
        q.radius = 1.5;
        assert_eq!(evaluate_point(&q).status, Status::InsideHorizon);

        let mut q = kerr_request();
        q.spin = 2.0;
        assert_eq!(evaluate_point(&q).status, Status::InvalidInput);
        q.allow_naked = true;
        assert_eq!(evaluate_point(&q).status, Status::Ok);

        let mut q = kerr_request();
        q.temperature = 50.0;
        q.series.m_max = 1;
        assert_eq!(evaluate_point(&q).status, Status::TruncationError);
    }

    #[test]
    fn kerr_point_satisfies_legendre_identity() {
        let rec = evaluate_point(&kerr_request());
        assert_eq!(rec.status, Status::Ok);
        assert!(rec.legendre_residual.unwrap().abs() < 1e-9);
    }

    #[test]
    fn failed_points_serialize_empty_fields() {
        let mut q = flat_request(1.0);
        q.omega = OmegaSpec::Value(5.0);
        let rec = evaluate_point(&q);
        let fields = rec.csv_fields();
        assert_eq!(fields.len(), COLUMNS.len());
        assert_eq!(fields.last().unwrap(), "forbidden_orbit");
        assert!(fields[7..26].iter().all(String::is_empty));
        let json = rec.json_line();
        assert!(json.contains("\"F_ren\":null") && !json.contains("NaN"));
    }

    #[test]
    fn zero_temperature_beta_hat_is_empty() {
        let rec = evaluate_point(&flat_request(0.0));
        let fields = rec.csv_fields();
        assert_eq!(fields[18], "");
        assert!(!fields.iter().any(|f| f.contains("inf") || f.contains("NaN")));
    }

    #[test]
    fn floats_carry_17_digits() {
        assert_eq!(format_float(0.1).unwrap(), "1.0000000000000001e-1");
        assert_eq!(format_float(f64::NAN), None);
        assert_eq!(format_float(f64::NEG_INFINITY), None);
        for x in [-PI * PI / 1440.0, 6.02e23, 5e-324] {
            let back: f64 = format_float(x).unwrap().parse().unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn omega_spec_parsing() {
        assert_eq!("zamo".parse::<OmegaSpec>().unwrap(), OmegaSpec::Zamo);
        assert_eq!("frac=0.25".parse::<OmegaSpec>().unwrap(), OmegaSpec::BandFraction(0.25));
        assert_eq!("-0.01".parse::<OmegaSpec>().unwrap(), OmegaSpec::Value(-0.01));
        assert!("frac=1".parse::<OmegaSpec>().is_err());
        assert!("fast".parse::<OmegaSpec>().is_err());
    }

    #[test]
    fn grid_endpoints_and_order() {
        let spec = SweepSpec {
            axis: Axis::Temperature,
            start: 0.01,
            stop: 10.0,
            count: 5,
            scale: Scale::Log,
            base: flat_request(0.0),
        };
        let g = spec.grid();
        assert_eq!((g[0], g[4]), (0.01, 10.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_relative_eq!(g[2], 10f64.powf(-0.5), max_relative = 1e-14);
    }

    #[test]
    fn invalid_sweeps() {
        let base = flat_request(0.0);
        let bad = |start, stop, count, scale| SweepSpec { axis: Axis::Temperature, start, stop, count, scale, base };
        assert!(run_sweep(&bad(1.0, 0.5, 3, Scale::Linear), 1).is_err());
        assert!(run_sweep(&bad(0.0, 1.0, 3, Scale::Log), 1).is_err());
        assert!(run_sweep(&bad(0.0, 1.0, 1, Scale::Linear), 1).is_err());
    }

    #[test]
    fn temperature_sweep_free_energy_decreases() {
        let spec = SweepSpec {
            axis: Axis::Temperature,
            start: 0.01,
            stop: 10.0,
            count: 5,
            scale: Scale::Log,
            base: flat_request(0.0),
        };
        let recs = run_sweep(&spec, 4).unwrap();
        let f: Vec<f64> = recs.iter().map(|r| r.report.unwrap().free_energy).collect();
        assert!(f.windows(2).all(|w| w[1] < w[0]), "{f:?}");
    }

    #[test]
    fn radius_sweep_tracks_proper_geometry() {
        let mut base = kerr_request();
        base.omega = OmegaSpec::BandFraction(0.3);
        let spec = SweepSpec { axis: Axis::Radius, start: 5.0, stop: 50.0, count: 4, scale: Scale::Linear, base };
        for rec in run_sweep(&spec, 2).unwrap() {
            let r = rec.request.radius;
            let delta = r * r + 0.25 - 2.0 * r;
            let f = rec.frame.unwrap();
            assert_relative_eq!(f.length, 0.01 * delta.sqrt() * f.c / r, max_relative = 1e-13);
            assert_relative_eq!(f.area, r / delta.sqrt() * 1e-4, max_relative = 1e-13);
        }
    }
}
