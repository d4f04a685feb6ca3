//! Renormalized thermal Casimir free energy, entropy and internal energy of a massless
//! scalar field confined between Dirichlet plates in a small cavity that rides an
//! equatorial circular orbit in Kerr space-time.
//!
//! Units are natural (ħ = c = G = k_B = 1) and the metric signature is (+, −, −, −).
//! Everything physical is expressed through the cavity's proper length `Lp`, proper
//! area `Sp` and the locally measured temperature `Tp`; see [`geometry::proper_frame`].

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod modes;
pub mod oracle;
pub mod quadrature;
pub mod sweep;
pub mod thermal;
pub mod validate;

pub use error::{CasimirError, Result};
pub use geometry::{CavityGeometry, EquatorialOrbit, KerrParams, ProperFrame};
pub use oracle::OracleConfig;
pub use sweep::{evaluate_point, run_sweep, OmegaSpec, OutputRecord, PointRequest, Status, SweepSpec};
pub use thermal::{casimir_report, CasimirReport, SeriesControl};
