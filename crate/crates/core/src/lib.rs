//! Closed-form Fourier transforms of indicator functions of convex bodies
//! (polygons, balls, Cartesian products), independent quadrature oracles,
//! and lattice-tiling verification.
//!
//! All geometric data — polygon vertices, lattice bases, frequencies — is
//! exact-rational. Geometric predicates (convexity, central symmetry,
//! degenerate-branch detection, cover counts) are decided exactly; only the
//! final transform values are evaluated in `f64`.
//!
//! ```
//! use latticeft::{Body, Frequency, Polygon2};
//! use latticeft::rational::rat;
//!
//! // the canonical rhombus and hexagon share every integer-lattice value
//! let r = Body::Polygon(Polygon2::canonical_rhombus());
//! let h = Body::Polygon(Polygon2::canonical_hexagon());
//! let report = latticeft::lattice_agreement_report(&r, &h, 20, 1e-10, false)?;
//! assert_eq!(report.violations, 0);
//!
//! // but separate off the lattice
//! let off = Frequency::new(vec![rat(1, 2), rat(0, 1)]);
//! let gap = (r.ft(&off)?.value - h.ft(&off)?.value).norm();
//! assert!(gap > 1.0);
//! # Ok::<(), latticeft::Error>(())
//! ```

pub mod bodies;
pub mod oracle;
pub mod quadrature;
pub mod rational;
pub mod tiling;
pub mod transform;

mod bessel;
mod error;

pub use bodies::{Ball, Body, CongruenceVerdict, Interval1, Polygon2, ProductBody};
pub use error::Error;
pub use oracle::{McEstimate, QuadratureSpec};
pub use rational::{parse_rational, Rat, Vec2};
pub use tiling::{
    CoverHistogram, KTilingOutcome, KTilingVerdict, Lattice2, OrthogonalityReport, SpectralReport,
};
pub use transform::{
    lattice_agreement_report, AgreementReport, Branch, Frequency, FtValue, PointRecord,
};

/// Default RNG seed used by samplers and the CLI when none is given.
pub const DEFAULT_SEED: u64 = 42;
