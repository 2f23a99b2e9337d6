//! Closed-form Fourier transforms of indicator functions, with the kernel
//! convention `FT(xi) = Int_A exp(-2 pi i <x, xi>) dx`.
//!
//! The polygon transform is a single divergence-theorem edge sum whose
//! branch structure is decided in exact rational arithmetic: a frequency
//! exactly orthogonal to an edge direction takes the degenerate path
//! (constant kernel along the edge) instead of the generic difference of
//! exponentials. Everything downstream — lattice sweeps, tiling checks,
//! the product factorization — rides on these evaluators.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;

use crate::bessel::{bessel_j_half, SERIES_CUTOFF};
use crate::bodies::{Ball, Body, Factor, Interval1, Polygon2, ProductBody};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rat, Vec2};

/// Frequency vector with exact-rational coordinates, so that off-lattice
/// points such as (1/2, 0) and degenerate-branch loci are first-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frequency(Vec<Rat>);

impl Frequency {
    pub fn new(coords: Vec<Rat>) -> Self {
        Frequency(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Frequency(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Frequency(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn norm_sq(&self) -> Rat {
        self.0.iter().map(|c| c * c).sum()
    }

    fn block(&self, start: usize, len: usize) -> Frequency {
        Frequency(self.0[start..start + len].to_vec())
    }

    fn as_vec2(&self) -> Vec2 {
        Vec2::new(self.0[0].clone(), self.0[1].clone())
    }
}

/// Which evaluation path produced a transform value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Zero frequency; the value is the body's measure.
    Origin,
    Generic,
    /// Some polygon edge direction is exactly orthogonal to the frequency.
    DegenerateEdge,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Origin => write!(f, "origin"),
            Branch::Generic => write!(f, "generic"),
            Branch::DegenerateEdge => write!(f, "degenerate-edge"),
        }
    }
}

/// Transform value plus the branch tag that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtValue {
    pub value: Complex64,
    pub branch: Branch,
}

/// `exp(-2 pi i q)`.
fn kernel(q: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * q).sin_cos();
    Complex64::new(c, -s)
}

/// Edge-sum transform of a polygon indicator.
///
/// For nonzero `xi` the divergence theorem turns the area integral into a
/// sum over edges `[a, b]`: each generic edge (with `<b - a, xi> != 0`)
/// contributes `-cross(xi, b-a) (E_b - E_a) / (4 pi^2 |xi|^2 <b-a, xi>)`
/// and each degenerate edge contributes
/// `i cross(xi, b-a) E_a / (2 pi |xi|^2)`, where `E_v = exp(-2 pi i <v, xi>)`.
/// Branch selection is an exact rational comparison.
pub fn polygon_ft(p: &Polygon2, xi: &Frequency) -> Result<FtValue> {
    if xi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: xi.dim(),
        });
    }
    if xi.is_zero() {
        return Ok(FtValue {
            value: Complex64::new(to_f64(&p.area()), 0.0),
            branch: Branch::Origin,
        });
    }
    let xi_v = xi.as_vec2();
    let norm_sq = to_f64(&xi.norm_sq());
    let mut acc = Complex64::zero();
    let mut degenerate = false;
    for (a, b) in p.edges() {
        let d = b.sub(a);
        let along = d.dot(&xi_v);
        let cross = xi_v.cross(&d);
        let phase_a = kernel(to_f64(&a.dot(&xi_v)));
        if along.is_zero() {
            degenerate = true;
            let coef = to_f64(&cross) / (2.0 * PI * norm_sq);
            acc += Complex64::new(0.0, coef) * phase_a;
        } else {
            let phase_b = kernel(to_f64(&b.dot(&xi_v)));
            let coef = -to_f64(&cross) / (4.0 * PI * PI * norm_sq * to_f64(&along));
            acc += coef * (phase_b - phase_a);
        }
    }
    Ok(FtValue {
        value: acc,
        branch: if degenerate {
            Branch::DegenerateEdge
        } else {
            Branch::Generic
        },
    })
}

/// Radial ball transform `r^{m/2} J_{m/2}(2 pi r |xi|) / |xi|^{m/2}`.
///
/// Below the Bessel series cutoff the value is evaluated as
/// `vol(B) * sum_k (-(pi r |xi|)^2)^k / (k! (m/2+1)...(m/2+k))`, which is
/// the same radial formula rearranged to avoid cancellation near zero.
/// The imaginary part is exactly zero: the ball is centrally symmetric.
pub fn ball_ft(b: &Ball, xi: &Frequency) -> Result<FtValue> {
    if xi.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: xi.dim(),
        });
    }
    if xi.is_zero() {
        return Ok(FtValue {
            value: Complex64::new(b.volume(), 0.0),
            branch: Branch::Origin,
        });
    }
    let s = to_f64(&xi.norm_sq()).sqrt();
    let r = to_f64(b.radius());
    let m = b.dim();
    let z = 2.0 * PI * r * s;
    let value = if z <= SERIES_CUTOFF {
        let u = (0.5 * z) * (0.5 * z);
        let half_m = m as f64 / 2.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            let k = k as f64;
            term *= -u / (k * (half_m + k));
            sum += term;
            if term.abs() < 1e-17 * (1.0 + sum.abs()) {
                break;
            }
        }
        b.volume() * sum
    } else {
        (r / s).powf(m as f64 / 2.0) * bessel_j_half(m, z)
    };
    Ok(FtValue {
        value: Complex64::new(value, 0.0),
        branch: Branch::Generic,
    })
}

/// Interval transform: `2h` at zero, `sin(2 pi h xi) / (pi xi)` elsewhere.
pub fn interval_ft(i: &Interval1, xi: &Frequency) -> Result<FtValue> {
    if xi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: xi.dim(),
        });
    }
    if xi.is_zero() {
        return Ok(FtValue {
            value: Complex64::new(to_f64(&i.length()), 0.0),
            branch: Branch::Origin,
        });
    }
    let t = to_f64(&xi.coords()[0]);
    let h = to_f64(i.half_length());
    Ok(FtValue {
        value: Complex64::new((2.0 * PI * h * t).sin() / (PI * t), 0.0),
        branch: Branch::Generic,
    })
}

/// Product transform: the factor transforms multiply block by block.
pub fn product_ft(pb: &ProductBody, xi: &Frequency) -> Result<FtValue> {
    let total = pb.total_dim();
    if xi.dim() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            got: xi.dim(),
        });
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut all_origin = true;
    let mut degenerate = false;
    let mut offset = 0;
    for f in pb.factors() {
        let d = f.dim();
        let block = xi.block(offset, d);
        offset += d;
        let ft = match f {
            Factor::Polygon(p) => polygon_ft(p, &block)?,
            Factor::Ball(b) => ball_ft(b, &block)?,
            Factor::Interval(i) => interval_ft(i, &block)?,
        };
        value *= ft.value;
        all_origin &= ft.branch == Branch::Origin;
        degenerate |= ft.branch == Branch::DegenerateEdge;
    }
    let branch = if all_origin {
        Branch::Origin
    } else if degenerate {
        Branch::DegenerateEdge
    } else {
        Branch::Generic
    };
    Ok(FtValue { value, branch })
}

impl Body {
    /// Indicator Fourier transform of any supported body.
    pub fn ft(&self, xi: &Frequency) -> Result<FtValue> {
        match self {
            Body::Polygon(p) => polygon_ft(p, xi),
            Body::Ball(b) => ball_ft(b, xi),
            Body::Interval(i) => interval_ft(i, xi),
            Body::Product(p) => product_ft(p, xi),
        }
    }
}

/// One row of a lattice sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PointRecord {
    pub xi: Vec<i64>,
    pub re_a: f64,
    pub im_a: f64,
    pub re_b: f64,
    pub im_b: f64,
    pub abs_diff: f64,
    pub branch_a: Branch,
    pub branch_b: Branch,
}

/// Summary of `|FT_A - FT_B|` over an integer-lattice box.
#[derive(Debug, Clone, Serialize)]
pub struct AgreementReport {
    pub dim: usize,
    pub range: i64,
    pub tol: f64,
    pub points_scanned: u64,
    pub violations: u64,
    pub max_abs_diff: f64,
    pub argmax: Vec<i64>,
    #[serde(skip)]
    pub points: Option<Vec<PointRecord>>,
}

impl AgreementReport {
    pub fn passes(&self) -> bool {
        self.violations == 0
    }

    /// CSV with one row per swept lattice point; requires the sweep to have
    /// been run with `emit_points`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let points = self
            .points
            .as_deref()
            .expect("sweep was run without emit_points");
        let header: Vec<String> = (1..=self.dim)
            .map(|i| format!("xi_{i}"))
            .chain(
                ["re_A", "im_A", "re_B", "im_B", "abs_diff", "branch_A", "branch_B"]
                    .iter()
                    .map(|s| s.to_string()),
            )
            .collect();
        writeln!(w, "{}", header.join(","))?;
        for rec in points {
            let coords: Vec<String> = rec.xi.iter().map(|c| c.to_string()).collect();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                coords.join(","),
                rec.re_a,
                rec.im_a,
                rec.re_b,
                rec.im_b,
                rec.abs_diff,
                rec.branch_a,
                rec.branch_b
            )?;
        }
        Ok(())
    }
}

/// Iterates `xi` over `{-n..n}^dim` in lexicographic order.
pub(crate) struct LatticeBox {
    current: Vec<i64>,
    n: i64,
    done: bool,
}

impl LatticeBox {
    pub(crate) fn new(dim: usize, n: i64) -> Self {
        LatticeBox {
            current: vec![-n; dim],
            n,
            done: dim == 0,
        }
    }
}

impl Iterator for LatticeBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        for i in (0..self.current.len()).rev() {
            if self.current[i] < self.n {
                self.current[i] += 1;
                return Some(item);
            }
            self.current[i] = -self.n;
        }
        self.done = true;
        Some(item)
    }
}

/// Sweeps all integer frequencies with `|xi_i| <= range` and compares the
/// transforms of two equal-dimension bodies pointwise.
///
/// The sweep order is lexicographic and the aggregation (max, first argmax,
/// violation count) is deterministic, so partitioned execution must merge
/// to the same report.
pub fn lattice_agreement_report(
    a: &Body,
    b: &Body,
    range: i64,
    tol: f64,
    emit_points: bool,
) -> Result<AgreementReport> {
    let dim = a.dim();
    if b.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: b.dim(),
        });
    }
    assert!(range >= 1, "range must be >= 1");
    let mut report = AgreementReport {
        dim,
        range,
        tol,
        points_scanned: 0,
        violations: 0,
        max_abs_diff: -1.0,
        argmax: vec![0; dim],
        points: emit_points.then(Vec::new),
    };
    for xi_ints in LatticeBox::new(dim, range) {
        let xi = Frequency::from_ints(&xi_ints);
        let fa = a.ft(&xi)?;
        let fb = b.ft(&xi)?;
        let diff = (fa.value - fb.value).norm();
        report.points_scanned += 1;
        if diff > tol {
            report.violations += 1;
        }
        if diff > report.max_abs_diff {
            report.max_abs_diff = diff;
            report.argmax = xi_ints.clone();
        }
        if let Some(points) = &mut report.points {
            points.push(PointRecord {
                xi: xi_ints,
                re_a: fa.value.re,
                im_a: fa.value.im,
                re_b: fb.value.re,
                im_b: fb.value.im,
                abs_diff: diff,
                branch_a: fa.branch,
                branch_b: fb.branch,
            });
        }
    }
    if report.max_abs_diff < 0.0 {
        report.max_abs_diff = 0.0;
    }
    Ok(report)
}
