//! Independent numerical-integration oracles.
//!
//! These deliberately share no code path with the closed forms in
//! [`crate::transform`]: the polygon oracle is a fan-triangulated tensor
//! Gauss–Legendre rule, the ball oracle a 1D slab quadrature, and the Monte
//! Carlo estimator a seeded bounding-box sampler. Every frozen expected
//! value in the test suite was produced by one of these.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::bodies::{unit_ball_volume, Ball, Body, Factor, Polygon2};
use crate::error::{Error, Result};
use crate::quadrature::{composite_gl, GaussLegendre};
use crate::rational::{to_f64, Vec2};
use crate::transform::Frequency;
use crate::DEFAULT_SEED;

/// Knobs for the oracles. `order` is nodes per axis (quadrature) or per
/// panel (slab); `mc_samples` and `seed` drive the Monte Carlo estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub order: usize,
    pub mc_samples: u64,
    pub seed: u64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order: 24,
            mc_samples: 1_000_000,
            seed: DEFAULT_SEED,
        }
    }
}

impl QuadratureSpec {
    pub fn with_order(order: usize) -> Self {
        QuadratureSpec {
            order,
            ..Default::default()
        }
    }
}

fn max_abs_coord(xi: &Frequency) -> f64 {
    xi.coords()
        .iter()
        .map(|c| to_f64(&c.abs()))
        .fold(0.0, f64::max)
}

/// Fan-triangulated tensor Gauss–Legendre quadrature of the polygon
/// indicator transform.
///
/// Each triangle (centroid, v_i, v_{i+1}) is mapped from the unit square by
/// the Duffy collapse `T(u, v) = c + u (v_i - c) + u v (v_{i+1} - v_i)` with
/// Jacobian `2 A u`. The per-axis order grows with the frequency:
/// `max(order, 8 ceil(max |xi_i|))` as a floor, raised per triangle to
/// oversample the actual phase range `|<v_i - c, xi>| + |<v_{i+1} - v_i, xi>|`
/// (in cycles) — the coordinate-only rule under-resolves elongated
/// polygons.
pub fn polygon_ft_quadrature(
    p: &Polygon2,
    xi: &Frequency,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if xi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: xi.dim(),
        });
    }
    let base_order = spec.order.max(8 * max_abs_coord(xi).ceil() as usize).max(2);
    let c = p.centroid();
    let xi_v = Vec2::new(xi.coords()[0].clone(), xi.coords()[1].clone());
    let phase_c = to_f64(&c.dot(&xi_v));
    let verts = p.vertices();
    let n = verts.len();
    let mut acc = Complex64::zero();
    for i in 0..n {
        let v0 = &verts[i];
        let v1 = &verts[(i + 1) % n];
        let leg0 = v0.sub(&c);
        let leg1 = v1.sub(v0);
        let twice_area = to_f64(&leg0.cross(&v1.sub(&c)));
        let q0 = to_f64(&leg0.dot(&xi_v));
        let q1 = to_f64(&leg1.dot(&xi_v));
        let cycles = q0.abs() + q1.abs();
        let order = base_order.max((3.2 * cycles).ceil() as usize + 12);
        let rule = GaussLegendre::rule(order);
        let mut tri = Complex64::zero();
        for (&ux, &uw) in rule.nodes.iter().zip(&rule.weights) {
            let u = 0.5 * (ux + 1.0);
            let mut inner = Complex64::zero();
            for (&vx, &vw) in rule.nodes.iter().zip(&rule.weights) {
                let v = 0.5 * (vx + 1.0);
                let phase = 2.0 * PI * (phase_c + u * (q0 + v * q1));
                let (s, cphi) = phase.sin_cos();
                inner += vw * Complex64::new(cphi, -s);
            }
            tri += uw * u * inner;
        }
        // the two 0.5 factors map [-1,1]^2 weights onto [0,1]^2
        acc += twice_area * 0.25 * tri;
    }
    Ok(acc)
}

/// Slab (cross-section) quadrature of the ball transform.
///
/// The radial integral `Int_{-r}^{r} w_{m-1} (r^2 - t^2)^{(m-1)/2}
/// cos(2 pi |xi| t) dt` is evaluated after the substitution `t = r sin(th)`,
/// which removes the endpoint singularity for even `m`; the composite rule
/// uses at least 64 panels, growing with `|xi|`.
pub fn ball_ft_slab_quadrature(b: &Ball, xi: &Frequency, spec: &QuadratureSpec) -> Result<f64> {
    if xi.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: xi.dim(),
        });
    }
    let s = to_f64(&xi.norm_sq()).sqrt();
    let r = to_f64(b.radius());
    let m = b.dim();
    let omega = unit_ball_volume(m - 1);
    let panels = 64usize.max((4.0 * r * s).ceil() as usize);
    let order = spec.order.max(2);
    let scale = omega * r.powi(m as i32);
    let val = composite_gl(-0.5 * PI, 0.5 * PI, panels, order, |theta| {
        theta.cos().powi(m as i32) * (2.0 * PI * s * r * theta.sin()).cos()
    });
    Ok(scale * val)
}

/// Monte Carlo estimate with per-component standard errors.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct McEstimate {
    pub re: f64,
    pub im: f64,
    pub std_err_re: f64,
    pub std_err_im: f64,
    pub samples: u64,
}

impl McEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// True when `expected` lies within `k` standard errors componentwise.
    pub fn consistent_with(&self, expected: Complex64, k: f64) -> bool {
        (self.re - expected.re).abs() <= k * self.std_err_re.max(f64::MIN_POSITIVE)
            && (self.im - expected.im).abs() <= k * self.std_err_im.max(f64::MIN_POSITIVE)
    }
}

/// Precomputed `f64` membership tester; keeps the Monte Carlo inner loop
/// free of rational arithmetic.
enum FastFactor {
    Polygon { verts: Vec<[f64; 2]> },
    Ball { dim: usize, r_sq: f64 },
    Interval { h: f64 },
}

impl FastFactor {
    fn dim(&self) -> usize {
        match self {
            FastFactor::Polygon { .. } => 2,
            FastFactor::Ball { dim, .. } => *dim,
            FastFactor::Interval { .. } => 1,
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        match self {
            FastFactor::Polygon { verts } => {
                let n = verts.len();
                (0..n).all(|i| {
                    let [ax, ay] = verts[i];
                    let [bx, by] = verts[(i + 1) % n];
                    (bx - ax) * (x[1] - ay) - (by - ay) * (x[0] - ax) >= 0.0
                })
            }
            FastFactor::Ball { r_sq, .. } => x.iter().map(|c| c * c).sum::<f64>() <= *r_sq,
            FastFactor::Interval { h } => x[0].abs() <= *h,
        }
    }
}

struct FastBody {
    factors: Vec<FastFactor>,
}

impl FastBody {
    fn new(body: &Body) -> Self {
        fn from_factor(f: &Factor) -> FastFactor {
            match f {
                Factor::Polygon(p) => FastFactor::Polygon {
                    verts: p.vertices().iter().map(Vec2::to_f64).collect(),
                },
                Factor::Ball(b) => {
                    let r = to_f64(b.radius());
                    FastFactor::Ball {
                        dim: b.dim(),
                        r_sq: r * r,
                    }
                }
                Factor::Interval(i) => FastFactor::Interval {
                    h: to_f64(i.half_length()),
                },
            }
        }
        let factors = match body {
            Body::Polygon(p) => vec![from_factor(&Factor::Polygon(p.clone()))],
            Body::Ball(b) => vec![from_factor(&Factor::Ball(b.clone()))],
            Body::Interval(i) => vec![from_factor(&Factor::Interval(i.clone()))],
            Body::Product(p) => p.factors().iter().map(from_factor).collect(),
        };
        FastBody { factors }
    }

    fn contains(&self, x: &[f64]) -> bool {
        let mut offset = 0;
        self.factors.iter().all(|f| {
            let d = f.dim();
            let inside = f.contains(&x[offset..offset + d]);
            offset += d;
            inside
        })
    }
}

const MC_BATCH: u64 = 8192;

/// Seeded Monte Carlo estimate of the indicator transform over the body's
/// bounding box.
///
/// Samples are drawn in fixed-size batches, each on its own ChaCha stream,
/// so a partitioned parallel run reproduces the single-threaded sample set
/// exactly. Identical inputs give bit-identical outputs.
pub fn mc_indicator_ft(body: &Body, xi: &Frequency, spec: &QuadratureSpec) -> Result<McEstimate> {
    let dim = body.dim();
    if xi.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: xi.dim(),
        });
    }
    assert!(spec.mc_samples >= 1);
    let bbox = body.bounding_box();
    let box_vol: f64 = bbox.iter().map(|(lo, hi)| hi - lo).product();
    let xi_f: Vec<f64> = xi.coords().iter().map(to_f64).collect();
    let fast = FastBody::new(body);
    let n = spec.mc_samples;
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    let mut sum_re_sq = 0.0;
    let mut sum_im_sq = 0.0;
    let mut x = vec![0.0; dim];
    let batches = n.div_ceil(MC_BATCH);
    for batch in 0..batches {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(batch);
        let count = MC_BATCH.min(n - batch * MC_BATCH);
        let (mut bre, mut bim, mut bre2, mut bim2) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..count {
            for (c, (lo, hi)) in x.iter_mut().zip(&bbox) {
                *c = lo + (hi - lo) * rng.gen::<f64>();
            }
            if fast.contains(&x) {
                let phase: f64 = 2.0 * PI * x.iter().zip(&xi_f).map(|(a, b)| a * b).sum::<f64>();
                let (s, c) = phase.sin_cos();
                bre += c;
                bim += -s;
                bre2 += c * c;
                bim2 += s * s;
            }
        }
        sum_re += bre;
        sum_im += bim;
        sum_re_sq += bre2;
        sum_im_sq += bim2;
    }
    let nf = n as f64;
    let mean_re = sum_re / nf;
    let mean_im = sum_im / nf;
    let var_re = (sum_re_sq / nf - mean_re * mean_re).max(0.0);
    let var_im = (sum_im_sq / nf - mean_im * mean_im).max(0.0);
    Ok(McEstimate {
        re: box_vol * mean_re,
        im: box_vol * mean_im,
        std_err_re: box_vol * (var_re / nf).sqrt(),
        std_err_im: box_vol * (var_im / nf).sqrt(),
        samples: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ProductBody;
    use crate::rational::{rat, rint};

    fn spec(order: usize) -> QuadratureSpec {
        QuadratureSpec::with_order(order)
    }

    #[test]
    fn quadrature_constant_integrand_gives_area() {
        let v = polygon_ft_quadrature(
            &Polygon2::canonical_rhombus(),
            &Frequency::from_ints(&[0, 0]),
            &spec(8),
        )
        .unwrap();
        assert!((v.re - 6.0).abs() < 1e-12, "{v}");
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn quadrature_reproduces_lattice_zero() {
        let v = polygon_ft_quadrature(
            &Polygon2::canonical_rhombus(),
            &Frequency::from_ints(&[1, 0]),
            &spec(24),
        )
        .unwrap();
        assert!(v.norm() < 1e-9, "{v}");
    }

    #[test]
    fn quadrature_off_lattice_value() {
        let v = polygon_ft_quadrature(
            &Polygon2::canonical_rhombus(),
            &Frequency::new(vec![rat(1, 2), rint(0)]),
            &spec(24),
        )
        .unwrap();
        assert!((v.re - 24.0 / (PI * PI)).abs() < 1e-9, "{v}");
    }

    #[test]
    fn slab_zero_frequency_gives_volume() {
        let v = ball_ft_slab_quadrature(
            &Ball::unit(2).unwrap(),
            &Frequency::from_ints(&[0, 0]),
            &spec(24),
        )
        .unwrap();
        assert!((v - PI).abs() < 1e-12, "{v}");
    }

    #[test]
    fn slab_anchors_half_integer_closed_form() {
        let v = ball_ft_slab_quadrature(
            &Ball::unit(3).unwrap(),
            &Frequency::new(vec![rat(1, 2), rint(0), rint(0)]),
            &spec(24),
        )
        .unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-10, "{v}");
    }

    #[test]
    fn slab_reference_for_j1_two_pi() {
        let v = ball_ft_slab_quadrature(
            &Ball::unit(2).unwrap(),
            &Frequency::from_ints(&[1, 0]),
            &spec(24),
        )
        .unwrap();
        assert!((v - (-0.21238253007636912)).abs() < 1e-11, "{v}");
    }

    #[test]
    fn mc_is_deterministic() {
        let body = Body::Polygon(Polygon2::canonical_hexagon());
        let xi = Frequency::from_ints(&[1, 2]);
        let spec = QuadratureSpec {
            mc_samples: 20_000,
            ..Default::default()
        };
        let a = mc_indicator_ft(&body, &xi, &spec).unwrap();
        let b = mc_indicator_ft(&body, &xi, &spec).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
        assert_eq!(a.std_err_re.to_bits(), b.std_err_re.to_bits());
    }

    #[test]
    fn mc_estimates_rhombus_area() {
        let body = Body::Polygon(Polygon2::canonical_rhombus());
        let est = mc_indicator_ft(&body, &Frequency::from_ints(&[0, 0]), &Default::default())
            .unwrap();
        assert!(
            est.consistent_with(Complex64::new(6.0, 0.0), 4.0),
            "{est:?}"
        );
    }

    #[test]
    fn mc_estimates_product_volume() {
        let body = Body::Product(ProductBody::new(vec![
            Factor::Polygon(Polygon2::canonical_rhombus()),
            Factor::Ball(Ball::unit(2).unwrap()),
        ]));
        let est = mc_indicator_ft(&body, &Frequency::zero(4), &Default::default()).unwrap();
        assert!(
            est.consistent_with(Complex64::new(6.0 * PI, 0.0), 4.0),
            "{est:?}"
        );
    }

    #[test]
    fn mc_sees_hexagon_lattice_zero() {
        let body = Body::Polygon(Polygon2::canonical_hexagon());
        let est = mc_indicator_ft(&body, &Frequency::from_ints(&[1, 0]), &Default::default())
            .unwrap();
        assert!(est.consistent_with(Complex64::zero(), 4.0), "{est:?}");
    }
}
