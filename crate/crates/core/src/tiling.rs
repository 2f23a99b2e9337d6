//! Lattice machinery and tiling verification.
//!
//! Two independent verifiers are kept deliberately separate: a direct
//! cover-count sampler (how many translates hit a random point of the
//! fundamental domain) and the spectral criterion (the transform must
//! vanish on the nonzero dual-lattice points when the area matches the
//! covolume). Their agreement on a candidate lattice is the evidence the
//! rest of the crate leans on.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::bodies::Polygon2;
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, floor_i64, format_rational, rat_from_f64, Rat, Vec2};
use crate::transform::{polygon_ft, Frequency};

/// Full-rank rational lattice in the plane, stored as two generator
/// columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice2 {
    g1: Vec2,
    g2: Vec2,
    det: Rat,
}

impl Lattice2 {
    pub fn new(g1: Vec2, g2: Vec2) -> Result<Self> {
        let det = g1.cross(&g2);
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Lattice2 { g1, g2, det })
    }

    pub fn from_ints(g1: (i64, i64), g2: (i64, i64)) -> Result<Self> {
        Lattice2::new(Vec2::from_ints(g1.0, g1.1), Vec2::from_ints(g2.0, g2.1))
    }

    /// The integer lattice.
    pub fn standard() -> Self {
        Lattice2::from_ints((1, 0), (0, 1)).unwrap()
    }

    pub fn generators(&self) -> (&Vec2, &Vec2) {
        (&self.g1, &self.g2)
    }

    pub fn det(&self) -> &Rat {
        &self.det
    }

    pub fn covolume(&self) -> Rat {
        self.det.abs()
    }

    /// `a g1 + b g2`.
    pub fn point(&self, a: i64, b: i64) -> Vec2 {
        let a = Rat::from_integer(a.into());
        let b = Rat::from_integer(b.into());
        self.g1.scale(&a).add(&self.g2.scale(&b))
    }

    /// Exact coefficients `(alpha, beta)` with `x = alpha g1 + beta g2`.
    pub fn solve(&self, x: &Vec2) -> (Rat, Rat) {
        let alpha = (&self.g2.y * &x.x - &self.g2.x * &x.y) / &self.det;
        let beta = (&self.g1.x * &x.y - &self.g1.y * &x.x) / &self.det;
        (alpha, beta)
    }

    /// Dual lattice: the inverse-transpose basis, so that
    /// `<u_i, g_j> = delta_ij` exactly.
    pub fn dual(&self) -> Lattice2 {
        let u1 = Vec2::new(&self.g2.y / &self.det, -(&self.g2.x / &self.det));
        let u2 = Vec2::new(-(&self.g1.y / &self.det), &self.g1.x / &self.det);
        Lattice2::new(u1, u2).expect("dual of a full-rank lattice is full-rank")
    }

    /// True iff every integer vector is an integer combination of the
    /// generators.
    pub fn contains_integer_lattice(&self) -> bool {
        let (a1, b1) = self.solve(&Vec2::from_ints(1, 0));
        let (a2, b2) = self.solve(&Vec2::from_ints(0, 1));
        a1.is_integer() && b1.is_integer() && a2.is_integer() && b2.is_integer()
    }

    /// Basis entries as rational strings `[g1x, g1y, g2x, g2y]`.
    pub fn basis_strings(&self) -> [String; 4] {
        [
            format_rational(&self.g1.x),
            format_rational(&self.g1.y),
            format_rational(&self.g2.x),
            format_rational(&self.g2.y),
        ]
    }
}

/// See [`Lattice2::dual`].
pub fn dual_lattice(l: &Lattice2) -> Lattice2 {
    l.dual()
}

/// Lattice translates that can reach the box `[lo, hi]`, by exact solves of
/// the basis inequalities at the box corners.
fn candidate_range(l: &Lattice2, lo: &Vec2, hi: &Vec2) -> (i64, i64, i64, i64) {
    let corners = [
        Vec2::new(lo.x.clone(), lo.y.clone()),
        Vec2::new(lo.x.clone(), hi.y.clone()),
        Vec2::new(hi.x.clone(), lo.y.clone()),
        Vec2::new(hi.x.clone(), hi.y.clone()),
    ];
    let mut a_min: Option<Rat> = None;
    let mut a_max: Option<Rat> = None;
    let mut b_min: Option<Rat> = None;
    let mut b_max: Option<Rat> = None;
    for corner in &corners {
        let (a, b) = l.solve(corner);
        let clamp = |slot: &mut Option<Rat>, v: &Rat, min: bool| match slot {
            Some(cur) if (min && v < cur) || (!min && v > cur) => *slot = Some(v.clone()),
            None => *slot = Some(v.clone()),
            _ => {}
        };
        clamp(&mut a_min, &a, true);
        clamp(&mut a_max, &a, false);
        clamp(&mut b_min, &b, true);
        clamp(&mut b_max, &b, false);
    }
    (
        ceil_i64(&a_min.unwrap()),
        floor_i64(&a_max.unwrap()),
        ceil_i64(&b_min.unwrap()),
        floor_i64(&b_max.unwrap()),
    )
}

/// Exact number of lattice translates of `p` covering the rational point
/// `x`; boundary hits count as covered.
pub fn cover_count(p: &Polygon2, l: &Lattice2, x: &Vec2) -> u32 {
    let (bb_min, bb_max) = p.bbox();
    // x - lambda must land in [bb_min, bb_max], so lambda is confined to
    // [x - bb_max, x - bb_min].
    let lo = x.sub(&bb_max);
    let hi = x.sub(&bb_min);
    let (a0, a1, b0, b1) = candidate_range(l, &lo, &hi);
    let mut count = 0;
    for a in a0..=a1 {
        for b in b0..=b1 {
            if p.contains(&x.sub(&l.point(a, b))) {
                count += 1;
            }
        }
    }
    count
}

/// Multiplicity histogram over the sampled fundamental domain.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CoverHistogram {
    pub counts: BTreeMap<u32, u64>,
    pub samples: u64,
    pub skipped_near_boundary: u64,
}

/// Verdict of the sampling verifier. `Inconclusive` (every sample fell in
/// the boundary margin) is distinct from a failed check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "k")]
pub enum KTilingVerdict {
    KTiling(u32),
    NotTiling,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct KTilingOutcome {
    pub verdict: KTilingVerdict,
    pub histogram: CoverHistogram,
    pub seed: u64,
    pub eps: f64,
}

/// Samples the fundamental parallelogram and counts covering translates at
/// each point.
///
/// Points within `eps` of any translate's boundary (measured in `f64`
/// against the supporting lines) are skipped and reported, mirroring the
/// almost-everywhere quantifier; the cover counts themselves are exact.
pub fn k_tiling_check(
    p: &Polygon2,
    l: &Lattice2,
    n_samples: u64,
    seed: u64,
    eps: f64,
) -> KTilingOutcome {
    assert!(n_samples >= 1);
    let edges_f64: Vec<([f64; 2], [f64; 2], f64)> = p
        .edges()
        .map(|(a, b)| {
            let af = a.to_f64();
            let bf = b.to_f64();
            let len = ((bf[0] - af[0]).powi(2) + (bf[1] - af[1]).powi(2)).sqrt();
            (af, bf, len)
        })
        .collect();
    let (bb_min, bb_max) = p.bbox();
    let margin = rat_from_f64(eps.max(0.0)) + Rat::one();
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut skipped = 0u64;

    const BATCH: u64 = 4096;
    let batches = n_samples.div_ceil(BATCH);
    for batch in 0..batches {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        let count = BATCH.min(n_samples - batch * BATCH);
        for _ in 0..count {
            let u = rat_from_f64(rng.gen::<f64>());
            let v = rat_from_f64(rng.gen::<f64>());
            let x = l.g1.scale(&u).add(&l.g2.scale(&v));
            // enumerate every translate whose inflated box reaches x
            let lo = x.sub(&bb_max).sub(&Vec2::new(margin.clone(), margin.clone()));
            let hi = x.sub(&bb_min).add(&Vec2::new(margin.clone(), margin.clone()));
            let (a0, a1, b0, b1) = candidate_range(l, &lo, &hi);
            let xf = x.to_f64();
            let mut near_boundary = false;
            'translates: for a in a0..=a1 {
                for b in b0..=b1 {
                    let lam = l.point(a, b).to_f64();
                    let y = [xf[0] - lam[0], xf[1] - lam[1]];
                    for (af, bf, len) in &edges_f64 {
                        let cross =
                            (bf[0] - af[0]) * (y[1] - af[1]) - (bf[1] - af[1]) * (y[0] - af[0]);
                        if (cross / len).abs() < eps {
                            near_boundary = true;
                            break 'translates;
                        }
                    }
                }
            }
            if near_boundary {
                skipped += 1;
                continue;
            }
            let c = cover_count(p, l, &x);
            *counts.entry(c).or_insert(0) += 1;
        }
    }

    let verdict = if counts.is_empty() {
        KTilingVerdict::Inconclusive
    } else if counts.len() == 1 {
        let (&k, _) = counts.iter().next().unwrap();
        if k >= 1 {
            KTilingVerdict::KTiling(k)
        } else {
            KTilingVerdict::NotTiling
        }
    } else {
        KTilingVerdict::NotTiling
    };
    KTilingOutcome {
        verdict,
        histogram: CoverHistogram {
            counts,
            samples: n_samples,
            skipped_near_boundary: skipped,
        },
        seed,
        eps,
    }
}

/// Spectral criterion report: area must equal the covolume exactly and the
/// transform must vanish on all nonzero dual points in range.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub pass: bool,
    pub area_matches_covolume: bool,
    pub max_abs: f64,
    pub worst_coeffs: [i64; 2],
    pub worst_xi: [String; 2],
    pub range: i64,
    pub tol: f64,
}

pub fn spectral_tiling_check(p: &Polygon2, l: &Lattice2, range: i64, tol: f64) -> SpectralReport {
    assert!(range >= 1);
    let area_matches = p.area() == l.covolume();
    let dual = l.dual();
    let mut max_abs = 0.0f64;
    let mut worst = (0i64, 0i64);
    let mut worst_xi = [Rat::zero(), Rat::zero()];
    for a in -range..=range {
        for b in -range..=range {
            if a == 0 && b == 0 {
                continue;
            }
            let xi_point = dual.point(a, b);
            let xi = Frequency::new(vec![xi_point.x.clone(), xi_point.y.clone()]);
            let ft = polygon_ft(p, &xi).expect("2d frequency");
            let mag = ft.value.norm();
            if mag > max_abs {
                max_abs = mag;
                worst = (a, b);
                worst_xi = [xi_point.x, xi_point.y];
            }
        }
    }
    SpectralReport {
        pass: area_matches && max_abs <= tol,
        area_matches_covolume: area_matches,
        max_abs,
        worst_coeffs: [worst.0, worst.1],
        worst_xi: [format_rational(&worst_xi[0]), format_rational(&worst_xi[1])],
        range,
        tol,
    }
}

/// Orthogonality of the dual-lattice exponentials over `p`: for distinct
/// dual points `lambda != mu`, the pairing `Int_p e^{2 pi i <lambda - mu, x>} dx`
/// equals the transform at `mu - lambda` and must vanish.
#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub pass: bool,
    pub pairs_checked: u64,
    pub max_abs: f64,
    pub worst_pair: [[i64; 2]; 2],
    pub range: i64,
    pub tol: f64,
    pub seed: u64,
}

pub fn exponential_orthogonality_check(
    p: &Polygon2,
    l: &Lattice2,
    n_pairs: u64,
    range: i64,
    seed: u64,
    tol: f64,
) -> OrthogonalityReport {
    assert!(n_pairs >= 1 && range >= 1);
    let dual = l.dual();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_abs = 0.0f64;
    let mut worst = [[0i64; 2]; 2];
    for _ in 0..n_pairs {
        let draw = |rng: &mut ChaCha8Rng| {
            [rng.gen_range(-range..=range), rng.gen_range(-range..=range)]
        };
        let first = draw(&mut rng);
        let mut second = draw(&mut rng);
        while second == first {
            second = draw(&mut rng);
        }
        let diff = dual.point(second[0] - first[0], second[1] - first[1]);
        let xi = Frequency::new(vec![diff.x, diff.y]);
        let mag = polygon_ft(p, &xi).expect("2d frequency").value.norm();
        if mag > max_abs {
            max_abs = mag;
            worst = [first, second];
        }
    }
    OrthogonalityReport {
        pass: max_abs <= tol,
        pairs_checked: n_pairs,
        max_abs,
        worst_pair: worst,
        range,
        tol,
        seed,
    }
}

/// The covolume-6 basis ((1,3), (1,-3)) used by the tiling checks for the
/// canonical rhombus and hexagon.
pub fn candidate_lattice() -> Lattice2 {
    Lattice2::from_ints((1, 3), (1, -3)).unwrap()
}
