//! Shared generators for the integration suites: seeded random rational
//! geometry kept exact end to end.

#![allow(dead_code)]

use latticeft::bodies::Polygon2;
use latticeft::rational::{rat, Rat, Vec2};
use latticeft::transform::Frequency;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in `[-bound, bound]` with the given denominator.
pub fn rand_rat(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Rat {
    rat(rng.gen_range(-bound * den..=bound * den), den)
}

pub fn rand_point(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Vec2 {
    Vec2::new(rand_rat(rng, bound, den), rand_rat(rng, bound, den))
}

/// Random rational frequency in `[-bound, bound]^2`.
pub fn rand_frequency2(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Frequency {
    Frequency::new(vec![rand_rat(rng, bound, den), rand_rat(rng, bound, den)])
}

/// Random non-degenerate triangle.
pub fn rand_triangle(rng: &mut ChaCha8Rng) -> Polygon2 {
    loop {
        let vs = vec![
            rand_point(rng, 4, 7),
            rand_point(rng, 4, 7),
            rand_point(rng, 4, 7),
        ];
        if let Ok(p) = Polygon2::new(vs) {
            return p;
        }
    }
}

/// Exact counterclockwise angular order: upper half-plane (y > 0, or y = 0
/// with x > 0) before lower, then by cross-product sign within a half.
fn angle_less(a: &Vec2, b: &Vec2) -> bool {
    let half = |v: &Vec2| -> u8 {
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    };
    match half(a).cmp(&half(b)) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a.cross(b).is_positive(),
    }
}

/// Random origin-centered zonogon with `k` generators: convex and exactly
/// centrally symmetric by construction.
pub fn rand_zonogon(rng: &mut ChaCha8Rng, k: usize) -> Polygon2 {
    assert!(k >= 2);
    'retry: loop {
        let mut gens: Vec<Vec2> = Vec::with_capacity(k);
        while gens.len() < k {
            let g = rand_point(rng, 3, 5);
            if g.is_zero() {
                continue;
            }
            if gens.iter().any(|h| h.cross(&g).is_zero()) {
                continue 'retry;
            }
            gens.push(g);
        }
        let mut edges: Vec<Vec2> = gens.iter().map(Vec2::neg).collect();
        edges.extend(gens);
        edges.sort_by(|a, b| {
            if angle_less(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut acc = Vec2::zero();
        let mut verts = Vec::with_capacity(2 * k);
        for e in &edges {
            verts.push(acc.clone());
            acc = acc.add(e);
        }
        let poly = Polygon2::new(verts).expect("sorted zonogon edges are convex");
        // recenter so the symmetry center is the origin
        let c = poly.centroid();
        return poly.translate(&c.neg());
    }
}

/// Random convex polygon (triangle or zonogon), possibly translated off
/// the origin.
pub fn rand_convex_polygon(rng: &mut ChaCha8Rng) -> Polygon2 {
    let p = if rng.gen_bool(0.4) {
        rand_triangle(rng)
    } else {
        let k = rng.gen_range(2..=4);
        rand_zonogon(rng, k)
    };
    if rng.gen_bool(0.5) {
        p.translate(&rand_point(rng, 2, 3))
    } else {
        p
    }
}

/// Rational rotation from a Pythagorean triple: `cos = (m^2-n^2)/(m^2+n^2)`,
/// `sin = 2mn/(m^2+n^2)`.
pub fn pythagorean_rotation(rng: &mut ChaCha8Rng) -> (Rat, Rat) {
    let m: i64 = rng.gen_range(2..=12);
    let n: i64 = rng.gen_range(1..m);
    let hyp = m * m + n * n;
    (rat(m * m - n * n, hyp), rat(2 * m * n, hyp))
}

/// Applies a random exact rigid motion (rational rotation, optional
/// reflection, rational translation) plus a cyclic relabeling of the
/// vertex list.
pub fn rigid_motion_copy(rng: &mut ChaCha8Rng, p: &Polygon2) -> Polygon2 {
    let (cos, sin) = pythagorean_rotation(rng);
    let reflect = rng.gen_bool(0.5);
    let t = rand_point(rng, 5, 4);
    let shift = rng.gen_range(0..p.vertex_count());
    let n = p.vertex_count();
    let verts: Vec<Vec2> = (0..n)
        .map(|i| {
            let v = &p.vertices()[(i + shift) % n];
            let y = if reflect { -v.y.clone() } else { v.y.clone() };
            Vec2::new(
                &cos * &v.x - &sin * &y + &t.x,
                &sin * &v.x + &cos * &y + &t.y,
            )
        })
        .collect();
    Polygon2::new(verts).expect("rigid motion preserves validity")
}
