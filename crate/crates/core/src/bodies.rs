//! Convex-body representations with exact-rational coordinates.
//!
//! [`Polygon2`] is the workhorse: construction canonicalizes the vertex
//! order to counterclockwise and rejects degenerate input, so every
//! downstream formula can assume consistent outward normals. Balls are
//! origin-centered (a translate only changes the transform by a unimodular
//! phase), and [`ProductBody`] glues factors into higher dimensions.

use num_traits::{Signed, Zero};
use serde_json::Value;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_f64, Rat, Vec2};

/// Convex polygon in the plane with exact-rational vertices, stored in
/// counterclockwise order.
///
/// Construction rejects polygons with fewer than 3 vertices, coincident
/// consecutive vertices, collinear consecutive triples, or zero area, and
/// reverses clockwise input. The membership predicate treats the boundary
/// as inside; it is meaningful for convex polygons only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon2 {
    vertices: Vec<Vec2>,
}

impl Polygon2 {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let k = (i + 2) % n;
            let d1 = vertices[j].sub(&vertices[i]);
            let d2 = vertices[k].sub(&vertices[j]);
            if d1.cross(&d2).is_zero() {
                return Err(Error::CollinearVertices(i, j, k));
            }
        }
        let mut poly = Polygon2 { vertices };
        let signed = poly.signed_area_twice();
        if signed.is_zero() {
            return Err(Error::ZeroArea);
        }
        if signed.is_negative() {
            poly.vertices.reverse();
        }
        Ok(poly)
    }

    /// Rhombus with vertices (±1, 0) and (0, ±3); area 6.
    pub fn canonical_rhombus() -> Self {
        Polygon2::from_int_vertices(&[(-1, 0), (0, 3), (1, 0), (0, -3)]).unwrap()
    }

    /// Hexagon with vertices (±1, ±1), (0, ±2); area 6.
    pub fn canonical_hexagon() -> Self {
        Polygon2::from_int_vertices(&[(-1, 1), (0, 2), (1, 1), (1, -1), (0, -2), (-1, -1)])
            .unwrap()
    }

    /// Axis-aligned rectangle of width `w` and height `h` centered at the
    /// origin.
    pub fn centered_rectangle(w: &Rat, h: &Rat) -> Result<Self> {
        if !w.is_positive() || !h.is_positive() {
            return Err(Error::ZeroArea);
        }
        let hw = w / Rat::from_integer(2.into());
        let hh = h / Rat::from_integer(2.into());
        Polygon2::new(vec![
            Vec2::new(-hw.clone(), -hh.clone()),
            Vec2::new(hw.clone(), -hh.clone()),
            Vec2::new(hw.clone(), hh.clone()),
            Vec2::new(-hw, hh),
        ])
    }

    pub fn from_int_vertices(vs: &[(i64, i64)]) -> Result<Self> {
        Polygon2::new(vs.iter().map(|&(x, y)| Vec2::from_ints(x, y)).collect())
    }

    /// Parses the polygon file format: `{"vertices": [[x, y], ...]}` where
    /// each coordinate is a rational string (`"p/q"` or decimal) or a JSON
    /// integer. Floating-point JSON numbers are rejected to keep
    /// coordinates exact.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::ParseBody(format!("bad JSON: {e}")))?;
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::ParseBody("missing \"vertices\" array".into()))?;
        let mut out = Vec::with_capacity(verts.len());
        for (i, pair) in verts.iter().enumerate() {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::ParseBody(format!("vertex {i} is not a pair")))?;
            let coord = |v: &Value| -> Result<Rat> {
                match v {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) if n.is_i64() => {
                        Ok(Rat::from_integer(n.as_i64().unwrap().into()))
                    }
                    _ => Err(Error::ParseBody(format!(
                        "vertex {i}: use integer or rational-string coordinates, got {v}"
                    ))),
                }
            };
            out.push(Vec2::new(coord(&pair[0])?, coord(&pair[1])?));
        }
        Polygon2::new(out)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges as (start, end) pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Vec2, &Vec2)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    fn signed_area_twice(&self) -> Rat {
        let mut acc = Rat::zero();
        for (a, b) in self.edges() {
            acc += a.cross(b);
        }
        acc
    }

    /// Exact shoelace area; positive for every constructed polygon.
    pub fn area(&self) -> Rat {
        self.signed_area_twice() / Rat::from_integer(2.into())
    }

    /// Exact area centroid.
    pub fn centroid(&self) -> Vec2 {
        let mut cx = Rat::zero();
        let mut cy = Rat::zero();
        let mut twice_area = Rat::zero();
        for (a, b) in self.edges() {
            let w = a.cross(b);
            cx += (&a.x + &b.x) * &w;
            cy += (&a.y + &b.y) * &w;
            twice_area += w;
        }
        let scale = Rat::from_integer(3.into()) * twice_area;
        Vec2::new(cx / &scale, cy / scale)
    }

    /// True iff all consecutive edge cross products are strictly positive
    /// (strict convexity; construction already rules out collinear triples).
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let d1 = self.vertices[(i + 1) % n].sub(&self.vertices[i]);
            let d2 = self.vertices[(i + 2) % n].sub(&self.vertices[(i + 1) % n]);
            d1.cross(&d2).is_positive()
        })
    }

    /// True iff the vertex count is even and antipodal vertices mirror
    /// through the vertex centroid: `v[i + n/2] = 2c - v[i]`.
    pub fn is_centrally_symmetric(&self) -> bool {
        let n = self.vertices.len();
        if !n.is_multiple_of(2) {
            return false;
        }
        let mut cx = Rat::zero();
        let mut cy = Rat::zero();
        for v in &self.vertices {
            cx += &v.x;
            cy += &v.y;
        }
        let n_rat = Rat::from_integer((n as i64).into());
        let c = Vec2::new(cx / &n_rat, cy / n_rat);
        let two = Rat::from_integer(2.into());
        (0..n).all(|i| {
            let v = &self.vertices[i];
            let w = &self.vertices[(i + n / 2) % n];
            w.x == &two * &c.x - &v.x && w.y == &two * &c.y - &v.y
        })
    }

    /// Exact membership test for convex polygons; boundary points count as
    /// inside.
    pub fn contains(&self, p: &Vec2) -> bool {
        self.edges()
            .all(|(a, b)| !b.sub(a).cross(&p.sub(a)).is_negative())
    }

    /// Exact axis-aligned bounding box, `(min, max)`.
    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut min = self.vertices[0].clone();
        let mut max = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            if v.x < min.x {
                min.x = v.x.clone();
            }
            if v.y < min.y {
                min.y = v.y.clone();
            }
            if v.x > max.x {
                max.x = v.x.clone();
            }
            if v.y > max.y {
                max.y = v.y.clone();
            }
        }
        (min, max)
    }

    pub fn translate(&self, t: &Vec2) -> Polygon2 {
        Polygon2 {
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }

    /// Scales about the origin by a positive rational factor.
    pub fn scale(&self, s: &Rat) -> Result<Polygon2> {
        if !s.is_positive() {
            return Err(Error::ZeroArea);
        }
        Ok(Polygon2 {
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        })
    }

    /// Mirror image across the x-axis (re-canonicalized to ccw).
    fn reflected(&self) -> Polygon2 {
        let mut vs: Vec<Vec2> = self
            .vertices
            .iter()
            .map(|v| Vec2::new(v.x.clone(), -v.y.clone()))
            .collect();
        vs.reverse();
        Polygon2 { vertices: vs }
    }

    /// Rotation- and translation-invariant edge signature:
    /// `(|d_i|^2, d_i . d_{i+1})` per edge.
    fn edge_signature(&self) -> Vec<(Rat, Rat)> {
        let n = self.vertices.len();
        let d: Vec<Vec2> = (0..n)
            .map(|i| self.vertices[(i + 1) % n].sub(&self.vertices[i]))
            .collect();
        (0..n)
            .map(|i| (d[i].norm_sq(), d[i].dot(&d[(i + 1) % n])))
            .collect()
    }
}

/// Outcome of [`congruence_distinguisher`]. `Distinct` is a proof of
/// non-congruence; `PossiblyCongruent` is not a proof of congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceVerdict {
    Distinct,
    PossiblyCongruent,
}

fn cyclic_match(a: &[(Rat, Rat)], b: &[(Rat, Rat)]) -> bool {
    let n = a.len();
    (0..n).any(|s| (0..n).all(|i| a[(i + s) % n] == b[i]))
}

/// Compares vertex counts, exact areas, and cyclic edge signatures (under
/// all rotations of the cycle, and reflection). Rigid motions — rotations,
/// reflections, translations — never turn congruent polygons `Distinct`.
pub fn congruence_distinguisher(p: &Polygon2, q: &Polygon2) -> CongruenceVerdict {
    if p.vertex_count() != q.vertex_count() || p.area() != q.area() {
        return CongruenceVerdict::Distinct;
    }
    let sig_q = q.edge_signature();
    if cyclic_match(&p.edge_signature(), &sig_q)
        || cyclic_match(&p.reflected().edge_signature(), &sig_q)
    {
        CongruenceVerdict::PossiblyCongruent
    } else {
        CongruenceVerdict::Distinct
    }
}

/// Volume of the unit ball in `R^m`.
pub fn unit_ball_volume(m: usize) -> f64 {
    // omega_0 = 1, omega_1 = 2, omega_m = omega_{m-2} * 2 pi / m
    let mut dim = m % 2;
    let mut v = if dim == 0 { 1.0 } else { 2.0 };
    while dim < m {
        dim += 2;
        v *= 2.0 * PI / dim as f64;
    }
    v
}

/// Origin-centered ball of rational radius in `R^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    dim: usize,
    radius: Rat,
}

impl Ball {
    /// Dimensions above 24 are rejected: the radial evaluator's Bessel
    /// recurrence is only kept in its stable regime up to order 12.
    pub fn new(dim: usize, radius: Rat) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if dim > 24 {
            return Err(Error::DimensionTooLarge(dim));
        }
        if !radius.is_positive() {
            return Err(Error::NonPositiveRadius);
        }
        Ok(Ball { dim, radius })
    }

    /// Unit ball in `R^m`.
    pub fn unit(dim: usize) -> Result<Self> {
        Ball::new(dim, Rat::from_integer(1.into()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }

    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim) * to_f64(&self.radius).powi(self.dim as i32)
    }

    /// Exact membership: `|x|^2 <= r^2`.
    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim);
        let norm_sq: Rat = x.iter().map(|c| c * c).sum();
        norm_sq <= &self.radius * &self.radius
    }
}

/// Symmetric interval `[-h, h]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval1 {
    half_length: Rat,
}

impl Interval1 {
    pub fn new(half_length: Rat) -> Result<Self> {
        if !half_length.is_positive() {
            return Err(Error::NonPositiveHalfLength);
        }
        Ok(Interval1 { half_length })
    }

    pub fn half_length(&self) -> &Rat {
        &self.half_length
    }

    pub fn length(&self) -> Rat {
        &self.half_length * Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        x.abs() <= self.half_length
    }
}

/// One factor of a Cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Polygon(Polygon2),
    Ball(Ball),
    Interval(Interval1),
}

impl Factor {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Polygon(_) => 2,
            Factor::Ball(b) => b.dim(),
            Factor::Interval(_) => 1,
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            Factor::Polygon(p) => to_f64(&p.area()),
            Factor::Ball(b) => b.volume(),
            Factor::Interval(i) => to_f64(&i.length()),
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        match self {
            Factor::Polygon(p) => p.contains(&Vec2::new(x[0].clone(), x[1].clone())),
            Factor::Ball(b) => b.contains(x),
            Factor::Interval(i) => i.contains(&x[0]),
        }
    }
}

/// Ordered Cartesian product of polygon, ball, and interval factors.
/// Membership is the conjunction of factor memberships on the matching
/// coordinate blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductBody {
    factors: Vec<Factor>,
}

impl ProductBody {
    pub fn new(factors: Vec<Factor>) -> Self {
        assert!(!factors.is_empty(), "product body needs at least one factor");
        ProductBody { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.total_dim());
        let mut offset = 0;
        self.factors.iter().all(|f| {
            let d = f.dim();
            let inside = f.contains(&x[offset..offset + d]);
            offset += d;
            inside
        })
    }
}

/// Any supported body; the common currency of the transform, oracle, and
/// CLI layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Polygon(Polygon2),
    Ball(Ball),
    Interval(Interval1),
    Product(ProductBody),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polygon(_) => 2,
            Body::Ball(b) => b.dim(),
            Body::Interval(_) => 1,
            Body::Product(p) => p.total_dim(),
        }
    }

    /// Lebesgue measure, evaluated in `f64` (ball volumes involve pi).
    pub fn measure(&self) -> f64 {
        match self {
            Body::Polygon(p) => to_f64(&p.area()),
            Body::Ball(b) => b.volume(),
            Body::Interval(i) => to_f64(&i.length()),
            Body::Product(p) => p.factors().iter().map(Factor::measure).product(),
        }
    }

    /// Exact membership on rational points.
    pub fn contains(&self, x: &[Rat]) -> bool {
        match self {
            Body::Polygon(p) => {
                assert_eq!(x.len(), 2);
                p.contains(&Vec2::new(x[0].clone(), x[1].clone()))
            }
            Body::Ball(b) => b.contains(x),
            Body::Interval(i) => {
                assert_eq!(x.len(), 1);
                i.contains(&x[0])
            }
            Body::Product(p) => p.contains(x),
        }
    }

    /// Axis-aligned bounding box as `(lo, hi)` per coordinate, in `f64`.
    /// Polygon boxes are rounded outward only through the rational-to-f64
    /// conversion, which is negligible for sampling purposes.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        match self {
            Body::Polygon(p) => {
                let (min, max) = p.bbox();
                let [x0, y0] = min.to_f64();
                let [x1, y1] = max.to_f64();
                vec![(x0, x1), (y0, y1)]
            }
            Body::Ball(b) => {
                let r = to_f64(b.radius());
                vec![(-r, r); b.dim()]
            }
            Body::Interval(i) => {
                let h = to_f64(i.half_length());
                vec![(-h, h)]
            }
            Body::Product(p) => p
                .factors()
                .iter()
                .flat_map(|f| Body::from_factor(f).bounding_box())
                .collect(),
        }
    }

    fn from_factor(f: &Factor) -> Body {
        match f {
            Factor::Polygon(p) => Body::Polygon(p.clone()),
            Factor::Ball(b) => Body::Ball(b.clone()),
            Factor::Interval(i) => Body::Interval(i.clone()),
        }
    }

    /// Fast approximate membership for Monte Carlo sampling.
    pub fn contains_f64(&self, x: &[f64]) -> bool {
        match self {
            Body::Polygon(p) => {
                let n = p.vertices.len();
                let vs: Vec<[f64; 2]> = p.vertices.iter().map(Vec2::to_f64).collect();
                (0..n).all(|i| {
                    let [ax, ay] = vs[i];
                    let [bx, by] = vs[(i + 1) % n];
                    (bx - ax) * (x[1] - ay) - (by - ay) * (x[0] - ax) >= 0.0
                })
            }
            Body::Ball(b) => {
                let r = to_f64(b.radius());
                x.iter().map(|c| c * c).sum::<f64>() <= r * r
            }
            Body::Interval(i) => x[0].abs() <= to_f64(i.half_length()),
            Body::Product(p) => {
                let mut offset = 0;
                p.factors().iter().all(|f| {
                    let d = f.dim();
                    let inside = Body::from_factor(f).contains_f64(&x[offset..offset + d]);
                    offset += d;
                    inside
                })
            }
        }
    }
}
