//! Body, lattice, and frequency specs accepted on the command line.
//!
//! Body specs: built-ins `R`, `H`, `ball:m:r`, `square:s`, Cartesian
//! products like `R*ball:2:1`, or a path to a polygon JSON file
//! (`{"vertices": [[x, y], ...]}` with exact rational coordinates).

use latticeft::bodies::{Ball, Body, Factor, Polygon2, ProductBody};
use latticeft::rational::{parse_rational, Vec2};
use latticeft::tiling::Lattice2;
use latticeft::transform::Frequency;

use crate::CliError;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_factor(spec: &str) -> Result<Factor, CliError> {
    match spec {
        "R" => return Ok(Factor::Polygon(Polygon2::canonical_rhombus())),
        "H" => return Ok(Factor::Polygon(Polygon2::canonical_hexagon())),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("ball:") {
        let (dim_str, radius_str) = rest
            .split_once(':')
            .ok_or_else(|| input_err(format!("expected ball:m:r, got {spec:?}")))?;
        let dim: usize = dim_str
            .parse()
            .map_err(|_| input_err(format!("bad ball dimension {dim_str:?}")))?;
        if dim > 12 {
            return Err(input_err("ball dimension above 12 is not supported"));
        }
        let radius = parse_rational(radius_str)
            .map_err(|e| input_err(format!("bad ball radius: {e}")))?;
        return Ball::new(dim, radius)
            .map(Factor::Ball)
            .map_err(|e| input_err(e.to_string()));
    }
    if let Some(side_str) = spec.strip_prefix("square:") {
        let side = parse_rational(side_str)
            .map_err(|e| input_err(format!("bad square side: {e}")))?;
        return Polygon2::centered_rectangle(&side, &side)
            .map(Factor::Polygon)
            .map_err(|_| input_err(format!("square side must be positive, got {side_str:?}")));
    }
    // anything else is a polygon JSON file path
    let text = std::fs::read_to_string(spec)
        .map_err(|e| input_err(format!("cannot read body file {spec:?}: {e}")))?;
    Polygon2::from_json_str(&text)
        .map(Factor::Polygon)
        .map_err(|e| input_err(format!("{spec}: {e}")))
}

/// Parses a body spec, including `*`-joined Cartesian products.
pub fn parse_body(spec: &str) -> Result<Body, CliError> {
    let parts: Vec<&str> = spec.split('*').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(input_err(format!("empty factor in body spec {spec:?}")));
    }
    if parts.len() == 1 {
        return Ok(match parse_factor(parts[0])? {
            Factor::Polygon(p) => Body::Polygon(p),
            Factor::Ball(b) => Body::Ball(b),
            Factor::Interval(i) => Body::Interval(i),
        });
    }
    let factors = parts
        .iter()
        .map(|p| parse_factor(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Body::Product(ProductBody::new(factors)))
}

/// `Z2` or four comma-separated rationals `g1x,g1y,g2x,g2y`.
pub fn parse_lattice(spec: &str) -> Result<Lattice2, CliError> {
    if spec == "Z2" || spec == "z2" {
        return Ok(Lattice2::standard());
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err(input_err(format!(
            "lattice spec needs Z2 or 4 comma-separated entries, got {spec:?}"
        )));
    }
    let vals = parts
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| input_err(format!("bad lattice entry: {e}")))?;
    Lattice2::new(
        Vec2::new(vals[0].clone(), vals[1].clone()),
        Vec2::new(vals[2].clone(), vals[3].clone()),
    )
    .map_err(|e| input_err(e.to_string()))
}

/// Frequency from comma-separated rational coordinates.
pub fn parse_frequency(spec: &str) -> Result<Frequency, CliError> {
    let vals = spec
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| input_err(format!("bad frequency coordinate: {e}")))?;
    Ok(Frequency::new(vals))
}
