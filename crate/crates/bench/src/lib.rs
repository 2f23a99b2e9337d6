//! Shared fixtures for the benchmark targets.

use latticeft::bodies::{Ball, Body, Factor, Polygon2, ProductBody};
use latticeft::rational::{rat, rint};
use latticeft::transform::Frequency;

pub fn rhombus() -> Polygon2 {
    Polygon2::canonical_rhombus()
}

pub fn hexagon() -> Polygon2 {
    Polygon2::canonical_hexagon()
}

/// The 4-dimensional pair compared by the reproduction pipeline.
pub fn product_pair() -> (Body, Body) {
    let ball = Ball::unit(2).unwrap();
    (
        Body::Product(ProductBody::new(vec![
            Factor::Polygon(rhombus()),
            Factor::Ball(ball.clone()),
        ])),
        Body::Product(ProductBody::new(vec![
            Factor::Polygon(hexagon()),
            Factor::Ball(ball),
        ])),
    )
}

/// A generic off-lattice frequency.
pub fn generic_frequency() -> Frequency {
    Frequency::new(vec![rat(7, 3), rat(-5, 4)])
}

/// A frequency on the rhombus's degenerate line xi_1 + 3 xi_2 = 0.
pub fn degenerate_frequency() -> Frequency {
    Frequency::new(vec![rint(3), rint(-1)])
}
