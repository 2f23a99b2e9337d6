//! Bessel functions of the first kind at half-integer and integer orders,
//! as needed by the radial ball transform.
//!
//! Strategy, fixed and validated against the slab quadrature oracle:
//! power series below argument 12; above that, closed trigonometric forms
//! plus upward recurrence for half-integer orders and a Gauss–Legendre
//! quadrature of the cosine integral representation for integer orders.

use std::f64::consts::PI;

use crate::quadrature::GaussLegendre;

/// Series/large-argument crossover.
pub(crate) const SERIES_CUTOFF: f64 = 12.0;

/// Largest `m` for which `J_{m/2}` is evaluated; keeps the upward
/// recurrence inside its stable regime (order below the crossover).
pub(crate) const MAX_HALF_ORDER_NUMERATOR: usize = 24;

/// `Gamma(m/2 + 1)` for integer `m >= 0`.
fn gamma_half_plus_one(m: usize) -> f64 {
    if m.is_multiple_of(2) {
        (1..=m / 2).map(|k| k as f64).product()
    } else {
        // Gamma(m/2 + 1) = sqrt(pi) * m!! / 2^((m+1)/2)
        let double_fact: f64 = (1..=m).step_by(2).map(|k| k as f64).product();
        PI.sqrt() * double_fact / 2f64.powi((m as i32 + 1) / 2)
    }
}

/// `J_{m/2}(z)` for `z >= 0` and `1 <= m <= MAX_HALF_ORDER_NUMERATOR`.
pub(crate) fn bessel_j_half(m: usize, z: f64) -> f64 {
    assert!((1..=MAX_HALF_ORDER_NUMERATOR).contains(&m), "order m/2 out of range: m={m}");
    assert!(z >= 0.0);
    if z == 0.0 {
        return 0.0;
    }
    if z <= SERIES_CUTOFF {
        return series(m, z);
    }
    if m.is_multiple_of(2) {
        integer_order_integral(m / 2, z)
    } else {
        half_integer_recurrence(m, z)
    }
}

/// Ascending series sum(k) (-1)^k (z/2)^(nu+2k) / (k! Gamma(nu+k+1)).
/// Alternating with terms peaking around 4e3 at z = 12, so the absolute
/// error stays near 1e-12.
fn series(m: usize, z: f64) -> f64 {
    let nu = m as f64 / 2.0;
    let quarter_z_sq = 0.25 * z * z;
    let mut term = (0.5 * z).powf(nu) / gamma_half_plus_one(m);
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= -quarter_z_sq / (k * (nu + k));
        sum += term;
        if term.abs() < 1e-17 * (1.0 + sum.abs()) {
            break;
        }
    }
    sum
}

/// J_{1/2}, J_{3/2} in closed form, then upward recurrence
/// J_{nu+1}(z) = (2 nu / z) J_nu(z) - J_{nu-1}(z). Stable here because
/// every order stays below the argument.
fn half_integer_recurrence(m: usize, z: f64) -> f64 {
    let prefactor = (2.0 / (PI * z)).sqrt();
    let j_half = prefactor * z.sin();
    if m == 1 {
        return j_half;
    }
    let j_three_half = prefactor * (z.sin() / z - z.cos());
    let mut lower = j_half;
    let mut upper = j_three_half;
    let mut two_nu = 3.0; // 2 * 3/2
    for _ in (5..=m).step_by(2) {
        let next = two_nu / z * upper - lower;
        lower = upper;
        upper = next;
        two_nu += 2.0;
    }
    upper
}

/// J_n(z) = (1/pi) Int_0^pi cos(n t - z sin t) dt, resolved with enough
/// Gauss–Legendre nodes for the phase to be oversampled.
fn integer_order_integral(n: usize, z: f64) -> f64 {
    let order = 48 + (1.2 * z).ceil() as usize + 2 * n;
    let rule = GaussLegendre::rule(order);
    let nf = n as f64;
    rule.integrate(0.0, PI, |t| (nf * t - z * t.sin()).cos()) / PI
}
