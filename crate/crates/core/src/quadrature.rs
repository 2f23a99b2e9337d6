//! Gauss–Legendre rules.
//!
//! Nodes and weights are generated by Newton iteration on the Legendre
//! recurrence and cached per order; orders up to a few thousand are cheap.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussLegendre { nodes, weights }
    }

    /// Cached rule of the given order.
    pub fn rule(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap();
        map.entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::compute(n)))
            .clone()
    }

    /// Integrates `f` over `[a, b]` with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre over `[a, b]` split into `panels` equal panels
/// with `order` nodes each.
pub fn composite_gl<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
    mut f: F,
) -> f64 {
    let rule = GaussLegendre::rule(order);
    let width = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        acc += rule.integrate(lo, lo + width, &mut f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_rules_match_tabulated_values() {
        let g2 = GaussLegendre::rule(2);
        let x = 1.0 / 3.0_f64.sqrt();
        assert!((g2.nodes[1] - x).abs() < 1e-15);
        assert!((g2.weights[0] - 1.0).abs() < 1e-15);
        let g3 = GaussLegendre::rule(3);
        assert!((g3.nodes[2] - (0.6_f64).sqrt()).abs() < 1e-15);
        assert!((g3.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!(g3.nodes[1].abs() < 1e-300);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // order n is exact through degree 2n-1
        let g5 = GaussLegendre::rule(5);
        let val = g5.integrate(-1.0, 1.0, |x| x.powi(8));
        assert!((val - 2.0 / 9.0).abs() < 1e-14);
        let val = g5.integrate(0.0, 2.0, |x| 3.0 * x * x);
        assert!((val - 8.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 24, 64, 160] {
            let g = GaussLegendre::rule(n);
            let sum: f64 = g.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-12, "order {n}: {sum}");
        }
    }

    #[test]
    fn composite_handles_oscillatory_integrands() {
        // integral of cos(40 x) over [0, pi] = sin(40 pi)/40 = 0
        let val = composite_gl(0.0, std::f64::consts::PI, 32, 12, |x| (40.0 * x).cos());
        assert!(val.abs() < 1e-12, "{val}");
    }
}
