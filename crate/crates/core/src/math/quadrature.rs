//! Gauss-Legendre rules (cached per order) and the mapped rules built on them.

use std::num::NonZeroUsize;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use gauss_quad::legendre::GaussLegendre;

/// Nodes and weights on `[-1, 1]`, nodes ascending.
pub type Rule = Arc<[(f64, f64)]>;

fn cache() -> &'static DashMap<usize, Rule> {
    static CACHE: OnceLock<DashMap<usize, Rule>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Gauss-Legendre rule with `n` nodes on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    let n = n.max(1);
    if let Some(rule) = cache().get(&n) {
        return rule.clone();
    }
    let quad = GaussLegendre::new(NonZeroUsize::new(n).unwrap());
    let mut pairs: Vec<(f64, f64)> = quad.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let rule: Rule = pairs.into();
    cache().insert(n, rule.clone());
    rule
}

/// Gauss-Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    gauss_legendre(n)
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Semi-infinite radial rule on `[0, inf)`.
///
/// Nodes are `r = scale * s / (1 - s)` with `s = t^power` and `t` the
/// Gauss-Legendre nodes on `(0, 1)`. The power clusters nodes at the origin so
/// that noninteger powers `r^a` (a > -1) are integrated accurately. Weights
/// contain `dr/dt` but not `r^2`.
pub fn radial_rule(n: usize, scale: f64, power: i32) -> Vec<(f64, f64)> {
    let p = power.max(1);
    gauss_legendre(n)
        .iter()
        .map(|&(x, w)| {
            let t = 0.5 * (x + 1.0);
            let s = t.powi(p);
            let ds = p as f64 * t.powi(p - 1);
            let one_minus = 1.0 - s;
            let r = scale * s / one_minus;
            let dr = scale / (one_minus * one_minus) * ds;
            (r, 0.5 * w * dr)
        })
        .collect()
}

/// Rule on `[-1, 1]` with both endpoints flattened by the cubic map
/// `u = x (3 - x^2) / 2`, applied `passes` times.
pub fn flattened_interval(n: usize, passes: usize) -> Vec<(f64, f64)> {
    gauss_legendre(n)
        .iter()
        .map(|&(x, w)| {
            let (mut u, mut du) = (x, 1.0);
            for _ in 0..passes {
                du *= 1.5 * (1.0 - u * u);
                u = 0.5 * u * (3.0 - u * u);
            }
            (u, w * du)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(6);
        let s: f64 = rule.iter().map(|&(x, w)| w * x.powi(10)).sum();
        assert_relative_eq!(s, 2.0 / 11.0, max_relative = 1e-14);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn radial_rule_handles_noninteger_powers() {
        // int_0^inf r^1.2 e^{-r} dr = Gamma(2.2)
        let rule = radial_rule(160, 1.0, 3);
        let s: f64 = rule.iter().map(|&(r, w)| w * r.powf(1.2) * (-r).exp()).sum();
        let exact = crate::math::gamma_real(2.2).unwrap();
        assert_relative_eq!(s, exact, max_relative = 1e-12);
    }

    #[test]
    fn flattened_interval_preserves_length() {
        let rule = flattened_interval(20, 2);
        let s: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(s, 2.0, max_relative = 1e-13);
        // endpoint singularity (1 - u)^-0.5
        let s: f64 = flattened_interval(60, 2)
            .iter()
            .map(|&(u, w)| w / (1.0 - u).sqrt())
            .sum();
        assert_relative_eq!(s, 2.0 * 2f64.sqrt(), max_relative = 1e-9);
    }
}
