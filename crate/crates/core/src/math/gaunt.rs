//! Real-harmonic Gaunt coefficients.
//!
//! `gaunt_real(l1, m1, l2, m2, ν, σ) = sqrt(4π) ∫ S_l1m1 S_l2m2 S_νσ dΩ`.
//! The azimuthal integral is done in closed form, the polar one by an exact
//! Gauss-Legendre rule; selection rules are applied first so forbidden
//! couplings return exactly `0.0`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_complex::Complex64;

use super::legendre::{fill_table, pl_index};
use super::quadrature::gauss_legendre;

type Key = [(u32, i32); 3];

fn cache() -> &'static DashMap<Key, f64> {
    static CACHE: OnceLock<DashMap<Key, f64>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Fourier components of `Φ_m` as `(frequency, coefficient)`.
fn phi_components(m: i32) -> Vec<(i32, Complex64)> {
    let s = 1.0 / PI.sqrt();
    match m.cmp(&0) {
        std::cmp::Ordering::Equal => vec![(0, Complex64::new(1.0 / (2.0 * PI).sqrt(), 0.0))],
        std::cmp::Ordering::Greater => vec![
            (m, Complex64::new(0.5 * s, 0.0)),
            (-m, Complex64::new(0.5 * s, 0.0)),
        ],
        std::cmp::Ordering::Less => vec![
            (-m, Complex64::new(0.0, -0.5 * s)),
            (m, Complex64::new(0.0, 0.5 * s)),
        ],
    }
}

/// `∫_0^{2π} Φ_a Φ_b Φ_c dφ`.
pub fn azimuthal_triple(a: i32, b: i32, c: i32) -> f64 {
    let negatives = [a, b, c].iter().filter(|&&m| m < 0).count();
    if negatives % 2 == 1 {
        return 0.0;
    }
    let (ua, ub, uc) = (a.abs(), b.abs(), c.abs());
    if ua != ub + uc && ub != ua + uc && uc != ua + ub {
        return 0.0;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (fa, ca) in phi_components(a) {
        for (fb, cb) in phi_components(b) {
            for (fc, cc) in phi_components(c) {
                if fa + fb + fc == 0 {
                    acc += ca * cb * cc;
                }
            }
        }
    }
    2.0 * PI * acc.re
}

fn polar_triple(l: [u32; 3], m: [u32; 3]) -> f64 {
    let lmax = *l.iter().max().unwrap() as usize;
    let n = (l.iter().sum::<u32>() as usize) / 2 + 2;
    let mut table = vec![0.0; pl_index(lmax, lmax) + 1];
    let mut acc = 0.0;
    for &(x, w) in gauss_legendre(n).iter() {
        fill_table(lmax, x, (1.0 - x * x).max(0.0).sqrt(), &mut table);
        let p: f64 = (0..3)
            .map(|i| table[pl_index(l[i] as usize, m[i] as usize)])
            .product();
        acc += w * p;
    }
    acc
}

/// `sqrt(4π) ∫ S_l1m1 S_l2m2 S_νσ dΩ` over real harmonics. Indices with
/// `|m| > l` name no harmonic and give zero.
pub fn gaunt_real(l1: u32, m1: i32, l2: u32, m2: i32, nu: u32, sigma: i32) -> f64 {
    let mut key: Key = [(l1, m1), (l2, m2), (nu, sigma)];
    if key.iter().any(|&(l, m)| m.unsigned_abs() > l) {
        return 0.0;
    }
    let (lo, hi) = (l1.abs_diff(l2), l1 + l2);
    if nu < lo || nu > hi || (l1 + l2 + nu) % 2 == 1 {
        return 0.0;
    }
    let phi = azimuthal_triple(m1, m2, sigma);
    if phi == 0.0 {
        return 0.0;
    }
    key.sort();
    if let Some(v) = cache().get(&key) {
        return *v;
    }
    let theta = polar_triple(
        [key[0].0, key[1].0, key[2].0],
        [key[0].1.unsigned_abs(), key[1].1.unsigned_abs(), key[2].1.unsigned_abs()],
    );
    let value = (4.0 * PI).sqrt() * phi * theta;
    cache().insert(key, value);
    value
}
