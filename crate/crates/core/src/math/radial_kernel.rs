//! Legendre components of isotropic two-point kernels `f(d) = d^{μ-1} e^{-ξ d}`.
//!
//! `f(|r1 - r2|) = Σ_l g_l(r1, r2) P_l(cos γ)` with
//! `g_l = (2l+1)/2 ∫ f(d) P_l(t) dt`.

use super::bessel::yukawa_component;
use super::quadrature::gauss_legendre;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialKernel {
    pub mu: f64,
    pub xi: f64,
}

impl RadialKernel {
    pub fn new(mu: f64, xi: f64) -> Self {
        Self { mu, xi }
    }

    pub fn value(&self, d: f64) -> f64 {
        d.powf(self.mu - 1.0) * (-self.xi * d).exp()
    }

    /// `g_l(r1, r2)`.
    pub fn component(&self, l: usize, r1: f64, r2: f64) -> f64 {
        if self.mu == 0.0 {
            return yukawa_component(l, self.xi, r1, r2);
        }
        if self.mu == 1.0 && self.xi == 0.0 {
            return if l == 0 { 1.0 } else { 0.0 };
        }
        // t = 1 - 2 s^2 puts the d -> |r1 - r2| end at s = 0 where the
        // integrand is smooth in s
        let n = 48 + 2 * l + (self.xi * (r1 + r2)) as usize;
        let rule = gauss_legendre(n.min(400));
        let mut acc = 0.0;
        for &(x, w) in rule.iter() {
            let s = 0.5 * (x + 1.0);
            let t = 1.0 - 2.0 * s * s;
            let d = ((r1 - r2).powi(2) + 4.0 * r1 * r2 * s * s).sqrt();
            acc += w * 2.0 * s * self.value(d) * legendre_p(l, t);
        }
        (2 * l + 1) as f64 / 2.0 * acc
    }
}

/// Unnormalized Legendre polynomial.
pub fn legendre_p(l: usize, t: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let (mut p0, mut p1) = (1.0, t);
    for k in 1..l {
        let p2 = ((2 * k + 1) as f64 * t * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Resum the expansion at a given angle and compare against the kernel.
    #[test]
    fn expansion_resums_to_kernel() {
        for &(mu, xi) in &[(1.0, 0.8), (2.0, 0.5), (3.0, 1.0), (2.0, 0.0), (0.5, 0.3)] {
            let k = RadialKernel::new(mu, xi);
            let (r1, r2, t) = (0.7, 1.9, 0.3f64);
            let d = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * t).sqrt();
            let sum: f64 = (0..40).map(|l| k.component(l, r1, r2) * legendre_p(l, t)).sum();
            assert_relative_eq!(sum, k.value(d), max_relative = 1e-8);
        }
    }

    #[test]
    fn polynomial_kernel_has_finite_expansion() {
        // d^2 = r1^2 + r2^2 - 2 r1 r2 t
        let k = RadialKernel::new(3.0, 0.0);
        assert_relative_eq!(k.component(0, 1.0, 2.0), 5.0, max_relative = 1e-12);
        assert_relative_eq!(k.component(1, 1.0, 2.0), -4.0, max_relative = 1e-12);
        assert!(k.component(2, 1.0, 2.0).abs() < 1e-12);
    }
}
