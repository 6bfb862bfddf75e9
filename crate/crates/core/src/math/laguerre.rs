//! Orthonormal Laguerre radial functions.
//!
//! For a channel `l` and scale `z`, the functions
//! `φ_k(r) = (2z)^{3/2} x^l e^{-x/2} ℓ_k^{(2l+2)}(x)`, `x = 2 z r`, with `ℓ_k`
//! the normalized generalized Laguerre polynomials, are orthonormal under
//! `r^2 dr` and span exactly `{ r^{n-1} e^{-z r} : n = l+1, ..., l+nk }`,
//! the radial space of integer-n Slater orbitals at a common exponent.

use super::gamma::lgam;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreBasis {
    pub z: f64,
    pub l: usize,
    pub nk: usize,
}

impl LaguerreBasis {
    pub fn new(z: f64, l: usize, nk: usize) -> Self {
        Self { z, l, nk }
    }

    /// `out[k] = φ_k(r)` for `k < nk`.
    pub fn eval_into(&self, r: f64, out: &mut [f64]) {
        let nk = self.nk.min(out.len());
        if nk == 0 {
            return;
        }
        let a = (2 * self.l + 2) as f64;
        let x = 2.0 * self.z * r;
        let pref = if x > 0.0 {
            (1.5 * (2.0 * self.z).ln() + self.l as f64 * x.ln() - 0.5 * x - 0.5 * lgam(a + 1.0)).exp()
        } else if self.l == 0 {
            (2.0 * self.z).powf(1.5) * (-0.5 * lgam(a + 1.0)).exp()
        } else {
            0.0
        };
        let mut prev = 0.0;
        let mut cur = pref;
        out[0] = cur;
        for k in 0..nk - 1 {
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf * (kf + a)).sqrt() * prev)
                / ((kf + 1.0) * (kf + 1.0 + a)).sqrt();
            prev = cur;
            cur = next;
            out[k + 1] = cur;
        }
    }

    /// Change of basis to normalized Slater radial functions:
    /// `φ_k = Σ_j T[k][j] R_{l+1+j}(z, r)` with `R_n = N_n r^{n-1} e^{-z r}`.
    /// The matrix is independent of `z`.
    pub fn sto_coefficients(&self) -> Vec<Vec<f64>> {
        let l = self.l as f64;
        let a = 2.0 * l + 2.0;
        (0..self.nk)
            .map(|k| {
                let kf = k as f64;
                (0..self.nk)
                    .map(|j| {
                        if j > k {
                            return 0.0;
                        }
                        let jf = j as f64;
                        let log = 0.5 * lgam(2.0 * l + 2.0 * jf + 3.0)
                            + 0.5 * (lgam(kf + 1.0) - lgam(kf + a + 1.0))
                            + lgam(kf + a + 1.0)
                            - lgam(kf - jf + 1.0)
                            - lgam(a + jf + 1.0)
                            - lgam(jf + 1.0);
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        sign * log.exp()
                    })
                    .collect()
            })
            .collect()
    }
}
