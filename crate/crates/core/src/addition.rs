//! One-range expansions about a single center.
//!
//! - [`expand_one_center_product`]: exact Gaunt linearization of a product of
//!   two orbitals sharing a center.
//! - [`expand_product_density`]: L2 projection of a product of orbitals on
//!   arbitrary centers onto the integer-n Slater space
//!   `{χ_nlm(z, r_g) : n <= N}` at `z = ζ1 + ζ1'` around a third center `g`.
//! - [`expand_kernel_two_particle`]: two-index table `T` with
//!   `h(r2 - r1) ≈ Σ T_{q1 q2} χ_q1(β, r1 - O) χ_q2(β, r2 - O)`.
//!
//! Projections are carried out in the orthonormal Laguerre basis that spans
//! the same space as the Slater functions of one channel, so no Gram matrix
//! has to be inverted. Coefficients over the Slater functions themselves are
//! recovered from the exact change of basis on request.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{radial_overlap, sto_norm, KernelIndex, OrbitalIndex, StoParams};
use crate::math::laguerre::LaguerreBasis;
use crate::math::quadrature::{gauss_legendre, radial_rule};
use crate::math::radial_kernel::RadialKernel;
use crate::math::{gaunt_real, lm_index, RealHarmonics};
use crate::oracle::Grid3d;
use crate::{Error, Result, Vec3};

/// Largest truncation accepted by the table builders.
pub const MAX_TRUNCATION: usize = 60;

/// Condition number above which a Slater Gram block is reported.
pub const GRAM_CONDITION_LIMIT: f64 = 1e12;

/// Family label of the one-range expansion (`α ∈ {1, 0, -1, -2}`). The
/// projection does not depend on it; it is recorded for traceability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct AlphaTag(i8);

impl AlphaTag {
    pub fn new(alpha: i8) -> Result<Self> {
        if (-2..=1).contains(&alpha) {
            Ok(Self(alpha))
        } else {
            Err(Error::Validation(format!("alpha tag {alpha} is not one of 1, 0, -1, -2")))
        }
    }

    pub fn value(&self) -> i8 {
        self.0
    }
}

impl Default for AlphaTag {
    fn default() -> Self {
        Self(1)
    }
}

impl TryFrom<i8> for AlphaTag {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AlphaTag> for i8 {
    fn from(a: AlphaTag) -> i8 {
        a.0
    }
}

/// Which separation vectors the expansion coefficients are referred to.
/// Both arrangements produce the same projected object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Arrangement {
    #[default]
    CaAg,
    CgAg,
}

/// Product of two same-center orbitals as a finite sum,
/// `χ1 χ1' = (1/sqrt(4π)) Σ W_LM χ_{n*, L, M}(z, r)` with
/// `n* = n1* + n1'* - 1` and `z = ζ1 + ζ1'`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneCenterDensity {
    pub terms: Vec<(OrbitalIndex, f64)>,
    pub z: f64,
}

impl OneCenterDensity {
    /// Value at displacement `d` from the shared center.
    pub fn value(&self, d: &Vec3) -> f64 {
        let r = d.norm();
        self.terms
            .iter()
            .map(|(idx, w)| {
                let p = StoParams { index: *idx, zeta: self.z, center: Vec3::zeros() };
                w * p.radial(r) * crate::math::real_harmonic(idx.l as usize, idx.m as i64, d)
            })
            .sum::<f64>()
            / (4.0 * PI).sqrt()
    }
}

pub fn expand_one_center_product(p1: &OrbitalIndex, zeta1: f64, p2: &OrbitalIndex, zeta2: f64) -> OneCenterDensity {
    let z = zeta1 + zeta2;
    let n_star = p1.n_star + p2.n_star - 1.0;
    let radial = sto_norm(p1.n_star, zeta1) * sto_norm(p2.n_star, zeta2) / sto_norm(n_star, z);
    let lo = p1.l.abs_diff(p2.l);
    let hi = p1.l + p2.l;
    let mut terms = Vec::new();
    for l in lo..=hi {
        for m in -(l as i32)..=(l as i32) {
            let g = gaunt_real(p1.l, p1.m, p2.l, p2.m, l, m);
            if g != 0.0 {
                terms.push((OrbitalIndex { n_star, l, m }, g * radial));
            }
        }
    }
    OneCenterDensity { terms, z }
}

/// Angular channels to include in a projection.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Channels {
    #[default]
    All,
    Only(Vec<(u32, i32)>),
}

/// Coefficients of one `(l, m)` channel over the orthonormal radial
/// functions `φ_k`, `k < N - l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelExpansion {
    pub l: u32,
    pub m: i32,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTable {
    pub source: (StoParams, StoParams),
    pub expansion_center: Vec3,
    pub z: f64,
    pub truncation_n: usize,
    pub alpha: AlphaTag,
    pub arrangement: Arrangement,
    pub channels: Vec<ChannelExpansion>,
    /// `∫ ρ^2 dv` of the source density.
    pub density_norm2: f64,
    /// `‖ρ - Pρ‖` in L2.
    pub residual_l2: f64,
    /// Condition numbers of the Slater Gram blocks, by `l`.
    pub gram_condition: Vec<(u32, f64)>,
    pub warnings: Vec<String>,
}

impl ExpansionTable {
    pub fn channel(&self, l: u32, m: i32) -> Option<&ChannelExpansion> {
        self.channels.iter().find(|c| c.l == l && c.m == m)
    }

    /// Coefficients over normalized Slater functions `χ_nlm(z, r_g)`,
    /// `n = l+1, ..., N`, such that `ρ ≈ Σ w_nlm χ_nlm`.
    pub fn sto_coefficients(&self, l: u32, m: i32) -> Option<Vec<f64>> {
        let ch = self.channel(l, m)?;
        let nk = ch.coefficients.len();
        let t = LaguerreBasis::new(self.z, l as usize, nk).sto_coefficients();
        Some((0..nk).map(|j| (0..nk).map(|k| ch.coefficients[k] * t[k][j]).sum()).collect())
    }

    /// Slater coefficient for `(n, l, m)`, zero outside the stored channels.
    pub fn coefficient(&self, n: usize, l: u32, m: i32) -> f64 {
        if n < l as usize + 1 || n > self.truncation_n {
            return 0.0;
        }
        self.sto_coefficients(l, m).map(|w| w[n - l as usize - 1]).unwrap_or(0.0)
    }

    /// Same table restricted to a smaller truncation (the projection nests).
    pub fn truncate(&self, n: usize) -> ExpansionTable {
        let n = n.min(self.truncation_n);
        let channels: Vec<ChannelExpansion> = self
            .channels
            .iter()
            .filter(|c| (c.l as usize) < n)
            .map(|c| ChannelExpansion { l: c.l, m: c.m, coefficients: c.coefficients[..n - c.l as usize].to_vec() })
            .collect();
        let captured: f64 = channels.iter().flat_map(|c| c.coefficients.iter()).map(|x| x * x).sum();
        ExpansionTable {
            truncation_n: n,
            residual_l2: (self.density_norm2 - captured).max(0.0).sqrt(),
            channels,
            gram_condition: self.gram_condition.iter().copied().filter(|(l, _)| (*l as usize) < n).collect(),
            ..self.clone()
        }
    }

    /// `residual_l2` for every truncation `1..=N`.
    pub fn residual_history(&self) -> Vec<(usize, f64)> {
        (1..=self.truncation_n).map(|n| (n, self.truncate(n).residual_l2)).collect()
    }

    /// Expansion value at `point`.
    pub fn value(&self, point: &Vec3) -> f64 {
        let d = point - self.expansion_center;
        let r = d.norm();
        let mut out = 0.0;
        let mut buf = vec![0.0; self.truncation_n];
        for ch in &self.channels {
            let nk = ch.coefficients.len();
            LaguerreBasis::new(self.z, ch.l as usize, nk).eval_into(r, &mut buf[..nk]);
            let radial: f64 = ch.coefficients.iter().zip(&buf).map(|(c, f)| c * f).sum();
            out += radial * crate::math::real_harmonic(ch.l as usize, ch.m as i64, &d);
        }
        out
    }
}

fn channel_list(n: usize, channels: &Channels) -> Vec<(u32, i32)> {
    match channels {
        Channels::All => (0..n as u32).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m))).collect(),
        Channels::Only(list) => {
            let mut v: Vec<(u32, i32)> = list.iter().copied().filter(|(l, m)| (*l as usize) < n && m.unsigned_abs() <= *l).collect();
            v.sort();
            v.dedup();
            v
        }
    }
}

/// Condition number of the Slater Gram block of channel `l` at scale `z`,
/// `n = l+1, ..., N`.
pub fn gram_condition(l: u32, z: f64, n: usize) -> f64 {
    let g = sto_gram_block(l, z, n);
    let eig = g.symmetric_eigenvalues();
    let max = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = eig.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    max / min
}

fn sto_gram_block(l: u32, z: f64, n: usize) -> DMatrix<f64> {
    let nk = n.saturating_sub(l as usize);
    DMatrix::from_fn(nk, nk, |i, j| {
        let ni = (l as usize + 1 + i) as f64;
        let nj = (l as usize + 1 + j) as f64;
        radial_overlap(ni, z, nj, z)
    })
}

/// Solve the normal equations `G w = b` of one Slater channel directly.
///
/// Uses a Cholesky factorization of the Gram block and falls back to a
/// Tikhonov shift of `1e-14 · trace / dim` when the block is numerically
/// not positive definite or its condition number exceeds
/// [`GRAM_CONDITION_LIMIT`]. Returns `(w, condition, regularized)`.
pub fn solve_gram_block(l: u32, z: f64, b: &[f64]) -> (Vec<f64>, f64, bool) {
    let n = l as usize + b.len();
    let g = sto_gram_block(l, z, n);
    let cond = gram_condition(l, z, n);
    let rhs = DVector::from_column_slice(b);
    let plain = (cond <= GRAM_CONDITION_LIMIT).then(|| g.clone().cholesky()).flatten();
    match plain {
        Some(ch) => (ch.solve(&rhs).iter().copied().collect(), cond, false),
        None => {
            let shift = 1e-14 * g.trace() / b.len() as f64;
            let reg = &g + DMatrix::identity(b.len(), b.len()) * shift;
            let w = match reg.clone().cholesky() {
                Some(ch) => ch.solve(&rhs),
                None => reg.lu().solve(&rhs).unwrap_or_else(|| DVector::zeros(b.len())),
            };
            (w.iter().copied().collect(), cond, true)
        }
    }
}

/// Quadrature orders for projections at truncation `n`.
fn projection_orders(n: usize) -> (usize, usize) {
    let extra = n.saturating_sub(16);
    (120 + 4 * extra, 40 + extra)
}

fn check_truncation(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TRUNCATION {
        return Err(Error::Domain(format!("truncation N = {n} outside 1..={MAX_TRUNCATION}")));
    }
    Ok(())
}

/// Projection of `χ_p1 χ_p1'` onto all channels of the Slater space around `g`.
pub fn expand_product_density(p1: &StoParams, p2: &StoParams, g: &Vec3, n: usize) -> Result<ExpansionTable> {
    expand_product_density_with(p1, p2, g, n, &Channels::All, AlphaTag::default(), Arrangement::default())
}

pub fn expand_product_density_with(
    p1: &StoParams,
    p2: &StoParams,
    g: &Vec3,
    n: usize,
    channels: &Channels,
    alpha: AlphaTag,
    arrangement: Arrangement,
) -> Result<ExpansionTable> {
    check_truncation(n)?;
    let z = p1.zeta + p2.zeta;
    let list = channel_list(n, channels);
    let lmax = list.iter().map(|c| c.0 as usize).max().unwrap_or(0);
    // output layout: per channel the coefficients of k < n - l, then ρ^2
    let mut offsets = Vec::with_capacity(list.len());
    let mut total = 0;
    for &(l, _) in &list {
        offsets.push(total);
        total += n - l as usize;
    }
    let (n_r, n_t) = projection_orders(n);
    let grid = Grid3d::with_orders(&[p1.center, p2.center, *g], 1.0 / p1.zeta.max(p2.zeta), n_r, n_t, 3);
    let bases: Vec<LaguerreBasis> = (0..=lmax).map(|l| LaguerreBasis::new(z, l, n - l)).collect();
    let values = grid.integrate_batch(total + 1, |x, out| {
        let rho = p1.value(x) * p2.value(x);
        let d = x - g;
        let r = d.norm();
        let mut harm = RealHarmonics::new(lmax);
        let s = harm.eval(&d);
        let mut radial = vec![vec![0.0; n]; lmax + 1];
        for (l, basis) in bases.iter().enumerate() {
            basis.eval_into(r, &mut radial[l]);
        }
        for (idx, &(l, m)) in list.iter().enumerate() {
            let f = rho * s[lm_index(l as usize, m as i64)];
            let nk = n - l as usize;
            let row = &radial[l as usize];
            for k in 0..nk {
                out[offsets[idx] + k] = f * row[k];
            }
        }
        out[total] = rho * rho;
    });
    let density_norm2 = values[total];
    let chans: Vec<ChannelExpansion> = list
        .iter()
        .enumerate()
        .map(|(idx, &(l, m))| ChannelExpansion {
            l,
            m,
            coefficients: values[offsets[idx]..offsets[idx] + n - l as usize].to_vec(),
        })
        .collect();
    let captured: f64 = chans.iter().flat_map(|c| c.coefficients.iter()).map(|x| x * x).sum();
    let mut ls: Vec<u32> = list.iter().map(|c| c.0).collect();
    ls.dedup();
    let gram: Vec<(u32, f64)> = ls.iter().map(|&l| (l, gram_condition(l, z, n))).collect();
    let warnings = gram
        .iter()
        .filter(|(_, c)| *c > GRAM_CONDITION_LIMIT)
        .map(|(l, c)| format!("Slater Gram block l = {l} has condition number {c:.3e}; coefficients were obtained in the orthonormalized basis"))
        .collect();
    Ok(ExpansionTable {
        source: (*p1, *p2),
        expansion_center: *g,
        z,
        truncation_n: n,
        alpha,
        arrangement,
        channels: chans,
        density_norm2,
        residual_l2: (density_norm2 - captured).max(0.0).sqrt(),
        gram_condition: gram,
        warnings,
    })
}

/// Two-particle kernel table, block diagonal in `(l, m)` and independent of
/// `m`: `h(r2 - r1) ≈ Σ_lm Σ_{k1 k2} M_l[k1][k2] φ_k1(r1) S_lm(r̂1) φ_k2(r2) S_lm(r̂2)`
/// with positions relative to `origin` and `φ_k` the orthonormal radial
/// functions at scale `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelTable {
    pub kernel: KernelIndex,
    pub xi: f64,
    pub origin: Vec3,
    pub beta: f64,
    pub n_pair: usize,
    /// `blocks[l]` is the row-major `(N-l) x (N-l)` matrix `M_l`.
    pub blocks: Vec<Vec<f64>>,
}

impl KernelTable {
    pub fn block_dim(&self, l: usize) -> usize {
        self.n_pair - l
    }

    /// `M_l[k1][k2]`.
    pub fn entry(&self, l: usize, k1: usize, k2: usize) -> f64 {
        self.blocks[l][k1 * self.block_dim(l) + k2]
    }

    /// Table over the normalized Slater functions `χ_nlm(β, r_O)`:
    /// `T_l = Cᵀ M_l C` with `C` the Laguerre-to-Slater change of basis.
    pub fn sto_block(&self, l: usize) -> Vec<f64> {
        let nk = self.block_dim(l);
        let t = LaguerreBasis::new(self.beta, l, nk).sto_coefficients();
        let mut out = vec![0.0; nk * nk];
        for i in 0..nk {
            for j in 0..nk {
                let mut s = 0.0;
                for a in 0..nk {
                    for b in 0..nk {
                        s += t[a][i] * self.entry(l, a, b) * t[b][j];
                    }
                }
                out[i * nk + j] = s;
            }
        }
        out
    }

    /// Contract with two projection vectors laid out as by
    /// [`KernelTable::projection_layout`], truncated at `n <= n_pair`.
    pub fn contract(&self, left: &[f64], right: &[f64], n: usize) -> f64 {
        let n = n.min(self.n_pair);
        let mut total = 0.0;
        let mut offset = 0;
        for l in 0..self.n_pair {
            let nk = self.block_dim(l);
            for _m in 0..(2 * l + 1) {
                if l < n {
                    let kk = n - l;
                    for k1 in 0..kk {
                        let a = left[offset + k1];
                        if a == 0.0 {
                            continue;
                        }
                        let row: f64 = (0..kk).map(|k2| self.entry(l, k1, k2) * right[offset + k2]).sum();
                        total += a * row;
                    }
                }
                offset += nk;
            }
        }
        total
    }

    /// Number of projection components: `Σ_l (2l+1)(N-l)`, ordered by `l`,
    /// then `m = -l..l`, then `k`.
    pub fn projection_layout(&self) -> usize {
        (0..self.n_pair).map(|l| (2 * l + 1) * (self.n_pair - l)).sum()
    }

    /// Projections `∫ ρ(r) φ_k(|r - O|) S_lm(r - O) dv` of a density given
    /// pointwise, integrated on `grid`.
    pub fn project<F>(&self, grid: &Grid3d, rho: F) -> Vec<f64>
    where
        F: Fn(&Vec3) -> f64 + Sync,
    {
        let n = self.n_pair;
        let lmax = n - 1;
        let total = self.projection_layout();
        let bases: Vec<LaguerreBasis> = (0..n).map(|l| LaguerreBasis::new(self.beta, l, n - l)).collect();
        let origin = self.origin;
        // weights folded into a single accumulation pass; chunk sums are
        // reduced in order so the result does not depend on the thread count
        let partial: Vec<Vec<f64>> = grid
            .points
            .par_chunks(2048)
            .map(|chunk| {
                let mut acc = vec![0.0; total];
                let mut harm = RealHarmonics::new(lmax);
                let mut buf = vec![0.0; n];
                for (x, w) in chunk {
                    let v = w * rho(x);
                    if v.abs() < 1e-16 {
                        continue;
                    }
                    let d = x - origin;
                    let r = d.norm();
                    let s = harm.eval(&d);
                    let mut offset = 0;
                    for (l, basis) in bases.iter().enumerate() {
                        let nk = n - l;
                        basis.eval_into(r, &mut buf[..nk]);
                        for m in -(l as i64)..=(l as i64) {
                            let f = v * s[lm_index(l, m)];
                            for (a, b) in acc[offset..offset + nk].iter_mut().zip(&buf[..nk]) {
                                *a += f * b;
                            }
                            offset += nk;
                        }
                    }
                }
                acc
            })
            .collect();
        let mut out = vec![0.0; total];
        for part in &partial {
            for (o, p) in out.iter_mut().zip(part) {
                *o += p;
            }
        }
        out
    }
}

/// Build the kernel table by projecting the Legendre components `g_l(r1, r2)`
/// of the kernel onto pairs of radial functions; the angular part follows
/// from `P_l(cos γ) = 4π/(2l+1) Σ_m S_lm(r̂1) S_lm(r̂2)`.
pub fn expand_kernel_two_particle(q: &KernelIndex, xi: f64, origin: &Vec3, beta: f64, n_pair: usize) -> Result<KernelTable> {
    check_truncation(n_pair)?;
    if q.nu != 0 {
        return Err(Error::Unsupported(format!(
            "two-particle kernel tables are implemented for isotropic kernels (nu = 0), got nu = {}",
            q.nu
        )));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Domain(format!("kernel table scale beta = {beta} must be positive")));
    }
    if !(xi.is_finite() && xi >= 0.0) {
        return Err(Error::Domain(format!("kernel screening xi = {xi} must be nonnegative")));
    }
    let kernel = RadialKernel::new(q.mu_star, xi);
    let n = n_pair;
    let outer = radial_rule(160 + 6 * n, (n as f64 / 4.0).max(1.0) / beta, 2);
    let inner = gauss_legendre(48 + 2 * n);
    let blocks: Vec<Vec<f64>> = (0..n)
        .map(|l| {
            let nk = n - l;
            let basis = LaguerreBasis::new(beta, l, nk);
            let mut a = vec![0.0; nk * nk];
            let mut f1 = vec![0.0; nk];
            let mut f2 = vec![0.0; nk];
            let mut v = vec![0.0; nk];
            for &(r1, w1) in &outer {
                basis.eval_into(r1, &mut f1);
                v.iter_mut().for_each(|x| *x = 0.0);
                for &(x, w) in inner.iter() {
                    let r2 = 0.5 * r1 * (x + 1.0);
                    let wt = 0.5 * r1 * w * r2 * r2 * kernel.component(l, r1, r2);
                    basis.eval_into(r2, &mut f2);
                    for k in 0..nk {
                        v[k] += wt * f2[k];
                    }
                }
                let wt = w1 * r1 * r1;
                for i in 0..nk {
                    let fi = wt * f1[i];
                    for j in 0..nk {
                        a[i * nk + j] += fi * v[j];
                    }
                }
            }
            let scale = 4.0 * PI / (2 * l + 1) as f64;
            let mut m = vec![0.0; nk * nk];
            for i in 0..nk {
                for j in 0..nk {
                    m[i * nk + j] = scale * (a[i * nk + j] + a[j * nk + i]);
                }
            }
            m
        })
        .collect();
    Ok(KernelTable { kernel: *q, xi, origin: *origin, beta, n_pair, blocks })
}
