//! Kernel integrals over Slater orbitals.
//!
//! The central quantity is
//! `Λ^{acg} = ∫ χ_p1(r - a) χ_p1'(r - c) h_q(ξ, r - g) dv`
//! with `h_q = sqrt(4π/(2ν+1)) r^{μ*-1} e^{-ξ r} S_νσ`. It is evaluated
//!
//! - in closed form when all three centers coincide,
//! - by exact Gaunt linearization plus two-center quadrature when the two
//!   orbitals share a center ([`TwoCenterVariant::SharedAc`]),
//! - by one-range expansion of the orbital product about the kernel center
//!   when one orbital sits on it ([`TwoCenterVariant::SharedCg`]),
//! - by one-range expansion about either `a` or `g` in the three-center case.
//!
//! The normalized-kernel form `I = sqrt(4π) ∫ χ_p1 χ_p1' χ_q(ξ) dv` is
//! related by `I = sqrt(2ν+1) N(μ*, ξ) Λ` (see [`lambda_to_normalized`]).

use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::addition::{expand_one_center_product, expand_product_density_with, AlphaTag, Arrangement, Channels, ExpansionTable};
use crate::basis::{kernel_value, radial_overlap, sto_norm, KernelIndex, OrbitalIndex, StoParams};
use crate::math::gamma::lgam;
use crate::math::laguerre::LaguerreBasis;
use crate::math::quadrature::radial_rule;
use crate::math::{gaunt_real, lm_index, RealHarmonics};
use crate::oracle::{integrate_3d, integrate_two_center, integrate_two_center_batch, OracleConfig, SpheroidalConfig};
use crate::{Error, Result, Vec3};

/// Centers closer than this are treated as coincident.
pub const COINCIDENCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    #[serde(rename = "series_N")]
    SeriesN,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralValue {
    pub value: f64,
    pub method: Method,
    pub truncation_n: Option<usize>,
    /// Partial values for increasing truncation, last entry = `value`.
    pub convergence: Option<Vec<f64>>,
    pub error_estimate: Option<f64>,
    pub warnings: Vec<String>,
}

impl IntegralValue {
    fn exact(value: f64) -> Self {
        Self { value, method: Method::ClosedForm, truncation_n: None, convergence: None, error_estimate: None, warnings: vec![] }
    }

    fn quadrature(value: f64, error: f64, warning: Option<String>) -> Self {
        Self {
            value,
            method: Method::Oracle,
            truncation_n: None,
            convergence: None,
            error_estimate: Some(error),
            warnings: warning.into_iter().collect(),
        }
    }

    fn series(history: Vec<f64>, n: usize, tol: f64, mut warnings: Vec<String>) -> Self {
        let value = *history.last().unwrap_or(&0.0);
        let change = if history.len() >= 2 { (history[history.len() - 1] - history[history.len() - 2]).abs() } else { 0.0 };
        if change > tol * value.abs().max(f64::MIN_POSITIVE) {
            warnings.push(format!("series not converged at N = {n}: last change {change:.3e} (relative tolerance {tol:.1e})"));
        }
        Self {
            value,
            method: Method::SeriesN,
            truncation_n: Some(n),
            convergence: Some(history),
            error_estimate: Some(change),
            warnings,
        }
    }

    pub fn is_converged(&self) -> bool {
        self.warnings.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryTriple {
    pub a: Vec3,
    pub c: Vec3,
    pub g: Vec3,
}

impl GeometryTriple {
    pub fn new(a: Vec3, c: Vec3, g: Vec3) -> Self {
        Self { a, c, g }
    }

    pub fn r_ca(&self) -> f64 {
        (self.a - self.c).norm()
    }

    pub fn r_ag(&self) -> f64 {
        (self.g - self.a).norm()
    }

    pub fn r_cg(&self) -> f64 {
        (self.g - self.c).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoCenterVariant {
    /// Both orbitals on `a`, kernel on `g`.
    SharedAc,
    /// One orbital on `a`, the other orbital and the kernel on `g`.
    SharedCg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ThreeCenterPath {
    /// Expansion of the orbital product about `a`, contracted with kernel
    /// overlaps between `a` and `g`.
    #[default]
    Eq18,
    /// Expansion of the orbital product about `g`, contracted with the
    /// one-center radial factors of the kernel.
    Eq19,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralConfig {
    pub truncation_n: usize,
    /// Relative change between successive partial sums accepted as converged.
    pub tol: f64,
    pub three_center_path: ThreeCenterPath,
    pub alpha: AlphaTag,
    pub arrangement: Arrangement,
    pub spheroidal: SpheroidalConfig,
    pub oracle: OracleConfig,
}

impl Default for IntegralConfig {
    fn default() -> Self {
        Self {
            truncation_n: 12,
            tol: 1e-4,
            three_center_path: ThreeCenterPath::default(),
            alpha: AlphaTag::default(),
            arrangement: Arrangement::default(),
            spheroidal: SpheroidalConfig::default(),
            oracle: OracleConfig::default(),
        }
    }
}

fn coincident(x: &Vec3, y: &Vec3) -> bool {
    (x - y).norm() <= COINCIDENCE
}

/// The orbital `χ_q*(ξ)` built from a kernel index (`n* = μ*`, `l = ν`,
/// `m = σ`, `ζ = ξ`), centered at `g`.
pub fn kernel_orbital(q: &KernelIndex, xi: f64, g: &Vec3) -> Result<StoParams> {
    if !(xi > 0.0) {
        return Err(Error::Domain(format!("kernel orbital needs xi > 0 to be normalizable, got {xi}")));
    }
    StoParams::new(OrbitalIndex::new(q.mu_star, q.nu, q.sigma)?, xi, *g)
}

/// `Γ(2μ*+1)^{1/2} / (2ξ)^{μ*+1/2}`, the factor turning overlaps with the
/// kernel orbital into integrals with the bare kernel radial factor.
pub fn modified_overlap_prefactor(mu_star: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::Domain(format!("modified overlap needs xi > 0, got {xi}")));
    }
    if 2.0 * mu_star + 1.0 <= 0.0 {
        return Err(Error::Divergent(format!("Gamma(2 mu* + 1) undefined for mu* = {mu_star}")));
    }
    Ok(1.0 / sto_norm(mu_star, xi))
}

/// Convert `Λ` (bare kernel) to `I = sqrt(4π) ∫ χ χ χ_q(ξ) dv`.
pub fn lambda_to_normalized(lambda: f64, q: &KernelIndex, xi: f64) -> Result<f64> {
    Ok(lambda * ((2 * q.nu + 1) as f64).sqrt() / modified_overlap_prefactor(q.mu_star, xi)?)
}

/// `⟨χ_p | χ_q⟩` for orbitals on the same or different centers.
pub fn overlap_nisto(p: &StoParams, q: &StoParams, cfg: &SpheroidalConfig) -> Result<IntegralValue> {
    if coincident(&p.center, &q.center) {
        let v = if p.index.l == q.index.l && p.index.m == q.index.m {
            radial_overlap(p.index.n_star, p.zeta, q.index.n_star, q.zeta)
        } else {
            0.0
        };
        return Ok(IntegralValue::exact(v));
    }
    let r = crate::oracle::overlap_two_center_spheroidal(p, q, cfg)?;
    Ok(IntegralValue::quadrature(r.value, r.error_estimate, r.warning))
}

/// Modified overlap `∫ χ_p(r - a) r_g^{μ*-1} e^{-ξ r_g} S_νσ(r_g) dv`
/// computed as `Γ(2μ*+1)^{1/2} / (2ξ)^{μ*+1/2} · ⟨χ_p | χ_q*(ξ)⟩`.
pub fn modified_overlap(p: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3, cfg: &SpheroidalConfig) -> Result<IntegralValue> {
    let pre = modified_overlap_prefactor(q.mu_star, xi)?;
    let s = overlap_nisto(p, &kernel_orbital(q, xi, g)?, cfg)?;
    Ok(IntegralValue { value: pre * s.value, error_estimate: s.error_estimate.map(|e| pre * e), ..s })
}

/// `∫ χ_p(r - a) r_g^{μ*-1} e^{-ξ r_g} S_νσ(r_g) dv` for any `ξ >= 0`.
pub fn kernel_overlap(p: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3, cfg: &SpheroidalConfig) -> Result<IntegralValue> {
    if coincident(&p.center, g) {
        if p.index.l != q.nu || p.index.m != q.sigma {
            return Ok(IntegralValue::exact(0.0));
        }
        return Ok(IntegralValue::exact(radial_kernel_moment(p.index.n_star, p.zeta, q.mu_star, xi)?));
    }
    let bare = KernelIndex { mu_star: q.mu_star, nu: q.nu, sigma: q.sigma };
    let scale = 1.0 / bare.prefactor();
    let r = integrate_two_center(
        &p.center,
        g,
        p.zeta + xi,
        (p.index.l + q.nu) as usize,
        |x| p.value(x) * kernel_value(&bare, xi, &(x - g)) * scale,
        cfg,
    )?;
    Ok(IntegralValue::quadrature(r.value, r.error_estimate, r.warning))
}

/// `∫ R_n(z, r) r^{μ*+1} e^{-ξ r} dr = N(n, z) Γ(n+μ*+1) / (z+ξ)^{n+μ*+1}`,
/// equivalently `Γ(n+μ*+1)/sqrt(Γ(2n+1)) (2z/(z+ξ))^{n+1/2} / (z+ξ)^{μ*+1/2}`.
pub fn radial_kernel_moment(n: f64, z: f64, mu_star: f64, xi: f64) -> Result<f64> {
    let s = n + mu_star + 1.0;
    if s <= 0.0 {
        return Err(Error::Divergent(format!("radial moment diverges: n + mu* + 1 = {s} <= 0")));
    }
    let y = z + xi;
    Ok((lgam(s) - 0.5 * lgam(2.0 * n + 1.0) + (n + 0.5) * (2.0 * z / y).ln() - (mu_star + 0.5) * y.ln()).exp())
}

/// Same moment for the orthonormal radial functions `φ_k` at scale `z`,
/// `k < nk`, by quadrature (the Slater change of basis cancels badly for
/// large `nk`).
pub fn laguerre_kernel_moments(l: usize, nk: usize, z: f64, mu_star: f64, xi: f64) -> Result<Vec<f64>> {
    if (l as f64) + mu_star + 2.0 <= 0.0 {
        return Err(Error::Divergent(format!("radial moment diverges for l = {l}, mu* = {mu_star}")));
    }
    let basis = LaguerreBasis::new(z, l, nk);
    let rule = radial_rule(200 + 8 * nk, (nk as f64 / 4.0).max(1.0) / (z + xi), 3);
    let mut out = vec![0.0; nk];
    let mut buf = vec![0.0; nk];
    for &(r, w) in &rule {
        basis.eval_into(r, &mut buf);
        let f = w * r.powf(mu_star + 1.0) * (-xi * r).exp();
        for k in 0..nk {
            out[k] += f * buf[k];
        }
    }
    Ok(out)
}

/// One-center `Λ` in closed form:
/// `G/sqrt(2ν+1) · Γ(n1*+n1'*+μ*) / sqrt(Γ(2n1*+1) Γ(2n1'*+1)) · x1^{n1*+1/2} x1'^{n1'*+1/2} / y^{μ*-1}`
/// with `y = ζ1 + ζ1' + ξ`, `x = 2ζ/y` and `G` the real Gaunt coefficient.
pub fn one_center_integral(p1: &OrbitalIndex, zeta1: f64, p2: &OrbitalIndex, zeta2: f64, q: &KernelIndex, xi: f64) -> Result<IntegralValue> {
    let s = p1.n_star + p2.n_star + q.mu_star;
    if s <= 0.0 {
        return Err(Error::Divergent(format!("one-center integral diverges: n1* + n1'* + mu* = {s} <= 0")));
    }
    let g = gaunt_real(p1.l, p1.m, p2.l, p2.m, q.nu, q.sigma);
    if g == 0.0 {
        return Ok(IntegralValue::exact(0.0));
    }
    let y = zeta1 + zeta2 + xi;
    let (n1, n2) = (p1.n_star, p2.n_star);
    let log = lgam(s) - 0.5 * lgam(2.0 * n1 + 1.0) - 0.5 * lgam(2.0 * n2 + 1.0)
        + (n1 + 0.5) * (2.0 * zeta1 / y).ln()
        + (n2 + 0.5) * (2.0 * zeta2 / y).ln()
        - (q.mu_star - 1.0) * y.ln();
    Ok(IntegralValue::exact(g / ((2 * q.nu + 1) as f64).sqrt() * log.exp()))
}

/// Brute-force `Λ` on a fuzzy-cell grid.
pub fn oracle_lambda(p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3, cfg: &OracleConfig) -> Result<IntegralValue> {
    let mut cfg = *cfg;
    cfg.radial_scale = 1.0 / p1.zeta.max(p2.zeta);
    let r = integrate_3d(|x| p1.value(x) * p2.value(x) * kernel_value(q, xi, &(x - g)), &[p1.center, p2.center, *g], &cfg)?;
    Ok(IntegralValue::quadrature(r.value, r.error_estimate, r.warning))
}

fn series_history<F>(n: usize, n_min: usize, partial: F) -> Vec<f64>
where
    F: Fn(usize) -> f64,
{
    (n_min.max(1)..=n).map(partial).collect()
}

/// Cache of expansion tables keyed by quantized geometry and parameters.
#[derive(Debug, Default)]
pub struct TableCache {
    tables: DashMap<Vec<i64>, Arc<ExpansionTable>>,
}

fn quantize(x: f64) -> i64 {
    (x * 1e12).round() as i64
}

fn sto_key(p: &StoParams, key: &mut Vec<i64>) {
    key.extend([quantize(p.index.n_star), p.index.l as i64, p.index.m as i64, quantize(p.zeta)]);
    key.extend(p.center.iter().map(|v| quantize(*v)));
}

impl TableCache {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Table for the product about `center` with the given channels.
    #[allow(clippy::too_many_arguments)]
    pub fn get(
        &self,
        p1: &StoParams,
        p2: &StoParams,
        center: &Vec3,
        n: usize,
        channels: &Channels,
        alpha: AlphaTag,
        arrangement: Arrangement,
    ) -> Result<Arc<ExpansionTable>> {
        let mut key = Vec::with_capacity(24);
        sto_key(p1, &mut key);
        sto_key(p2, &mut key);
        key.extend(center.iter().map(|v| quantize(*v)));
        key.push(n as i64);
        match channels {
            Channels::All => key.push(-1),
            Channels::Only(list) => {
                for (l, m) in list {
                    key.extend([*l as i64, *m as i64]);
                }
            }
        }
        if let Some(t) = self.tables.get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(expand_product_density_with(p1, p2, center, n, channels, alpha, arrangement)?);
        self.tables.insert(key, t.clone());
        Ok(t)
    }
}

/// Integral engine: routes each `Λ^{acg}` to the appropriate method and
/// reuses expansion tables across calls.
#[derive(Debug, Default)]
pub struct IntegralEngine {
    pub config: IntegralConfig,
    pub tables: TableCache,
}

impl IntegralEngine {
    pub fn new(config: IntegralConfig) -> Self {
        Self { config, tables: TableCache::default() }
    }

    /// `Λ^{acg}` for orbitals `p1` (at `a`), `p2` (at `c`) and kernel at `g`.
    pub fn lambda(&self, p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3) -> Result<IntegralValue> {
        let (a, c) = (p1.center, p2.center);
        let ac = coincident(&a, &c);
        match (ac, coincident(&a, g), coincident(&c, g)) {
            (true, true, _) => one_center_integral(&p1.index, p1.zeta, &p2.index, p2.zeta, q, xi),
            (true, false, _) => self.two_center(TwoCenterVariant::SharedAc, p1, p2, q, xi, g),
            (false, true, _) => self.two_center(TwoCenterVariant::SharedCg, p2, p1, q, xi, g),
            (false, false, true) => self.two_center(TwoCenterVariant::SharedCg, p1, p2, q, xi, g),
            (false, false, false) => self.three_center(p1, p2, q, xi, g, self.config.three_center_path),
        }
    }

    /// Two-center `Λ`. For [`TwoCenterVariant::SharedAc`] both orbitals sit on
    /// one center and the kernel on `g`; for [`TwoCenterVariant::SharedCg`]
    /// `p2` and the kernel sit on `g` while `p1` is elsewhere.
    pub fn two_center(
        &self,
        variant: TwoCenterVariant,
        p1: &StoParams,
        p2: &StoParams,
        q: &KernelIndex,
        xi: f64,
        g: &Vec3,
    ) -> Result<IntegralValue> {
        match variant {
            TwoCenterVariant::SharedAc => {
                if !coincident(&p1.center, &p2.center) {
                    return Err(Error::Domain("shared-center variant needs both orbitals on one center".into()));
                }
                if coincident(&p1.center, g) {
                    return one_center_integral(&p1.index, p1.zeta, &p2.index, p2.zeta, q, xi);
                }
                self.shared_ac(p1, p2, q, xi, g)
            }
            TwoCenterVariant::SharedCg => {
                if !coincident(&p2.center, g) || coincident(&p1.center, g) {
                    return Err(Error::Domain(
                        "orbital/kernel shared-center variant needs p2 on the kernel center and p1 elsewhere".into(),
                    ));
                }
                self.about_kernel_center(p1, p2, q, xi, g)
            }
        }
    }

    fn shared_ac(&self, p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3) -> Result<IntegralValue> {
        let density = expand_one_center_product(&p1.index, p1.zeta, &p2.index, p2.zeta);
        let a = p1.center;
        let lmax = density.terms.iter().map(|t| t.0.l).max().unwrap_or(0);
        let (v, summary) = integrate_two_center_batch(
            &a,
            g,
            density.z + xi,
            (lmax + q.nu) as usize,
            1,
            |x, out| out[0] = density.value(&(x - a)) * kernel_value(q, xi, &(x - g)),
            &self.config.spheroidal,
        )?;
        Ok(IntegralValue::quadrature(v[0], summary.error_estimate, summary.warning))
    }

    /// Expansion about the kernel center `g`; only the `(ν, σ)` channel
    /// contributes.
    fn about_kernel_center(&self, p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3) -> Result<IntegralValue> {
        let n = self.config.truncation_n;
        if q.nu as usize >= n {
            return Ok(IntegralValue::series(vec![0.0], n, self.config.tol, vec![]));
        }
        let table = self.tables.get(
            p1,
            p2,
            g,
            n,
            &Channels::Only(vec![(q.nu, q.sigma)]),
            self.config.alpha,
            self.config.arrangement,
        )?;
        let ch = table.channel(q.nu, q.sigma).ok_or_else(|| Error::Domain("missing expansion channel".into()))?;
        let moments = laguerre_kernel_moments(q.nu as usize, ch.coefficients.len(), table.z, q.mu_star, xi)?;
        let pre = q.prefactor();
        let l = q.nu as usize;
        let history = series_history(n, l + 1, |nn| {
            pre * ch.coefficients[..nn - l].iter().zip(&moments).map(|(c, m)| c * m).sum::<f64>()
        });
        Ok(IntegralValue::series(history, n, self.config.tol, table.warnings.clone()))
    }

    /// Expansion about `a`, contracted with kernel overlaps of the expansion
    /// functions against the kernel at `g`.
    fn about_first_center(&self, p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3) -> Result<IntegralValue> {
        let n = self.config.truncation_n;
        let a = p1.center;
        let table = self.tables.get(p1, p2, &a, n, &Channels::All, self.config.alpha, self.config.arrangement)?;
        let z = table.z;
        let lmax = n - 1;
        let mut offsets = Vec::with_capacity(table.channels.len());
        let mut total = 0;
        for ch in &table.channels {
            offsets.push(total);
            total += ch.coefficients.len();
        }
        let bases: Vec<LaguerreBasis> = (0..n).map(|l| LaguerreBasis::new(z, l, n - l)).collect();
        let chans: Vec<(usize, i64)> = table.channels.iter().map(|c| (c.l as usize, c.m as i64)).collect();
        let qi = *q;
        let mut cfg = self.config.spheroidal;
        cfg.n_lambda += 4 * n;
        cfg.n_mu += 2 * n;
        // quadrature noise far below the series tolerance is not worth a warning
        cfg.target_tol = cfg.target_tol.max(1e-2 * self.config.tol);
        let (overlaps, summary) = integrate_two_center_batch(
            &a,
            g,
            z + xi,
            lmax + q.nu as usize,
            total,
            |x, out| {
                let d = x - a;
                let r = d.norm();
                let h = kernel_value(&qi, xi, &(x - g));
                let mut harm = RealHarmonics::new(lmax);
                let s = harm.eval(&d);
                let mut radial = vec![vec![0.0; n]; n];
                for (l, b) in bases.iter().enumerate() {
                    b.eval_into(r, &mut radial[l][..n - l]);
                }
                for (i, &(l, m)) in chans.iter().enumerate() {
                    let f = h * s[lm_index(l, m)];
                    for k in 0..n - l {
                        out[offsets[i] + k] = f * radial[l][k];
                    }
                }
            },
            &cfg,
        )?;
        let history = series_history(n, 1, |nn| {
            table
                .channels
                .iter()
                .enumerate()
                .filter(|(_, ch)| (ch.l as usize) < nn)
                .map(|(i, ch)| {
                    let kk = nn - ch.l as usize;
                    ch.coefficients[..kk].iter().zip(&overlaps[offsets[i]..offsets[i] + kk]).map(|(c, o)| c * o).sum::<f64>()
                })
                .sum()
        });
        let mut warnings = table.warnings.clone();
        warnings.extend(summary.warning);
        Ok(IntegralValue::series(history, n, self.config.tol, warnings))
    }

    /// Three-center `Λ`; degenerate geometries are routed to the specialized
    /// evaluators.
    pub fn three_center(&self, p1: &StoParams, p2: &StoParams, q: &KernelIndex, xi: f64, g: &Vec3, path: ThreeCenterPath) -> Result<IntegralValue> {
        let (a, c) = (p1.center, p2.center);
        if coincident(&a, &c) || coincident(&a, g) || coincident(&c, g) {
            return self.lambda(p1, p2, q, xi, g);
        }
        match path {
            ThreeCenterPath::Eq18 => self.about_first_center(p1, p2, q, xi, g),
            ThreeCenterPath::Eq19 => self.about_kernel_center(p1, p2, q, xi, g),
        }
    }
}

/// Two-center `Λ` with a fresh engine at truncation `n`.
pub fn two_center_integral(
    variant: TwoCenterVariant,
    p1: &StoParams,
    p2: &StoParams,
    q: &KernelIndex,
    xi: f64,
    g: &Vec3,
    n: usize,
) -> Result<IntegralValue> {
    let engine = IntegralEngine::new(IntegralConfig { truncation_n: n, ..IntegralConfig::default() });
    engine.two_center(variant, p1, p2, q, xi, g)
}

/// Three-center `Λ` with a fresh engine at truncation `n`.
pub fn three_center_integral(
    p1: &StoParams,
    p2: &StoParams,
    q: &KernelIndex,
    xi: f64,
    g: &Vec3,
    n: usize,
    path: ThreeCenterPath,
) -> Result<IntegralValue> {
    let engine = IntegralEngine::new(IntegralConfig { truncation_n: n, ..IntegralConfig::default() });
    engine.three_center(p1, p2, q, xi, g, path)
}
