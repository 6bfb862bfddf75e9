//! Molecule files, run configuration and result envelopes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::addition::AlphaTag;
use crate::basis::{KernelIndex, StoParams};
use crate::integrals::{IntegralConfig, ThreeCenterPath};
use crate::interaction::InteractionConfig;
use crate::math::HarmonicKind;
use crate::molecule::{MolecularOrbital, Molecule, Nucleus};
use crate::oracle::OracleConfig;
use crate::{Error, Result, Vec3};

pub const SCHEMA_VERSION: &str = "1";
pub const MAX_TRUNCATION_N: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusEntry {
    #[serde(rename = "Z")]
    pub z: f64,
    pub xyz: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub center_idx: usize,
    pub n_star: f64,
    pub l: u32,
    pub m: i32,
    pub zeta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoEntry {
    pub coeffs: Vec<f64>,
    pub occupancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoleculeFile {
    pub name: String,
    pub nuclei: Vec<NucleusEntry>,
    #[serde(default)]
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub mos: Vec<MoEntry>,
    #[serde(default)]
    pub harmonics: HarmonicKind,
}

impl MoleculeFile {
    /// Structural checks that do not need integrals; messages name the field.
    pub fn validate(&self) -> Result<()> {
        for (i, n) in self.nuclei.iter().enumerate() {
            if !(n.z.is_finite() && n.z > 0.0) {
                return Err(Error::Schema(format!("nuclei[{i}].Z: charge {} must be positive", n.z)));
            }
            if n.xyz.iter().any(|v| !v.is_finite()) {
                return Err(Error::Schema(format!("nuclei[{i}].xyz: coordinates must be finite")));
            }
        }
        for (k, b) in self.basis.iter().enumerate() {
            if b.center_idx >= self.nuclei.len() {
                return Err(Error::Schema(format!(
                    "basis[{k}].center_idx: {} is dangling ({} nuclei)",
                    b.center_idx,
                    self.nuclei.len()
                )));
            }
            if !(b.n_star.is_finite() && b.n_star > 0.0) {
                return Err(Error::Schema(format!("basis[{k}].n_star: {} must be positive", b.n_star)));
            }
            if b.m.unsigned_abs() > b.l {
                return Err(Error::Schema(format!("basis[{k}].m: |{}| exceeds l = {}", b.m, b.l)));
            }
            if !(b.zeta.is_finite() && b.zeta > 0.0) {
                return Err(Error::Schema(format!("basis[{k}].zeta: {} must be positive", b.zeta)));
            }
        }
        for (i, mo) in self.mos.iter().enumerate() {
            if mo.coeffs.len() != self.basis.len() {
                return Err(Error::Schema(format!(
                    "mos[{i}].coeffs: length {} does not match {} basis functions",
                    mo.coeffs.len(),
                    self.basis.len()
                )));
            }
            if !(mo.occupancy > 0.0 && mo.occupancy <= 1.0) {
                return Err(Error::Schema(format!("mos[{i}].occupancy: {} outside (0, 1]", mo.occupancy)));
            }
        }
        Ok(())
    }

    pub fn to_molecule(&self, renormalize: bool) -> Result<Molecule> {
        self.validate()?;
        let nuclei: Vec<Nucleus> = self
            .nuclei
            .iter()
            .map(|n| Nucleus { charge: n.z, position: Vec3::new(n.xyz[0], n.xyz[1], n.xyz[2]) })
            .collect();
        let basis = self
            .basis
            .iter()
            .map(|b| StoParams::at(b.n_star, b.l, b.m, b.zeta, nuclei[b.center_idx].position))
            .collect::<Result<Vec<_>>>()?;
        let centers = self.basis.iter().map(|b| b.center_idx).collect();
        let mos = self.mos.iter().map(|m| MolecularOrbital { coefficients: m.coeffs.clone(), occupancy: m.occupancy }).collect();
        Molecule::new(self.name.clone(), nuclei, basis, centers, mos, self.harmonics, renormalize)
    }

    pub fn from_molecule(mol: &Molecule) -> Self {
        Self {
            name: mol.name.clone(),
            nuclei: mol.nuclei.iter().map(|n| NucleusEntry { z: n.charge, xyz: [n.position.x, n.position.y, n.position.z] }).collect(),
            basis: mol
                .basis
                .iter()
                .zip(&mol.basis_centers)
                .map(|(p, &c)| BasisEntry { center_idx: c, n_star: p.index.n_star, l: p.index.l, m: p.index.m, zeta: p.zeta })
                .collect(),
            mos: mol.orbitals.iter().map(|o| MoEntry { coeffs: o.coefficients.clone(), occupancy: o.occupancy }).collect(),
            harmonics: mol.harmonics,
        }
    }
}

pub fn parse_molecule(text: &str, renormalize: bool) -> Result<Molecule> {
    let file: MoleculeFile = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.to_molecule(renormalize)
}

pub fn load_molecule(path: &Path) -> Result<Molecule> {
    load_molecule_with(path, false)
}

pub fn load_molecule_with(path: &Path, renormalize: bool) -> Result<Molecule> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_molecule(&text, renormalize).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn molecule_to_json(mol: &Molecule) -> Result<String> {
    serde_json::to_string_pretty(&MoleculeFile::from_molecule(mol)).map_err(|e| Error::Io(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub mu_star: f64,
    pub nu: u32,
    pub sigma: i32,
    pub xi: f64,
}

impl KernelSpec {
    pub const COULOMB: KernelSpec = KernelSpec { mu_star: 0.0, nu: 0, sigma: 0, xi: 0.0 };

    pub fn index(&self) -> Result<KernelIndex> {
        KernelIndex::new(self.mu_star, self.nu, self.sigma)
    }

    /// Parse `mu,nu,sigma,xi`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Usage(format!("kernel '{s}' must be mu,nu,sigma,xi")));
        }
        let bad = |what: &str| Error::Usage(format!("kernel '{s}': cannot parse {what}"));
        let spec = KernelSpec {
            mu_star: parts[0].parse().map_err(|_| bad("mu"))?,
            nu: parts[1].parse().map_err(|_| bad("nu"))?,
            sigma: parts[2].parse().map_err(|_| bad("sigma"))?,
            xi: parts[3].parse().map_err(|_| bad("xi"))?,
        };
        spec.index().map_err(|e| Error::Usage(e.to_string()))?;
        if !(spec.xi.is_finite() && spec.xi >= 0.0) {
            return Err(Error::Usage(format!("kernel '{s}': xi must be nonnegative")));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kernel: KernelSpec,
    pub truncation_n: usize,
    pub n_pair: usize,
    pub beta: Option<f64>,
    pub alpha_tag: AlphaTag,
    pub three_center_path: ThreeCenterPath,
    /// Relative tolerance on successive partial sums.
    pub series_tol: f64,
    /// Refinement tolerance of the quadrature oracles.
    pub oracle_tol: f64,
    pub mc_samples: usize,
    pub seed: u64,
    pub origin_override: Option<[f64; 3]>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let ic = IntegralConfig::default();
        let oc = OracleConfig::default();
        Self {
            kernel: KernelSpec::COULOMB,
            truncation_n: ic.truncation_n,
            n_pair: InteractionConfig::default().n_pair,
            beta: None,
            alpha_tag: AlphaTag::default(),
            three_center_path: ThreeCenterPath::default(),
            series_tol: ic.tol,
            oracle_tol: oc.target_tol,
            mc_samples: oc.mc_samples,
            seed: oc.seed,
            origin_override: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.kernel.index()?;
        if !(1..=MAX_TRUNCATION_N).contains(&self.truncation_n) {
            return Err(Error::Validation(format!("truncation_N = {} outside [1, {MAX_TRUNCATION_N}]", self.truncation_n)));
        }
        if !(1..=crate::addition::MAX_TRUNCATION).contains(&self.n_pair) {
            return Err(Error::Validation(format!("n_pair = {} outside [1, {}]", self.n_pair, crate::addition::MAX_TRUNCATION)));
        }
        for (name, v) in [("series_tol", self.series_tol), ("oracle_tol", self.oracle_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Validation(format!("{name} = {v} must be positive")));
            }
        }
        if let Some(b) = self.beta {
            if !(b.is_finite() && b > 0.0) {
                return Err(Error::Validation(format!("beta = {b} must be positive")));
            }
        }
        if !(self.kernel.xi.is_finite() && self.kernel.xi >= 0.0) {
            return Err(Error::Validation(format!("xi = {} must be nonnegative", self.kernel.xi)));
        }
        Ok(())
    }

    pub fn oracle(&self) -> OracleConfig {
        OracleConfig { target_tol: self.oracle_tol, mc_samples: self.mc_samples, seed: self.seed, ..OracleConfig::default() }
    }

    pub fn integrals(&self) -> IntegralConfig {
        IntegralConfig {
            truncation_n: self.truncation_n,
            tol: self.series_tol,
            three_center_path: self.three_center_path,
            alpha: self.alpha_tag,
            oracle: self.oracle(),
            ..IntegralConfig::default()
        }
    }

    pub fn interaction(&self) -> InteractionConfig {
        InteractionConfig { n_pair: self.n_pair, beta: self.beta, integrals: self.integrals(), oracle: self.oracle() }
    }

    pub fn origin(&self) -> Option<Vec3> {
        self.origin_override.map(|o| Vec3::new(o[0], o[1], o[2]))
    }
}

/// JSON result envelope carrying the schema version and resolved config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: String,
    pub command: String,
    pub config: RunConfig,
    pub result: T,
    pub warnings: Vec<String>,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, config: RunConfig, result: T, warnings: Vec<String>) -> Self {
        Self { schema_version: SCHEMA_VERSION.into(), command: command.into(), config, result, warnings }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map(|s| s + "\n").map_err(|e| Error::Io(e.to_string()))
    }
}

/// CSV text with `#` preamble lines carrying the schema version and config.
pub fn csv_table(config: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let cfg = serde_json::to_string(config).map_err(|e| Error::Io(e.to_string()))?;
    let mut out = format!("# schema_version={SCHEMA_VERSION}\n# config={cfg}\n");
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
    Ok(out)
}

/// Parse `x,y,z`.
pub fn parse_vec3(s: &str) -> Result<Vec3> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Usage(format!("'{s}' is not x,y,z")))?;
    if v.len() != 3 || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Usage(format!("'{s}' is not x,y,z")));
    }
    Ok(Vec3::new(v[0], v[1], v[2]))
}
