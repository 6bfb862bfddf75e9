//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stoint::addition::{expand_kernel_two_particle, expand_product_density};
use stoint::basis::{kernel_value, radial_overlap, KernelIndex, StoParams};
use stoint::integrals::{one_center_integral, oracle_lambda, three_center_integral, IntegralConfig, IntegralEngine, ThreeCenterPath};
use stoint::interaction::{density_projection, interaction_energy, u4_electron_electron, InteractionConfig, Scene};
use stoint::math::quadrature::{gauss_legendre, gauss_legendre_on, radial_rule};
use stoint::math::{gamma_real, gaunt_real, sph_harm, HarmonicKind};
use stoint::molecule::{potential_at, MolecularOrbital, Molecule, Nucleus};
use stoint::oracle::{integrate_3d, overlap_two_center_spheroidal, OracleConfig, SpheroidalConfig};
use stoint::Vec3;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn hydrogen(at: Vec3, zeta: f64) -> Molecule {
    Molecule::new(
        "H",
        vec![Nucleus { charge: 1.0, position: at }],
        vec![StoParams::at(1.0, 0, 0, zeta, at).unwrap()],
        vec![0],
        vec![MolecularOrbital { coefficients: vec![1.0], occupancy: 0.5 }],
        HarmonicKind::Real,
        false,
    )
    .unwrap()
}

fn proton(at: Vec3) -> Molecule {
    Molecule::nuclei_only("p", vec![Nucleus { charge: 1.0, position: at }]).unwrap()
}

/// Kernel-table settings for hydrogenic clouds: the table scale matches the
/// decay rate 2ζ of the 1s density.
fn cloud_config() -> InteractionConfig {
    InteractionConfig { n_pair: 24, beta: Some(2.0), ..InteractionConfig::default() }
}

fn criterion_1() -> Outcome {
    // orthonormality on an exact product rule
    let nt = 16;
    let nphi = 32;
    let mut worst: f64 = 0.0;
    let lmax = 6u32;
    let mut funcs: Vec<(u32, i32)> = Vec::new();
    for l in 0..=lmax {
        for m in -(l as i32)..=(l as i32) {
            funcs.push((l, m));
        }
    }
    for kind in [HarmonicKind::Real, HarmonicKind::Complex] {
        let mut vals = vec![Vec::new(); funcs.len()];
        let mut weights = Vec::new();
        for &(ct, wt) in gauss_legendre(nt).iter() {
            for k in 0..nphi {
                let phi = 2.0 * PI * k as f64 / nphi as f64;
                weights.push(wt * 2.0 * PI / nphi as f64);
                for (i, &(l, m)) in funcs.iter().enumerate() {
                    vals[i].push(sph_harm(l, m, ct.acos(), phi, kind).unwrap());
                }
            }
        }
        for i in 0..funcs.len() {
            for j in i..funcs.len() {
                let s: num_complex::Complex64 = (0..weights.len()).map(|p| vals[i][p].conj() * vals[j][p] * weights[p]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut gamma_worst: f64 = 0.0;
    for _ in 0..200 {
        let x: f64 = rng.random_range(0.05..30.0);
        let lhs = gamma_real(x + 1.0).unwrap();
        let rhs = x * gamma_real(x).unwrap();
        gamma_worst = gamma_worst.max(((lhs - rhs) / lhs).abs());
    }
    let mut forbidden = 0usize;
    let mut nonzero_forbidden = 0usize;
    for l1 in 0..=4u32 {
        for l2 in 0..=4u32 {
            for nu in 0..=8u32 {
                for m1 in -(l1 as i32)..=(l1 as i32) {
                    for m2 in -(l2 as i32)..=(l2 as i32) {
                        for s in -(nu as i32)..=(nu as i32) {
                            let triangle = nu >= l1.abs_diff(l2) && nu <= l1 + l2 && (l1 + l2 + nu) % 2 == 0;
                            let (a, b, c) = (m1.abs(), m2.abs(), s.abs());
                            let mrule = c == a + b || c == (a - b).abs();
                            let negatives = [m1, m2, s].iter().filter(|&&m| m < 0).count();
                            if !(triangle && mrule && negatives % 2 == 0) {
                                forbidden += 1;
                                if gaunt_real(l1, m1, l2, m2, nu, s) != 0.0 {
                                    nonzero_forbidden += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let ok = worst <= 1e-12 && gamma_worst <= 1e-12 && nonzero_forbidden == 0;
    outcome(
        ok,
        format!(
            "harmonic orthonormality error {worst:.1e} (l <= 6, real and complex); Gamma recurrence error {gamma_worst:.1e}; {nonzero_forbidden} of {forbidden} forbidden Gaunt coefficients nonzero"
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n1: f64 = rng.random_range(0.55..5.0);
        let n2: f64 = rng.random_range(0.55..5.0);
        let z1: f64 = rng.random_range(0.3..3.0);
        let z2: f64 = rng.random_range(0.3..3.0);
        let closed = radial_overlap(n1, z1, n2, z2);
        let norm = |n: f64, z: f64| (2.0 * z).powf(n + 0.5) / gamma_real(2.0 * n + 1.0).unwrap().sqrt();
        let (c1, c2) = (norm(n1, z1), norm(n2, z2));
        let quad: f64 = radial_rule(600, (n1 + n2) / (z1 + z2), 3)
            .iter()
            .map(|&(r, w)| w * c1 * c2 * r.powf(n1 + n2) * (-(z1 + z2) * r).exp())
            .sum();
        worst = worst.max(((closed - quad) / quad).abs());
    }
    outcome(worst <= 1e-10, format!("50 random radial overlaps, worst relative error {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n: f64 = rng.random_range(0.6..4.5);
        let l: u32 = rng.random_range(0..=3);
        let m: i32 = rng.random_range(-(l as i32)..=(l as i32));
        let zeta: f64 = rng.random_range(0.4..2.5);
        let c = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let p = StoParams::at(n, l, m, zeta, c).unwrap();
        let cfg = OracleConfig { radial_scale: 1.0 / zeta, ..OracleConfig::default() };
        let v = integrate_3d(|x| p.value(x).powi(2), &[c], &cfg).unwrap().value;
        worst = worst.max((v - 1.0).abs());
    }
    outcome(worst <= 1e-8, format!("20 random noninteger orbitals, worst |<chi|chi> - 1| = {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 20 {
        let n1: f64 = rng.random_range(0.7..3.5);
        let n2: f64 = rng.random_range(0.7..3.5);
        let l1: u32 = rng.random_range(0..=2);
        let l2: u32 = rng.random_range(0..=2);
        let m1: i32 = rng.random_range(-(l1 as i32)..=(l1 as i32));
        let m2: i32 = rng.random_range(-(l2 as i32)..=(l2 as i32));
        let nu: u32 = rng.random_range(0..=(l1 + l2));
        let sigma: i32 = rng.random_range(-(nu as i32)..=(nu as i32));
        if gaunt_real(l1, m1, l2, m2, nu, sigma) == 0.0 {
            continue;
        }
        let mu: f64 = rng.random_range(-0.4..2.0);
        let xi: f64 = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.1..2.0) };
        let (z1, z2): (f64, f64) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
        let c = Vec3::new(0.2, -0.1, 0.3);
        let p1 = StoParams::at(n1, l1, m1, z1, c).unwrap();
        let p2 = StoParams::at(n2, l2, m2, z2, c).unwrap();
        let q = KernelIndex::new(mu, nu, sigma).unwrap();
        let closed = one_center_integral(&p1.index, z1, &p2.index, z2, &q, xi).unwrap().value;
        let cfg = OracleConfig { radial_scale: 1.0 / (z1 + z2), ..OracleConfig::default() };
        let oracle = integrate_3d(|x| p1.value(x) * p2.value(x) * kernel_value(&q, xi, &(x - c)), &[c], &cfg).unwrap().value;
        worst = worst.max(((closed - oracle) / oracle).abs());
        done += 1;
    }
    let s = StoParams::at(1.0, 0, 0, 1.0, Vec3::zeros()).unwrap();
    let anchor = one_center_integral(&s.index, 1.0, &s.index, 1.0, &KernelIndex::COULOMB, 0.0).unwrap().value;
    let ok = worst <= 1e-6 && (anchor - 1.0).abs() <= 1e-8;
    outcome(ok, format!("20 random one-center integrals, worst relative error {worst:.1e}; <1s|1/r|1s> = {anchor:.12}"))
}

fn criterion_5() -> Outcome {
    let combos: [((f64, u32, i32, f64), (f64, u32, i32, f64)); 10] = [
        ((1.0, 0, 0, 1.0), (1.0, 0, 0, 1.0)),
        ((1.5, 0, 0, 0.8), (2.3, 0, 0, 1.2)),
        ((2.0, 1, 0, 1.1), (1.0, 0, 0, 0.9)),
        ((2.0, 1, 1, 1.0), (2.0, 1, 1, 1.3)),
        ((2.4, 1, -1, 0.7), (1.7, 1, -1, 1.0)),
        ((3.0, 2, 0, 1.2), (2.0, 1, 0, 0.8)),
        ((3.2, 2, -2, 0.9), (2.6, 2, 2, 1.1)),
        ((0.8, 0, 0, 1.4), (2.2, 1, 1, 0.6)),
        ((2.7, 2, 1, 1.0), (1.9, 1, 1, 1.0)),
        ((1.3, 1, 0, 0.6), (3.5, 2, -1, 1.5)),
    ];
    let dir = Vec3::new(0.3, -0.5, 0.8).normalize();
    let a = Vec3::new(0.1, 0.2, -0.3);
    let mut worst: f64 = 0.0;
    for r in [0.5, 1.0, 2.0, 5.0] {
        for &((n1, l1, m1, z1), (n2, l2, m2, z2)) in &combos {
            let b = a + dir * r;
            let p = StoParams::at(n1, l1, m1, z1, a).unwrap();
            let q = StoParams::at(n2, l2, m2, z2, b).unwrap();
            let s = overlap_two_center_spheroidal(&p, &q, &SpheroidalConfig::default()).unwrap().value;
            let cfg = OracleConfig { radial_scale: 1.0 / z1.max(z2), max_levels: 6, ..OracleConfig::default() };
            let o = integrate_3d(|x| p.value(x) * q.value(x), &[a, b], &cfg).unwrap().value;
            worst = worst.max((s - o).abs());
        }
    }
    outcome(worst <= 1e-9, format!("40 two-center overlaps (R in 0.5, 1, 2, 5), worst |spheroidal - 3D| = {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let a = Vec3::zeros();
    let c = Vec3::new(2.0, 0.0, 0.0);
    let p1 = StoParams::at(1.0, 0, 0, 1.0, a).unwrap();
    let p2 = StoParams::at(1.0, 0, 0, 1.0, c).unwrap();
    let table = expand_product_density(&p1, &p2, &(0.5 * (a + c)), 16).unwrap();
    let hist = table.residual_history();
    let monotone = hist.windows(2).filter(|w| w[0].0 >= 2).all(|w| w[1].1 <= w[0].1);
    let g = Vec3::new(1.0, 3f64.sqrt(), 0.0);
    let q = KernelIndex::COULOMB;
    let oracle = oracle_lambda(&p1, &p2, &q, 0.0, &g, &OracleConfig::default()).unwrap().value;
    let e18 = three_center_integral(&p1, &p2, &q, 0.0, &g, 16, ThreeCenterPath::Eq18).unwrap().value;
    let e19 = three_center_integral(&p1, &p2, &q, 0.0, &g, 16, ThreeCenterPath::Eq19).unwrap().value;
    let (d18, d19) = ((e18 - oracle).abs(), (e19 - oracle).abs());
    let ok = monotone && d18 <= 1e-4 && d19 <= 1e-4;
    outcome(
        ok,
        format!(
            "residual nonincreasing over N = 2..16: {monotone}; three-center at N = 16: |eq18 - oracle| = {d18:.1e}, |eq19 - oracle| = {d19:.1e} (oracle {oracle:.10})"
        ),
    )
}

/// `∬ ρ(r1) ρ(r2) / max(r1, r2)` for the unit 1s(ζ = 1) density by nested
/// radial quadrature.
fn same_center_reference() -> f64 {
    let shell = |r: f64| 4.0 * r * r * (-2.0 * r).exp();
    let outer = gauss_legendre_on(400, 0.0, 40.0);
    let mut total = 0.0;
    for &(r1, w1) in &outer {
        let inner: f64 = gauss_legendre_on(200, 0.0, r1).iter().map(|&(r2, w2)| w2 * shell(r2)).sum();
        total += 2.0 * w1 * shell(r1) * inner / r1;
    }
    total
}

/// Potential of the unit 1s(ζ = 1) cloud at distance `s`.
fn cloud_potential(s: f64) -> f64 {
    1.0 / s - (-2.0 * s).exp() * (1.0 + 1.0 / s)
}

/// Repulsion of two unit 1s(ζ = 1) clouds at separation `r` by 2D quadrature
/// of one cloud in the potential of the other.
fn cloud_repulsion_quadrature(r: f64) -> f64 {
    let radial = gauss_legendre_on(300, 0.0, 30.0);
    let angular = gauss_legendre(96);
    let mut total = 0.0;
    for &(x, wx) in &radial {
        let rho = (-2.0 * x).exp() / PI;
        for &(c, wc) in angular.iter() {
            let s = (x * x + r * r - 2.0 * x * r * c).max(1e-300).sqrt();
            total += wx * wc * 2.0 * PI * x * x * rho * cloud_potential(s);
        }
    }
    total
}

fn criterion_7() -> Outcome {
    let reference = same_center_reference();
    let h = hydrogen(Vec3::zeros(), 1.0);
    let table = expand_kernel_two_particle(&KernelIndex::COULOMB, 0.0, &Vec3::zeros(), 2.0, 12).unwrap();
    let proj = density_projection(&h, &table).unwrap();
    let same = table.contract(&proj, &proj, 12);
    let r = 10.0;
    let s = Scene::new(hydrogen(Vec3::zeros(), 1.0), hydrogen(Vec3::new(0.0, 0.0, r), 1.0), KernelIndex::COULOMB, 0.0).unwrap();
    let far = u4_electron_electron(&s, &cloud_config()).unwrap().value;
    let ok = (same - reference).abs() <= 1e-3 && (reference - 0.625).abs() < 1e-9 && (far - 1.0 / r).abs() <= 1e-3;
    outcome(
        ok,
        format!(
            "same-center repulsion {same:.6} vs quadrature reference {reference:.10}; separated clouds at R = 10: {far:.6} vs 1/R (|diff| {:.1e})",
            (far - 0.1).abs()
        ),
    )
}

fn rotation(axis: Vec3, angle: f64) -> nalgebra::Matrix3<f64> {
    *nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle).matrix()
}

fn criterion_8() -> Outcome {
    let cfg = cloud_config();
    let q = KernelIndex::COULOMB;
    let r: f64 = 2.0;
    let bare = Scene::new(proton(Vec3::zeros()), proton(Vec3::new(0.0, 0.0, 2.5)), q, 0.0).unwrap();
    let bare_u = interaction_energy(&bare, &cfg).unwrap().total;
    let bare_ok = (bare_u - 1.0 / 2.5).abs() <= 1e-12;

    let a = Vec3::new(0.1, -0.2, 0.3);
    let b = a + Vec3::new(1.0, 2.0, 2.0) / 3.0 * r;
    let scene = Scene::new(hydrogen(a, 1.0), hydrogen(b, 1.0), q, 0.0).unwrap();
    let base = interaction_energy(&scene, &cfg).unwrap();
    let swapped = interaction_energy(&scene.swapped(), &cfg).unwrap();
    let moved = interaction_energy(&scene.transformed(&nalgebra::Matrix3::identity(), &Vec3::new(1.3, -0.7, 2.1)).unwrap(), &cfg).unwrap();
    let turned = interaction_energy(&scene.transformed(&rotation(Vec3::new(0.2, 1.0, -0.4), 1.1), &Vec3::zeros()).unwrap(), &cfg).unwrap();
    let d_swap = (base.total - swapped.total).abs();
    let d_move = (base.total - moved.total).abs();
    let d_turn = (base.total - turned.total).abs();

    let j = cloud_repulsion_quadrature(r);
    let reference = 1.0 / r - 2.0 * cloud_potential(r) + j;
    let d_ref = (base.total - reference).abs();

    let far = Scene::new(hydrogen(Vec3::zeros(), 1.0), hydrogen(Vec3::new(0.0, 0.0, 10.0), 1.0), q, 0.0).unwrap();
    let far_u = interaction_energy(&far, &cfg).unwrap().total;

    let ok = bare_ok && d_swap <= 1e-6 && d_move <= 1e-6 && d_turn <= 1e-6 && far_u.abs() <= 1e-3 && d_ref <= 1e-3;
    outcome(
        ok,
        format!(
            "bare nuclei U - 1/R = {:.1e}; exchange {d_swap:.1e}, translation {d_move:.1e}, rotation {d_turn:.1e}; H..H at R = 10: |U| = {:.1e}; at R = 2: U = {:.6} vs reference {reference:.6} (|diff| {d_ref:.1e})",
            bare_u - 0.4,
            far_u.abs(),
            base.total
        ),
    )
}

fn criterion_9() -> Outcome {
    let engine = IntegralEngine::new(IntegralConfig { truncation_n: 10, ..IntegralConfig::default() });
    let o = Vec3::zeros();
    let s1 = |c: Vec3, z: f64| StoParams::at(1.0, 0, 0, z, c).unwrap();
    let p2 = StoParams::at(2.3, 1, 0, 0.9, o).unwrap();
    let c = Vec3::new(0.0, 0.0, 1.6);
    let g = Vec3::new(1.2, 0.3, 0.8);
    let coul = KernelIndex::COULOMB;
    let k1 = KernelIndex::new(0.5, 1, 0).unwrap();
    let cases: Vec<Box<dyn Fn(f64) -> f64>> = vec![
        Box::new(|xi| engine.lambda(&s1(o, 1.0), &s1(o, 1.0), &coul, xi, &o).unwrap().value),
        Box::new(|xi| engine.lambda(&p2, &p2, &coul, xi, &o).unwrap().value),
        Box::new(|xi| engine.lambda(&s1(o, 1.0), &p2, &k1, xi, &g).unwrap().value),
        Box::new(|xi| engine.lambda(&s1(o, 1.0), &s1(o, 1.0), &coul, xi, &g).unwrap().value),
        Box::new(|xi| engine.lambda(&s1(o, 1.2), &s1(g, 0.8), &coul, xi, &g).unwrap().value),
        Box::new(|xi| engine.lambda(&s1(o, 1.0), &s1(c, 1.0), &coul, xi, &g).unwrap().value),
        Box::new(|xi| engine.three_center(&s1(o, 1.0), &s1(c, 1.0), &coul, xi, &g, ThreeCenterPath::Eq19).unwrap().value),
        Box::new(|xi| potential_at(&hydrogen(o, 1.0), &g, &coul, xi, &engine).unwrap().total),
    ];
    let mut worst: f64 = 0.0;
    for f in &cases {
        let (a, b) = (f(0.0), f(1e-6));
        worst = worst.max(((a - b) / a).abs());
    }
    outcome(worst <= 1e-4, format!("{} regression integrals, worst relative change from xi = 0 to 1e-6: {worst:.1e}", cases.len()))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let h = |z: f64| {
        format!(
            r#"{{"name": "H", "nuclei": [{{"Z": 1.0, "xyz": [0.0, 0.0, {z}]}}], "basis": [{{"center_idx": 0, "n_star": 1.0, "l": 0, "m": 0, "zeta": 1.0}}], "mos": [{{"coeffs": [1.0], "occupancy": 0.5}}], "harmonics": "real"}}"#
        )
    };
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, h(0.0)).unwrap();
    std::fs::write(&b, h(3.0)).unwrap();
    let run = |out: &str| {
        let path = dir.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_stoint"))
            .args(["interact", a.to_str().unwrap(), b.to_str().unwrap(), "--kernel", "0,0,0,0", "--n-pair", "10", "--seed", "7", "--allow-warn", "-o"])
            .arg(&path)
            .status()
            .unwrap();
        (status.success(), std::fs::read(&path).unwrap_or_default())
    };
    let (ok1, first) = run("first.json");
    let (ok2, second) = run("second.json");
    let same = ok1 && ok2 && !first.is_empty() && first == second;
    outcome(same, format!("two interact runs: exit ok {ok1}/{ok2}, {} bytes, byte-identical: {}", first.len(), first == second))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "special functions", criterion_1),
        (2, "same-center overlap closed form", criterion_2),
        (3, "orbital normalization", criterion_3),
        (4, "one-center kernel integrals", criterion_4),
        (5, "two-center overlaps", criterion_5),
        (6, "addition-theorem convergence", criterion_6),
        (7, "two-electron factorization", criterion_7),
        (8, "interaction-energy physics", criterion_8),
        (9, "Coulomb limit continuity", criterion_9),
        (10, "determinism", criterion_10),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = std::time::Instant::now();
        let o = f();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("{status} criterion {id} ({name}): {} [{:.1}s]", o.detail, start.elapsed().as_secs_f64());
        if !o.ok {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
