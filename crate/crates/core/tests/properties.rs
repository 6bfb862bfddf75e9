use approx::assert_relative_eq;
use proptest::prelude::*;

use stoint::addition::{expand_kernel_two_particle, expand_product_density};
use stoint::basis::{radial_overlap, KernelIndex, StoParams};
use stoint::integrals::{one_center_integral, overlap_nisto, IntegralConfig, IntegralEngine};
use stoint::math::gaunt_real;
use stoint::oracle::SpheroidalConfig;
use stoint::Vec3;

fn unit(theta: f64, phi: f64) -> Vec3 {
    Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn p_shell_overlap_norm_is_rotation_invariant(
        r in 0.3f64..4.0, t1 in 0.0f64..3.1, f1 in 0.0f64..6.2, t2 in 0.0f64..3.1, f2 in 0.0f64..6.2,
        zp in 0.5f64..2.0, zs in 0.5f64..2.0,
    ) {
        let cfg = SpheroidalConfig::default();
        let shell_norm = |dir: Vec3| -> f64 {
            let s = StoParams::at(1.0, 0, 0, zs, dir * r).unwrap();
            (-1..=1)
                .map(|m| overlap_nisto(&StoParams::at(2.0, 1, m, zp, Vec3::zeros()).unwrap(), &s, &cfg).unwrap().value.powi(2))
                .sum()
        };
        let (a, b) = (shell_norm(unit(t1, f1)), shell_norm(unit(t2, f2)));
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-12), "{a} vs {b}");
    }

    #[test]
    fn lambda_is_translation_invariant(
        sx in -3.0f64..3.0, sy in -3.0f64..3.0, sz in -3.0f64..3.0, d in 0.5f64..2.5, zeta in 0.7f64..1.5,
    ) {
        let engine = IntegralEngine::new(IntegralConfig::default());
        let shift = Vec3::new(sx, sy, sz);
        let q = KernelIndex::COULOMB;
        let value = |s: Vec3| {
            let p1 = StoParams::at(1.0, 0, 0, zeta, s).unwrap();
            let p2 = StoParams::at(2.0, 1, 0, 1.0, s + Vec3::new(0.0, 0.0, d)).unwrap();
            engine.lambda(&p1, &p2, &q, 0.3, &(s + Vec3::new(0.0, 0.0, d))).unwrap().value
        };
        let (a, b) = (value(Vec3::zeros()), value(shift));
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-9), "{a} vs {b}");
    }

    #[test]
    fn residual_never_increases(
        d in 0.2f64..3.0, z1 in 0.6f64..1.8, z2 in 0.6f64..1.8, gx in -1.0f64..1.0, gz in -1.0f64..1.0,
    ) {
        let p1 = StoParams::at(1.0, 0, 0, z1, Vec3::zeros()).unwrap();
        let p2 = StoParams::at(2.0, 1, 1, z2, Vec3::new(d, 0.0, 0.0)).unwrap();
        let table = expand_product_density(&p1, &p2, &Vec3::new(gx, 0.0, gz), 10).unwrap();
        let hist = table.residual_history();
        for w in hist.windows(2) {
            prop_assert!(w[1].1 <= w[0].1 + 1e-12, "{:?}", hist);
        }
    }

    #[test]
    fn one_center_integral_is_continuous_at_zero_screening(
        n1 in 0.7f64..3.0, n2 in 0.7f64..3.0, z1 in 0.5f64..2.0, z2 in 0.5f64..2.0, mu in -0.3f64..2.0,
    ) {
        let p = StoParams::at(n1, 0, 0, z1, Vec3::zeros()).unwrap();
        let s = StoParams::at(n2, 0, 0, z2, Vec3::zeros()).unwrap();
        let q = KernelIndex::new(mu, 0, 0).unwrap();
        let a = one_center_integral(&p.index, z1, &s.index, z2, &q, 0.0).unwrap().value;
        let b = one_center_integral(&p.index, z1, &s.index, z2, &q, 1e-7).unwrap().value;
        prop_assert!(((a - b) / a).abs() <= 1e-5);
    }

    #[test]
    fn kernel_table_blocks_are_symmetric(beta in 0.5f64..3.0, xi in 0.0f64..1.5) {
        let t = expand_kernel_two_particle(&KernelIndex::COULOMB, xi, &Vec3::zeros(), beta, 6).unwrap();
        for l in 0..6 {
            for i in 0..t.block_dim(l) {
                for j in 0..t.block_dim(l) {
                    let (a, b) = (t.entry(l, i, j), t.entry(l, j, i));
                    prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1e-10));
                }
            }
        }
    }

    #[test]
    fn radial_overlap_is_symmetric_and_bounded(n1 in 0.5f64..5.0, n2 in 0.5f64..5.0, z1 in 0.2f64..4.0, z2 in 0.2f64..4.0) {
        let a = radial_overlap(n1, z1, n2, z2);
        assert_relative_eq!(a, radial_overlap(n2, z2, n1, z1), max_relative = 1e-13);
        prop_assert!(a <= 1.0 + 1e-13 && a > 0.0);
    }

    #[test]
    fn gaunt_is_symmetric_in_its_first_two_pairs(l1 in 0u32..4, l2 in 0u32..4, nu in 0u32..8, m1 in -3i32..=3, m2 in -3i32..=3, s in -7i32..=7) {
        prop_assume!(m1.unsigned_abs() <= l1 && m2.unsigned_abs() <= l2 && s.unsigned_abs() <= nu);
        prop_assert_eq!(gaunt_real(l1, m1, l2, m2, nu, s), gaunt_real(l2, m2, l1, m1, nu, s));
    }
}
