//! Radial factors of the Legendre expansion of the Yukawa kernel.
//!
//! `e^{-ξ|r1 - r2|} / |r1 - r2| = Σ_l g_l(r1, r2) P_l(cos γ)` with
//! `g_l = ξ (2l+1) i_l(ξ r<) k_l(ξ r>)`, where `i_l`, `k_l` are modified
//! spherical Bessel functions normalized as `i_0 = sinh x / x`,
//! `k_0 = e^{-x} / x`. Evaluated in the factored form
//! `(r</r>)^l / r> · Î(ξr<) K̂(ξr>) e^{-ξ r>}` which tends smoothly to the
//! Coulomb factor `r<^l / r>^{l+1}` as `ξ → 0`.

use super::gamma::lgam;

/// `ln (2l+1)!!`
fn ln_double_factorial_odd(l: usize) -> f64 {
    // (2l+1)!! = (2l+1)! / (2^l l!)
    lgam(2.0 * l as f64 + 2.0) - l as f64 * std::f64::consts::LN_2 - lgam(l as f64 + 1.0)
}

/// `ln Î_l(a)` where `i_l(a) = a^l / (2l+1)!! · Î_l(a)`.
fn ln_i_hat(l: usize, a: f64) -> f64 {
    if a <= 40.0 {
        let lf = l as f64;
        let h = 0.5 * a * a;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            term *= h / (k * (2.0 * lf + 2.0 * k + 1.0));
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            k += 1.0;
        }
        sum.ln()
    } else {
        // scaled i_l via Miller's downward recurrence, normalized to i_0
        let start = l + 30 + a as usize / 2;
        let mut next = 0.0f64;
        let mut cur = 1e-300f64;
        let mut at_l = 0.0;
        for j in (1..=start).rev() {
            let prev = next + (2 * j + 1) as f64 / a * cur;
            next = cur;
            cur = prev;
            if j - 1 == l {
                at_l = cur;
            }
            if cur.abs() > 1e250 {
                cur *= 1e-250;
                next *= 1e-250;
                at_l *= 1e-250;
            }
        }
        // cur ∝ i_0, i_0^s(a) = (1 - e^{-2a}) / (2a)
        let i0s = (1.0 - (-2.0 * a).exp()) / (2.0 * a);
        let ils = at_l / cur * i0s;
        ils.ln() + a + ln_double_factorial_odd(l) - l as f64 * a.ln()
    }
}

/// `K̂_l(b)` where `k_l(b) = e^{-b} (2l-1)!! / b^{l+1} · K̂_l(b)`; a polynomial
/// in `b` with constant term 1.
fn k_hat(l: usize, b: f64) -> f64 {
    // k_l(x) = e^{-x}/x Σ_j (l+j)!/(j!(l-j)!) (2x)^{-j}
    let lf = l as f64;
    let ln_dfact = if l == 0 { 0.0 } else { ln_double_factorial_odd(l - 1) };
    let mut sum = 0.0;
    for j in 0..=l {
        let jf = j as f64;
        let ln_c = lgam(lf + jf + 1.0) - lgam(jf + 1.0) - lgam(lf - jf + 1.0) - jf * std::f64::consts::LN_2
            - ln_dfact;
        let pw = lf - jf;
        sum += if pw == 0.0 { ln_c.exp() } else { (ln_c + pw * b.ln()).exp() };
    }
    sum
}

/// `g_l(r1, r2)` for the Yukawa kernel `e^{-ξ d} / d`; `ξ = 0` gives the
/// Coulomb factor.
pub fn yukawa_component(l: usize, xi: f64, r1: f64, r2: f64) -> f64 {
    let (rl, rg) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    if rg == 0.0 {
        return if l == 0 { f64::INFINITY } else { 0.0 };
    }
    let ratio = (rl / rg).powi(l as i32) / rg;
    if xi == 0.0 {
        return ratio;
    }
    let a = xi * rl;
    let b = xi * rg;
    let ln_i = if a == 0.0 { 0.0 } else { ln_i_hat(l, a) };
    ratio * k_hat(l, b) * (ln_i - b).exp()
}
