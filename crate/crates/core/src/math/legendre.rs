//! Associated Legendre functions normalized on `[-1, 1]`.
//!
//! `P̄_l^m(x)` for `0 <= m <= l` satisfies `∫ P̄_l^m(x)^2 dx = 1` and carries no
//! Condon-Shortley factor, so every `P̄_l^m` is nonnegative near `x = 1`.

use crate::{Error, Result};

/// Position of `(l, m)` in a triangular table, `0 <= m <= l`.
#[inline]
pub fn pl_index(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Fill `out[pl_index(l, m)]` with `P̄_l^m(x)` for all `0 <= m <= l <= lmax`,
/// given `x = cos θ` and `s = sin θ >= 0`.
pub fn fill_table(lmax: usize, x: f64, s: f64, out: &mut [f64]) {
    debug_assert!(out.len() >= pl_index(lmax, lmax) + 1);
    let mut pmm = std::f64::consts::FRAC_1_SQRT_2;
    for m in 0..=lmax {
        if m > 0 {
            pmm *= ((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
        }
        out[pl_index(m, m)] = pmm;
        if m == lmax {
            break;
        }
        let mut p_prev = pmm;
        let mut p_cur = ((2 * m + 3) as f64).sqrt() * x * pmm;
        out[pl_index(m + 1, m)] = p_cur;
        for l in (m + 2)..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
            let p_next = a * (x * p_cur - b * p_prev);
            out[pl_index(l, m)] = p_next;
            p_prev = p_cur;
            p_cur = p_next;
        }
    }
}

/// Normalized associated Legendre function `P̄_l^|m|(x)`.
pub fn legendre_norm(l: usize, m: i64, x: f64) -> Result<f64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::InvalidIndex(format!("|m| = {am} exceeds l = {l}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let mut table = vec![0.0; pl_index(l, l) + 1];
    fill_table(l, x, (1.0 - x * x).max(0.0).sqrt(), &mut table);
    Ok(table[pl_index(l, am)])
}
