use crate::{Error, Result};

/// Gamma function for positive real arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    check(x)?;
    Ok(statrs::function::gamma::gamma(x))
}

/// Natural log of the gamma function for positive real arguments.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    check(x)?;
    Ok(statrs::function::gamma::ln_gamma(x))
}

fn check(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("gamma argument must be positive, got {x}")))
    }
}

/// `ln Gamma` without the domain check, for internal callers whose arguments
/// are positive by construction.
#[inline]
pub(crate) fn lgam(x: f64) -> f64 {
    debug_assert!(x > 0.0, "lgam({x})");
    statrs::function::gamma::ln_gamma(x)
}
