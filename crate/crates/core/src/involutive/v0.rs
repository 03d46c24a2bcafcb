use num_rational::Ratio;

use super::cone::InvolutiveReport;
use crate::error::{Error, Result};

/// Surgery coefficients are limited so the rational arithmetic stays in `i64`.
pub const MAX_P: i64 = 1 << 40;

fn check_p(p: i64) -> Result<()> {
    if p <= 0 {
        return Err(Error::input(format!(
            "surgery coefficient must be positive, got {p}"
        )));
    }
    if p > MAX_P {
        return Err(Error::input(format!(
            "surgery coefficient {p} exceeds {MAX_P}"
        )));
    }
    Ok(())
}

/// `V = (p - 1)/8 - d/2`.
pub fn v0_from_d(p: i64, d: Ratio<i64>) -> Result<Ratio<i64>> {
    check_p(p)?;
    Ok(Ratio::new(p - 1, 8) - d / 2)
}

/// `d = (p - 1)/4 - 2V`.
pub fn d_from_v0(p: i64, v: Ratio<i64>) -> Result<Ratio<i64>> {
    check_p(p)?;
    Ok(Ratio::new(p - 1, 4) - v * 2)
}

/// `(V₀, V̄₀, V̲₀)` from `(d, d̄, d̲)` of `p`-surgery.
pub fn v0_triple(p: i64, r: &InvolutiveReport) -> Result<(Ratio<i64>, Ratio<i64>, Ratio<i64>)> {
    Ok((
        v0_from_d(p, r.d.into())?,
        v0_from_d(p, r.d_bar.into())?,
        v0_from_d(p, r.d_under.into())?,
    ))
}
