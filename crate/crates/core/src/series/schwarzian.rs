use super::LaurentSeries;
use crate::algebra::rat;
use crate::error::{Error, Result};

/// `S(f, z)` as `(f''/f')' - 1/2 (f''/f')^2`.
pub fn schwarzian_series(f: &LaurentSeries) -> Result<LaurentSeries> {
    let (log_form, cubic_form) = schwarzian_series_both(f)?;
    debug_assert!(log_form.agrees_with(&cubic_form), "Schwarzian formulas disagree: {log_form} vs {cubic_form}");
    Ok(log_form)
}

/// Both Schwarzian formulas: `(f''/f')' - 1/2 (f''/f')^2` and
/// `f'''/f' - 3/2 (f''/f')^2`.
pub fn schwarzian_series_both(f: &LaurentSeries) -> Result<(LaurentSeries, LaurentSeries)> {
    let d1 = f.derivative();
    if d1.is_zero() {
        return Err(Error::ConstantInput);
    }
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let l = d2.div(&d1)?;
    let l2 = l.mul(&l)?;
    let log_form = l.derivative().sub(&l2.scale(&rat(1, 2)))?;
    let cubic_form = d3.div(&d1)?.sub(&l2.scale(&rat(3, 2)))?;
    Ok((log_form, cubic_form))
}
