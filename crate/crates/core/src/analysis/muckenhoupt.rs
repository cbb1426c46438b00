//! Power weights `|x|^α` against the `A_q` and reverse-Hölder conditions.

use crate::error::{Error, Result};
use crate::spaces::power_integral;

/// A quotient that is either a finite number or flagged as divergent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightQuotient {
    pub value: f64,
    pub diverged: bool,
}

impl WeightQuotient {
    fn finite(value: f64) -> Self {
        WeightQuotient { value, diverged: false }
    }

    fn divergent() -> Self {
        WeightQuotient {
            value: f64::INFINITY,
            diverged: true,
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::param(format!("interval ({a}, {b}) is degenerate")));
    }
    Ok(())
}

/// `⟨|x|^α⟩_I · ⟨|x|^{-α/(q-1)}⟩_I^{q-1}` over `I = (a, b)`.
pub fn muckenhoupt_quotient(alpha: f64, q: f64, a: f64, b: f64) -> Result<WeightQuotient> {
    check_interval(a, b)?;
    if !(q > 1.0 && q.is_finite()) || !alpha.is_finite() {
        return Err(Error::param("the A_q quotient needs 1 < q < ∞ and finite alpha"));
    }
    let len = b - a;
    let dual = -alpha / (q - 1.0);
    match (power_integral(a, b, alpha), power_integral(a, b, dual)) {
        (Some(w), Some(v)) => Ok(WeightQuotient::finite((w / len) * (v / len).powf(q - 1.0))),
        _ => Ok(WeightQuotient::divergent()),
    }
}

/// `⟨w^r⟩_I^{1/r} / ⟨w⟩_I` for `w = |x|^α`; bounded over intervals when `w`
/// satisfies a reverse-Hölder inequality with exponent `r`.
pub fn reverse_holder_quotient(alpha: f64, r: f64, a: f64, b: f64) -> Result<WeightQuotient> {
    check_interval(a, b)?;
    if !(r > 1.0 && r.is_finite()) || !alpha.is_finite() {
        return Err(Error::param("the reverse-Hölder quotient needs 1 < r < ∞ and finite alpha"));
    }
    let len = b - a;
    match (power_integral(a, b, alpha * r), power_integral(a, b, alpha)) {
        (Some(wr), Some(w)) => Ok(WeightQuotient::finite((wr / len).powf(1.0 / r) / (w / len))),
        _ => Ok(WeightQuotient::divergent()),
    }
}
